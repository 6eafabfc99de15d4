//! Deterministic SVG pictures of instances, regions and routes.

use std::fmt::Write;

use obsroute::tspn::Tour;
use obsroute::{Instance, Point, PolygonWithHoles};

#[derive(Clone, Debug, Default)]
pub struct Overlays<'a> {
    pub region: Option<&'a PolygonWithHoles>,
    pub tour: Option<&'a Tour>,
}

fn num(v: f64) -> String {
    let r = (v * 1e6).round() / 1e6;
    let s = format!("{r:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

fn coords(p: &Point) -> String {
    // y grows upwards in the instance, downwards in SVG
    format!("{},{}", num(p.xf()), num(-p.yf()))
}

fn ring_path(ring: &[Point]) -> String {
    let mut d = String::new();
    for (k, p) in ring.iter().enumerate() {
        d.push_str(if k == 0 { "M" } else { " L" });
        d.push_str(&coords(p));
    }
    d.push_str(" Z");
    d
}

pub fn render_svg(inst: &Instance, overlays: &Overlays) -> String {
    let bb = inst.bbox();
    let (x0, y0) = (bb.min.xf(), bb.min.yf());
    let (w, h) = (bb.width(), bb.height());
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="800" viewBox="{} {} {} {}" preserveAspectRatio="xMidYMid meet">"#,
        num(x0),
        num(-(y0 + h)),
        num(w),
        num(h)
    )
    .unwrap();
    writeln!(
        s,
        r##"<defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="8" height="8" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="8" stroke="#b03030" stroke-width="1" vector-effect="non-scaling-stroke"/></pattern></defs>"##
    )
    .unwrap();
    writeln!(
        s,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black" stroke-width="1" vector-effect="non-scaling-stroke"/>"##,
        num(x0),
        num(-(y0 + h)),
        num(w),
        num(h)
    )
    .unwrap();
    if let Some(r) = overlays.region {
        writeln!(
            s,
            r##"<path class="region" d="{}" fill="#fbe3b0" fill-opacity="0.6" stroke="#c07000" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"##,
            ring_path(&r.outer)
        )
        .unwrap();
        for hole in &r.holes {
            writeln!(
                s,
                r##"<path class="hole" d="{}" fill="url(#hatch)" stroke="#b03030" stroke-width="1" vector-effect="non-scaling-stroke"/>"##,
                ring_path(hole)
            )
            .unwrap();
        }
    }
    for (i, o) in inst.obstacles().iter().enumerate() {
        writeln!(
            s,
            r##"<path class="obstacle" id="o{i}" d="{}" fill="#6a7f99" stroke="#26324a" stroke-width="1" vector-effect="non-scaling-stroke"/>"##,
            ring_path(o.vertices())
        )
        .unwrap();
    }
    if let Some(t) = overlays.tour {
        if !t.vertices.is_empty() {
            writeln!(
                s,
                r##"<path class="tour" d="{}" fill="none" stroke="#d02020" stroke-width="2" vector-effect="non-scaling-stroke"/>"##,
                ring_path(&t.vertices)
            )
            .unwrap();
        }
        let r = num(w.max(h) / 200.0);
        for p in &t.witness {
            writeln!(s, r##"<circle class="witness" cx="{}" cy="{}" r="{r}" fill="#20a040"/>"##, num(p.xf()), num(-p.yf()))
                .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_instance_has_box_and_obstacles_only() {
        let inst = obsroute::corpus::two_hole_example().unwrap();
        let svg = render_svg(&inst, &Overlays::default());
        assert_eq!(svg.matches("class=\"obstacle\"").count(), 3);
        assert!(!svg.contains("class=\"tour\"") && !svg.contains("class=\"region\""));
    }

    #[test]
    fn two_hole_region_renders_two_hatched_holes() {
        let inst = obsroute::corpus::two_hole_example().unwrap();
        let region = inst.visibility_region(0).unwrap();
        let svg = render_svg(&inst, &Overlays { region: Some(&region), tour: None });
        assert_eq!(svg.matches("class=\"hole\"").count(), 2);
        assert_eq!(svg, render_svg(&inst, &Overlays { region: Some(&region), tour: None }));
    }

    #[test]
    fn numbers_are_rounded() {
        assert_eq!(num(1.0000004), "1");
        assert_eq!(num(-0.0000001), "0");
        assert_eq!(num(2.5), "2.5");
    }
}
