//! Seeded random instance families used by tests, benchmarks and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geom::{rat, ConvexPolygon, Point, Rect, Vector};
use crate::visibility::Instance;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn snap(v: f64) -> f64 {
    (v * 256.0).round() / 256.0
}

/// Convex polygon with `k` vertices on a circle, snapped to a 1/256 grid.
pub fn random_convex_polygon(rng: &mut impl Rng, center: [f64; 2], radius: f64, k: usize) -> ConvexPolygon {
    loop {
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let min_gap = (0..k)
            .map(|i| {
                let next = if i + 1 < k { angles[i + 1] } else { angles[0] + std::f64::consts::TAU };
                next - angles[i]
            })
            .fold(f64::INFINITY, f64::min);
        let max_gap = (0..k)
            .map(|i| {
                let next = if i + 1 < k { angles[i + 1] } else { angles[0] + std::f64::consts::TAU };
                next - angles[i]
            })
            .fold(0.0, f64::max);
        // keep polygons reasonably fat
        if min_gap < 0.25 || max_gap > 2.6 {
            continue;
        }
        let pts: Vec<Point> = angles
            .iter()
            .map(|a| Point::from_f64(snap(center[0] + radius * a.cos()), snap(center[1] + radius * a.sin())))
            .collect();
        if let Ok(c) = ConvexPolygon::new(pts) {
            return c;
        }
    }
}

/// `n` disjoint fat polygons with at most `max_vertices` vertices in total,
/// in the box `[0, side]²`.
pub fn random_instance(seed: u64, n: usize, max_vertices: usize, side: f64) -> Result<Instance> {
    let mut rng = rng(seed);
    let bbox = Rect::new(Point::from_f64(0.0, 0.0), Point::from_f64(side, side))?;
    let per = (max_vertices / n.max(1)).clamp(3, 8);
    let mut obs: Vec<ConvexPolygon> = Vec::new();
    let mut attempts = 0;
    while obs.len() < n {
        attempts += 1;
        let radius = rng.gen_range(0.06..0.14) * side;
        let c = [rng.gen_range(radius + 0.5..side - radius - 0.5), rng.gen_range(radius + 0.5..side - radius - 0.5)];
        let k = rng.gen_range(3..=per);
        let poly = random_convex_polygon(&mut rng, c, radius, k);
        let gap = 0.02 * side;
        let clear = obs.iter().all(|o| {
            let [cx, cy] = o.centroid_f64();
            (cx - c[0]).hypot(cy - c[1]) > radius + o.diameter() / 2.0 + gap && o.is_disjoint(&poly)
        });
        if clear || attempts > 10_000 {
            if clear {
                obs.push(poly);
            } else {
                attempts = 0;
                obs.clear();
            }
        }
    }
    Instance::new(bbox, obs)
}

/// `n` disjoint translates of one random fat polygon.
pub fn random_translate_family(seed: u64, n: usize, side: f64) -> Result<Instance> {
    let mut rng = rng(seed);
    let bbox = Rect::new(Point::from_f64(0.0, 0.0), Point::from_f64(side, side))?;
    let radius = 0.08 * side;
    let k = rng.gen_range(3..=6);
    let base = random_convex_polygon(&mut rng, [0.0, 0.0], radius, k);
    let mut obs: Vec<ConvexPolygon> = Vec::new();
    while obs.len() < n {
        let c = [
            snap(rng.gen_range(radius + 0.5..side - radius - 0.5)),
            snap(rng.gen_range(radius + 0.5..side - radius - 0.5)),
        ];
        let v = Vector::new(
            crate::geom::rational_from_f64(c[0]),
            crate::geom::rational_from_f64(c[1]),
        );
        let poly = base.translate(&v);
        if obs.iter().all(|o| {
            let [cx, cy] = o.centroid_f64();
            (cx - c[0]).hypot(cy - c[1]) > 2.0 * radius + 0.02 * side && o.is_disjoint(&poly)
        }) {
            obs.push(poly);
        }
    }
    Instance::new(bbox, obs)
}

/// Axis-parallel square of side `s` with lower-left corner `(x, y)`.
pub fn square_at(x: crate::geom::Rational, y: crate::geom::Rational, s: &crate::geom::Rational) -> Result<ConvexPolygon> {
    ConvexPolygon::rectangle(x.clone(), y.clone(), x + s, y + s)
}

/// `k x k` grid of fat squares of side 2 separated by narrow gaps.
pub fn square_grid(k: usize, gap_num: i64, gap_den: i64) -> Result<Instance> {
    let side = crate::geom::int(2);
    let pitch = &side + rat(gap_num, gap_den);
    let mut obs = Vec::new();
    for i in 0..k {
        for j in 0..k {
            obs.push(square_at(
                &pitch * crate::geom::int(i as i64),
                &pitch * crate::geom::int(j as i64),
                &side,
            )?);
        }
    }
    let hi = &pitch * crate::geom::int(k as i64) + crate::geom::int(3);
    Instance::new(
        Rect::new(Point::new(crate::geom::int(-3), crate::geom::int(-3)), Point::new(hi.clone(), hi))?,
        obs,
    )
}

/// Triangle among two other polygons; the triangle's visibility region has
/// two holes (the triangle and the small square).
pub fn two_hole_example() -> Result<Instance> {
    let tri = ConvexPolygon::from_ints(&[(1, 2), (7, 6), (1, 10)])?;
    let small = ConvexPolygon::rectangle(crate::geom::int(10), rat(11, 2), crate::geom::int(11), rat(13, 2))?;
    let wall = ConvexPolygon::from_ints(&[(16, 1), (18, 1), (18, 11), (16, 11)])?;
    Instance::new(Rect::from_ints(0, 0, 20, 12)?, vec![tri, small, wall])
}

/// Small square enclosed by four pinwheel walls, so that it is visible only
/// from inside the enclosure. Optionally one more polygon outside.
pub fn pinwheel_fort(seed: u64, extra: bool) -> Result<Instance> {
    let mut rng = rng(seed);
    let q = |v: f64| crate::geom::rational_from_f64(snap(v));
    let h = rng.gen_range(2.5..3.5);
    let t = rng.gen_range(0.8..1.2);
    let g = rng.gen_range(0.2..0.35);
    let c = rng.gen_range(0.6..1.2);
    let rot = |(x, y): (f64, f64), k: usize| -> (f64, f64) {
        (0..k).fold((x, y), |(x, y), _| (-y, x))
    };
    let mut obs = Vec::new();
    for k in 0..4 {
        let corners = [(-h + g, -h - t), (h + t, -h - t), (h + t, -h), (-h + g, -h)];
        let pts = corners
            .iter()
            .map(|&p| {
                let (x, y) = rot(p, k);
                Point::new(q(x), q(y))
            })
            .collect();
        obs.push(ConvexPolygon::new(pts)?);
    }
    obs.push(ConvexPolygon::rectangle(q(-c / 2.0), q(-c / 2.0), q(c / 2.0), q(c / 2.0))?);
    let side = 2.0 * (h + t) + 8.0;
    let lo = -(h + t) - 4.0;
    if extra {
        loop {
            let r = rng.gen_range(0.5..1.2);
            let cx = rng.gen_range(lo + r + 0.2..lo + side - r - 0.2);
            let cy = rng.gen_range(lo + r + 0.2..lo + side - r - 0.2);
            if cx.abs().max(cy.abs()) < h + t + r + 0.2 {
                continue;
            }
            let k = rng.gen_range(3..=6);
            obs.push(random_convex_polygon(&mut rng, [cx, cy], r, k));
            break;
        }
    }
    Instance::new(Rect::new(Point::new(q(lo), q(lo)), Point::new(q(lo + side), q(lo + side)))?, obs)
}

/// Thirty fat-polygon instances with at most six obstacles: twenty
/// pinwheel forts with an outside polygon and ten random scatterings.
pub fn orp_corpus() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for seed in 0..20u64 {
        out.push(pinwheel_fort(seed, true)?);
    }
    for seed in 0..10u64 {
        out.push(random_instance(100 + seed, 2 + (seed as usize % 5), 30, 20.0)?);
    }
    Ok(out)
}
