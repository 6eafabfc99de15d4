//! External watchman routes around a single convex polygon.

use crate::error::{Error, Result};
use crate::geom::{orient_sign, polyline_length, rat, rational_approx, rational_from_f64, ConvexPolygon, Point, Rational};
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RouteKind {
    Perimeter,
    DoubledChain,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WatchmanRoute {
    pub kind: RouteKind,
    /// Closed tour for a perimeter route, the open chain otherwise.
    pub polyline: Vec<Point>,
    pub doubled: bool,
    pub length: f64,
    /// First and last boundary edge wrapped by a chain.
    pub arc: Option<(usize, usize)>,
}

impl WatchmanRoute {
    /// Length of the open chain (equal to `length` for perimeter routes).
    pub fn chain_length(&self) -> f64 {
        if self.doubled {
            polyline_length(&self.polyline)
        } else {
            self.length
        }
    }

    /// Route edges; a doubled chain is walked forth and back.
    pub fn segments(&self) -> Vec<(Point, Point)> {
        let p = &self.polyline;
        let mut out: Vec<(Point, Point)> = p.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        if !self.doubled && p.len() > 1 {
            out.push((p[p.len() - 1].clone(), p[0].clone()));
        }
        out
    }
}

pub fn perimeter_route(p: &ConvexPolygon) -> WatchmanRoute {
    WatchmanRoute {
        kind: RouteKind::Perimeter,
        polyline: p.vertices().to_vec(),
        doubled: false,
        length: p.perimeter(),
        arc: None,
    }
}

/// Edges of `p` seen from the exterior point `x`; together they form the
/// boundary arc between the two tangent points.
pub fn visible_edges(p: &ConvexPolygon, x: &Point) -> Vec<bool> {
    (0..p.len()).map(|e| sees_edge(p, e, x)).collect()
}

/// Is point `x` in the closed outer half-plane of edge `e`?
fn sees_edge(p: &ConvexPolygon, e: usize, x: &Point) -> bool {
    let (a, b) = p.edge(e);
    orient_sign(a, b, x) <= 0
}

/// Nearest point to `v` in the intersection of the closed outer half-planes
/// of `edges`.
fn project_to_outer(p: &ConvexPolygon, edges: &[usize], v: &Point) -> Option<Point> {
    let inside = |x: &Point| edges.iter().all(|&e| sees_edge(p, e, x));
    if inside(v) {
        return Some(v.clone());
    }
    // outer half-planes of a run turning by half a turn or more are disjoint
    let dir = |e: usize| {
        let (a, b) = p.edge(e);
        let (a, b) = (a.to_f64(), b.to_f64());
        (b[1] - a[1]).atan2(b[0] - a[0])
    };
    let turning: f64 = edges
        .windows(2)
        .map(|w| (dir(w[1]) - dir(w[0])).rem_euclid(std::f64::consts::TAU))
        .sum();
    if turning > std::f64::consts::PI + 1e-9 {
        return None;
    }
    // candidates ordered by an f64 estimate of their distance, built exactly on demand
    enum Cand {
        Foot(usize),
        Meet(usize, usize),
    }
    let vf = v.to_f64();
    let mut cands: Vec<(f64, Cand)> = Vec::new();
    let line = |e: usize| {
        let (a, b) = p.edge(e);
        (a.to_f64(), b.to_f64())
    };
    for &e in edges {
        let (a, b) = line(e);
        let d = [b[0] - a[0], b[1] - a[1]];
        let cr = d[0] * (vf[1] - a[1]) - d[1] * (vf[0] - a[0]);
        cands.push((cr.abs() / d[0].hypot(d[1]), Cand::Foot(e)));
    }
    for (k, &e) in edges.iter().enumerate() {
        for &f in &edges[k + 1..] {
            let ((a, b), (c, d)) = (line(e), line(f));
            let (r, q) = ([b[0] - a[0], b[1] - a[1]], [d[0] - c[0], d[1] - c[1]]);
            let den = r[0] * q[1] - r[1] * q[0];
            let t = if den == 0.0 { f64::INFINITY } else { ((c[0] - a[0]) * q[1] - (c[1] - a[1]) * q[0]) / den };
            let x = [a[0] + t * r[0], a[1] + t * r[1]];
            let dd = (x[0] - vf[0]).hypot(x[1] - vf[1]);
            cands.push((if dd.is_finite() { dd } else { f64::MAX }, Cand::Meet(e, f)));
        }
    }
    cands.sort_by(|x, y| x.0.total_cmp(&y.0));
    for (_, c) in cands {
        let x = match c {
            Cand::Foot(e) => {
                let (a, b) = p.edge(e);
                let d = b.sub(a);
                let t = v.sub(a).dot(&d) / d.dot(&d);
                a.add(&d.scale(&t))
            }
            Cand::Meet(e, f) => {
                let (a, b) = p.edge(e);
                let (c, d) = p.edge(f);
                if b.sub(a).cross(&d.sub(c)).is_zero() {
                    continue;
                }
                crate::geom::line_intersection(a, b, c, d)
            }
        };
        if inside(&x) {
            return Some(x);
        }
    }
    None
}

/// Open chain wrapping `m` edges from vertex `s` (CCW), with legs at both
/// ends reaching the supporting lines of the remaining edges. `m = 0` gives
/// two legs joined at a vertex.
fn chain(p: &ConvexPolygon, s: usize, m: usize) -> Option<Vec<Point>> {
    let n = p.len();
    if m >= n {
        return None;
    }
    let arc: Vec<Point> = (0..=m).map(|k| p.vertex(s + k).clone()).collect();
    let uncovered: Vec<usize> = (m..n).map(|k| (s + k) % n).collect();
    let start = &arc[0];
    let end = &arc[m];
    let mut best: Option<(f64, Vec<Point>)> = None;
    for split in 0..=uncovered.len() {
        let (to_end, to_start) = uncovered.split_at(split);
        let Some(x_end) = project_to_outer(p, to_end, end) else { continue };
        let Some(x_start) = project_to_outer(p, to_start, start) else { continue };
        if p.segment_crosses_interior(end, &x_end) || p.segment_crosses_interior(start, &x_start) {
            continue;
        }
        let mut pts = Vec::with_capacity(m + 3);
        if &x_start != start {
            pts.push(x_start.clone());
        }
        pts.extend(arc.iter().cloned());
        if &x_end != end {
            pts.push(x_end.clone());
        }
        let len = polyline_length(&pts);
        if best.as_ref().is_none_or(|(b, _)| len < *b) {
            best = Some((len, pts));
        }
    }
    best.map(|(_, pts)| pts)
}

fn chain_route(p: &ConvexPolygon, s: usize, m: usize) -> Option<WatchmanRoute> {
    let n = p.len();
    let pts = chain(p, s % n, m)?;
    let open = polyline_length(&pts);
    let end_edge = if m == 0 { s % n } else { (s + m - 1) % n };
    Some(WatchmanRoute {
        kind: RouteKind::DoubledChain,
        polyline: pts,
        doubled: true,
        length: 2.0 * open,
        arc: Some((s % n, end_edge)),
    })
}

/// Chain wrapping edges `i..=j` (CCW) extended by two legs, walked forth and
/// back. `None` if no legs cover the remaining edges. If the arc already is
/// the whole boundary the perimeter route is returned.
pub fn doubled_chain_route(p: &ConvexPolygon, i: usize, j: usize) -> Option<WatchmanRoute> {
    let n = p.len();
    let m = (j + n - i % n) % n + 1;
    if m == n {
        return Some(perimeter_route(p));
    }
    let r = chain_route(p, i, m)?;
    match coverage_check(&r, p, 0) {
        Ok(true) => Some(r),
        _ => None,
    }
}

/// Does every boundary point of `p` see some point of the route? Seen sets
/// from a point are unions of closed edges, and an edge is seen from a route
/// segment iff it is seen from one of its endpoints, so the check is exact;
/// `samples` extra points per route edge are also tested.
pub fn coverage_check(route: &WatchmanRoute, p: &ConvexPolygon, samples: usize) -> Result<bool> {
    if route.polyline.iter().any(|v| p.contains_interior(v)) {
        return Err(Error::RouteIntersectsInterior);
    }
    let segs = route.segments();
    if segs.iter().any(|(a, b)| p.segment_crosses_interior(a, b)) {
        return Err(Error::RouteIntersectsInterior);
    }
    let mut views: Vec<Point> = route.polyline.clone();
    for (a, b) in &segs {
        for k in 1..=samples {
            views.push(a.lerp(b, &rat(k as i64, samples as i64 + 1)));
        }
    }
    Ok((0..p.len()).all(|e| views.iter().any(|x| sees_edge(p, e, x))))
}

/// Shortest route among the perimeter and every doubled chain. Ties go to
/// the perimeter.
pub fn best_external_watchman(p: &ConvexPolygon) -> WatchmanRoute {
    let per = perimeter_route(p);
    let n = p.len();
    let mut best = per.clone();
    for s in 0..n {
        for m in 0..n {
            let arc: f64 = (0..m).map(|k| p.vertex(s + k).dist(p.vertex(s + k + 1))).sum();
            if 2.0 * arc >= best.length {
                break;
            }
            let Some(r) = chain_route(p, s, m) else { continue };
            if r.length < best.length * (1.0 - 1e-12) && coverage_check(&r, p, 0).unwrap_or(false) {
                best = r;
            }
        }
    }
    best
}

/// Convex `n`-gon with all angles obtuse whose perimeter is not a shortest
/// external watchman route. `eps` must lie in `(0, (2 - √3) / (3√3))`.
pub fn obtuse_watchman_polygon(n: usize, eps: f64) -> Result<ConvexPolygon> {
    let limit = (2.0 - 3f64.sqrt()) / (3.0 * 3f64.sqrt());
    if n < 5 {
        return Err(Error::InvalidParameters(format!("n = {n}: triangles and quadrilaterals have a non-obtuse angle")));
    }
    if !(eps > 0.0 && eps < limit) {
        return Err(Error::InvalidParameters(format!("eps = {eps} outside (0, {limit})")));
    }
    let e = num_rational::Ratio::<i64>::approximate_float(eps)
        .map(|r| Rational::new((*r.numer()).into(), (*r.denom()).into()))
        .unwrap_or_else(|| rational_from_f64(eps));
    let one = Rational::from_integer(1.into());
    let half_base = &one - &e * &e;
    let h = rational_approx(1.0 / 3f64.sqrt(), 48);
    let mut v = vec![
        Point::new(-half_base.clone(), Rational::zero()),
        Point::new(half_base, Rational::zero()),
        Point::new(one.clone(), e.clone()),
        Point::new(Rational::zero(), &e + &h),
        Point::new(-one, e.clone()),
    ];
    // base corners first (right, then left), then the sharpest low vertex
    let mut step = 0;
    while v.len() < n {
        let k = match step {
            0 => 1,
            1 => 0,
            _ => sharpest_low_vertex(&v, &e),
        };
        v = shave(&v, k);
        step += 1;
    }
    let poly = ConvexPolygon::new(v)?;
    if !all_obtuse(&poly) {
        return Err(Error::Invariant("constructed polygon has a non-obtuse angle".into()));
    }
    Ok(poly)
}

/// Cuts vertex `k` by a chord through points at a third of the shorter
/// incident edge from it.
fn shave(v: &[Point], k: usize) -> Vec<Point> {
    let n = v.len();
    let prev = &v[(k + n - 1) % n];
    let cur = &v[k];
    let next = &v[(k + 1) % n];
    let (lp, ln) = (cur.dist(prev), cur.dist(next));
    let c = lp.min(ln) / 3.0;
    // snapped to a dyadic grid so that coordinates stay small
    let along = |to: &Point, len: f64| {
        let t = c / len;
        let [x0, y0] = cur.to_f64();
        let [x1, y1] = to.to_f64();
        Point::new(rational_approx(x0 + t * (x1 - x0), 44), rational_approx(y0 + t * (y1 - y0), 44))
    };
    let mut out = Vec::with_capacity(n + 1);
    for (i, p) in v.iter().enumerate() {
        if i == k {
            out.push(along(prev, lp));
            out.push(along(next, ln));
        } else {
            out.push(p.clone());
        }
    }
    out
}

fn sharpest_low_vertex(v: &[Point], eps: &Rational) -> usize {
    let n = v.len();
    (0..n)
        .filter(|&i| v[i].y() < eps)
        .min_by(|&i, &j| angle_deg(v, i).total_cmp(&angle_deg(v, j)))
        .unwrap_or(0)
}

/// Interior angle at vertex `k` in degrees.
pub fn angle_deg(v: &[Point], k: usize) -> f64 {
    let n = v.len();
    let a = v[(k + n - 1) % n].to_f64();
    let b = v[k].to_f64();
    let c = v[(k + 1) % n].to_f64();
    let u = [a[0] - b[0], a[1] - b[1]];
    let w = [c[0] - b[0], c[1] - b[1]];
    (u[0] * w[1] - u[1] * w[0]).abs().atan2(u[0] * w[0] + u[1] * w[1]).to_degrees()
}

/// Exact test that every interior angle exceeds 90 degrees.
pub fn all_obtuse(p: &ConvexPolygon) -> bool {
    let n = p.len();
    (0..n).all(|k| {
        let b = p.vertex(k);
        let u = p.vertex(k + n - 1).sub(b);
        let w = p.vertex(k + 1).sub(b);
        u.dot(&w).is_negative()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn square_keeps_perimeter() {
        let sq = unit_square();
        let best = best_external_watchman(&sq);
        assert_eq!(best.kind, RouteKind::Perimeter);
        assert!((best.length - 4.0).abs() < 1e-12);
        for i in 0..4 {
            for j in 0..4 {
                if let Some(r) = doubled_chain_route(&sq, i, j) {
                    assert!(r.length >= 4.0 - 1e-12, "{i} {j} {}", r.length);
                }
            }
        }
    }

    #[test]
    fn full_arc_is_the_perimeter() {
        let sq = unit_square();
        let r = doubled_chain_route(&sq, 1, 0).unwrap();
        assert_eq!(r.kind, RouteKind::Perimeter);
    }

    #[test]
    fn single_point_never_covers() {
        let sq = unit_square();
        for (x, y) in [(5, 5), (-3, 0), (1, 1), (0, 2)] {
            let r = WatchmanRoute {
                kind: RouteKind::DoubledChain,
                polyline: vec![Point::from_ints(x, y)],
                doubled: true,
                length: 0.0,
                arc: None,
            };
            assert!(!coverage_check(&r, &sq, 8).unwrap());
        }
    }

    #[test]
    fn pentagon_perimeter_formula() {
        let eps: f64 = 0.001;
        let p = obtuse_watchman_polygon(5, eps).unwrap();
        let a = 2.0 / 3f64.sqrt();
        let expect = 2.0 * (a + (1.0 - eps * eps) + eps * (1.0 + eps * eps).sqrt());
        assert!((perimeter_route(&p).length - expect).abs() < 1e-9);
        assert!(all_obtuse(&p));
    }

    #[test]
    fn pentagon_chain_beats_perimeter() {
        let eps = 0.001;
        let p = obtuse_watchman_polygon(5, eps).unwrap();
        let best = best_external_watchman(&p);
        assert_eq!(best.kind, RouteKind::DoubledChain);
        assert!(best.chain_length() < 2.0 * (1.0 + eps));
        assert!((best.length - 2.0 * best.chain_length()).abs() <= 1e-12 * best.length);
        assert!(best.length / p.perimeter() <= 0.93);
        assert!(coverage_check(&best, &p, 64).unwrap());
    }

    #[test]
    fn heptagon_angles_and_route() {
        let p = obtuse_watchman_polygon(7, 0.001).unwrap();
        assert_eq!(p.len(), 7);
        for k in 0..7 {
            assert!(angle_deg(p.vertices(), k) >= 120.0 - 0.1);
        }
        let best = best_external_watchman(&p);
        assert_eq!(best.kind, RouteKind::DoubledChain);
        assert!(best.length < p.perimeter());
    }

    #[test]
    fn larger_shavings_stay_obtuse() {
        for n in 5..=10 {
            let p = obtuse_watchman_polygon(n, 0.001).unwrap();
            assert_eq!(p.len(), n);
            assert!(all_obtuse(&p));
            assert!(best_external_watchman(&p).length < p.perimeter());
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(obtuse_watchman_polygon(5, 0.3), Err(Error::InvalidParameters(_))));
        assert!(matches!(obtuse_watchman_polygon(4, 0.001), Err(Error::InvalidParameters(_))));
    }
}
