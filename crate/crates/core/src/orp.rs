//! Observation routes: visibility regions, a TSPN tour through them, and
//! boundary detours around crossed obstacles.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::geom::{boundary_geodesic, dilation_upper_bound, polyline_length, Point};
use crate::tspn::{exact_small_tspn, tspn_candidates, RegionSet, Tour, VertexKind};
use crate::visibility::{Instance, PolygonWithHoles};

#[derive(Clone, Debug, PartialEq)]
pub struct DetourRecord {
    pub obstacle: usize,
    pub chord: f64,
    pub path: f64,
}

impl DetourRecord {
    pub fn ratio(&self) -> f64 {
        if self.chord > 0.0 {
            self.path / self.chord
        } else {
            1.0
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObservationRoute {
    pub tour: Tour,
    /// Point of the tour from which obstacle `i` is seen.
    pub observed_from: Vec<Point>,
    pub detour_log: Vec<DetourRecord>,
    pub detour_iterations: usize,
}

impl ObservationRoute {
    pub fn length(&self) -> f64 {
        self.tour.length()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub interior_avoiding: bool,
    pub coverage: bool,
    pub closed: bool,
    pub length: f64,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.interior_avoiding && self.coverage && self.closed
    }
}

pub fn visibility_regions(inst: &Instance) -> Result<Vec<PolygonWithHoles>> {
    let rays = inst.tangent_rays()?;
    (0..inst.len()).map(|i| inst.visibility_region_with(i, &rays)).collect()
}

/// Visibility regions, TSPN tours, detours. Among the candidate TSPN tours
/// the one shortest after detours is kept.
pub fn solve_orp(inst: &Instance) -> Result<ObservationRoute> {
    if inst.is_empty() {
        let p = inst.bbox().min.clone();
        return Ok(ObservationRoute {
            tour: Tour::point(p, 0),
            observed_from: vec![],
            detour_log: vec![],
            detour_iterations: 0,
        });
    }
    let regions = visibility_regions(inst)?;
    let rs = RegionSet { regions, bbox: inst.bbox().clone() };
    let mut tours: Vec<Tour> = tspn_candidates(&rs)?.into_iter().map(|(t, _)| t).collect();
    if rs.regions.len() <= 8 && tours.len() > 1 {
        tours.push(exact_small_tspn(&rs, 16)?);
    }
    let mut best: Option<(Tour, Vec<DetourRecord>, usize)> = None;
    for tour in tours {
        for (i, w) in tour.witness.iter().enumerate() {
            if let Some(j) = inst.interior_owner(w) {
                return Err(Error::WitnessInsideObstacle(i, j));
            }
        }
        let done = detour_transform(&tour, inst)?;
        if best.as_ref().is_none_or(|b| done.0.length() < b.0.length() - 1e-12) {
            best = Some(done);
        }
    }
    let (tour, detour_log, detour_iterations) = best.expect("at least one candidate tour");
    let route = ObservationRoute { observed_from: tour.witness.clone(), tour, detour_log, detour_iterations };
    let report = validate_observation_route(&route, inst);
    if !report.is_valid() {
        return Err(Error::Invariant(format!("route failed validation: {:?}", report.failures)));
    }
    Ok(route)
}

/// Replaces every stretch of a tour edge through an obstacle interior by the
/// shorter boundary arc between its entry and exit points. Tour vertices are
/// kept; passes repeat until no edge crosses an interior.
pub fn detour_transform(tour: &Tour, inst: &Instance) -> Result<(Tour, Vec<DetourRecord>, usize)> {
    let mut cur = tour.clone();
    let mut log = Vec::new();
    let mut passes = 0;
    loop {
        if cur.vertices.len() < 2 {
            return Ok((cur, log, passes));
        }
        let mut changed = false;
        let mut vertices = Vec::new();
        let mut kinds = Vec::new();
        let n = cur.vertices.len();
        for k in 0..n {
            let a = &cur.vertices[k];
            let b = &cur.vertices[(k + 1) % n];
            vertices.push(a.clone());
            kinds.push(cur.kinds[k]);
            let mut cuts: Vec<(crate::geom::Rational, usize, Point, Point)> = Vec::new();
            for (i, o) in inst.obstacles().iter().enumerate() {
                if !o.segment_crosses_interior(a, b) {
                    continue;
                }
                let (t0, t1) = o.clip_segment(a, b).expect("crossing segment clips");
                let entry = a.lerp(b, &t0);
                let exit = a.lerp(b, &t1);
                cuts.push((t0, i, entry, exit));
            }
            cuts.sort_by(|x, y| x.0.cmp(&y.0));
            for (_, i, entry, exit) in cuts {
                changed = true;
                let o = &inst.obstacles()[i];
                let (path, len) = boundary_geodesic(o, &entry, &exit)?;
                let bound = dilation_upper_bound(o.fatness())?;
                let chord = entry.dist(&exit);
                if chord > 0.0 && len / chord > bound + 1e-9 {
                    return Err(Error::Invariant(format!(
                        "detour ratio {} exceeds dilation bound {bound}",
                        len / chord
                    )));
                }
                log.push(DetourRecord { obstacle: i, chord, path: len });
                for p in path {
                    if vertices.last() != Some(&p) {
                        vertices.push(p);
                        kinds.push(VertexKind::Detour);
                    }
                }
            }
        }
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
            kinds.pop();
        }
        cur = Tour { vertices, kinds, witness: cur.witness };
        passes += 1;
        if !changed {
            return Ok((cur, log, passes));
        }
        if passes > 16 {
            return Err(Error::Invariant("detours did not reach a fixpoint".into()));
        }
    }
}

pub fn validate_observation_route(route: &ObservationRoute, inst: &Instance) -> ValidationReport {
    let mut failures = Vec::new();
    let t = &route.tour;
    let closed = !t.vertices.is_empty() && t.vertices.len() == t.kinds.len() && t.vertices.iter().all(|v| inst.bbox().contains(v));
    if !closed {
        failures.push("tour is empty or leaves the box".to_string());
    }
    let mut interior_avoiding = t.vertices.iter().all(|v| inst.interior_owner(v).is_none());
    for (a, b) in t.edges() {
        if !inst.segment_is_free(a, b) {
            interior_avoiding = false;
            failures.push(format!("edge {a:?} -> {b:?} crosses an obstacle interior"));
        }
    }
    let mut coverage = route.observed_from.len() == inst.len();
    if !coverage {
        failures.push("observer list has the wrong length".into());
    }
    for (i, p) in route.observed_from.iter().enumerate().take(inst.len()) {
        if !t.passes_through(p) {
            coverage = false;
            failures.push(format!("observer of {i} is not on the tour"));
        } else if !inst.sees(p, i).unwrap_or(false) {
            coverage = false;
            failures.push(format!("obstacle {i} is not seen from its observer"));
        }
    }
    ValidationReport { interior_avoiding, coverage, closed, length: t.length(), failures }
}

/// For each obstacle, a tour point that sees it: vertices first, then
/// evenly spaced edge points.
pub fn observers_on_tour(tour: &Tour, inst: &Instance, per_edge: usize) -> Option<Vec<Point>> {
    let pts = tour_probe_points(tour, per_edge);
    (0..inst.len())
        .map(|i| pts.iter().find(|p| inst.sees(p, i).unwrap_or(false)).cloned())
        .collect()
}

/// Obstacles seen from none of the probe points of [`observers_on_tour`].
pub fn unseen_obstacles(tour: &Tour, inst: &Instance, per_edge: usize) -> Vec<usize> {
    let pts = tour_probe_points(tour, per_edge);
    (0..inst.len()).filter(|&i| !pts.iter().any(|p| inst.sees(p, i).unwrap_or(false))).collect()
}

fn tour_probe_points(tour: &Tour, per_edge: usize) -> Vec<Point> {
    let mut pts: Vec<Point> = tour.vertices.clone();
    for (a, b) in tour.edges() {
        for k in 1..per_edge {
            pts.push(a.lerp(b, &crate::geom::rat(k as i64, per_edge as i64)));
        }
    }
    pts
}

/// Candidate viewpoints: vertices of all visibility regions (evenly thinned
/// to at most `max_region_points`) plus free cell centres of a
/// `grid x grid` lattice over the box.
pub fn orp_candidate_universe(inst: &Instance, grid: usize, max_region_points: usize) -> Result<Vec<Point>> {
    let regions = visibility_regions(inst)?;
    let mut rv: Vec<Point> = regions.iter().flat_map(|r| r.rings().flatten().cloned()).collect();
    rv.sort();
    rv.dedup();
    let mut out = Vec::new();
    if rv.len() > max_region_points && max_region_points > 0 {
        let stride = rv.len() as f64 / max_region_points as f64;
        for k in 0..max_region_points {
            out.push(rv[(k as f64 * stride) as usize].clone());
        }
    } else {
        out = rv;
    }
    let b = inst.bbox();
    for i in 0..grid {
        for j in 0..grid {
            let t = crate::geom::rat(2 * i as i64 + 1, 2 * grid as i64);
            let s = crate::geom::rat(2 * j as i64 + 1, 2 * grid as i64);
            let x = b.min.x() + (b.max.x() - b.min.x()) * t;
            let y = b.min.y() + (b.max.y() - b.min.y()) * s;
            out.push(Point::new(x, y));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Shortest free-space path lengths from each of `sources` to all nodes of
/// the visibility graph on `points` plus all obstacle vertices.
struct FreeSpaceMetric {
    nodes: Vec<Point>,
    adj: Vec<Vec<(usize, f64)>>,
}

impl FreeSpaceMetric {
    fn new(inst: &Instance, points: &[Point]) -> Self {
        let mut nodes: Vec<Point> = points.to_vec();
        for o in inst.obstacles() {
            nodes.extend(o.vertices().iter().cloned());
        }
        let n = nodes.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if inst.segment_is_free(&nodes[i], &nodes[j]) {
                    let d = nodes[i].dist(&nodes[j]);
                    adj[i].push((j, d));
                    adj[j].push((i, d));
                }
            }
        }
        FreeSpaceMetric { nodes, adj }
    }

    fn dijkstra(&self, src: usize) -> (Vec<f64>, Vec<usize>) {
        let n = self.nodes.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut prev = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push(Reverse((OrdF64(0.0), src)));
        while let Some(Reverse((OrdF64(d), u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adj[u] {
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    prev[v] = u;
                    heap.push(Reverse((OrdF64(nd), v)));
                }
            }
        }
        (dist, prev)
    }
}

#[derive(Clone, Copy)]
struct OrdF64(f64);

impl PartialEq for OrdF64 {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Result of the discretised oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscretizedOrp {
    pub tour: Tour,
    /// Optimal value of the discrete program (free-space path lengths).
    pub value: f64,
}

/// Desk-scale surrogate for the optimal observation route (at most six
/// obstacles).
pub fn discretized_opt_orp(inst: &Instance, grid: usize) -> Result<Tour> {
    if inst.len() > 6 {
        return Err(Error::TooManyObstacles(inst.len(), 6));
    }
    let universe = orp_candidate_universe(inst, grid, 160)?;
    Ok(discretized_opt_orp_over(inst, &universe, None)?.tour)
}

/// Exact optimum over closed tours through candidate points joined by
/// shortest free paths, such that every target is seen from some chosen
/// candidate. `targets = None` means all obstacles.
pub fn discretized_opt_orp_over(inst: &Instance, universe: &[Point], targets: Option<&[usize]>) -> Result<DiscretizedOrp> {
    let all: Vec<usize> = (0..inst.len()).collect();
    let targets = targets.unwrap_or(&all);
    let k = targets.len();
    if k > 12 {
        return Err(Error::TooManyObstacles(k, 12));
    }
    if k == 0 {
        return Ok(DiscretizedOrp { tour: Tour::point(inst.bbox().min.clone(), 0), value: 0.0 });
    }
    let pts: Vec<Point> = universe.iter().filter(|p| inst.is_free(p)).cloned().collect();
    let masks: Vec<usize> = pts
        .iter()
        .map(|p| {
            targets
                .iter()
                .enumerate()
                .filter(|&(_, &t)| inst.sees(p, t).unwrap_or(false))
                .fold(0usize, |m, (bit, _)| m | (1 << bit))
        })
        .collect();
    let full = (1usize << k) - 1;
    let useful: Vec<usize> = (0..pts.len()).filter(|&i| masks[i] != 0).collect();
    let g0 = (0..k)
        .min_by_key(|&b| useful.iter().filter(|&&i| masks[i] & (1 << b) != 0).count())
        .unwrap();
    if useful.iter().all(|&i| masks[i] & (1 << g0) == 0) {
        return Err(Error::Invariant(format!("no candidate sees obstacle {}", targets[g0])));
    }
    let witness_for = |chosen: &[usize]| -> Vec<Point> {
        let mut w = vec![pts[chosen[0]].clone(); inst.len()];
        for (bit, &t) in targets.iter().enumerate() {
            if let Some(&c) = chosen.iter().find(|&&c| masks[c] & (1 << bit) != 0) {
                w[t] = pts[c].clone();
            }
        }
        w
    };
    if let Some(&c) = useful.iter().find(|&&i| masks[i] == full) {
        let w = witness_for(&[c]);
        let mut t = Tour::point(pts[c].clone(), inst.len());
        t.witness = w;
        return Ok(DiscretizedOrp { tour: t, value: 0.0 });
    }
    let sub: Vec<Point> = useful.iter().map(|&i| pts[i].clone()).collect();
    let metric = FreeSpaceMetric::new(inst, &sub);
    let u = sub.len();
    let sp: Vec<(Vec<f64>, Vec<usize>)> = (0..u).map(|s| metric.dijkstra(s)).collect();
    let m: Vec<usize> = useful.iter().map(|&i| masks[i]).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut dp = vec![f64::INFINITY; (full + 1) * u];
    let mut parent = vec![(usize::MAX, 0usize); (full + 1) * u];
    for s in (0..u).filter(|&s| m[s] & (1 << g0) != 0) {
        dp.iter_mut().for_each(|x| *x = f64::INFINITY);
        parent.iter_mut().for_each(|x| *x = (usize::MAX, 0));
        dp[m[s] * u + s] = 0.0;
        for mask in 0..=full {
            for a in 0..u {
                let cur = dp[mask * u + a];
                if !cur.is_finite() {
                    continue;
                }
                if best.as_ref().is_some_and(|(b, _)| cur >= *b) {
                    continue;
                }
                for b in 0..u {
                    if m[b] & !mask == 0 {
                        continue;
                    }
                    let nm = mask | m[b];
                    let c = cur + sp[a].0[b];
                    if c < dp[nm * u + b] {
                        dp[nm * u + b] = c;
                        parent[nm * u + b] = (a, mask);
                    }
                }
            }
        }
        for a in 0..u {
            let c = dp[full * u + a] + sp[a].0[s];
            if c.is_finite() && best.as_ref().is_none_or(|(b, _)| c < *b - 1e-12) {
                let mut path = vec![a];
                let (mut mask, mut v) = (full, a);
                while parent[mask * u + v].0 != usize::MAX {
                    (v, mask) = parent[mask * u + v];
                    path.push(v);
                }
                path.reverse();
                best = Some((c, path));
            }
        }
    }
    let (value, path) = best.ok_or_else(|| Error::Invariant("discretized program infeasible".into()))?;
    // expand shortest paths into a polyline
    let mut vertices: Vec<Point> = Vec::new();
    let mut kinds = Vec::new();
    let hops = path.len();
    for h in 0..hops {
        let a = path[h];
        let b = path[(h + 1) % hops];
        vertices.push(metric.nodes[a].clone());
        kinds.push(VertexKind::Witness);
        let mut inner = Vec::new();
        let mut v = sp[a].1[b];
        while v != a && v != usize::MAX {
            inner.push(v);
            v = sp[a].1[v];
        }
        for &v in inner.iter().rev() {
            vertices.push(metric.nodes[v].clone());
            kinds.push(VertexKind::Detour);
        }
    }
    let mut dedup_v: Vec<Point> = Vec::new();
    let mut dedup_k = Vec::new();
    for (p, kd) in vertices.into_iter().zip(kinds) {
        if dedup_v.last() != Some(&p) {
            dedup_v.push(p);
            dedup_k.push(kd);
        }
    }
    if dedup_v.len() > 1 && dedup_v.first() == dedup_v.last() {
        dedup_v.pop();
        dedup_k.pop();
    }
    let witness = witness_for(&path);
    let tour = Tour { vertices: dedup_v, kinds: dedup_k, witness };
    let (tour, _, _) = detour_transform(&tour, inst)?;
    Ok(DiscretizedOrp { tour, value })
}

/// Polyline length of an explicit vertex list (open).
pub fn path_length(pts: &[Point]) -> f64 {
    polyline_length(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat, ConvexPolygon, Rect};

    fn square(x: i64, y: i64, s: i64) -> ConvexPolygon {
        ConvexPolygon::from_ints(&[(x, y), (x + s, y), (x + s, y + s), (x, y + s)]).unwrap()
    }

    #[test]
    fn single_obstacle_route_is_a_point() {
        let inst = Instance::new(Rect::from_ints(-5, -5, 5, 5).unwrap(), vec![square(0, 0, 1)]).unwrap();
        let r = solve_orp(&inst).unwrap();
        assert_eq!(r.length(), 0.0);
        assert!(validate_observation_route(&r, &inst).is_valid());
    }

    #[test]
    fn chord_through_square_detours_along_two_edges() {
        let inst = Instance::new(Rect::from_ints(-5, -5, 5, 5).unwrap(), vec![square(0, 0, 1)]).unwrap();
        let a = Point::new(int(-1), rat(1, 2));
        let b = Point::new(int(2), rat(1, 2));
        let t = Tour::from_order(vec![a, b], &[0, 1]);
        let (out, log, passes) = detour_transform(&t, &inst).unwrap();
        assert_eq!(log.len(), 2);
        for rec in &log {
            assert!((rec.chord - 1.0).abs() < 1e-12);
            assert!((rec.path - 2.0).abs() < 1e-12);
            assert!(rec.ratio() <= std::f64::consts::PI * 2f64.sqrt());
        }
        assert_eq!(passes, 2);
        assert!(out.edges().all(|(p, q)| inst.segment_is_free(p, q)));
    }

    #[test]
    fn diagonal_of_long_rectangle() {
        let rect = ConvexPolygon::from_ints(&[(0, 0), (3, 0), (3, 1), (0, 1)]).unwrap();
        let inst = Instance::new(Rect::from_ints(-5, -5, 8, 5).unwrap(), vec![rect.clone()]).unwrap();
        let a = Point::new(rat(-3, 1), rat(-1, 1));
        let b = Point::new(int(6), int(2));
        let t = Tour::from_order(vec![a, b], &[0, 1]);
        let (_, log, _) = detour_transform(&t, &inst).unwrap();
        let bound = dilation_upper_bound(rect.fatness()).unwrap();
        for rec in &log {
            assert!(rec.ratio() <= 4.0 + 1e-9 && rec.ratio() <= bound);
        }
    }

    #[test]
    fn route_through_center_fails_validation() {
        let inst = Instance::new(Rect::from_ints(-5, -5, 5, 5).unwrap(), vec![square(0, 0, 1)]).unwrap();
        let a = Point::new(int(-1), rat(1, 2));
        let b = Point::new(int(2), rat(1, 2));
        let tour = Tour::from_order(vec![a.clone(), b], &[0, 1]);
        let route = ObservationRoute { tour, observed_from: vec![a], detour_log: vec![], detour_iterations: 0 };
        let rep = validate_observation_route(&route, &inst);
        assert!(!rep.interior_avoiding);
        assert!(rep.coverage && rep.closed);
    }

    #[test]
    fn oracle_zero_for_common_point() {
        let inst = Instance::new(Rect::from_ints(-10, -10, 20, 10).unwrap(), vec![square(0, 0, 1), square(10, 0, 1)]).unwrap();
        let t = discretized_opt_orp(&inst, 6).unwrap();
        assert_eq!(t.length(), 0.0);
    }

    #[test]
    fn three_in_a_row_regression() {
        // the middle square hides the outer ones from each other only along the axis
        let inst = Instance::new(
            Rect::from_ints(-3, -3, 13, 4).unwrap(),
            vec![square(0, 0, 2), square(4, 0, 2), square(8, 0, 2)],
        )
        .unwrap();
        let t = discretized_opt_orp(&inst, 8).unwrap();
        assert_eq!(t.length(), 0.0, "a point above the row sees all three squares");
        let route = solve_orp(&inst).unwrap();
        assert_eq!(route.length(), 0.0);
    }
}
