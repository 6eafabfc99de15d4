//! Tours visiting polygonal neighbourhoods.
//!
//! `tspn_tour` is a witness heuristic (deepest points, nearest neighbour,
//! 2-opt, touch-point refinement); `exact_small_tspn` is a Held–Karp oracle
//! over discretised regions.

use crate::arrangement::split_segments;
use crate::error::{Error, Result};
use crate::geom::{polyline_length, Location, Point, Rect};
use crate::visibility::PolygonWithHoles;

#[derive(Clone, Debug)]
pub struct RegionSet {
    pub regions: Vec<PolygonWithHoles>,
    pub bbox: Rect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Witness,
    Detour,
}

/// Closed polyline; the closing edge from the last vertex back to the first
/// is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct Tour {
    pub vertices: Vec<Point>,
    pub kinds: Vec<VertexKind>,
    /// Touch point of region (or obstacle) `i`.
    pub witness: Vec<Point>,
}

impl Tour {
    pub fn point(p: Point, regions: usize) -> Tour {
        Tour { vertices: vec![p.clone()], kinds: vec![VertexKind::Witness], witness: vec![p; regions] }
    }

    /// Tour through witnesses in the given visiting order.
    pub fn from_order(witness: Vec<Point>, order: &[usize]) -> Tour {
        let mut vertices: Vec<Point> = Vec::new();
        for &i in order {
            if vertices.last() != Some(&witness[i]) {
                vertices.push(witness[i].clone());
            }
        }
        while vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        let kinds = vec![VertexKind::Witness; vertices.len()];
        Tour { vertices, kinds, witness }
    }

    pub fn length(&self) -> f64 {
        closed_length(&self.vertices)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        let count = if n < 2 { 0 } else { n };
        (0..count).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// True if `p` is a vertex of the tour or lies on one of its edges.
    pub fn passes_through(&self, p: &Point) -> bool {
        self.vertices.contains(p) || self.edges().any(|(a, b)| crate::geom::on_segment(p, a, b))
    }
}

pub fn closed_length(pts: &[Point]) -> f64 {
    if pts.len() < 2 {
        return 0.0;
    }
    polyline_length(pts) + pts[pts.len() - 1].dist(&pts[0])
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// A point common to all regions, if any (lexicographically smallest overlay
/// vertex).
pub fn common_point(regions: &[PolygonWithHoles]) -> Option<Point> {
    let mut common = [f64::NEG_INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::INFINITY];
    for r in regions {
        let b = r.bbox_f64();
        common = [common[0].max(b[0]), common[1].max(b[1]), common[2].min(b[2]), common[3].min(b[3])];
    }
    let tol = 1e-9 * (1.0 + common.iter().map(|v| v.abs()).fold(0.0, f64::max));
    if common[0] > common[2] + tol || common[1] > common[3] + tol {
        return None;
    }
    let near = |a: &Point, b: &Point| {
        !(a.xf().max(b.xf()) < common[0] - tol
            || a.xf().min(b.xf()) > common[2] + tol
            || a.yf().max(b.yf()) < common[1] - tol
            || a.yf().min(b.yf()) > common[3] + tol)
    };
    let segs: Vec<(Point, Point)> = regions
        .iter()
        .flat_map(|r| r.edges().filter(|(a, b)| near(a, b)).map(|(a, b)| (a.clone(), b.clone())))
        .collect();
    let (mut verts, _) = split_segments(&segs);
    verts.sort();
    verts.into_iter().find(|p| regions.iter().all(|r| r.contains(p)))
}

/// `L∞` distance from `c` to segment `ab`.
fn linf_to_segment(c: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (ex, ey) = (a[0] - c[0], a[1] - c[1]);
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let f = |t: f64| (ex + t * dx).abs().max((ey + t * dy).abs());
    let mut best = f(0.0).min(f(1.0));
    for (num, den) in [(ey - ex, dx - dy), (-ey - ex, dx + dy), (-ex, dx), (-ey, dy)] {
        if den.abs() > 1e-300 {
            let t = num / den;
            if (0.0..=1.0).contains(&t) {
                best = best.min(f(t));
            }
        }
    }
    best
}

fn linf_depth(r: &PolygonWithHoles, c: [f64; 2]) -> f64 {
    r.edges()
        .map(|(a, b)| linf_to_segment(c, a.to_f64(), b.to_f64()))
        .fold(f64::INFINITY, f64::min)
}

/// Centre of an approximately largest inscribed axis-parallel square: grid
/// search over the bounding box, zoomed around the best cell.
pub fn deepest_point(r: &PolygonWithHoles) -> Point {
    let b = r.bbox_f64();
    let mut best: Option<(f64, [f64; 2])> = None;
    let (mut lo, mut hi) = ([b[0], b[1]], [b[2], b[3]]);
    for round in 0..8 {
        let k = if round == 0 { 32 } else { 9 };
        for i in 0..k {
            for j in 0..k {
                let c = [
                    lo[0] + (hi[0] - lo[0]) * (i as f64 + 0.5) / k as f64,
                    lo[1] + (hi[1] - lo[1]) * (j as f64 + 0.5) / k as f64,
                ];
                let p = Point::from_f64(c[0], c[1]);
                if r.locate(&p) != Location::Inside {
                    continue;
                }
                let d = linf_depth(r, c);
                if best.is_none_or(|(bd, _)| d > bd) {
                    best = Some((d, c));
                }
            }
        }
        let Some((_, c)) = best else { break };
        let (w, h) = ((hi[0] - lo[0]) / 4.0, (hi[1] - lo[1]) / 4.0);
        lo = [c[0] - w, c[1] - h];
        hi = [c[0] + w, c[1] + h];
    }
    match best {
        Some((_, c)) => Point::from_f64(c[0], c[1]),
        None => fallback_inside(r),
    }
}

/// A point of the region when grid search finds no interior point (thin
/// regions): the midpoint of an outer edge, else a vertex.
fn fallback_inside(r: &PolygonWithHoles) -> Point {
    let n = r.outer.len();
    for i in 0..n {
        let m = r.outer[i].midpoint(&r.outer[(i + 1) % n]);
        if r.contains(&m) {
            return m;
        }
    }
    r.outer[0].clone()
}

/// Nearest-neighbour order from region 0 (ties to the lowest index),
/// improved by 2-opt.
pub fn nn_two_opt(points: &[[f64; 2]]) -> Vec<usize> {
    let n = points.len();
    if n == 0 {
        return Vec::new();
    }
    let mut order = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    for _ in 1..n {
        let last = points[*order.last().unwrap()];
        let mut best: Option<(f64, usize)> = None;
        for j in 0..n {
            if !used[j] {
                let d = dist(last, points[j]);
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, j));
                }
            }
        }
        let j = best.unwrap().1;
        used[j] = true;
        order.push(j);
    }
    two_opt(points, &mut order);
    order
}

pub fn two_opt(points: &[[f64; 2]], order: &mut [usize]) {
    let n = order.len();
    if n < 4 {
        return;
    }
    let mut improved = true;
    let mut guard = 0;
    while improved && guard < 1000 {
        improved = false;
        guard += 1;
        for i in 0..n - 1 {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (points[order[i]], points[order[i + 1]]);
                let (c, d) = (points[order[j]], points[order[(j + 1) % n]]);
                let delta = dist(a, c) + dist(b, d) - dist(a, b) - dist(c, d);
                if delta < -1e-12 * (1.0 + dist(a, b) + dist(c, d)) {
                    order[i + 1..=j].reverse();
                    improved = true;
                }
            }
        }
    }
}

/// Best point of `r` for the detour `prev -> x -> next`, if it beats `cur`.
fn best_touch(r: &PolygonWithHoles, prev: [f64; 2], next: [f64; 2], cur: &Point) -> Option<Point> {
    let cost = |x: [f64; 2]| dist(prev, x) + dist(x, next);
    let cur_cost = cost(cur.to_f64());
    let floor = dist(prev, next);
    if cur_cost <= floor * (1.0 + 1e-12) + 1e-15 {
        return None;
    }
    // a point of the segment prev-next inside the region
    let mut ts = vec![0.0, 1.0];
    let (dx, dy) = (next[0] - prev[0], next[1] - prev[1]);
    for (a, b) in r.edges() {
        let (a, b) = (a.to_f64(), b.to_f64());
        let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
        let den = dx * ey - dy * ex;
        if den.abs() < 1e-300 {
            continue;
        }
        let (wx, wy) = (a[0] - prev[0], a[1] - prev[1]);
        let t = (wx * ey - wy * ex) / den;
        let s = (wx * dy - wy * dx) / den;
        if (-1e-9..=1.0 + 1e-9).contains(&s) && (0.0..=1.0).contains(&t) {
            ts.push(t);
        }
    }
    ts.sort_by(f64::total_cmp);
    let mut probes: Vec<f64> = ts.clone();
    probes.extend(ts.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    let mut candidates: Vec<[f64; 2]> = probes.iter().map(|t| [prev[0] + t * dx, prev[1] + t * dy]).collect();
    // otherwise minimise over boundary edges
    for (a, b) in r.edges() {
        let (a, b) = (a.to_f64(), b.to_f64());
        let at = |t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let g = 0.618_033_988_749_895;
        for _ in 0..60 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if cost(at(m1)) <= cost(at(m2)) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        candidates.push(at((lo + hi) / 2.0));
    }
    candidates.sort_by(|x, y| cost(*x).total_cmp(&cost(*y)));
    let deep = deepest_hint(r);
    for x in candidates {
        if cost(x) >= cur_cost * (1.0 - 1e-12) {
            break;
        }
        for pull in [0.0, 1e-12, 1e-9, 1e-6] {
            let y = [x[0] + (deep[0] - x[0]) * pull, x[1] + (deep[1] - x[1]) * pull];
            let p = Point::from_f64(y[0], y[1]);
            if cost(y) < cur_cost && r.contains(&p) {
                return Some(p);
            }
        }
    }
    None
}

fn deepest_hint(r: &PolygonWithHoles) -> [f64; 2] {
    let n = r.outer.len() as f64;
    let s = r.outer.iter().fold([0.0, 0.0], |s, p| [s[0] + p.xf(), s[1] + p.yf()]);
    [s[0] / n, s[1] / n]
}

/// Touch-point refinement for a fixed visiting order. Length never grows.
pub fn refine_touch_points(order: &[usize], rs: &RegionSet, tour: &Tour) -> Tour {
    refine_with_trace(order, rs, tour).0
}

/// Refinement returning the per-round lengths as well.
pub fn refine_with_trace(order: &[usize], rs: &RegionSet, tour: &Tour) -> (Tour, Vec<f64>) {
    let mut w = tour.witness.clone();
    let k = order.len();
    let len_of = |w: &[Point]| {
        let pts: Vec<Point> = order.iter().map(|&i| w[i].clone()).collect();
        closed_length(&pts)
    };
    let mut trace = vec![len_of(&w)];
    if k >= 2 {
        for _ in 0..200 {
            let before = *trace.last().unwrap();
            for pos in 0..k {
                let i = order[pos];
                let prev = w[order[(pos + k - 1) % k]].to_f64();
                let next = w[order[(pos + 1) % k]].to_f64();
                if let Some(p) = best_touch(&rs.regions[i], prev, next, &w[i]) {
                    w[i] = p;
                }
            }
            let after = len_of(&w);
            trace.push(after);
            if before - after < 1e-7 * before.max(1e-300) {
                break;
            }
        }
    }
    (Tour::from_order(w, order), trace)
}

/// Witness heuristic for TSP with neighbourhoods.
pub fn tspn_tour(rs: &RegionSet) -> Result<Tour> {
    Ok(tspn_tour_with_order(rs)?.0)
}

pub fn tspn_tour_with_order(rs: &RegionSet) -> Result<(Tour, Vec<usize>)> {
    let mut cands = tspn_candidates(rs)?;
    cands.sort_by(|a, b| a.0.length().total_cmp(&b.0.length()));
    Ok(cands.swap_remove(0))
}

/// Refined tours from several starts (deepest points, and every region
/// pulled towards up to sixteen hubs), with their visiting orders. A single
/// point tour if the regions share a point.
pub fn tspn_candidates(rs: &RegionSet) -> Result<Vec<(Tour, Vec<usize>)>> {
    let n = rs.regions.len();
    if n == 0 {
        return Err(Error::EmptyRegionSet);
    }
    if let Some(p) = common_point(&rs.regions) {
        return Ok(vec![(Tour::point(p, n), (0..n).collect())]);
    }
    let deep: Vec<Point> = rs.regions.iter().map(deepest_point).collect();
    let mut starts = vec![deep.clone()];
    let hubs = n.min(16);
    for h in 0..hubs {
        let hub = &deep[h * n / hubs];
        let hf = hub.to_f64();
        let w = rs
            .regions
            .iter()
            .zip(&deep)
            .map(|(r, d)| if r.contains(hub) { hub.clone() } else { best_touch(r, hf, hf, d).unwrap_or_else(|| d.clone()) })
            .collect();
        starts.push(w);
    }
    Ok(starts.into_iter().map(|w| improve_from(rs, w)).collect())
}

/// Order by nearest neighbour and 2-opt, refine touch points, then drop
/// regions that the tour crosses anyway.
fn improve_from(rs: &RegionSet, witness: Vec<Point>) -> (Tour, Vec<usize>) {
    let pts: Vec<[f64; 2]> = witness.iter().map(|p| p.to_f64()).collect();
    let mut order = nn_two_opt(&pts);
    let mut tour = refine_touch_points(&order, rs, &Tour::from_order(witness, &order));
    loop {
        let mut dropped = false;
        for pos in 0..order.len() {
            if order.len() <= 1 {
                break;
            }
            let mut rest = order.clone();
            rest.remove(pos);
            let cand = Tour::from_order(tour.witness.clone(), &rest);
            if let Some(t) = with_dropped_hits(rs, &rest, cand) {
                order = rest;
                tour = t;
                dropped = true;
                break;
            }
        }
        if !dropped {
            break;
        }
        let refined = refine_touch_points(&order, rs, &tour);
        if let Some(t) = with_dropped_hits(rs, &order, refined) {
            tour = t;
        }
    }
    let tour = with_dropped_hits(rs, &order, tour).expect("dropped regions are crossed");
    (tour, order)
}

/// Re-derives witnesses of regions missing from `order`; `None` if one of
/// them is no longer crossed.
fn with_dropped_hits(rs: &RegionSet, order: &[usize], mut tour: Tour) -> Option<Tour> {
    for i in 0..rs.regions.len() {
        if !order.contains(&i) {
            tour.witness[i] = tour_hit(&rs.regions[i], &tour)?;
        }
    }
    Some(tour)
}

/// A point of the tour lying in `r`.
fn tour_hit(r: &PolygonWithHoles, tour: &Tour) -> Option<Point> {
    if let Some(v) = tour.vertices.iter().find(|v| r.contains(v)) {
        return Some(v.clone());
    }
    for (a, b) in tour.edges() {
        let (pa, pb) = (a.to_f64(), b.to_f64());
        let (dx, dy) = (pb[0] - pa[0], pb[1] - pa[1]);
        let mut ts = vec![0.0, 1.0];
        for (c, d) in r.edges() {
            let (c, d) = (c.to_f64(), d.to_f64());
            let (ex, ey) = (d[0] - c[0], d[1] - c[1]);
            let den = dx * ey - dy * ex;
            if den.abs() < 1e-300 {
                continue;
            }
            let (wx, wy) = (c[0] - pa[0], c[1] - pa[1]);
            let t = (wx * ey - wy * ex) / den;
            let s = (wx * dy - wy * dx) / den;
            if (-1e-9..=1.0 + 1e-9).contains(&s) && (0.0..=1.0).contains(&t) {
                ts.push(t);
            }
        }
        ts.sort_by(f64::total_cmp);
        let probes = ts.iter().copied().chain(ts.windows(2).map(|w| (w[0] + w[1]) / 2.0));
        for t in probes {
            let p = a.lerp(b, &crate::geom::rational_approx(t, 40));
            if r.contains(&p) {
                return Some(p);
            }
        }
    }
    None
}

/// Held–Karp over groups of candidate nodes: visit one node per group on a
/// closed tour of minimum total `dist`. Returns the chosen node per group
/// and the group visiting order.
pub fn group_tsp(groups: &[Vec<usize>], dist: &dyn Fn(usize, usize) -> f64) -> Option<(Vec<usize>, Vec<usize>, f64)> {
    let n = groups.len();
    if n == 0 || groups.iter().any(|g| g.is_empty()) {
        return None;
    }
    if n == 1 {
        return Some((vec![groups[0][0]], vec![0], 0.0));
    }
    // flatten nodes
    let mut node_group = Vec::new();
    let mut node_id = Vec::new();
    let mut group_nodes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (g, members) in groups.iter().enumerate() {
        for &v in members {
            group_nodes[g].push(node_id.len());
            node_group.push(g);
            node_id.push(v);
        }
    }
    let total = node_id.len();
    let d: Vec<f64> = (0..total * total).map(|k| dist(node_id[k / total], node_id[k % total])).collect();
    let s0 = (0..n).min_by_key(|&g| groups[g].len()).unwrap();
    let full = (1usize << n) - 1;
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut dp = vec![f64::INFINITY; (full + 1) * total];
    let mut parent = vec![usize::MAX; (full + 1) * total];
    for &s in &group_nodes[s0] {
        dp.iter_mut().for_each(|x| *x = f64::INFINITY);
        dp[(1 << s0) * total + s] = 0.0;
        for mask in 0..=full {
            if mask & (1 << s0) == 0 {
                continue;
            }
            for u in 0..total {
                let cur = dp[mask * total + u];
                if !cur.is_finite() {
                    continue;
                }
                for g in 0..n {
                    if mask & (1 << g) != 0 {
                        continue;
                    }
                    let nm = mask | (1 << g);
                    for &v in &group_nodes[g] {
                        let c = cur + d[u * total + v];
                        if c < dp[nm * total + v] {
                            dp[nm * total + v] = c;
                            parent[nm * total + v] = u;
                        }
                    }
                }
            }
        }
        for u in 0..total {
            let c = dp[full * total + u] + d[u * total + s];
            if c.is_finite() && best.as_ref().is_none_or(|(b, _)| c < *b - 1e-15) {
                // unwind
                let mut path = vec![u];
                let mut mask = full;
                let mut v = u;
                while mask != (1 << s0) {
                    let p = parent[mask * total + v];
                    mask &= !(1 << node_group[v]);
                    v = p;
                    path.push(v);
                }
                path.reverse();
                best = Some((c, path));
            }
        }
    }
    let (len, path) = best?;
    let mut chosen = vec![0; n];
    let mut order = Vec::with_capacity(n);
    for &v in &path {
        chosen[node_group[v]] = node_id[v];
        order.push(node_group[v]);
    }
    Some((chosen, order, len))
}

/// Candidate points of a region: outer and hole vertices, edge midpoints
/// and the deepest point, capped by even striding.
pub fn region_candidates(r: &PolygonWithHoles, cap: usize) -> Vec<Point> {
    let deep = deepest_point(r);
    let mut pts: Vec<Point> = Vec::new();
    for ring in r.rings() {
        let n = ring.len();
        for i in 0..n {
            pts.push(ring[i].clone());
            pts.push(ring[i].midpoint(&ring[(i + 1) % n]));
        }
    }
    pts.sort();
    pts.dedup();
    let cap = cap.max(1);
    let mut out = vec![deep];
    if pts.len() + 1 > cap {
        let stride = pts.len() as f64 / (cap - 1).max(1) as f64;
        for k in 0..cap - 1 {
            out.push(pts[((k as f64 * stride) as usize).min(pts.len() - 1)].clone());
        }
    } else {
        out.extend(pts);
    }
    out.dedup();
    out
}

/// Held–Karp oracle over discretised regions (at most nine), followed by
/// touch-point refinement along the optimal order.
pub fn exact_small_tspn(rs: &RegionSet, candidates_per_region: usize) -> Result<Tour> {
    let n = rs.regions.len();
    if n == 0 {
        return Err(Error::EmptyRegionSet);
    }
    if n > 9 {
        return Err(Error::TooManyRegions(n, 9));
    }
    if let Some(p) = common_point(&rs.regions) {
        return Ok(Tour::point(p, n));
    }
    let mut pool: Vec<Point> = Vec::new();
    let mut groups = Vec::with_capacity(n);
    for r in &rs.regions {
        let c = region_candidates(r, candidates_per_region);
        let ids = (pool.len()..pool.len() + c.len()).collect();
        pool.extend(c);
        groups.push(ids);
    }
    let fp: Vec<[f64; 2]> = pool.iter().map(|p| p.to_f64()).collect();
    let (chosen, order, _) =
        group_tsp(&groups, &|a, b| dist(fp[a], fp[b])).ok_or(Error::EmptyRegionSet)?;
    let witness: Vec<Point> = chosen.iter().map(|&k| pool[k].clone()).collect();
    let start = Tour::from_order(witness, &order);
    Ok(refine_touch_points(&order, rs, &start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat, ConvexPolygon};

    fn rect_region(x0: i64, y0: i64, x1: i64, y1: i64) -> PolygonWithHoles {
        let c = ConvexPolygon::from_ints(&[(x0, y0), (x1, y0), (x1, y1), (x0, y1)]).unwrap();
        PolygonWithHoles { outer: c.vertices().to_vec(), holes: vec![] }
    }

    fn rs(regions: Vec<PolygonWithHoles>) -> RegionSet {
        RegionSet { regions, bbox: Rect::from_ints(-100, -100, 100, 100).unwrap() }
    }

    fn valid(t: &Tour, r: &RegionSet) -> bool {
        t.witness.iter().zip(&r.regions).all(|(w, reg)| reg.contains(w) && t.passes_through(w))
    }

    #[test]
    fn common_origin_gives_zero_tour() {
        let r = rs(vec![rect_region(-1, -1, 1, 1), rect_region(0, -3, 2, 0), rect_region(-5, -5, 0, 0)]);
        let t = tspn_tour(&r).unwrap();
        assert_eq!(t.length(), 0.0);
        assert!(valid(&t, &r));
        assert_eq!(t.vertices[0], Point::from_ints(0, -1));
    }

    #[test]
    fn single_region_zero_tour() {
        let r = rs(vec![rect_region(0, 0, 1, 1)]);
        let t = tspn_tour(&r).unwrap();
        assert_eq!(t.length(), 0.0);
        assert!(valid(&t, &r));
        assert_eq!(tspn_tour(&rs(vec![])), Err(Error::EmptyRegionSet));
    }

    #[test]
    fn two_regions_give_doubled_bridge() {
        let r = rs(vec![rect_region(0, 0, 1, 1), rect_region(4, 0, 5, 1)]);
        let t = exact_small_tspn(&r, 40).unwrap();
        assert!((t.length() - 6.0).abs() < 1e-6, "{}", t.length());
        assert!(valid(&t, &r));
        let h = tspn_tour(&r).unwrap();
        assert!((h.length() - 6.0).abs() < 1e-6);
    }

    #[test]
    fn thin_rectangles_touch_at_closest_points() {
        let a = rect_region(0, 0, 1, 10);
        let b = PolygonWithHoles {
            outer: vec![
                Point::new(int(3), int(4)),
                Point::new(int(4), int(4)),
                Point::new(int(4), int(5)),
                Point::new(int(3), int(5)),
            ],
            holes: vec![],
        };
        let r = rs(vec![a, b]);
        let start = Tour::from_order(vec![Point::new(rat(1, 2), int(9)), Point::new(rat(7, 2), rat(9, 2))], &[0, 1]);
        let t = refine_touch_points(&[0, 1], &r, &start);
        assert!((t.length() - 4.0).abs() < 1e-6, "{}", t.length());
        assert!(t.length() <= start.length());
    }

    #[test]
    fn square_corners_oracle() {
        let r = rs(vec![
            rect_region(0, 0, 1, 1),
            rect_region(9, 0, 10, 1),
            rect_region(9, 9, 10, 10),
            rect_region(0, 9, 1, 10),
        ]);
        let exact = exact_small_tspn(&r, 40).unwrap();
        assert!((exact.length() - 32.0).abs() < 1e-6, "{}", exact.length());
        let h = tspn_tour(&r).unwrap();
        assert!(valid(&h, &r));
        assert!(h.length() <= 1.5 * exact.length());
    }

    #[test]
    fn group_tsp_matches_brute_force() {
        let pts: Vec<[f64; 2]> = vec![[0.0, 0.0], [3.0, 1.0], [1.0, 4.0], [5.0, 5.0], [2.0, 2.0], [6.0, 0.0]];
        let groups = vec![vec![0, 4], vec![1, 5], vec![2], vec![3]];
        let d = |a: usize, b: usize| dist(pts[a], pts[b]);
        let (_, _, len) = group_tsp(&groups, &d).unwrap();
        let mut best = f64::INFINITY;
        for &a in &groups[0] {
            for &b in &groups[1] {
                let perms = [[b, 2, 3], [b, 3, 2], [2, b, 3], [2, 3, b], [3, b, 2], [3, 2, b]];
                for p in perms {
                    let l = d(a, p[0]) + d(p[0], p[1]) + d(p[1], p[2]) + d(p[2], a);
                    best = best.min(l);
                }
            }
        }
        assert!((len - best).abs() < 1e-9);
    }

    #[test]
    fn linf_distance_examples() {
        assert!((linf_to_segment([0.0, 0.0], [1.0, -5.0], [1.0, 5.0]) - 1.0).abs() < 1e-12);
        assert!((linf_to_segment([0.0, 0.0], [2.0, 3.0], [3.0, 2.0]) - 2.5).abs() < 1e-12);
    }
}
