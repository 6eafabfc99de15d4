//! Object visibility among disjoint convex obstacles.
//!
//! A viewpoint `p` sees obstacle `T` when some segment from `p` to a point of
//! `∂T` avoids every open obstacle interior. Grazing contact is allowed, so
//! visibility regions are closed.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::arrangement::{split_segments, Arrangement};
use crate::error::{Error, Result};
use crate::geom::{
    common_tangents, int, locate_in_ring, orient_sign, point_segment_dist_f64, ring_area2,
    simplify_ring, ConvexPolygon, Location, Point, Rational, Rect, Vector,
};

/// Bounding rectangle plus pairwise disjoint convex obstacles (0-based).
#[derive(Clone, Debug)]
pub struct Instance {
    bbox: Rect,
    obstacles: Vec<ConvexPolygon>,
    aabbs: Vec<[f64; 4]>,
    /// `separators[i][j]` for `i < j`: a line with obstacle `i` on its closed
    /// left side and obstacle `j` on its closed right side, one of them
    /// strictly.
    separators: Vec<Vec<(Point, Point)>>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.bbox == other.bbox && self.obstacles == other.obstacles
    }
}

impl Instance {
    pub fn new(bbox: Rect, obstacles: Vec<ConvexPolygon>) -> Result<Self> {
        for (i, o) in obstacles.iter().enumerate() {
            if !o.vertices().iter().all(|v| bbox.contains_strictly(v)) {
                return Err(Error::InvalidInstance(format!(
                    "obstacle {i} is not strictly inside the box"
                )));
            }
        }
        let aabbs: Vec<[f64; 4]> = obstacles.iter().map(|o| o.bbox_f64()).collect();
        let n = obstacles.len();
        let mut separators = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n - i - 1);
            for j in (i + 1)..n {
                row.push(separator(&obstacles[i], &aabbs[i], &obstacles[j], &aabbs[j]).ok_or_else(
                    || Error::InvalidInstance(format!("obstacles {i} and {j} are not disjoint")),
                )?);
            }
            separators.push(row);
        }
        Ok(Instance { bbox, obstacles, aabbs, separators })
    }

    pub fn bbox(&self) -> &Rect {
        &self.bbox
    }

    pub fn obstacles(&self) -> &[ConvexPolygon] {
        &self.obstacles
    }

    pub fn obstacle(&self, i: usize) -> Result<&ConvexPolygon> {
        self.obstacles.get(i).ok_or(Error::NoSuchObstacle(i))
    }

    pub fn len(&self) -> usize {
        self.obstacles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.obstacles.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.obstacles.iter().map(|o| o.len()).sum()
    }

    pub fn aabb(&self, i: usize) -> [f64; 4] {
        self.aabbs[i]
    }

    /// Instance without obstacle `k`.
    pub fn without(&self, k: usize) -> Result<Instance> {
        let obs = self
            .obstacles
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, o)| o.clone())
            .collect();
        Instance::new(self.bbox.clone(), obs)
    }

    /// Smallest fatness over the obstacles.
    pub fn min_fatness(&self) -> f64 {
        self.obstacles.iter().map(|o| o.fatness()).fold(1.0, f64::min)
    }

    fn near_aabb(&self, i: usize, p: &Point) -> bool {
        let b = &self.aabbs[i];
        let tol = 1e-9 * (1.0 + b[2].abs().max(b[3].abs()).max(b[0].abs()).max(b[1].abs()));
        p.xf() >= b[0] - tol && p.xf() <= b[2] + tol && p.yf() >= b[1] - tol && p.yf() <= b[3] + tol
    }

    /// Index of an obstacle whose open interior contains `p`.
    pub fn interior_owner(&self, p: &Point) -> Option<usize> {
        (0..self.len()).find(|&i| self.near_aabb(i, p) && self.obstacles[i].contains_interior(p))
    }

    pub fn is_free(&self, p: &Point) -> bool {
        self.bbox.contains(p) && self.interior_owner(p).is_none()
    }

    /// True if the closed segment avoids every open interior.
    pub fn segment_is_free(&self, a: &Point, b: &Point) -> bool {
        (0..self.len()).all(|i| {
            !segment_near_aabb(a, b, &self.aabbs[i]) || !self.obstacles[i].segment_crosses_interior(a, b)
        })
    }

    /// Is obstacle `o` possibly in front of `t` as seen from `p`?
    fn in_front(&self, o: usize, t: usize, p: &Point) -> bool {
        let (i, j) = if o < t { (o, t) } else { (t, o) };
        let (a, b) = &self.separators[i][j - i - 1];
        let s = orient_sign(a, b, p);
        // obstacle i lies left, j right; skip o when p is strictly on t's side
        if t == i {
            s <= 0
        } else {
            s >= 0
        }
    }

    /// Exact object-visibility predicate.
    pub fn sees(&self, p: &Point, target: usize) -> Result<bool> {
        Ok(!self.visible_gaps(p, target, true)?.is_empty())
    }

    /// Directions from `p` along which `∂target` is visible.
    pub fn visible_directions(&self, p: &Point, target: usize) -> Result<AngularIntervalSet> {
        let gaps = self.visible_gaps(p, target, false)?;
        let intervals = gaps
            .into_iter()
            .map(|(s, si, e, ei)| DirectionInterval {
                start: s.vector(),
                start_closed: si,
                end: e.vector(),
                end_closed: ei,
            })
            .collect();
        Ok(AngularIntervalSet { viewpoint: p.clone(), intervals })
    }

    fn visible_gaps<'a>(
        &'a self,
        p: &'a Point,
        target: usize,
        first_only: bool,
    ) -> Result<Vec<(Dir<'a>, bool, Dir<'a>, bool)>> {
        let t = self.obstacle(target)?;
        let mut on_boundary = Vec::new();
        for i in 0..self.len() {
            if !self.near_aabb(i, p) {
                continue;
            }
            match self.obstacles[i].locate(p) {
                Location::Inside => return Err(Error::PointInsideObstacle(i)),
                Location::Boundary => on_boundary.push(i),
                Location::Outside => {}
            }
        }
        if on_boundary.contains(&target) {
            let d = Dir { from: p, to: p };
            return Ok(vec![(d, true, d, true)]);
        }
        let (ri, li) = t.tangent_indices(p)?;
        let r = Dir { from: p, to: t.vertex(ri) };
        let l = Dir { from: p, to: t.vertex(li) };
        let reach = t
            .vertices()
            .iter()
            .map(|v| (v.xf() - p.xf()).hypot(v.yf() - p.yf()))
            .fold(0.0, f64::max);
        let reach = reach * (1.0 + 1e-9) + 1e-12;
        let mut blocked: Vec<(Dir, bool, Dir, bool)> = Vec::new();
        for oi in 0..self.len() {
            if oi == target || aabb_distance(&self.aabbs[oi], p) > reach {
                continue;
            }
            if !self.in_front(oi, target, p) {
                continue;
            }
            let o = &self.obstacles[oi];
            let (a, b, half_plane) = if on_boundary.contains(&oi) {
                match o.vertices().iter().position(|v| v == p) {
                    Some(k) => (
                        Dir { from: p, to: o.vertex(k + 1) },
                        Dir { from: p, to: o.vertex(k + o.len() - 1) },
                        false,
                    ),
                    None => {
                        let e = o.edge_containing(p).ok_or(Error::Invariant("boundary edge".into()))?;
                        let (u, v) = o.edge(e);
                        (Dir { from: u, to: v }, Dir { from: v, to: u }, true)
                    }
                }
            } else {
                let (ro, lo) = o.tangent_indices(p)?;
                (Dir { from: p, to: o.vertex(ro) }, Dir { from: p, to: o.vertex(lo) }, false)
            };
            let in_o = |d: Dir, strict: bool| {
                let s1 = dir_cross(a, d);
                let s2 = if half_plane { 1 } else { dir_cross(d, b) };
                if strict {
                    s1 > 0 && s2 > 0
                } else {
                    s1 >= 0 && s2 >= 0
                }
            };
            let in_t = |d: Dir| dir_cross(r, d) >= 0 && dir_cross(d, l) >= 0;
            let start = if in_o(r, false) {
                (r, in_o(r, true))
            } else if in_t(a) {
                (a, false)
            } else {
                continue;
            };
            let end = if in_o(l, false) {
                (l, in_o(l, true))
            } else if in_t(b) {
                (b, false)
            } else {
                continue;
            };
            let c = dir_cross(start.0, end.0);
            if c < 0 || (c == 0 && !(start.1 && end.1)) {
                continue;
            }
            blocked.push((start.0, start.1, end.0, end.1));
        }
        blocked.sort_by(|x, y| match dir_cross(x.0, y.0) {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => y.1.cmp(&x.1),
        });
        let mut gaps = Vec::new();
        let mut pos = r;
        let mut need = true;
        for &(s, si, e, ei) in &blocked {
            let c = dir_cross(pos, s);
            if c > 0 {
                gaps.push((pos, need, s, !si));
                if first_only {
                    return Ok(gaps);
                }
            } else if c == 0 && need && !si {
                gaps.push((pos, true, pos, true));
                if first_only {
                    return Ok(gaps);
                }
            }
            let ce = dir_cross(pos, e);
            if ce > 0 {
                pos = e;
                need = !ei;
            } else if ce == 0 {
                need = need && !ei;
            }
        }
        let c = dir_cross(pos, l);
        if c > 0 {
            gaps.push((pos, need, l, true));
        } else if need {
            gaps.push((pos, true, pos, true));
        }
        Ok(gaps)
    }
}

fn aabb_distance(b: &[f64; 4], p: &Point) -> f64 {
    let dx = (b[0] - p.xf()).max(0.0).max(p.xf() - b[2]);
    let dy = (b[1] - p.yf()).max(0.0).max(p.yf() - b[3]);
    dx.hypot(dy)
}

/// Conservative `f64` test: may the segment touch the (slightly enlarged) box?
pub fn segment_near_aabb(a: &Point, b: &Point, bb: &[f64; 4]) -> bool {
    let tol = 1e-9 * (1.0 + bb[2].abs().max(bb[3].abs()).max(bb[0].abs()).max(bb[1].abs()));
    let (x0, y0) = (a.xf(), a.yf());
    let (dx, dy) = (b.xf() - x0, b.yf() - y0);
    let mut t0: f64 = 0.0;
    let mut t1: f64 = 1.0;
    for (d, lo, hi, o) in [(dx, bb[0] - tol, bb[2] + tol, x0), (dy, bb[1] - tol, bb[3] + tol, y0)] {
        if d.abs() < 1e-300 {
            if o < lo || o > hi {
                return false;
            }
            continue;
        }
        let (mut ta, mut tb) = ((lo - o) / d, (hi - o) / d);
        if ta > tb {
            std::mem::swap(&mut ta, &mut tb);
        }
        t0 = t0.max(ta);
        t1 = t1.min(tb);
    }
    t0 <= t1 + 1e-9
}

/// Separating line for two disjoint polygons: first on the closed left,
/// second on the closed right.
fn separator(
    p: &ConvexPolygon,
    pb: &[f64; 4],
    q: &ConvexPolygon,
    qb: &[f64; 4],
) -> Option<(Point, Point)> {
    let gap = |lo: f64, hi: f64| lo - hi > 1e-9 * (1.0 + lo.abs().max(hi.abs()));
    let max_by = |c: &ConvexPolygon, f: &dyn Fn(&Point, &Point) -> Ordering| {
        c.vertices().iter().max_by(|a, b| f(a, b)).unwrap().clone()
    };
    let min_by = |c: &ConvexPolygon, f: &dyn Fn(&Point, &Point) -> Ordering| {
        c.vertices().iter().min_by(|a, b| f(a, b)).unwrap().clone()
    };
    let vline = |x: &Point, up: bool| {
        let y1 = if up { x.y() + int(1) } else { x.y() - int(1) };
        (x.clone(), Point::new(x.x().clone(), y1))
    };
    let hline = |y: &Point, right: bool| {
        let x1 = if right { y.x() + int(1) } else { y.x() - int(1) };
        (y.clone(), Point::new(x1, y.y().clone()))
    };
    if gap(qb[0], pb[2]) {
        // p left of q: upward line keeps p on its left
        return Some(vline(&max_by(p, &|a, b| a.cmp_x(b)), true));
    }
    if gap(pb[0], qb[2]) {
        return Some(vline(&min_by(p, &|a, b| a.cmp_x(b)), false));
    }
    if gap(qb[1], pb[3]) {
        // p below q: leftward line keeps p on its left
        return Some(hline(&max_by(p, &|a, b| a.cmp_y(b)), false));
    }
    if gap(pb[1], qb[3]) {
        return Some(hline(&min_by(p, &|a, b| a.cmp_y(b)), true));
    }
    match p.separating_edge(q)? {
        (false, i) => {
            let (a, b) = p.edge(i);
            Some((a.clone(), b.clone()))
        }
        (true, i) => {
            let (a, b) = q.edge(i);
            Some((b.clone(), a.clone()))
        }
    }
}

/// Direction `to - from`, compared through a filtered cross product.
#[derive(Clone, Copy, Debug)]
struct Dir<'a> {
    from: &'a Point,
    to: &'a Point,
}

impl Dir<'_> {
    fn vector(&self) -> Vector {
        self.to.sub(self.from)
    }
}

fn dir_cross(d1: Dir, d2: Dir) -> i32 {
    let (ax, ay) = (d1.to.xf() - d1.from.xf(), d1.to.yf() - d1.from.yf());
    let (bx, by) = (d2.to.xf() - d2.from.xf(), d2.to.yf() - d2.from.yf());
    let det = ax * by - ay * bx;
    let s1 = (d1.to.xf().abs() + d1.from.xf().abs()) * (d2.to.yf().abs() + d2.from.yf().abs());
    let s2 = (d1.to.yf().abs() + d1.from.yf().abs()) * (d2.to.xf().abs() + d2.from.xf().abs());
    let bound = 1e-14 * (s1 + s2);
    if bound > 1e-280 && bound.is_finite() && det.abs() > bound {
        return if det > 0.0 { 1 } else { -1 };
    }
    let c = d1.vector().cross(&d2.vector());
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// One interval of directions, counter-clockwise from `start` to `end`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionInterval {
    pub start: Vector,
    pub start_closed: bool,
    pub end: Vector,
    pub end_closed: bool,
}

/// Sorted disjoint direction intervals around a viewpoint. A zero vector
/// stands for "every direction" (viewpoint on the target boundary).
#[derive(Clone, Debug, PartialEq)]
pub struct AngularIntervalSet {
    pub viewpoint: Point,
    pub intervals: Vec<DirectionInterval>,
}

impl AngularIntervalSet {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Closed polygonal region: counter-clockwise outer ring minus clockwise holes.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonWithHoles {
    pub outer: Vec<Point>,
    pub holes: Vec<Vec<Point>>,
}

impl PolygonWithHoles {
    pub fn vertex_count(&self) -> usize {
        self.outer.len() + self.holes.iter().map(|h| h.len()).sum::<usize>()
    }

    pub fn rings(&self) -> impl Iterator<Item = &Vec<Point>> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }

    pub fn locate(&self, p: &Point) -> Location {
        match locate_in_ring(p, &self.outer) {
            Location::Outside => return Location::Outside,
            Location::Boundary => return Location::Boundary,
            Location::Inside => {}
        }
        for h in &self.holes {
            match locate_in_ring(p, h) {
                Location::Inside => return Location::Outside,
                Location::Boundary => return Location::Boundary,
                Location::Outside => {}
            }
        }
        Location::Inside
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.locate(p) != Location::Outside
    }

    /// Boundary edges as point pairs.
    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.rings().flat_map(|r| {
            let n = r.len();
            (0..n).map(move |i| (&r[i], &r[(i + 1) % n]))
        })
    }

    pub fn boundary_distance_f64(&self, p: [f64; 2]) -> f64 {
        self.edges()
            .map(|(a, b)| point_segment_dist_f64(p, a.to_f64(), b.to_f64()))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn area_f64(&self) -> f64 {
        self.rings().map(|r| crate::geom::ring_area_f64(r)).sum()
    }

    pub fn bbox_f64(&self) -> [f64; 4] {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for v in &self.outer {
            b[0] = b[0].min(v.xf());
            b[1] = b[1].min(v.yf());
            b[2] = b[2].max(v.xf());
            b[3] = b[3].max(v.yf());
        }
        b
    }
}

/// A common-tangent ray, cut at its first interior crossing or the box.
#[derive(Clone, Debug)]
pub struct TangentRay {
    pub start: Point,
    pub end: Point,
    pub pair: (usize, usize),
    /// Obstacles whose visibility regions may be bounded by this ray.
    pub reaches: Vec<usize>,
}

impl Instance {
    /// Far endpoint of the ray `s + t u` on the box boundary.
    fn box_exit(&self, s: &Point, u: &Vector) -> Point {
        let mut best: Option<Rational> = None;
        let mut take = |t: Rational| {
            if best.as_ref().is_none_or(|b| &t < b) {
                best = Some(t);
            }
        };
        if u.x.is_positive() {
            take((self.bbox.max.x() - s.x()) / &u.x);
        } else if u.x.is_negative() {
            take((self.bbox.min.x() - s.x()) / &u.x);
        }
        if u.y.is_positive() {
            take((self.bbox.max.y() - s.y()) / &u.y);
        } else if u.y.is_negative() {
            take((self.bbox.min.y() - s.y()) / &u.y);
        }
        s.add(&u.scale(&best.expect("nonzero direction")))
    }

    /// Casts `s -> far`; returns the stop point at the first interior entry
    /// and the obstacles met (closed contact) up to and including it.
    fn cast(&self, s: &Point, far: &Point) -> (Point, Vec<usize>) {
        let mut hits: Vec<(Rational, usize, bool)> = Vec::new();
        for i in 0..self.len() {
            if !segment_near_aabb(s, far, &self.aabbs[i]) {
                continue;
            }
            let o = &self.obstacles[i];
            if let Some((t0, t1)) = o.clip_segment(s, far) {
                let interior = t0 < t1 && {
                    let mid = s.lerp(far, &((&t0 + &t1) / int(2)));
                    o.contains_interior(&mid)
                };
                hits.push((t0, i, interior));
            }
        }
        let entry = hits
            .iter()
            .filter(|h| h.2)
            .map(|h| h.0.clone())
            .min()
            .unwrap_or_else(Rational::one);
        let met = hits.iter().filter(|h| h.0 <= entry).map(|h| h.1).collect();
        let stop = if entry.is_one() { far.clone() } else { s.lerp(far, &entry) };
        (stop, met)
    }

    /// All common-tangent rays of obstacle pairs whose gap is free.
    pub fn tangent_rays(&self) -> Result<Vec<TangentRay>> {
        let mut out = Vec::new();
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                for tan in common_tangents(&self.obstacles[i], &self.obstacles[j])? {
                    let near_i = &tan.touch_first[0];
                    let near_j = &tan.touch_second[0];
                    if !self.segment_is_free(near_i, near_j) {
                        continue;
                    }
                    let far_i = tan.touch_first.last().unwrap();
                    let far_j = tan.touch_second.last().unwrap();
                    let u = near_i.sub(near_j);
                    for (a, far_a, far_b, dir, partner) in
                        [(i, far_i, far_j, u.clone(), j), (j, far_j, far_i, u.neg(), i)]
                    {
                        // continuation through the partner decides relevance
                        let cont_end = self.box_exit(far_b, &dir.neg());
                        let (_, mut reaches) = self.cast(far_b, &cont_end);
                        reaches.retain(|&k| k != a);
                        if !reaches.contains(&partner) {
                            reaches.push(partner);
                        }
                        reaches.sort_unstable();
                        reaches.dedup();
                        let far = self.box_exit(far_a, &dir);
                        let (stop, _) = self.cast(far_a, &far);
                        if &stop == far_a {
                            continue;
                        }
                        out.push(TangentRay { start: far_a.clone(), end: stop, pair: (a, partner), reaches });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Horizontal segments from each obstacle's leftmost-lowest vertex to
    /// whatever lies to its left; they make obstacle arrangements connected.
    pub fn connectors(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for o in &self.obstacles {
            let v = o.vertices().iter().min().unwrap();
            let far = Point::new(self.bbox.min.x().clone(), v.y().clone());
            let (stop, _) = self.cast_contact(v, &far);
            out.push((v.clone(), stop));
        }
        out
    }

    /// First closed contact of `s -> far` with an obstacle not containing `s`.
    fn cast_contact(&self, s: &Point, far: &Point) -> (Point, Option<usize>) {
        let mut best: Option<(Rational, usize)> = None;
        for i in 0..self.len() {
            if !segment_near_aabb(s, far, &self.aabbs[i]) || self.obstacles[i].contains(s) {
                continue;
            }
            if let Some((t0, _)) = self.obstacles[i].clip_segment(s, far) {
                if best.as_ref().is_none_or(|b| t0 < b.0) {
                    best = Some((t0, i));
                }
            }
        }
        match best {
            Some((t, i)) => (s.lerp(far, &t), Some(i)),
            None => (far.clone(), None),
        }
    }

    fn base_segments(&self) -> Vec<(Point, Point)> {
        let c = self.bbox.corners();
        let mut segs: Vec<(Point, Point)> = (0..4).map(|i| (c[i].clone(), c[(i + 1) % 4].clone())).collect();
        for o in &self.obstacles {
            segs.extend(o.edges().map(|(a, b)| (a.clone(), b.clone())));
        }
        segs
    }

    /// Region of points that see obstacle `target`.
    pub fn visibility_region(&self, target: usize) -> Result<PolygonWithHoles> {
        let rays = self.tangent_rays()?;
        self.visibility_region_with(target, &rays)
    }

    pub fn visibility_region_with(&self, target: usize, rays: &[TangentRay]) -> Result<PolygonWithHoles> {
        self.obstacle(target)?;
        let (arr, inside) = self.classified_arrangement(target, rays)?;
        if arr.component_count(&inside) != 1 {
            return Err(Error::Invariant(format!("visibility region of {target} is disconnected")));
        }
        let cycles = arr.trace_union_boundary(&inside)?;
        let mut outer: Vec<Vec<Point>> = Vec::new();
        let mut holes = Vec::new();
        for c in cycles {
            let c = simplify_ring(&c);
            if c.len() < 3 {
                continue;
            }
            if ring_area2(&c).is_positive() {
                outer.push(c);
            } else {
                holes.push(c);
            }
        }
        if outer.len() != 1 {
            return Err(Error::Invariant(format!("{} outer boundaries", outer.len())));
        }
        Ok(PolygonWithHoles { outer: outer.pop().unwrap(), holes })
    }

    /// Arrangement for `target` with per-face visibility flags.
    pub fn classified_arrangement(
        &self,
        target: usize,
        rays: &[TangentRay],
    ) -> Result<(Arrangement, Vec<bool>)> {
        let mut segs = self.base_segments();
        segs.extend(
            rays.iter()
                .filter(|r| r.reaches.contains(&target))
                .map(|r| (r.start.clone(), r.end.clone())),
        );
        segs.extend(self.connectors());
        let arr = Arrangement::build(&segs)?;
        let mut inside = vec![false; arr.faces.len()];
        for (f, flag) in inside.iter_mut().enumerate() {
            let Some(x) = arr.face_sample(f) else { continue };
            if self.interior_owner(&x).is_some() {
                continue;
            }
            *flag = self.sees(&x, target)?;
        }
        Ok((arr, inside))
    }

    /// Vertices and atomic edges of the arrangement of all tangent rays.
    pub fn global_arrangement(&self) -> Result<(Vec<Point>, Vec<[usize; 2]>)> {
        let mut segs = self.base_segments();
        segs.extend(self.tangent_rays()?.into_iter().map(|r| (r.start, r.end)));
        Ok(split_segments(&segs))
    }

    pub fn sees_all(&self, p: &Point) -> bool {
        self.interior_owner(p).is_none()
            && (0..self.len()).all(|t| self.sees(p, t).unwrap_or(false))
    }

    /// Lexicographically smallest arrangement vertex seeing every obstacle;
    /// edge midpoints are tried if no vertex qualifies.
    pub fn common_observation_point(&self) -> Result<Option<Point>> {
        if self.is_empty() {
            return Ok(Some(self.bbox.min.clone()));
        }
        let (mut verts, edges) = self.global_arrangement()?;
        let mids: Vec<Point> = edges.iter().map(|e| verts[e[0]].midpoint(&verts[e[1]])).collect();
        verts.sort();
        if let Some(p) = verts.into_iter().find(|p| self.sees_all(p)) {
            return Ok(Some(p));
        }
        let mut mids = mids;
        mids.sort();
        Ok(mids.into_iter().find(|p| self.sees_all(p)))
    }

    /// True if every obstacle is a translate of the first.
    pub fn is_translate_family(&self) -> bool {
        let Some(first) = self.obstacles.first() else { return true };
        let shape = edge_vectors(first);
        self.obstacles.iter().all(|o| {
            let e = edge_vectors(o);
            e.len() == shape.len() && (0..e.len()).any(|k| (0..e.len()).all(|i| e[(i + k) % e.len()] == shape[i]))
        })
    }

    /// Decides single-point observability of a translate family by
    /// intersecting the hole-free polygons `V_i ∪ C_i`.
    pub fn translate_intersection_simplification(&self) -> Result<Option<Point>> {
        if !self.is_translate_family() {
            return Err(Error::NotTranslateFamily);
        }
        if self.is_empty() {
            return Ok(Some(self.bbox.min.clone()));
        }
        let rays = self.tangent_rays()?;
        let mut polys = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let v = self.visibility_region_with(i, &rays)?;
            if v.holes.len() != 1 {
                return Err(Error::Invariant(format!(
                    "translate family region {i} has {} holes",
                    v.holes.len()
                )));
            }
            polys.push(v.outer);
        }
        Ok(intersect_simple_polygons(&polys))
    }
}

fn edge_vectors(c: &ConvexPolygon) -> Vec<Vector> {
    c.edges().map(|(a, b)| b.sub(a)).collect()
}

/// Lexicographically smallest point common to all closed simple polygons,
/// searched over vertices and pairwise edge crossings.
pub fn intersect_simple_polygons(polys: &[Vec<Point>]) -> Option<Point> {
    let segs: Vec<(Point, Point)> = polys
        .iter()
        .flat_map(|r| {
            let n = r.len();
            (0..n).map(move |i| (r[i].clone(), r[(i + 1) % n].clone()))
        })
        .collect();
    let (mut verts, _) = split_segments(&segs);
    verts.sort();
    verts
        .into_iter()
        .find(|p| polys.iter().all(|r| locate_in_ring(p, r) != Location::Outside))
}

/// Exact minimum squared distance between a point set given as vertices and
/// segments, and a convex polygon.
pub fn min_dist2_to_convex(points: &[Point], segments: &[(Point, Point)], hull: &ConvexPolygon) -> Rational {
    let mut best: Option<Rational> = None;
    let mut take = |d: Rational| {
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    };
    for p in points {
        take(hull.dist2_to_segment(p, p));
    }
    for (a, b) in segments {
        take(hull.dist2_to_segment(a, b));
    }
    best.unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    fn square(x: i64, y: i64) -> ConvexPolygon {
        ConvexPolygon::from_ints(&[(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]).unwrap()
    }

    fn inst(b: (i64, i64, i64, i64), obs: Vec<ConvexPolygon>) -> Instance {
        Instance::new(Rect::from_ints(b.0, b.1, b.2, b.3).unwrap(), obs).unwrap()
    }

    /// Ray-casting oracle: sample boundary points of the target and test
    /// segment freedom directly.
    fn sees_by_sampling(inst: &Instance, p: &Point, t: usize, samples: usize) -> bool {
        let o = &inst.obstacles()[t];
        let per_edge = samples / o.len();
        o.edges().any(|(a, b)| {
            (0..=per_edge).any(|k| {
                let q = a.lerp(b, &rat(k as i64, per_edge as i64));
                inst.segment_is_free(p, &q)
            })
        })
    }

    #[test]
    fn boundary_point_sees_itself() {
        let i = inst((-5, -5, 5, 5), vec![square(0, 0), square(2, 0)]);
        assert!(i.sees(&Point::from_ints(1, 0), 0).unwrap());
        assert!(i.sees(&Point::new(rat(1, 2), int(0)), 0).unwrap());
    }

    #[test]
    fn collinear_row_hides_far_square() {
        let i = inst((-5, -5, 10, 5), vec![square(0, 0), square(2, 0), square(4, 0)]);
        let p = Point::new(int(-1), rat(1, 2));
        assert!(!i.sees(&p, 2).unwrap());
        assert!(!sees_by_sampling(&i, &p, 2, 10_000));
        assert!(i.sees(&p, 0).unwrap());
        // grazing along the top edges still sees the far square
        let q = Point::new(int(-1), int(1));
        assert!(i.sees(&q, 2).unwrap());
        assert!(sees_by_sampling(&i, &q, 2, 400));
        assert_eq!(i.sees(&Point::new(rat(1, 2), rat(1, 2)), 2), Err(Error::PointInsideObstacle(0)));
    }

    #[test]
    fn single_obstacle_region_is_box_minus_obstacle() {
        let i = inst((-5, -5, 5, 5), vec![square(0, 0)]);
        let v = i.visibility_region(0).unwrap();
        assert_eq!(v.holes.len(), 1);
        assert_eq!(v.outer.len(), 4);
        assert!((v.area_f64() - 99.0).abs() < 1e-9);
    }

    #[test]
    fn region_of_hidden_square() {
        let i = inst((-5, -5, 10, 5), vec![square(0, 0), square(2, 0), square(4, 0)]);
        let v = i.visibility_region(2).unwrap();
        let p = Point::new(int(-1), rat(1, 2));
        assert!(!v.contains(&p));
        assert!(v.contains(&Point::new(int(-1), int(3))));
        assert!(v.contains(&Point::from_ints(4, 0)));
    }

    #[test]
    fn wall_gap_boundary_is_an_inner_tangent_of_other_bodies() {
        // tall walls above and below the x-axis, target far right
        let a = ConvexPolygon::from_ints(&[(0, 0), (1, 0), (1, 9), (0, 9)]).unwrap();
        let b = ConvexPolygon::from_ints(&[(3, -9), (4, -9), (4, 0), (3, 0)]).unwrap();
        let t = ConvexPolygon::from_ints(&[(8, -1), (9, -1), (9, 1), (8, 1)]).unwrap();
        let i = inst((-10, -10, 10, 10), vec![a, b, t]);
        let below = Point::new(int(-5), rat(-1, 1000));
        let above = Point::new(int(-5), rat(1, 1000));
        assert!(i.sees(&below, 2).unwrap());
        assert!(!i.sees(&above, 2).unwrap());
        let v = i.visibility_region(2).unwrap();
        assert!(v.contains(&below));
        assert!(!v.contains(&above));
    }

    #[test]
    fn visible_directions_of_unblocked_square() {
        let i = inst((-5, -5, 5, 5), vec![square(1, 0)]);
        let set = i.visible_directions(&Point::from_ints(0, 0), 0).unwrap();
        assert_eq!(set.intervals.len(), 1);
        let iv = &set.intervals[0];
        assert_eq!(iv.start, Vector::new(int(1), int(0)));
        assert_eq!(iv.end, Vector::new(int(1), int(1)));
    }

    #[test]
    fn translate_detection() {
        let i = inst((-5, -5, 10, 5), vec![square(0, 0), square(3, 1)]);
        assert!(i.is_translate_family());
        let j = inst(
            (-5, -5, 10, 5),
            vec![square(0, 0), ConvexPolygon::from_ints(&[(3, 0), (5, 0), (5, 1), (3, 1)]).unwrap()],
        );
        assert!(!j.is_translate_family());
        assert_eq!(j.translate_intersection_simplification(), Err(Error::NotTranslateFamily));
    }

    #[test]
    fn far_apart_translates_share_a_point() {
        let i = inst((-10, -10, 20, 10), vec![square(0, 0), square(10, 0)]);
        let a = i.common_observation_point().unwrap();
        let b = i.translate_intersection_simplification().unwrap();
        assert!(a.is_some() && b.is_some());
        assert!(i.sees_all(&a.unwrap()));
    }

    #[test]
    fn rejects_overlapping_or_escaping_obstacles() {
        let r = Rect::from_ints(-5, -5, 5, 5).unwrap();
        assert!(Instance::new(r.clone(), vec![square(0, 0), square(1, 0)]).is_err());
        assert!(Instance::new(r, vec![square(4, 0)]).is_err());
    }
}
