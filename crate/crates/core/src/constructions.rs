//! Generators for the structured instance families, with verifiers for the
//! properties they are built to have.

use num_traits::{One, Zero};

use crate::arrangement::split_segments;
use crate::error::{Error, Result};
use crate::geom::{convex_hull, int, rat, ConvexPolygon, Point, Rational, Rect};
use crate::orp::visibility_regions;
use crate::visibility::{min_dist2_to_convex, Instance, PolygonWithHoles};

/// Boundary pieces (split edges) of the intersection of closed regions.
pub fn intersection_boundary(regions: &[PolygonWithHoles]) -> (Vec<Point>, Vec<(Point, Point)>) {
    let segs: Vec<(Point, Point)> = regions.iter().flat_map(|r| r.edges().map(|(a, b)| (a.clone(), b.clone()))).collect();
    let (verts, edges) = split_segments(&segs);
    let inside = |p: &Point| regions.iter().all(|r| r.contains(p));
    let pieces: Vec<(Point, Point)> = edges
        .iter()
        .map(|e| (verts[e[0]].clone(), verts[e[1]].clone()))
        .filter(|(a, b)| inside(&a.midpoint(b)))
        .collect();
    let points = verts.into_iter().filter(|p| inside(p)).collect();
    (points, pieces)
}

/// Six unit squares in two rows of three. Within a row, successive squares
/// are `eps` apart horizontally and shifted up by `2 eps`; the rows are
/// `eps` apart. The box reaches `height` above and below the squares.
pub fn six_squares_with(eps: &Rational, height: &Rational) -> Result<Instance> {
    let one = Rational::one();
    let mut obs = Vec::with_capacity(6);
    for row in 0..2 {
        let y0 = if row == 0 { one.clone() + eps } else { Rational::zero() };
        for k in 0..3 {
            let kk = int(k);
            let x = &kk * (&one + eps);
            let y = &y0 + &kk * eps * int(2);
            obs.push(ConvexPolygon::rectangle(x.clone(), y.clone(), x + &one, y + &one)?);
        }
    }
    let top = int(2) + eps * int(5);
    let bbox = Rect::new(Point::new(int(-4), -height.clone()), Point::new(int(7) + eps * int(2), top + height))?;
    Instance::new(bbox, obs)
}

/// Minimum distance from the common observation region to the hull of the
/// squares, squared; `None` if the region is empty.
pub fn common_region_hull_dist2(inst: &Instance) -> Result<Option<Rational>> {
    let regions = visibility_regions(inst)?;
    let (points, pieces) = intersection_boundary(&regions);
    if points.is_empty() && pieces.is_empty() {
        return Ok(None);
    }
    let hull = convex_hull(&inst.obstacles().iter().flat_map(|o| o.vertices().iter().cloned()).collect::<Vec<_>>())?;
    Ok(Some(min_dist2_to_convex(&points, &pieces, &hull)))
}

/// Six-square family whose single observation points are all at distance at
/// least `delta` from the hull of the family; `eps` is found by bisection on
/// a dyadic grid in `(0, 1/10]`.
pub fn six_squares(delta: f64) -> Result<(Instance, Rational)> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameters(format!("delta = {delta} must be positive")));
    }
    let d2 = crate::geom::rational_from_f64(delta) * crate::geom::rational_from_f64(delta);
    let height_for = |eps: &Rational| -> Rational {
        let e = crate::geom::to_f64(eps);
        int(((16.0 / e).max(4.0 * delta)).ceil() as i64)
    };
    let ok = |eps: &Rational| -> Result<Option<Instance>> {
        let inst = six_squares_with(eps, &height_for(eps))?;
        Ok(match common_region_hull_dist2(&inst)? {
            Some(d) if d >= d2 => Some(inst),
            _ => None,
        })
    };
    // eps = k / 2^20 with k in (0, hi]
    let den = 1i64 << 20;
    let (mut lo, mut hi) = (0i64, den / 10);
    if let Some(inst) = ok(&rat(hi, den))? {
        return Ok((inst, rat(hi, den)));
    }
    let mut best: Option<(Instance, Rational)> = None;
    for _ in 0..40 {
        if hi - lo <= 1 {
            break;
        }
        let mid = (lo + hi) / 2;
        match ok(&rat(mid, den))? {
            Some(inst) => {
                best = Some((inst, rat(mid, den)));
                lo = mid;
            }
            None => hi = mid,
        }
        if best.is_some() && (hi - lo) * 64 <= lo {
            break;
        }
    }
    if best.is_none() {
        // keep halving
        let mut k = lo.max(1);
        while k > 0 {
            if let Some(inst) = ok(&rat(k, den))? {
                return Ok((inst, rat(k, den)));
            }
            k /= 2;
        }
        return Err(Error::Invariant(format!("no eps found for delta = {delta}")));
    }
    Ok(best.unwrap())
}

/// True if no point outside the convex hull of the cluster sees its first
/// square: the visibility region of that square, computed in a box well
/// around the cluster, must lie in the hull.
pub fn center_hidden(cluster: &[ConvexPolygon]) -> Result<bool> {
    let pts: Vec<Point> = cluster.iter().flat_map(|o| o.vertices().iter().cloned()).collect();
    let hull = convex_hull(&pts)?;
    let [x0, y0, x1, y1] = hull.bbox_f64();
    let m = (x1 - x0).max(y1 - y0);
    let q = |v: f64| crate::geom::rational_approx(v, 40);
    let bbox = Rect::new(Point::new(q(x0 - m), q(y0 - m)), Point::new(q(x1 + m), q(y1 + m)))?;
    let inst = Instance::new(bbox, cluster.to_vec())?;
    let region = inst.visibility_region(0)?;
    Ok(region.outer.iter().all(|v| hull.contains(v)))
}

/// Lattice cells `(i, j)` of the thirteen-square cluster: the 3x3 block and
/// one pinwheel square per side.
pub const REDUCED_CLUSTER: [(i64, i64); 13] =
    [(0, 0), (-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1), (-2, 1), (-1, -2), (1, 2), (2, -1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterKind {
    /// 25 squares (5x5 lattice block).
    Full,
    /// 13 squares, see [`REDUCED_CLUSTER`].
    Reduced,
}

impl ClusterKind {
    fn cells(self) -> Vec<(i64, i64)> {
        match self {
            ClusterKind::Full => {
                let mut v = vec![(0, 0)];
                v.extend((-2..=2).flat_map(|i| (-2..=2).map(move |j| (i, j))).filter(|&c| c != (0, 0)));
                v
            }
            ClusterKind::Reduced => REDUCED_CLUSTER.to_vec(),
        }
    }

    pub fn size(self) -> usize {
        self.cells().len()
    }
}

/// Squares of side `s` centred at `c + s * (i (11/10, 11/20) + j (-11/20, 11/10))`;
/// the central square first.
pub fn cluster_of(kind: ClusterKind, c: &Point, s: &Rational) -> Result<Vec<ConvexPolygon>> {
    let half = s / int(2);
    kind.cells()
        .into_iter()
        .map(|(i, j)| {
            let cx = c.x() + s * (rat(11, 10) * int(i) - rat(11, 20) * int(j));
            let cy = c.y() + s * (rat(11, 20) * int(i) + rat(11, 10) * int(j));
            ConvexPolygon::rectangle(&cx - &half, &cy - &half, &cx + &half, &cy + &half)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionArtifacts {
    pub instance: Instance,
    /// Named reference points (cluster centres, structural points).
    pub reference_points: Vec<(String, Point)>,
    /// Construction parameters as exact rationals.
    pub parameters: Vec<(String, Rational)>,
    /// Obstacle indices of the central squares, one per cluster.
    pub centers: Vec<usize>,
    /// Obstacle index ranges of the clusters.
    pub clusters: Vec<std::ops::Range<usize>>,
    /// Named obstacles (central squares, element squares, frame pieces).
    pub named_obstacles: Vec<(String, usize)>,
}

impl ReductionArtifacts {
    pub fn parameter(&self, name: &str) -> Option<&Rational> {
        self.parameters.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn named(&self, name: &str) -> Option<usize> {
        self.named_obstacles.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn reference(&self, name: &str) -> Option<&Point> {
        self.reference_points.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

/// Grid of large squares with a hiding cluster of small squares at each
/// point of `points`. Corridors have width `w = 1/(10 a n)` and small squares
/// side `w/100`.
pub fn grid_cluster_instance(points: &[(i64, i64)], kind: ClusterKind) -> Result<ReductionArtifacts> {
    if points.is_empty() {
        return Err(Error::PointsNotInGrid("empty point set".into()));
    }
    if let Some(p) = points.iter().find(|p| p.0 < 0 || p.1 < 0) {
        return Err(Error::PointsNotInGrid(format!("negative coordinate in {p:?}")));
    }
    let mut uniq = points.to_vec();
    uniq.sort();
    uniq.dedup();
    if uniq.len() != points.len() {
        return Err(Error::PointsNotInGrid("repeated point".into()));
    }
    let a = points.iter().map(|p| p.0).max().unwrap();
    let b = points.iter().map(|p| p.1).max().unwrap();
    let n = points.len() as i64;
    let w = rat(1, 10 * a.max(b).max(1) * n);
    let s = &w / int(100);
    let half_w = &w / int(2);
    let mut obs = Vec::new();
    for i in 0..a {
        for j in 0..b {
            obs.push(ConvexPolygon::rectangle(
                int(i) + &half_w,
                int(j) + &half_w,
                int(i + 1) - &half_w,
                int(j + 1) - &half_w,
            )?);
        }
    }
    let mut centers = Vec::new();
    let mut clusters = Vec::new();
    let mut refs = Vec::new();
    for (k, &(x, y)) in points.iter().enumerate() {
        let c = Point::new(int(x), int(y));
        let cl = cluster_of(kind, &c, &s)?;
        if !center_hidden(&cl)? {
            return Err(Error::ClusterNotHiding);
        }
        centers.push(obs.len());
        clusters.push(obs.len()..obs.len() + cl.len());
        obs.extend(cl);
        refs.push((format!("cluster{k}"), c));
    }
    let bbox = Rect::new(
        Point::new(-half_w.clone(), -half_w.clone()),
        Point::new(int(a) + &half_w, int(b) + &half_w),
    )?;
    let instance = Instance::new(bbox, obs)?;
    let named_obstacles = centers.iter().enumerate().map(|(k, &c)| (format!("center{k}"), c)).collect();
    Ok(ReductionArtifacts {
        instance,
        reference_points: refs,
        parameters: vec![("w".into(), w), ("s".into(), s), ("a".into(), int(a)), ("b".into(), int(b))],
        centers,
        clusters,
        named_obstacles,
    })
}

/// Samples points around each cluster (outside its hull, in free space) and
/// returns how many of them see the central square.
pub fn hidden_center_violations(art: &ReductionArtifacts, samples: usize, seed: u64) -> Result<usize> {
    use rand::Rng;
    let inst = &art.instance;
    let mut rng = crate::corpus::rng(seed);
    let mut bad = 0;
    for (range, &center) in art.clusters.iter().zip(&art.centers) {
        let pts: Vec<Point> = range.clone().flat_map(|k| inst.obstacles()[k].vertices().to_vec()).collect();
        let hull = convex_hull(&pts)?;
        let [x0, y0, x1, y1] = hull.bbox_f64();
        let m = (x1 - x0).max(y1 - y0);
        let [bx0, by0] = inst.bbox().min.to_f64();
        let [bx1, by1] = inst.bbox().max.to_f64();
        let mut taken = 0;
        while taken < samples {
            let x = rng.gen_range((x0 - m).max(bx0)..(x1 + m).min(bx1));
            let y = rng.gen_range((y0 - m).max(by0)..(y1 + m).min(by1));
            let p = Point::from_f64(x, y);
            if hull.contains(&p) || !inst.is_free(&p) {
                continue;
            }
            taken += 1;
            if inst.sees(&p, center)? {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

/// Visibility region of the central square of cluster `k`, computed among the
/// cluster's own squares only (enough inside the cluster hull).
pub fn cluster_center_region(art: &ReductionArtifacts, k: usize) -> Result<PolygonWithHoles> {
    let cl: Vec<ConvexPolygon> = art.clusters[k].clone().map(|i| art.instance.obstacles()[i].clone()).collect();
    let pts: Vec<Point> = cl.iter().flat_map(|o| o.vertices().iter().cloned()).collect();
    let hull = convex_hull(&pts)?;
    let [x0, y0, x1, y1] = hull.bbox_f64();
    let m = (x1 - x0).max(y1 - y0) / 4.0;
    let q = |v: f64| crate::geom::rational_approx(v, 48);
    let bbox = Rect::new(Point::new(q(x0 - m), q(y0 - m)), Point::new(q(x1 + m), q(y1 + m)))?;
    Instance::new(bbox, cl)?.visibility_region(0)
}

/// Discretised optimal observation route of a cluster reduction: candidate
/// points are the vertices of the centre regions; the central squares are
/// the targets, and further obstacles are added as targets while the tour
/// misses them.
pub fn cluster_orp(art: &ReductionArtifacts) -> Result<crate::orp::DiscretizedOrp> {
    let mut universe = Vec::new();
    for k in 0..art.clusters.len() {
        let r = cluster_center_region(art, k)?;
        universe.extend(r.rings().flatten().cloned());
    }
    universe.sort();
    universe.dedup();
    let mut targets = art.centers.clone();
    loop {
        let sol = crate::orp::discretized_opt_orp_over(&art.instance, &universe, Some(&targets))?;
        let missing = crate::orp::unseen_obstacles(&sol.tour, &art.instance, 8);
        if missing.is_empty() {
            return Ok(sol);
        }
        if targets.len() + 1 > 12 {
            return Err(Error::TooManyObstacles(targets.len() + 1, 12));
        }
        targets.push(missing[0]);
    }
}

/// Universe `{1..n}` and sets over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetSystem {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 || sets.is_empty() {
            return Err(Error::InvalidSetSystem("empty universe or no sets".into()));
        }
        for (i, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidSetSystem(format!("set {} is empty", i + 1)));
            }
            if let Some(j) = s.iter().find(|&&j| j == 0 || j > n) {
                return Err(Error::InvalidSetSystem(format!("element {j} outside 1..{n}")));
            }
        }
        if let Some(j) = (1..=n).find(|j| !sets.iter().any(|s| s.contains(j))) {
            return Err(Error::InvalidSetSystem(format!("element {j} is in no set")));
        }
        Ok(SetSystem { n, sets })
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// Do the sets with the given (1-based) indices cover the universe?
    pub fn covers(&self, chosen: &[usize]) -> bool {
        (1..=self.n).all(|j| chosen.iter().any(|&i| self.sets[i - 1].contains(&j)))
    }
}

/// Keeps the part of a convex polygon on the closed left of `a -> b`.
fn clip_left(poly: &[Point], a: &Point, b: &Point) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::new();
    for k in 0..n {
        let p = &poly[k];
        let q = &poly[(k + 1) % n];
        let sp = crate::geom::orient_sign(a, b, p);
        let sq = crate::geom::orient_sign(a, b, q);
        if sp >= 0 {
            out.push(p.clone());
        }
        if sp * sq < 0 {
            out.push(crate::geom::line_intersection(p, q, a, b));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Line of a corridor: `y = i + slope * x + shift`.
#[derive(Clone, Debug)]
struct CorridorLines {
    i: Rational,
    s: Rational,
    s_up: Rational,
    h: Rational,
}

impl CorridorLines {
    fn at(&self, slope: &Rational, shift: &Rational, x: &Rational) -> Rational {
        &self.i + slope * x + shift
    }

    /// Points of a line spanning `x0..x1`, directed left to right.
    fn line(&self, slope: &Rational, shift: &Rational, x0: &Rational, x1: &Rational) -> (Point, Point) {
        (
            Point::new(x0.clone(), self.at(slope, shift, x0)),
            Point::new(x1.clone(), self.at(slope, shift, x1)),
        )
    }

    /// 0 inside the open corridor, 1 below, 2 above.
    fn side(&self, p: &Point) -> u8 {
        let z = Rational::zero();
        let lower = self.at(&self.s, &-self.h.clone(), p.x());
        let upper = self.at(&self.s, &self.h, p.x());
        let wedge_top = self.at(&self.s_up, &z, p.x());
        if p.y() <= &lower {
            1
        } else if p.y() >= &upper && p.y() >= &wedge_top {
            2
        } else {
            0
        }
    }
}

/// Family of disjoint convex polygons whose short observation routes encode
/// small set covers. Slabs are measured vertically (width `M^-8`) to keep all
/// coordinates rational.
pub fn setcover_instance(ss: &SetSystem) -> Result<ReductionArtifacts> {
    let (n, m) = (ss.n as i64, ss.m() as i64);
    let big_m = int((12 * m).max(n + 1));
    let inv = |k: i32| -> Rational { Rational::one() / num_traits::pow(big_m.clone(), k as usize) };
    let h = inv(8) / int(2);
    let x_lo = -inv(2);
    let x_hi = &big_m * int(2);
    let (y_lo, y_hi) = (-big_m.clone(), &big_m * int(2));
    let mut corridors = Vec::new();
    for (i0, set) in ss.sets.iter().enumerate() {
        for &j in set {
            let i = int(i0 as i64 + 1);
            let s = (int(j as i64) - &i) / &big_m;
            let s_up = (int(j as i64) + inv(4) - &i) / &big_m;
            corridors.push(((i0 + 1, j), CorridorLines { i, s, s_up, h: h.clone() }));
        }
    }
    // cells of the line arrangement inside B1, grouped by side signature
    let frame = [
        Point::new(x_lo.clone(), y_lo.clone()),
        Point::new(x_hi.clone(), y_lo.clone()),
        Point::new(x_hi.clone(), y_hi.clone()),
        Point::new(x_lo.clone(), y_hi.clone()),
    ];
    let mut segs: Vec<(Point, Point)> = (0..4).map(|k| (frame[k].clone(), frame[(k + 1) % 4].clone())).collect();
    let z = Rational::zero();
    for (_, c) in &corridors {
        segs.push(c.line(&c.s, &-h.clone(), &x_lo, &x_hi));
        segs.push(c.line(&c.s, &h, &x_lo, &x_hi));
        segs.push(c.line(&c.s_up, &z, &z, &x_hi));
    }
    let clipped: Vec<(Point, Point)> = segs.into_iter().filter_map(|(a, b)| clip_to_frame(&a, &b, &frame)).collect();
    let arr = crate::arrangement::Arrangement::build(&clipped)?;
    let mut signatures: Vec<Vec<u8>> = Vec::new();
    for f in 0..arr.faces.len() {
        if !arr.faces[f].is_bounded() {
            continue;
        }
        let Some(sample) = arr.face_sample(f) else { continue };
        let sig: Vec<u8> = corridors.iter().map(|(_, c)| c.side(&sample)).collect();
        if sig.contains(&0) || signatures.contains(&sig) {
            continue;
        }
        signatures.push(sig);
    }
    signatures.sort();
    let mut obs = Vec::new();
    let mut named = Vec::new();
    for sig in &signatures {
        let mut poly = frame.to_vec();
        for ((_, c), &side) in corridors.iter().zip(sig) {
            if side == 1 {
                let (a, b) = c.line(&c.s, &-h.clone(), &x_lo, &x_hi);
                poly = clip_left(&poly, &b, &a);
            } else {
                let (a, b) = c.line(&c.s, &h, &x_lo, &x_hi);
                poly = clip_left(&poly, &a, &b);
                let (a, b) = c.line(&c.s_up, &z, &z, &x_hi);
                poly = clip_left(&poly, &a, &b);
            }
            if poly.len() < 3 {
                break;
            }
        }
        if poly.len() >= 3 {
            obs.push(poly);
        }
    }
    let face_count = obs.len();
    let rect = |x0: Rational, y0: Rational, x1: Rational, y1: Rational| {
        vec![
            Point::new(x0.clone(), y0.clone()),
            Point::new(x1.clone(), y0),
            Point::new(x1, y1.clone()),
            Point::new(x0, y1),
        ]
    };
    for j in 1..=n {
        let cy = int(j) + inv(4) / int(2);
        let half = inv(8) / int(2);
        named.push((format!("Q{j}"), obs.len()));
        obs.push(rect(&big_m - &half, &cy - &half, &big_m + &half, &cy + &half));
    }
    let half = rat(1, 2);
    named.push(("C1".to_string(), obs.len()));
    obs.push(rect(int(-1) - &half, int(-1) - &half, int(-1) + &half, int(-1) + &half));
    named.push(("C2".to_string(), obs.len()));
    let top = &big_m + int(1);
    obs.push(rect(int(-1) - &half, &top - &half, int(-1) + &half, &top + &half));
    named.push(("B2".to_string(), obs.len()));
    obs.push(rect(-big_m.clone(), Rational::zero(), -inv(2) - inv(4), big_m.clone()));
    // linear map
    let tx = &big_m * &big_m / int(2);
    let ty = Rational::one() / (int(24) * &big_m);
    let map = |p: &Point| Point::new(p.x() * &tx, p.y() * &ty);
    let polys = obs
        .iter()
        .map(|r| ConvexPolygon::new(r.iter().map(map).collect()))
        .collect::<Result<Vec<_>>>()?;
    let lo = map(&Point::new(-&big_m - int(2), -&big_m - int(1)));
    let hi = map(&Point::new(&x_hi + int(1), &y_hi + int(1)));
    let instance = Instance::new(Rect::new(lo, hi)?, polys)?;
    let mut refs = Vec::new();
    for i in 1..=m {
        refs.push((format!("p{i}"), map(&Point::new(Rational::zero(), int(i)))));
    }
    for j in 1..=n {
        refs.push((format!("q{j}"), map(&Point::new(big_m.clone(), int(j)))));
    }
    named.extend((0..face_count).map(|k| (format!("F{k}"), k)));
    Ok(ReductionArtifacts {
        instance,
        reference_points: refs,
        parameters: vec![("slab".into(), inv(8)), ("M".into(), big_m.clone()), ("tx".into(), tx), ("ty".into(), ty)],
        centers: (face_count..face_count + ss.n).collect(),
        clusters: vec![],
        named_obstacles: named,
    })
}

/// Clips segment `ab` to the closed axis-parallel frame.
fn clip_to_frame(a: &Point, b: &Point, frame: &[Point; 4]) -> Option<(Point, Point)> {
    let rect = ConvexPolygon::new(frame.to_vec()).ok()?;
    let (t0, t1) = rect.clip_segment(a, b)?;
    if t0 == t1 {
        return None;
    }
    Some((a.lerp(b, &t0), a.lerp(b, &t1)))
}

/// Observation tour for a cover (1-based set indices): the left side of the
/// inner frame walked up and down, with an out-and-back loop to `p_i` along
/// one corridor of each chosen set.
pub fn setcover_witness_tour(art: &ReductionArtifacts, ss: &SetSystem, cover: &[usize]) -> Result<crate::tspn::Tour> {
    let big_m = art.parameter("M").cloned().ok_or_else(|| Error::InvalidParameters("not a set-cover instance".into()))?;
    let tx = art.parameter("tx").unwrap().clone();
    let ty = art.parameter("ty").unwrap().clone();
    let map = |x: Rational, y: Rational| Point::new(x * &tx, y * &ty);
    let x_left = -(Rational::one() / (&big_m * &big_m));
    let mut verts = vec![map(x_left.clone(), -big_m.clone()), map(x_left.clone(), &big_m * int(2))];
    let mut stops: Vec<(Rational, Point)> = Vec::new();
    for &i in cover {
        let set = ss.sets.get(i.wrapping_sub(1)).ok_or_else(|| Error::InvalidParameters(format!("no set {i}")))?;
        let j = set[0];
        let slope = (int(j as i64) - int(i as i64)) / &big_m;
        let y = int(i as i64) + &slope * &x_left;
        stops.push((y, map(Rational::zero(), int(i as i64))));
    }
    // walking down
    stops.sort_by(|a, b| b.0.cmp(&a.0));
    for (y, p) in stops {
        let c = map(x_left.clone(), y);
        verts.push(c.clone());
        verts.push(p);
        verts.push(c);
    }
    let n = verts.len();
    let mut dedup: Vec<Point> = Vec::with_capacity(n);
    for v in verts {
        if dedup.last() != Some(&v) {
            dedup.push(v);
        }
    }
    let kinds = vec![crate::tspn::VertexKind::Witness; dedup.len()];
    let witness = vec![dedup[0].clone(); art.instance.len()];
    Ok(crate::tspn::Tour { vertices: dedup, kinds, witness })
}

/// Regular `k`-gon with rational vertices strictly inside the disk of radius
/// `r` around `c`.
pub fn inscribed_kgon(c: [f64; 2], r: f64, k: usize) -> Result<ConvexPolygon> {
    let r0 = r * (1.0 - 1.0 / 1024.0);
    // rounding error far below the 1/1024 radius margin
    let bits = 24 + (-r.log2()).max(0.0).ceil() as u32;
    let pts = (0..k)
        .map(|t| {
            let a = std::f64::consts::TAU * t as f64 / k as f64;
            let cx = crate::geom::rational_from_f64(c[0]);
            let cy = crate::geom::rational_from_f64(c[1]);
            Point::new(
                cx + crate::geom::rational_approx(r0 * a.cos(), bits),
                cy + crate::geom::rational_approx(r0 * a.sin(), bits),
            )
        })
        .collect();
    ConvexPolygon::new(pts)
}

fn fits(centers: &[[f64; 2]], c: [f64; 2]) -> bool {
    centers.iter().all(|d| (d[0] - c[0]).powi(2) + (d[1] - c[1]).powi(2) >= 4.0)
}

/// First grid point (pitch `pitch`) where one more unit disk fits in
/// `[0, side]²`.
pub fn packing_gap(centers: &[[f64; 2]], side: f64, pitch: f64) -> Option<[f64; 2]> {
    let steps = ((side - 2.0) / pitch).floor() as usize;
    for a in 0..=steps {
        for b in 0..=steps {
            let c = [1.0 + a as f64 * pitch, 1.0 + b as f64 * pitch];
            if fits(centers, c) {
                return Some(c);
            }
        }
    }
    None
}

/// Centres of a greedy maximal packing of unit disks in `[0, side]²`:
/// random candidates until 10⁴ consecutive rejections, then a sweep at pitch
/// 1/4 fills any gap left. Centres lie on a 1/256 grid, so distance tests are
/// exact in `f64`.
pub fn packing_centers(side: f64, seed: u64) -> Vec<[f64; 2]> {
    use rand::Rng;
    let mut rng = crate::corpus::rng(seed);
    let mut centers: Vec<[f64; 2]> = Vec::new();
    let snap = |v: f64| (v * 256.0).round() / 256.0;
    let mut failures = 0;
    while failures < 10_000 {
        let c = [snap(rng.gen_range(1.0..=side - 1.0)), snap(rng.gen_range(1.0..=side - 1.0))];
        if fits(&centers, c) {
            centers.push(c);
            failures = 0;
        } else {
            failures += 1;
        }
    }
    while let Some(c) = packing_gap(&centers, side, 0.25) {
        centers.push(c);
    }
    centers
}

/// Maximal packing of unit disks in `[0, side]²`, each disk replaced by an
/// inscribed regular `kgon`.
pub fn maximal_disk_packing(side: f64, kgon: usize, seed: u64) -> Result<Instance> {
    if !(side >= 10.0) || kgon < 8 {
        return Err(Error::InvalidParameters(format!("packing needs side >= 10 and kgon >= 8, got {side}, {kgon}")));
    }
    let side = (side * 256.0).round() / 256.0;
    let obs = packing_centers(side, seed)
        .into_iter()
        .map(|c| inscribed_kgon(c, 1.0, kgon))
        .collect::<Result<Vec<_>>>()?;
    Instance::new(Rect::new(Point::from_f64(0.0, 0.0), Point::from_f64(side, side))?, obs)
}

/// `k x k` lattice of tiny disks (as `kgon`s) scaled into the unit square.
pub fn sparse_lattice_disks(k: usize, kgon: usize) -> Result<Instance> {
    if k == 0 || kgon < 3 {
        return Err(Error::InvalidParameters("sparse lattice needs k >= 1 and kgon >= 3".into()));
    }
    let pitch = 1.0 / (k + 1) as f64;
    let r = pitch / 16.0;
    let mut obs = Vec::new();
    for i in 1..=k {
        for j in 1..=k {
            obs.push(inscribed_kgon([i as f64 * pitch, j as f64 * pitch], r, kgon)?);
        }
    }
    Instance::new(Rect::from_ints(-1, -1, 2, 2)?, obs)
}

/// Axis-parallel loop around all obstacles at distance `margin` from their
/// bounding box.
pub fn frame_route(inst: &Instance, margin: f64) -> crate::tspn::Tour {
    let mut bb = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for i in 0..inst.len() {
        let b = inst.aabb(i);
        bb = [bb[0].min(b[0]), bb[1].min(b[1]), bb[2].max(b[2]), bb[3].max(b[3])];
    }
    let q = |v: f64| crate::geom::rational_approx(v, 20);
    let (x0, y0, x1, y1) = (q(bb[0] - margin), q(bb[1] - margin), q(bb[2] + margin), q(bb[3] + margin));
    let vertices = vec![
        Point::new(x0.clone(), y0.clone()),
        Point::new(x1.clone(), y0.clone()),
        Point::new(x1, y1.clone()),
        Point::new(x0.clone(), y1),
    ];
    let kinds = vec![crate::tspn::VertexKind::Witness; 4];
    let witness = vec![vertices[0].clone(); inst.len()];
    crate::tspn::Tour { vertices, kinds, witness }
}

/// Boundary sample points (obstacle, point) not seen from any probe point of
/// the closed polyline `route`. Each edge is sampled at its endpoints and
/// `per_edge` interior points; the route at `probes` points per edge.
pub fn unwatched_boundary(route: &[Point], inst: &Instance, per_edge: usize, probes: usize) -> Vec<(usize, Point)> {
    let n = route.len();
    let mut eyes = Vec::new();
    for k in 0..n {
        for t in 0..=probes {
            eyes.push(route[k].lerp(&route[(k + 1) % n], &rat(t as i64, probes as i64 + 1)));
        }
    }
    let mut out = Vec::new();
    for (i, o) in inst.obstacles().iter().enumerate() {
        let v = o.vertices();
        for k in 0..v.len() {
            for t in 0..=per_edge {
                let p = v[k].lerp(&v[(k + 1) % v.len()], &rat(t as i64, per_edge as i64 + 1));
                if !eyes.iter().any(|e| inst.segment_is_free(e, &p)) {
                    out.push((i, p));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StripMode {
    /// Circle every obstacle.
    Ewrp,
    /// Touch every obstacle.
    Tspn,
}

/// Zig-zag route through horizontal strips of height 4, top to bottom,
/// closing along the box boundary. Obstacles are taken in strip order by the
/// x-coordinate of their centroids. In `Ewrp` mode each obstacle boundary is
/// walked once and moves between obstacles are bent around interiors.
pub fn strip_traversal_route(inst: &Instance, mode: StripMode) -> Result<crate::tspn::Tour> {
    use crate::tspn::{Tour, VertexKind};
    let bb = inst.bbox();
    let (x0, y0) = (bb.min.x().clone(), bb.min.y().clone());
    let (x1, y1) = (bb.max.x().clone(), bb.max.y().clone());
    let height = bb.height();
    let strips = ((height / 4.0).ceil() as usize).max(1);
    let mut by_strip: Vec<Vec<(f64, usize)>> = vec![Vec::new(); strips];
    for (i, o) in inst.obstacles().iter().enumerate() {
        let [cx, cy] = o.centroid_f64();
        let t = (((crate::geom::to_f64(&y1) - cy) / 4.0).floor().max(0.0) as usize).min(strips - 1);
        by_strip[t].push((cx, i));
    }
    let mut verts: Vec<Point> = Vec::new();
    let mut witness = vec![Point::from_ints(0, 0); inst.len()];
    let mut left_to_right = true;
    for (t, row) in by_strip.iter_mut().enumerate() {
        row.sort_by(|a, b| a.0.total_cmp(&b.0));
        if !left_to_right {
            row.reverse();
        }
        let mid = (&y1 - int(4 * t as i64) - int(2)).max(y0.clone());
        let (start, end) = if left_to_right { (&x0, &x1) } else { (&x1, &x0) };
        verts.push(Point::new(start.clone(), mid.clone()));
        for &(_, i) in row.iter() {
            let o = &inst.obstacles()[i];
            let from = verts.last().unwrap().to_f64();
            let v = o.vertices();
            let near = (0..v.len())
                .min_by(|&a, &b| {
                    let da = (v[a].xf() - from[0]).hypot(v[a].yf() - from[1]);
                    let db = (v[b].xf() - from[0]).hypot(v[b].yf() - from[1]);
                    da.total_cmp(&db)
                })
                .unwrap();
            witness[i] = v[near].clone();
            match mode {
                StripMode::Tspn => verts.push(v[near].clone()),
                StripMode::Ewrp => {
                    for s in 0..=v.len() {
                        verts.push(v[(near + s) % v.len()].clone());
                    }
                }
            }
        }
        verts.push(Point::new(end.clone(), mid));
        left_to_right = !left_to_right;
    }
    // back to the start along the boundary
    let first = verts[0].clone();
    let last = verts.last().unwrap().clone();
    if last.x() != first.x() {
        verts.push(Point::new(x1.clone(), y1.clone()));
        verts.push(Point::new(x0.clone(), y1.clone()));
    }
    let mut clean: Vec<Point> = Vec::with_capacity(verts.len());
    for v in verts {
        if clean.last() != Some(&v) {
            clean.push(v);
        }
    }
    while clean.len() > 1 && clean.first() == clean.last() {
        clean.pop();
    }
    let kinds = vec![VertexKind::Witness; clean.len()];
    let tour = Tour { vertices: clean, kinds, witness };
    match mode {
        StripMode::Tspn => Ok(tour),
        StripMode::Ewrp => Ok(crate::orp::detour_transform(&tour, inst)?.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orp::unseen_obstacles;
    use num_traits::Signed;

    fn small() -> SetSystem {
        SetSystem::new(3, vec![vec![1, 2], vec![2, 3], vec![3], vec![1]]).unwrap()
    }

    #[test]
    fn set_system_rejects_bad_input() {
        assert!(SetSystem::new(2, vec![vec![1]]).is_err());
        assert!(SetSystem::new(2, vec![vec![1, 3], vec![2]]).is_err());
        assert!(SetSystem::new(2, vec![vec![], vec![1, 2]]).is_err());
    }

    #[test]
    fn element_squares_seen_exactly_from_their_sets() {
        let ss = small();
        let art = setcover_instance(&ss).unwrap();
        for i in 1..=ss.m() {
            let p = art.reference(&format!("p{i}")).unwrap();
            for j in 1..=ss.n {
                let q = art.named(&format!("Q{j}")).unwrap();
                let seen = art.instance.sees(p, q).unwrap();
                assert_eq!(seen, ss.sets[i - 1].contains(&j), "p{i} Q{j}");
            }
        }
    }

    #[test]
    fn face_slopes_are_gentle() {
        let art = setcover_instance(&small()).unwrap();
        for o in art.instance.obstacles() {
            let v = o.vertices();
            for k in 0..v.len() {
                let (a, b) = (&v[k], &v[(k + 1) % v.len()]);
                let dx = (b.x() - a.x()).abs();
                let dy = (b.y() - a.y()).abs();
                assert!(dx.is_zero() || dy <= dx);
            }
        }
    }

    #[test]
    fn witness_tour_sees_all_iff_cover() {
        let ss = small();
        let art = setcover_instance(&ss).unwrap();
        for mask in 1u32..(1 << ss.m()) {
            let chosen: Vec<usize> = (0..ss.m()).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            let tour = setcover_witness_tour(&art, &ss, &chosen).unwrap();
            let unseen = unseen_obstacles(&tour, &art.instance, 2);
            assert_eq!(unseen.is_empty(), ss.covers(&chosen), "{chosen:?} {unseen:?}");
            assert!(tour.length() <= chosen.len() as f64 + 0.5);
        }
    }

    #[test]
    fn packing_is_maximal_and_disjoint() {
        let centers = packing_centers(10.0, 0);
        assert!(packing_gap(&centers, 10.0, 0.25).is_none());
        assert!((13..=32).contains(&centers.len()), "{}", centers.len());
        let inst = maximal_disk_packing(10.0, 8, 0).unwrap();
        assert_eq!(inst.len(), centers.len());
        assert!(maximal_disk_packing(9.0, 8, 0).is_err());
        assert!(maximal_disk_packing(10.0, 6, 0).is_err());
    }

    #[test]
    fn strip_route_on_empty_box_is_skeleton() {
        let inst = Instance::new(Rect::from_ints(0, 0, 12, 12).unwrap(), vec![]).unwrap();
        let t = strip_traversal_route(&inst, StripMode::Ewrp).unwrap();
        // three strips of width 12, two wall steps of 4, return leg 10 + 12 + 2
        assert!((t.length() - (36.0 + 8.0 + 24.0)).abs() < 1e-9, "{}", t.length());
    }

    #[test]
    fn strip_routes_visit_every_disk() {
        let inst = maximal_disk_packing(10.0, 8, 3).unwrap();
        let e = strip_traversal_route(&inst, StripMode::Ewrp).unwrap();
        assert!(e.edges().all(|(a, b)| inst.segment_is_free(a, b)));
        for o in inst.obstacles() {
            assert!(o.vertices().iter().all(|v| e.vertices.contains(v)));
        }
        let t = strip_traversal_route(&inst, StripMode::Tspn).unwrap();
        for (i, o) in inst.obstacles().iter().enumerate() {
            assert!(o.vertices().contains(&t.witness[i]) && t.vertices.contains(&t.witness[i]));
        }
        let n = inst.len() as f64;
        assert!(t.length() >= std::f64::consts::PI * (n - 4.0) / 4.0);
    }

    #[test]
    fn frame_route_watches_sparse_lattice() {
        let inst = sparse_lattice_disks(3, 8).unwrap();
        let r = frame_route(&inst, 0.05);
        assert!(r.length() < 4.5);
        assert!(unwatched_boundary(&r.vertices, &inst, 2, 30).is_empty());
    }
}
