//! Exact planar primitives.
//!
//! Combinatorial predicates (orientation, containment, intersection) are
//! evaluated on arbitrary-precision rationals behind a floating-point filter.
//! Metric quantities (lengths, width, fatness) are reported in `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Exact rational value of a finite `f64`.
pub fn rational_from_f64(v: f64) -> Rational {
    Rational::from_float(v).expect("finite coordinate")
}

pub fn to_f64(v: &Rational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Rational approximation of `v` with denominator `2^bits`.
pub fn rational_approx(v: f64, bits: u32) -> Rational {
    let scale = (1u64 << bits) as f64;
    let n = (v * scale).round();
    Rational::new(BigInt::from(n as i64), BigInt::one() << bits as usize)
}

/// A point with exact rational coordinates and a cached `f64` shadow used by
/// predicate filters and metric code.
#[derive(Clone)]
pub struct Point {
    x: Rational,
    y: Rational,
    fx: f64,
    fy: f64,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        let fx = to_f64(&x);
        let fy = to_f64(&y);
        Point { x, y, fx, fy }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn from_f64(x: f64, y: f64) -> Self {
        Point::new(rational_from_f64(x), rational_from_f64(y))
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn xf(&self) -> f64 {
        self.fx
    }

    pub fn yf(&self) -> f64 {
        self.fy
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [self.fx, self.fy]
    }

    pub fn add(&self, v: &Vector) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }

    pub fn sub(&self, other: &Point) -> Vector {
        Vector { x: &self.x - &other.x, y: &self.y - &other.y }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = rat(1, 2);
        Point::new((&self.x + &other.x) * &half, (&self.y + &other.y) * &half)
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        Point::new(
            &self.x + (&other.x - &self.x) * t,
            &self.y + (&other.y - &self.y) * t,
        )
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.fx - other.fx).hypot(self.fy - other.fy)
    }

    pub fn dist2_exact(&self, other: &Point) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_filtered(&self.x, self.fx, &other.x, other.fx)
            .then_with(|| cmp_filtered(&self.y, self.fy, &other.y, other.fy))
    }
}

/// Exact comparison decided in `f64` when the shadows are clearly apart.
pub fn cmp_filtered(a: &Rational, fa: f64, b: &Rational, fb: f64) -> Ordering {
    let scale = fa.abs().max(fb.abs());
    if scale > 1e-280 && scale.is_finite() && (fa - fb).abs() > 4e-16 * scale {
        return if fa < fb { Ordering::Less } else { Ordering::Greater };
    }
    a.cmp(b)
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Exact direction / displacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub x: Rational,
    pub y: Rational,
}

impl Vector {
    pub fn new(x: Rational, y: Rational) -> Self {
        Vector { x, y }
    }

    pub fn cross(&self, o: &Vector) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &Vector) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn add(&self, o: &Vector) -> Vector {
        Vector { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn neg(&self) -> Vector {
        Vector { x: -&self.x, y: -&self.y }
    }

    pub fn perp(&self) -> Vector {
        Vector { x: -&self.y, y: self.x.clone() }
    }

    pub fn scale(&self, s: &Rational) -> Vector {
        Vector { x: &self.x * s, y: &self.y * s }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::CounterClockwise => 1,
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
        }
    }

    fn from_sign(s: i32) -> Self {
        match s.cmp(&0) {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }
}

const FILTER_EPS: f64 = 8e-15;

/// Sign of `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    Orientation::from_sign(orient_sign(p, q, r))
}

pub fn orient_sign(p: &Point, q: &Point, r: &Point) -> i32 {
    let d1x = q.fx - p.fx;
    let d1y = q.fy - p.fy;
    let d2x = r.fx - p.fx;
    let d2y = r.fy - p.fy;
    let det = d1x * d2y - d1y * d2x;
    let mag = (q.fx.abs() + p.fx.abs()) * (r.fy.abs() + p.fy.abs())
        + (q.fy.abs() + p.fy.abs()) * (r.fx.abs() + p.fx.abs());
    if mag > 1e-250 && mag.is_finite() && det.abs() > FILTER_EPS * mag {
        return if det > 0.0 { 1 } else { -1 };
    }
    let d1 = q.sub(p);
    let d2 = r.sub(p);
    sign_of(&d1.cross(&d2))
}

/// Sign of the cross product of two exact directions, filtered.
pub fn cross_sign(a: &Vector, b: &Vector) -> i32 {
    let [ax, ay] = a.to_f64();
    let [bx, by] = b.to_f64();
    let det = ax * by - ay * bx;
    let mag = ax.abs() * by.abs() + ay.abs() * bx.abs();
    if mag > 1e-250 && mag.is_finite() && det.abs() > 4.0 * FILTER_EPS * mag {
        return if det > 0.0 { 1 } else { -1 };
    }
    sign_of(&a.cross(b))
}

pub fn sign_of(v: &Rational) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Closed-segment membership for a point already known to be collinear.
fn within_box(p: &Point, a: &Point, b: &Point) -> bool {
    let between = |v: (&Rational, f64), u: (&Rational, f64), w: (&Rational, f64)| {
        let (lo, hi) = if cmp_filtered(u.0, u.1, w.0, w.1) != Ordering::Greater { (u, w) } else { (w, u) };
        cmp_filtered(v.0, v.1, lo.0, lo.1) != Ordering::Less
            && cmp_filtered(v.0, v.1, hi.0, hi.1) != Ordering::Greater
    };
    between((&p.x, p.fx), (&a.x, a.fx), (&b.x, b.fx)) && between((&p.y, p.fy), (&a.y, a.fy), (&b.y, b.fy))
}

impl Point {
    pub fn cmp_y(&self, other: &Point) -> Ordering {
        cmp_filtered(&self.y, self.fy, &other.y, other.fy)
    }

    pub fn cmp_x(&self, other: &Point) -> Ordering {
        cmp_filtered(&self.x, self.fx, &other.x, other.fx)
    }
}

pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient_sign(a, b, p) == 0 && within_box(p, a, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if a == b {
            return Err(Error::DegeneratePolygon("zero-length segment".into()));
        }
        Ok(Segment { a, b })
    }

    pub fn length(&self) -> f64 {
        self.a.dist(&self.b)
    }
}

/// Result of intersecting two closed segments.
#[derive(Clone, Debug, PartialEq)]
pub enum SegmentIntersection {
    None,
    Point(Point),
    Overlap(Point, Point),
}

pub fn segment_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> SegmentIntersection {
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return SegmentIntersection::Point(line_intersection(a, b, c, d));
    }
    if o1 == 0 && o2 == 0 {
        // collinear: collect the shared endpoints
        let mut pts: Vec<Point> = Vec::new();
        for p in [a, b] {
            if within_box(p, c, d) {
                pts.push(p.clone());
            }
        }
        for p in [c, d] {
            if within_box(p, a, b) {
                pts.push(p.clone());
            }
        }
        pts.sort();
        pts.dedup();
        return match pts.len() {
            0 => SegmentIntersection::None,
            1 => SegmentIntersection::Point(pts.pop().unwrap()),
            _ => SegmentIntersection::Overlap(pts[0].clone(), pts[pts.len() - 1].clone()),
        };
    }
    if o1 == 0 && within_box(c, a, b) {
        return SegmentIntersection::Point(c.clone());
    }
    if o2 == 0 && within_box(d, a, b) {
        return SegmentIntersection::Point(d.clone());
    }
    if o3 == 0 && within_box(a, c, d) {
        return SegmentIntersection::Point(a.clone());
    }
    if o4 == 0 && within_box(b, c, d) {
        return SegmentIntersection::Point(b.clone());
    }
    SegmentIntersection::None
}

/// Intersection of the (non-parallel) lines `ab` and `cd`.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Point {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = r.cross(&s);
    let t = c.sub(a).cross(&s) / denom;
    a.lerp(b, &t)
}

/// Parameter `t` along `p + t d` where the ray meets line `uv`, if not parallel.
pub fn ray_line_param(p: &Point, d: &Vector, u: &Point, v: &Point) -> Option<(Rational, Rational)> {
    let e = v.sub(u);
    let denom = d.cross(&e);
    if denom.is_zero() {
        return None;
    }
    let w = u.sub(p);
    let t = w.cross(&e) / &denom;
    let s = w.cross(d) / &denom;
    Some((t, s))
}

/// Squared distance from `p` to the closed segment `ab`, exact.
pub fn point_segment_dist2(p: &Point, a: &Point, b: &Point) -> Rational {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let len2 = ab.dot(&ab);
    if len2.is_zero() {
        return p.dist2_exact(a);
    }
    let t = ap.dot(&ab) / &len2;
    if t <= Rational::zero() {
        p.dist2_exact(a)
    } else if t >= Rational::one() {
        p.dist2_exact(b)
    } else {
        p.dist2_exact(&a.lerp(b, &t))
    }
}

pub fn point_segment_dist_f64(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return (p[0] - a[0]).hypot(p[1] - a[1]);
    }
    let t = (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0);
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}

/// Location of a point relative to a closed ring (any orientation, may
/// revisit vertices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

pub fn locate_in_ring(p: &Point, ring: &[Point]) -> Location {
    let n = ring.len();
    let mut winding = 0i32;
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        // cheap bounding reject for the boundary test
        let maybe_on = !(p.fx < a.fx.min(b.fx) - 1e-9 * (1.0 + a.fx.abs().max(b.fx.abs()))
            || p.fx > a.fx.max(b.fx) + 1e-9 * (1.0 + a.fx.abs().max(b.fx.abs()))
            || p.fy < a.fy.min(b.fy) - 1e-9 * (1.0 + a.fy.abs().max(b.fy.abs()))
            || p.fy > a.fy.max(b.fy) + 1e-9 * (1.0 + a.fy.abs().max(b.fy.abs())));
        if a.cmp_y(p) != Ordering::Greater {
            if b.cmp_y(p) == Ordering::Greater {
                let s = orient_sign(a, b, p);
                if s > 0 {
                    winding += 1;
                } else if s == 0 {
                    return Location::Boundary;
                }
                continue;
            }
        } else if b.cmp_y(p) != Ordering::Greater {
            let s = orient_sign(a, b, p);
            if s < 0 {
                winding -= 1;
            } else if s == 0 {
                return Location::Boundary;
            }
            continue;
        }
        if maybe_on && on_segment(p, a, b) {
            return Location::Boundary;
        }
    }
    if winding != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Signed doubled area of a ring, exact.
pub fn ring_area2(ring: &[Point]) -> Rational {
    let n = ring.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        acc += &a.x * &b.y - &a.y * &b.x;
    }
    acc
}

pub fn ring_area_f64(ring: &[Point]) -> f64 {
    let n = ring.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        acc += a.fx * b.fy - a.fy * b.fx;
    }
    acc / 2.0
}

pub fn ring_perimeter(ring: &[Point]) -> f64 {
    let n = ring.len();
    (0..n).map(|i| ring[i].dist(&ring[(i + 1) % n])).sum()
}

/// Convex hull by monotone chain (exact, collinear points dropped).
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.cmp_x(b).then_with(|| a.cmp_y(b)));
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegeneratePolygon("fewer than three distinct points".into()));
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && orient_sign(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    ConvexPolygon::new(hull)
}

/// Drops vertices that are collinear with their neighbours.
pub fn simplify_ring(ring: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = ring.to_vec();
    loop {
        let n = out.len();
        if n < 3 {
            return out;
        }
        let mut removed = false;
        let mut keep = Vec::with_capacity(n);
        for i in 0..n {
            let prev = &out[(i + n - 1) % n];
            let next = &out[(i + 1) % n];
            let cur = &out[i];
            let degenerate = cur == prev
                || (orient_sign(prev, cur, next) == 0 && within_box(cur, prev, next));
            if degenerate && !removed {
                removed = true;
                continue;
            }
            keep.push(cur.clone());
        }
        out = keep;
        if !removed {
            return out;
        }
    }
}

/// Axis-aligned rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn new(min: Point, max: Point) -> Result<Self> {
        if min.x >= max.x || min.y >= max.y {
            return Err(Error::InvalidInstance("empty bounding rectangle".into()));
        }
        Ok(Rect { min, max })
    }

    pub fn from_ints(x0: i64, y0: i64, x1: i64, y1: i64) -> Result<Self> {
        Rect::new(Point::from_ints(x0, y0), Point::from_ints(x1, y1))
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            self.min.clone(),
            Point::new(self.max.x.clone(), self.min.y.clone()),
            self.max.clone(),
            Point::new(self.min.x.clone(), self.max.y.clone()),
        ]
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn contains_strictly(&self, p: &Point) -> bool {
        p.x > self.min.x && p.x < self.max.x && p.y > self.min.y && p.y < self.max.y
    }

    pub fn width(&self) -> f64 {
        self.max.fx - self.min.fx
    }

    pub fn height(&self) -> f64 {
        self.max.fy - self.min.fy
    }
}

/// Strictly convex polygon, vertices stored counter-clockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    width: f64,
    diameter: f64,
}

impl Eq for ConvexPolygon {}

impl ConvexPolygon {
    /// Validates strict convexity; clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::DegeneratePolygon(format!("{n} vertices")));
        }
        if ring_area2(&vertices).is_negative() {
            vertices.reverse();
        }
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            if a == b {
                return Err(Error::DegeneratePolygon("repeated vertex".into()));
            }
            for (k, c) in vertices.iter().enumerate() {
                if k == i || k == (i + 1) % n {
                    continue;
                }
                if orient_sign(a, b, c) <= 0 {
                    return Err(Error::DegeneratePolygon(
                        "vertices not in strictly convex position".into(),
                    ));
                }
            }
        }
        let (width, diameter) = metrics(&vertices);
        Ok(ConvexPolygon { vertices, width, diameter })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        ConvexPolygon::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    /// Axis-parallel rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Result<Self> {
        ConvexPolygon::new(vec![
            Point::new(x0.clone(), y0.clone()),
            Point::new(x1.clone(), y0),
            Point::new(x1, y1.clone()),
            Point::new(x0, y1),
        ])
    }

    /// Axis-parallel square with the given center and side.
    pub fn square(center: &Point, side: &Rational) -> Result<Self> {
        let h = side * rat(1, 2);
        ConvexPolygon::rectangle(
            center.x() - &h,
            center.y() - &h,
            center.x() + &h,
            center.y() + &h,
        )
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        let n = self.vertices.len();
        (&self.vertices[i % n], &self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn fatness(&self) -> f64 {
        self.width / self.diameter
    }

    pub fn perimeter(&self) -> f64 {
        ring_perimeter(&self.vertices)
    }

    pub fn area(&self) -> f64 {
        ring_area_f64(&self.vertices)
    }

    pub fn bbox_f64(&self) -> [f64; 4] {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for v in &self.vertices {
            b[0] = b[0].min(v.fx);
            b[1] = b[1].min(v.fy);
            b[2] = b[2].max(v.fx);
            b[3] = b[3].max(v.fy);
        }
        b
    }

    pub fn translate(&self, v: &Vector) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|p| p.add(v)).collect(),
            width: self.width,
            diameter: self.diameter,
        }
    }

    /// Applies `(x, y) -> (sx x, sy y)` with positive factors.
    pub fn scale(&self, sx: &Rational, sy: &Rational) -> Result<ConvexPolygon> {
        ConvexPolygon::new(
            self.vertices
                .iter()
                .map(|p| Point::new(p.x() * sx, p.y() * sy))
                .collect(),
        )
    }

    pub fn locate(&self, p: &Point) -> Location {
        let mut on_edge = false;
        for (a, b) in self.edges() {
            match orient_sign(a, b, p) {
                -1 => return Location::Outside,
                0 => on_edge = true,
                _ => {}
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Inside
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.locate(p) != Location::Outside
    }

    pub fn contains_interior(&self, p: &Point) -> bool {
        self.locate(p) == Location::Inside
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.locate(p) == Location::Boundary
    }

    /// Index of the edge containing boundary point `p` (the first such edge).
    pub fn edge_containing(&self, p: &Point) -> Option<usize> {
        (0..self.len()).find(|&i| {
            let (a, b) = self.edge(i);
            on_segment(p, a, b)
        })
    }

    /// Strict disjointness (positive distance) via separating edge normals.
    pub fn is_disjoint(&self, other: &ConvexPolygon) -> bool {
        self.separating_edge(other).is_some()
    }

    /// An edge of either polygon whose supporting line strictly separates
    /// the other polygon: `(false, i)` is edge `i` of `self`, `(true, i)`
    /// edge `i` of `other`.
    pub fn separating_edge(&self, other: &ConvexPolygon) -> Option<(bool, usize)> {
        let find = |p: &ConvexPolygon, q: &ConvexPolygon| {
            (0..p.len()).find(|&i| {
                let (a, b) = p.edge(i);
                q.vertices.iter().all(|v| orient_sign(a, b, v) < 0)
            })
        };
        if let Some(i) = find(self, other) {
            return Some((false, i));
        }
        find(other, self).map(|i| (true, i))
    }

    /// Parameter interval `[t0, t1]` of the segment `p + t (q - p)`,
    /// `t in [0, 1]`, lying in the closed polygon.
    pub fn clip_segment(&self, p: &Point, q: &Point) -> Option<(Rational, Rational)> {
        let d = q.sub(p);
        let mut t0 = Rational::zero();
        let mut t1 = Rational::one();
        for (a, b) in self.edges() {
            // inside: cross(b - a, x - a) >= 0
            let e = b.sub(a);
            let num = e.cross(&p.sub(a));
            let den = e.cross(&d);
            if den.is_zero() {
                if num.is_negative() {
                    return None;
                }
                continue;
            }
            let t = -num / &den;
            if den.is_positive() {
                if t > t0 {
                    t0 = t;
                }
            } else if t < t1 {
                t1 = t;
            }
            if t0 > t1 {
                return None;
            }
        }
        Some((t0, t1))
    }

    /// True if the closed segment `pq` meets the open interior.
    pub fn segment_crosses_interior(&self, p: &Point, q: &Point) -> bool {
        if !self.bbox_overlaps_segment(p, q) || self.clearly_outside_one_edge(p, q) {
            return false;
        }
        match self.clip_segment(p, q) {
            Some((t0, t1)) if t0 < t1 => {
                let mid = p.lerp(q, &((t0 + t1) * rat(1, 2)));
                self.contains_interior(&mid)
            }
            _ => false,
        }
    }

    /// Both endpoints strictly and robustly outside the same edge line.
    fn clearly_outside_one_edge(&self, p: &Point, q: &Point) -> bool {
        self.edges().any(|(a, b)| {
            let (ex, ey) = (b.fx - a.fx, b.fy - a.fy);
            let side = |x: &Point| {
                let d = ex * (x.fy - a.fy) - ey * (x.fx - a.fx);
                let bound = 1e-13 * ((b.fx.abs() + a.fx.abs()) * (x.fy.abs() + a.fy.abs())
                    + (b.fy.abs() + a.fy.abs()) * (x.fx.abs() + a.fx.abs()));
                d < -bound
            };
            side(p) && side(q)
        })
    }

    fn bbox_overlaps_segment(&self, p: &Point, q: &Point) -> bool {
        let b = self.bbox_f64();
        let tol = 1e-9 * (1.0 + b[2].abs().max(b[3].abs()).max(b[0].abs()).max(b[1].abs()));
        !(p.fx.max(q.fx) < b[0] - tol
            || p.fx.min(q.fx) > b[2] + tol
            || p.fy.max(q.fy) < b[1] - tol
            || p.fy.min(q.fy) > b[3] + tol)
    }

    /// First parameter `t >= 0` at which the ray `p + t d` meets the
    /// polygon, assuming it does.
    pub fn ray_entry(&self, p: &Point, d: &Vector) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for (a, b) in self.edges() {
            if let Some((t, s)) = ray_line_param(p, d, a, b) {
                if !t.is_negative() && !s.is_negative() && s <= Rational::one()
                    && best.as_ref().is_none_or(|bt| &t < bt) {
                        best = Some(t);
                    }
            }
        }
        best
    }

    pub fn ray_entry_f64(&self, p: [f64; 2], d: [f64; 2]) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64)> = None;
        for (a, b) in self.edges() {
            let e = [b.fx - a.fx, b.fy - a.fy];
            let den = d[0] * e[1] - d[1] * e[0];
            if den == 0.0 {
                continue;
            }
            let w = [a.fx - p[0], a.fy - p[1]];
            let t = (w[0] * e[1] - w[1] * e[0]) / den;
            let s = (w[0] * d[1] - w[1] * d[0]) / den;
            if t >= 0.0 && (-1e-12..=1.0 + 1e-12).contains(&s) {
                let sin = den.abs() / (d[0].hypot(d[1]) * e[0].hypot(e[1]));
                if best.is_none_or(|(bt, _)| t < bt) {
                    best = Some((t, sin));
                }
            }
        }
        best
    }

    /// Tangent vertices seen from an exterior point: `(right, left)` indices
    /// such that the counter-clockwise angular interval from `right` to
    /// `left` subtends the polygon. When a supporting line contains an edge,
    /// the nearer endpoint is reported.
    pub fn tangent_indices(&self, p: &Point) -> Result<(usize, usize)> {
        let n = self.len();
        // front[i]: edge i is strictly facing p
        let front: Vec<bool> = (0..n)
            .map(|i| {
                let (a, b) = self.edge(i);
                orient_sign(a, b, p) < 0
            })
            .collect();
        if !front.iter().any(|&f| f) {
            return Err(Error::PointInsideBody);
        }
        let mut left = None;
        let mut right = None;
        for i in 0..n {
            let prev = front[(i + n - 1) % n];
            if front[i] && !prev {
                left = Some(i);
            }
            if !front[i] && prev {
                right = Some(i);
            }
        }
        match (right, left) {
            (Some(r), Some(l)) => Ok((r, l)),
            _ => Err(Error::PointInsideBody),
        }
    }

    pub fn tangent_points(&self, p: &Point) -> Result<(Point, Point)> {
        let (r, l) = self.tangent_indices(p)?;
        Ok((self.vertices[r].clone(), self.vertices[l].clone()))
    }

    /// Sum of vertices' coordinate extents, used for quick f64 rejects.
    pub fn centroid_f64(&self) -> [f64; 2] {
        let n = self.len() as f64;
        let (sx, sy) = self
            .vertices
            .iter()
            .fold((0.0, 0.0), |(sx, sy), v| (sx + v.fx, sy + v.fy));
        [sx / n, sy / n]
    }

    /// Exact squared distance to a disjoint segment (zero if they meet).
    pub fn dist2_to_segment(&self, a: &Point, b: &Point) -> Rational {
        if self.contains(a) || self.contains(b) {
            return Rational::zero();
        }
        if a != b && self.clip_segment(a, b).is_some() {
            return Rational::zero();
        }
        let mut best: Option<Rational> = None;
        let mut consider = |d: Rational| {
            if best.as_ref().is_none_or(|b| &d < b) {
                best = Some(d);
            }
        };
        for (u, v) in self.edges() {
            consider(point_segment_dist2(a, u, v));
            consider(point_segment_dist2(b, u, v));
            consider(point_segment_dist2(u, a, b));
        }
        best.unwrap()
    }
}

fn metrics(vertices: &[Point]) -> (f64, f64) {
    let n = vertices.len();
    let mut diameter: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            diameter = diameter.max(vertices[i].dist(&vertices[j]));
        }
    }
    let mut width = f64::INFINITY;
    for i in 0..n {
        let a = vertices[i].to_f64();
        let b = vertices[(i + 1) % n].to_f64();
        let len = (b[0] - a[0]).hypot(b[1] - a[1]);
        let far = vertices
            .iter()
            .map(|v| ((b[0] - a[0]) * (v.fy - a[1]) - (b[1] - a[1]) * (v.fx - a[0])).abs() / len)
            .fold(0.0, f64::max);
        width = width.min(far);
    }
    (width, diameter)
}

/// `(width, diameter, fatness)` of a convex polygon.
pub fn width_diameter(c: &ConvexPolygon) -> (f64, f64, f64) {
    (c.width, c.diameter, c.fatness())
}

/// Upper bound on the geometric dilation of a `lambda`-fat convex curve.
pub fn dilation_upper_bound(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::NonPositiveFatness(lambda));
    }
    Ok((std::f64::consts::PI / lambda).min(2.0 * (1.0 / lambda + 1.0)))
}

/// Shorter boundary arc between two boundary points, ties going to the
/// counter-clockwise arc. Returns the arc as a polyline from `p` to `q`.
pub fn boundary_geodesic(c: &ConvexPolygon, p: &Point, q: &Point) -> Result<(Vec<Point>, f64)> {
    let ep = c.edge_containing(p).ok_or(Error::PointNotOnBoundary)?;
    let eq = c.edge_containing(q).ok_or(Error::PointNotOnBoundary)?;
    if p == q {
        return Ok((vec![p.clone()], 0.0));
    }
    let ccw = boundary_arc(c, p, ep, q, eq);
    let mut cw = {
        // walk the reversed polygon
        let rev: Vec<Point> = c.vertices.iter().rev().cloned().collect();
        let rc = ConvexPolygonView { vertices: &rev };
        let rp = rc.edge_containing(p).unwrap();
        let rq = rc.edge_containing(q).unwrap();
        rc.arc(p, rp, q, rq)
    };
    let lccw = polyline_length(&ccw);
    let lcw = polyline_length(&cw);
    let per = c.perimeter();
    if lcw < lccw - 1e-12 * per {
        cw.dedup();
        Ok((cw, lcw))
    } else {
        Ok((ccw, lccw))
    }
}

pub fn polyline_length(pts: &[Point]) -> f64 {
    pts.windows(2).map(|w| w[0].dist(&w[1])).sum()
}

fn boundary_arc(c: &ConvexPolygon, p: &Point, ep: usize, q: &Point, eq: usize) -> Vec<Point> {
    ConvexPolygonView { vertices: &c.vertices }.arc(p, ep, q, eq)
}

struct ConvexPolygonView<'a> {
    vertices: &'a [Point],
}

impl ConvexPolygonView<'_> {
    fn edge_containing(&self, p: &Point) -> Option<usize> {
        let n = self.vertices.len();
        (0..n).find(|&i| on_segment(p, &self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Arc following vertex order from `p` (on edge `ep`) to `q` (on edge `eq`).
    fn arc(&self, p: &Point, ep: usize, q: &Point, eq: usize) -> Vec<Point> {
        let n = self.vertices.len();
        let mut out = vec![p.clone()];
        // q ahead of p on the same edge: direct
        if ep == eq {
            let a = &self.vertices[ep];
            if a.dist2_exact(p) <= a.dist2_exact(q) {
                out.push(q.clone());
                return out;
            }
        }
        let mut i = (ep + 1) % n;
        loop {
            let v = &self.vertices[i];
            if v != out.last().unwrap() {
                out.push(v.clone());
            }
            if i == eq {
                break;
            }
            i = (i + 1) % n;
        }
        if q != out.last().unwrap() {
            out.push(q.clone());
        }
        out
    }
}

/// Common tangent of two disjoint convex polygons.
#[derive(Clone, Debug, PartialEq)]
pub struct CommonTangent {
    pub outer: bool,
    /// Touch points on the first polygon, nearest to the second first.
    pub touch_first: Vec<Point>,
    /// Touch points on the second polygon, nearest to the first first.
    pub touch_second: Vec<Point>,
}

impl CommonTangent {
    pub fn line(&self) -> (&Point, &Point) {
        (&self.touch_first[0], &self.touch_second[0])
    }
}

/// The four common tangents (two outer, two inner) of disjoint polygons.
pub fn common_tangents(c1: &ConvexPolygon, c2: &ConvexPolygon) -> Result<Vec<CommonTangent>> {
    if !c1.is_disjoint(c2) {
        return Err(Error::BodiesIntersect);
    }
    let mut out: Vec<CommonTangent> = Vec::new();
    for u in c1.vertices() {
        for v in c2.vertices() {
            let side = |poly: &ConvexPolygon| -> Option<i32> {
                let mut s = 0;
                for w in poly.vertices() {
                    let o = orient_sign(u, v, w);
                    if o != 0 {
                        if s != 0 && s != o {
                            return None;
                        }
                        s = o;
                    }
                }
                Some(s)
            };
            let (Some(s1), Some(s2)) = (side(c1), side(c2)) else { continue };
            let outer = s1 == s2;
            // group by line
            if let Some(t) = out.iter_mut().find(|t| {
                let (a, b) = t.line();
                orient_sign(a, b, u) == 0 && orient_sign(a, b, v) == 0
            }) {
                if !t.touch_first.contains(u) {
                    t.touch_first.push(u.clone());
                }
                if !t.touch_second.contains(v) {
                    t.touch_second.push(v.clone());
                }
            } else {
                out.push(CommonTangent {
                    outer,
                    touch_first: vec![u.clone()],
                    touch_second: vec![v.clone()],
                });
            }
        }
    }
    for t in &mut out {
        let far_ref = t.touch_second[0].clone();
        t.touch_first
            .sort_by_key(|a| a.dist2_exact(&far_ref));
        let near_ref = t.touch_first[0].clone();
        t.touch_second
            .sort_by_key(|a| a.dist2_exact(&near_ref));
    }
    out.sort_by_key(|t| !t.outer);
    if out.len() != 4 {
        return Err(Error::Invariant(format!("expected 4 common tangents, found {}", out.len())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square_at(x: i64, y: i64) -> ConvexPolygon {
        ConvexPolygon::from_ints(&[(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]).unwrap()
    }

    #[test]
    fn orientation_examples() {
        let p = |x, y| Point::from_ints(x, y);
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::CounterClockwise);
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(2, 0)), Orientation::Collinear);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 1)), Orientation::Clockwise);
    }

    #[test]
    fn orientation_filter_falls_back_on_near_degenerate_input() {
        let tiny = Rational::new(BigInt::one(), BigInt::from(10).pow(40));
        let p = Point::new(int(0), int(0));
        let q = Point::new(int(1) + &tiny, int(1));
        let r = Point::new(int(2), int(2));
        assert_eq!(orientation(&p, &q, &r), Orientation::CounterClockwise);
        let q2 = Point::new(int(1), int(1));
        assert_eq!(orientation(&p, &q2, &r), Orientation::Collinear);
    }

    #[test]
    fn tangent_points_examples() {
        let c = unit_square_at(1, 0);
        let (r, l) = c.tangent_points(&Point::from_ints(0, 0)).unwrap();
        assert_eq!(r, Point::from_ints(1, 0));
        assert_eq!(l, Point::from_ints(1, 1));
        let (r, l) = c.tangent_points(&Point::new(int(3), rat(1, 2))).unwrap();
        assert_eq!(r, Point::from_ints(2, 1));
        assert_eq!(l, Point::from_ints(2, 0));
        // on the extension of the bottom edge beyond (2, 0): nearer endpoint
        let (r, l) = c.tangent_points(&Point::from_ints(3, 0)).unwrap();
        assert_eq!(l, Point::from_ints(2, 0));
        assert_eq!(r, Point::from_ints(2, 1));
        assert_eq!(
            c.tangent_points(&Point::new(rat(3, 2), rat(1, 2))),
            Err(Error::PointInsideBody)
        );
        assert_eq!(c.tangent_points(&Point::from_ints(1, 0)), Err(Error::PointInsideBody));
    }

    #[test]
    fn common_tangents_of_translates() {
        let a = unit_square_at(0, 0);
        let b = unit_square_at(3, 0);
        let ts = common_tangents(&a, &b).unwrap();
        assert_eq!(ts.len(), 4);
        let outer: Vec<_> = ts.iter().filter(|t| t.outer).collect();
        assert_eq!(outer.len(), 2);
        for t in outer {
            let (p, q) = t.line();
            assert_eq!(p.y(), q.y(), "outer tangents of x-translates are horizontal");
        }
        for t in ts.iter().filter(|t| !t.outer) {
            // inner tangents cross the x-axis strip between the squares
            let (p, q) = t.line();
            let y = rat(1, 2);
            let x = p.x() + (q.x() - p.x()) * (&y - p.y()) / (q.y() - p.y());
            assert!(x > int(1) && x < int(3));
        }
        assert_eq!(common_tangents(&a, &unit_square_at(0, 0)), Err(Error::BodiesIntersect));
    }

    #[test]
    fn fatness_examples() {
        let sq = unit_square_at(0, 0);
        let (w, d, l) = width_diameter(&sq);
        assert!((w - 1.0).abs() < 1e-12 && (d - 2f64.sqrt()).abs() < 1e-12);
        assert!((l - 1.0 / 2f64.sqrt()).abs() < 1e-9);
        let rect = ConvexPolygon::from_ints(&[(0, 0), (3, 0), (3, 1), (0, 1)]).unwrap();
        assert!((rect.fatness() - 1.0 / 10f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn hexagon_metrics_match_vertex_scan() {
        let s3 = 3f64.sqrt();
        let pts: Vec<Point> = (0..6)
            .map(|k| {
                let a = std::f64::consts::PI / 3.0 * k as f64;
                Point::from_f64(a.cos(), a.sin())
            })
            .collect();
        let hex = ConvexPolygon::new(pts).unwrap();
        let (w, d, l) = width_diameter(&hex);
        assert!((w - s3).abs() < 1e-9);
        assert!((d - 2.0).abs() < 1e-9);
        assert!((l - s3 / 2.0).abs() < 1e-9);
    }

    #[test]
    fn dilation_bound_examples() {
        let pi = std::f64::consts::PI;
        assert!((dilation_upper_bound(1.0 / 2f64.sqrt()).unwrap() - pi * 2f64.sqrt()).abs() < 1e-12);
        assert!((dilation_upper_bound(1.0).unwrap() - pi).abs() < 1e-12);
        assert!((dilation_upper_bound(0.1).unwrap() - 22.0).abs() < 1e-9);
        assert!(matches!(dilation_upper_bound(0.0), Err(Error::NonPositiveFatness(_))));
    }

    #[test]
    fn geodesic_examples() {
        let sq = unit_square_at(0, 0);
        let (path, len) = boundary_geodesic(&sq, &Point::from_ints(0, 0), &Point::from_ints(1, 0)).unwrap();
        assert_eq!(path.len(), 2);
        assert!((len - 1.0).abs() < 1e-12);
        let (path, len) = boundary_geodesic(&sq, &Point::from_ints(0, 0), &Point::from_ints(1, 1)).unwrap();
        assert!((len - 2.0).abs() < 1e-12);
        assert_eq!(path[1], Point::from_ints(1, 0), "antipodal tie goes counter-clockwise");
        let (path, len) = boundary_geodesic(
            &sq,
            &Point::new(rat(1, 2), int(0)),
            &Point::new(int(1), rat(1, 2)),
        )
        .unwrap();
        assert!((len - 1.0).abs() < 1e-12);
        assert_eq!(path[1], Point::from_ints(1, 0));
        // reversed direction picks the clockwise arc through the same corner
        let (path, _) = boundary_geodesic(
            &sq,
            &Point::new(int(1), rat(1, 2)),
            &Point::new(rat(1, 2), int(0)),
        )
        .unwrap();
        assert_eq!(path.len(), 3);
        assert_eq!(path[1], Point::from_ints(1, 0));
        assert_eq!(
            boundary_geodesic(&sq, &Point::new(rat(1, 2), rat(1, 2)), &Point::from_ints(0, 0)),
            Err(Error::PointNotOnBoundary)
        );
    }

    #[test]
    fn rejects_degenerate_polygons() {
        assert!(ConvexPolygon::from_ints(&[(0, 0), (1, 0), (2, 0), (1, 1)]).is_err());
        assert!(ConvexPolygon::from_ints(&[(0, 0), (1, 0)]).is_err());
        assert!(ConvexPolygon::from_ints(&[(0, 0), (0, 0), (1, 1)]).is_err());
        // clockwise input is normalised
        let cw = ConvexPolygon::from_ints(&[(0, 0), (0, 1), (1, 1), (1, 0)]).unwrap();
        assert!(ring_area2(cw.vertices()).is_positive());
    }

    #[test]
    fn clip_and_interior_crossing() {
        let sq = unit_square_at(0, 0);
        let a = Point::new(rat(-1, 2), rat(1, 2));
        let b = Point::new(rat(3, 2), rat(1, 2));
        assert!(sq.segment_crosses_interior(&a, &b));
        // grazing along an edge is allowed
        assert!(!sq.segment_crosses_interior(&Point::from_ints(-1, 0), &Point::from_ints(2, 0)));
        // touching a corner only
        assert!(!sq.segment_crosses_interior(&Point::from_ints(-1, 1), &Point::from_ints(1, -1)));
        let (t0, t1) = sq.clip_segment(&a, &b).unwrap();
        assert_eq!((t0, t1), (rat(1, 4), rat(3, 4)));
    }
}
