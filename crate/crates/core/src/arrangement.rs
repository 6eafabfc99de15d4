//! Exact segment arrangements: splitting at crossings and a half-edge
//! structure with traced faces.
//!
//! Half-edge `2e` runs along atomic edge `e` from its first to its second
//! endpoint, `2e + 1` is its twin. Faces keep the face on the left, so
//! bounded faces are counter-clockwise cycles and the single unbounded face
//! is the clockwise one.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{
    locate_in_ring, orient_sign, rat, ring_area2, segment_intersection, Location, Point, Rational,
    SegmentIntersection,
};

/// Splits segments at all pairwise contacts. Returns the vertex list and the
/// atomic edges (deduplicated, as vertex index pairs).
pub fn split_segments(segments: &[(Point, Point)]) -> (Vec<Point>, Vec<[usize; 2]>) {
    let segs: Vec<&(Point, Point)> = segments.iter().filter(|(a, b)| a != b).collect();
    let mut on_seg: Vec<Vec<Point>> = segs.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
    let bbox: Vec<[f64; 4]> = segs
        .iter()
        .map(|(a, b)| {
            [a.xf().min(b.xf()), a.yf().min(b.yf()), a.xf().max(b.xf()), a.yf().max(b.yf())]
        })
        .collect();
    let mut order: Vec<usize> = (0..segs.len()).collect();
    order.sort_by(|&i, &j| bbox[i][0].total_cmp(&bbox[j][0]));
    let slack = |v: f64| 1e-9 * (1.0 + v.abs());
    for (k, &i) in order.iter().enumerate() {
        let bi = bbox[i];
        for &j in &order[k + 1..] {
            let bj = bbox[j];
            if bj[0] > bi[2] + slack(bi[2]) {
                break;
            }
            if bj[1] > bi[3] + slack(bi[3]) || bj[3] < bi[1] - slack(bi[1]) {
                continue;
            }
            let (a, b) = segs[i];
            let (c, d) = segs[j];
            match segment_intersection(a, b, c, d) {
                SegmentIntersection::None => {}
                SegmentIntersection::Point(p) => {
                    on_seg[i].push(p.clone());
                    on_seg[j].push(p);
                }
                SegmentIntersection::Overlap(p, q) => {
                    on_seg[i].push(p.clone());
                    on_seg[i].push(q.clone());
                    on_seg[j].push(p);
                    on_seg[j].push(q);
                }
            }
        }
    }
    let mut index: HashMap<Point, usize> = HashMap::new();
    let mut vertices: Vec<Point> = Vec::new();
    let mut seen: HashSet<[usize; 2]> = HashSet::new();
    let mut edges = Vec::new();
    for mut pts in on_seg {
        pts.sort();
        pts.dedup();
        let ids: Vec<usize> = pts
            .into_iter()
            .map(|p| {
                *index.entry(p.clone()).or_insert_with(|| {
                    vertices.push(p);
                    vertices.len() - 1
                })
            })
            .collect();
        for w in ids.windows(2) {
            let key = [w[0].min(w[1]), w[0].max(w[1])];
            if seen.insert(key) {
                edges.push(key);
            }
        }
    }
    (vertices, edges)
}

#[derive(Clone, Debug)]
pub struct Face {
    pub half_edges: Vec<usize>,
    pub area2: Rational,
}

impl Face {
    pub fn is_bounded(&self) -> bool {
        self.area2.is_positive()
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub vertices: Vec<Point>,
    pub edges: Vec<[usize; 2]>,
    next: Vec<usize>,
    face_of: Vec<usize>,
    pub faces: Vec<Face>,
}

/// Counter-clockwise angular comparison of directions `a - o` and `b - o`,
/// starting from the positive x-axis.
fn angle_cmp(o: &Point, a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| match p.cmp_y(o) {
        Ordering::Greater => 0,
        Ordering::Equal if p.cmp_x(o) == Ordering::Greater => 0,
        _ => 1,
    };
    half(a).cmp(&half(b)).then_with(|| match orient_sign(o, a, b) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

impl Arrangement {
    pub fn build(segments: &[(Point, Point)]) -> Result<Self> {
        let (vertices, edges) = split_segments(segments);
        let nh = edges.len() * 2;
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for h in 0..nh {
            outgoing[Self::origin_of(&edges, h)].push(h);
        }
        let mut pos = vec![0usize; nh];
        for (v, out) in outgoing.iter_mut().enumerate() {
            let o = &vertices[v];
            out.sort_by(|&g, &h| {
                angle_cmp(o, &vertices[Self::dest_of(&edges, g)], &vertices[Self::dest_of(&edges, h)])
            });
            for (k, &h) in out.iter().enumerate() {
                pos[h] = k;
            }
        }
        let mut next = vec![usize::MAX; nh];
        for h in 0..nh {
            let t = h ^ 1;
            let v = Self::origin_of(&edges, t);
            let out = &outgoing[v];
            let k = out.len();
            next[h] = out[(pos[t] + k - 1) % k];
        }
        let mut face_of = vec![usize::MAX; nh];
        let mut faces = Vec::new();
        for start in 0..nh {
            if face_of[start] != usize::MAX {
                continue;
            }
            let fid = faces.len();
            let mut cycle = Vec::new();
            let mut h = start;
            loop {
                face_of[h] = fid;
                cycle.push(h);
                h = next[h];
                if h == start {
                    break;
                }
                if cycle.len() > nh {
                    return Err(Error::Invariant("face traversal did not close".into()));
                }
            }
            let ring: Vec<Point> =
                cycle.iter().map(|&h| vertices[Self::origin_of(&edges, h)].clone()).collect();
            faces.push(Face { half_edges: cycle, area2: ring_area2(&ring) });
        }
        let unbounded = faces.iter().filter(|f| !f.is_bounded()).count();
        if unbounded != 1 && !faces.is_empty() {
            return Err(Error::Invariant(format!(
                "arrangement is disconnected: {unbounded} non-positive face cycles"
            )));
        }
        Ok(Arrangement { vertices, edges, next, face_of, faces })
    }

    fn origin_of(edges: &[[usize; 2]], h: usize) -> usize {
        edges[h / 2][h % 2]
    }

    fn dest_of(edges: &[[usize; 2]], h: usize) -> usize {
        edges[h / 2][1 - h % 2]
    }

    pub fn half_edge_count(&self) -> usize {
        self.next.len()
    }

    pub fn origin(&self, h: usize) -> &Point {
        &self.vertices[Self::origin_of(&self.edges, h)]
    }

    pub fn dest(&self, h: usize) -> &Point {
        &self.vertices[Self::dest_of(&self.edges, h)]
    }

    pub fn twin(&self, h: usize) -> usize {
        h ^ 1
    }

    pub fn next(&self, h: usize) -> usize {
        self.next[h]
    }

    pub fn face_of(&self, h: usize) -> usize {
        self.face_of[h]
    }

    pub fn face_ring(&self, f: usize) -> Vec<Point> {
        self.faces[f].half_edges.iter().map(|&h| self.origin(h).clone()).collect()
    }

    /// A point strictly inside bounded face `f`.
    pub fn face_sample(&self, f: usize) -> Option<Point> {
        if !self.faces[f].is_bounded() {
            return None;
        }
        let ring = self.face_ring(f);
        let n = ring.len();
        for i in 0..n {
            let prev = &ring[(i + n - 1) % n];
            let v = &ring[i];
            let next = &ring[(i + 1) % n];
            if orient_sign(prev, v, next) <= 0 {
                continue;
            }
            let w = prev.sub(v).add(&next.sub(v));
            let mut t = rat(1, 2);
            for _ in 0..80 {
                let x = v.add(&w.scale(&t));
                if locate_in_ring(&x, &ring) == Location::Inside {
                    return Some(x);
                }
                t *= rat(1, 2);
            }
        }
        None
    }

    /// Boundary cycles of the union of faces flagged `inside`, each with the
    /// union on its left: counter-clockwise outer boundaries, clockwise holes.
    pub fn trace_union_boundary(&self, inside: &[bool]) -> Result<Vec<Vec<Point>>> {
        let nh = self.next.len();
        let is_boundary = |h: usize| inside[self.face_of[h]] && !inside[self.face_of[h ^ 1]];
        let mut used = vec![false; nh];
        let mut cycles = Vec::new();
        for start in 0..nh {
            if used[start] || !is_boundary(start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            loop {
                used[h] = true;
                cycle.push(self.origin(h).clone());
                let mut c = self.next[h];
                let mut guard = 0;
                while inside[self.face_of[c ^ 1]] {
                    c = self.next[c ^ 1];
                    guard += 1;
                    if guard > nh {
                        return Err(Error::Invariant("boundary rotation did not terminate".into()));
                    }
                }
                h = c;
                if h == start {
                    break;
                }
                if used[h] || cycle.len() > nh {
                    return Err(Error::Invariant("boundary trace revisited a half-edge".into()));
                }
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }

    /// Connected components of the flagged faces under edge adjacency.
    pub fn component_count(&self, inside: &[bool]) -> usize {
        let nf = self.faces.len();
        let mut parent: Vec<usize> = (0..nf).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for h in (0..self.next.len()).step_by(2) {
            let (f, g) = (self.face_of[h], self.face_of[h + 1]);
            if inside[f] && inside[g] {
                let (rf, rg) = (find(&mut parent, f), find(&mut parent, g));
                parent[rf] = rg;
            }
        }
        let mut roots = HashSet::new();
        for f in 0..nf {
            if inside[f] {
                roots.insert(find(&mut parent, f));
            }
        }
        roots.len()
    }
}

/// Signed-area sanity helper used by callers that only need the total.
pub fn total_bounded_area2(arr: &Arrangement) -> Rational {
    arr.faces
        .iter()
        .filter(|f| f.is_bounded())
        .fold(Rational::zero(), |acc, f| acc + &f.area2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::int;

    fn seg(a: (i64, i64), b: (i64, i64)) -> (Point, Point) {
        (Point::from_ints(a.0, a.1), Point::from_ints(b.0, b.1))
    }

    fn square_segments(x0: i64, y0: i64, x1: i64, y1: i64) -> Vec<(Point, Point)> {
        vec![
            seg((x0, y0), (x1, y0)),
            seg((x1, y0), (x1, y1)),
            seg((x1, y1), (x0, y1)),
            seg((x0, y1), (x0, y0)),
        ]
    }

    #[test]
    fn crossing_diagonals_split_square() {
        let mut s = square_segments(0, 0, 2, 2);
        s.push(seg((0, 0), (2, 2)));
        s.push(seg((2, 0), (0, 2)));
        let arr = Arrangement::build(&s).unwrap();
        assert_eq!(arr.vertices.len(), 5);
        assert_eq!(arr.edges.len(), 8);
        let bounded: Vec<_> = arr.faces.iter().filter(|f| f.is_bounded()).collect();
        assert_eq!(bounded.len(), 4);
        assert_eq!(total_bounded_area2(&arr), int(8));
        // Euler: V - E + F = 2
        assert_eq!(arr.vertices.len() as i64 - arr.edges.len() as i64 + arr.faces.len() as i64, 2);
    }

    #[test]
    fn overlapping_collinear_segments_share_edges() {
        let mut s = square_segments(0, 0, 4, 4);
        s.push(seg((0, 2), (3, 2)));
        s.push(seg((1, 2), (4, 2)));
        let arr = Arrangement::build(&s).unwrap();
        assert_eq!(arr.faces.iter().filter(|f| f.is_bounded()).count(), 2);
        assert_eq!(total_bounded_area2(&arr), int(32));
    }

    #[test]
    fn dangling_edge_stays_in_one_face() {
        let mut s = square_segments(0, 0, 4, 4);
        s.push(seg((0, 2), (2, 2)));
        let arr = Arrangement::build(&s).unwrap();
        let bounded: Vec<usize> = (0..arr.faces.len()).filter(|&f| arr.faces[f].is_bounded()).collect();
        assert_eq!(bounded.len(), 1);
        let sample = arr.face_sample(bounded[0]).unwrap();
        assert_eq!(locate_in_ring(&sample, &arr.face_ring(bounded[0])), Location::Inside);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let mut s = square_segments(0, 0, 10, 10);
        s.extend(square_segments(3, 3, 5, 5));
        assert!(matches!(Arrangement::build(&s), Err(Error::Invariant(_))));
    }

    #[test]
    fn union_boundary_of_ring() {
        // outer square with an inner square joined by a connector
        let mut s = square_segments(0, 0, 6, 6);
        s.extend(square_segments(2, 2, 4, 4));
        s.push(seg((0, 3), (2, 3)));
        let arr = Arrangement::build(&s).unwrap();
        let inside: Vec<bool> = (0..arr.faces.len())
            .map(|f| {
                arr.face_sample(f).is_some_and(|p| {
                    !(p.x() > &int(2) && p.x() < &int(4) && p.y() > &int(2) && p.y() < &int(4))
                })
            })
            .collect();
        let cycles = arr.trace_union_boundary(&inside).unwrap();
        assert_eq!(cycles.len(), 2);
        let mut areas: Vec<Rational> = cycles.iter().map(|c| ring_area2(c)).collect();
        areas.sort();
        assert_eq!(areas, vec![int(-8), int(72)]);
        assert_eq!(arr.component_count(&inside), 1);
    }

    #[test]
    fn face_samples_are_interior_for_nonconvex_faces() {
        // comb-shaped face
        let mut s = square_segments(0, 0, 10, 10);
        for x in 1..10 {
            s.push(seg((x, 0), (x, 9)));
        }
        let arr = Arrangement::build(&s).unwrap();
        for f in 0..arr.faces.len() {
            if let Some(p) = arr.face_sample(f) {
                assert_eq!(locate_in_ring(&p, &arr.face_ring(f)), Location::Inside);
            }
        }
    }
}
