use obsroute::corpus::{random_convex_polygon, rng};
use obsroute::ewrp::*;
use obsroute::{ConvexPolygon, Point};
use rand::Rng;

fn corpus() -> Vec<ConvexPolygon> {
    let mut r = rng(7);
    (0..20).map(|i| random_convex_polygon(&mut r, [0.0, 0.0], 3.0, 3 + i % 8)).collect()
}

fn exterior_point(r: &mut impl Rng, p: &ConvexPolygon) -> Point {
    loop {
        let q = Point::from_f64(r.gen_range(-8.0..8.0), r.gen_range(-8.0..8.0));
        if !p.contains(&q) {
            return q;
        }
    }
}

#[test]
fn perimeter_routes_cover() {
    for p in corpus() {
        assert!(coverage_check(&perimeter_route(&p), &p, 64).unwrap());
    }
}

#[test]
fn no_single_point_route_covers() {
    let mut r = rng(9);
    for p in corpus() {
        for _ in 0..100 {
            let q = exterior_point(&mut r, &p);
            let route = WatchmanRoute { kind: RouteKind::DoubledChain, polyline: vec![q], doubled: true, length: 0.0, arc: None };
            assert!(!coverage_check(&route, &p, 64).unwrap());
        }
    }
}

/// f64 oracle: a boundary point `q` is hidden from `x` iff the segment
/// enters the interior right at `q`.
fn hidden_f64(p: &ConvexPolygon, x: [f64; 2], q: [f64; 2]) -> bool {
    let s = [q[0] + 1e-7 * (x[0] - q[0]), q[1] + 1e-7 * (x[1] - q[1])];
    p.edges().all(|(a, b)| {
        let (a, b) = (a.to_f64(), b.to_f64());
        (b[0] - a[0]) * (s[1] - a[1]) - (b[1] - a[1]) * (s[0] - a[0]) > 1e-12
    })
}

#[test]
fn visible_arc_matches_dense_sampling() {
    let mut r = rng(11);
    for p in corpus() {
        let x = exterior_point(&mut r, &p);
        let vis = visible_edges(&p, &x);
        let per_edge = 10_000 / p.len();
        for (e, (a, b)) in p.edges().enumerate() {
            let (a, b) = (a.to_f64(), b.to_f64());
            for k in 1..per_edge {
                let t = k as f64 / per_edge as f64;
                let q = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
                assert_eq!(!hidden_f64(&p, x.to_f64(), q), vis[e], "edge {e} sample {k}");
            }
        }
    }
}

#[test]
fn best_route_never_exceeds_perimeter_and_covers() {
    for p in corpus() {
        let b = best_external_watchman(&p);
        assert!(b.length <= p.perimeter() + 1e-12);
        assert!(coverage_check(&b, &p, 64).unwrap());
        if b.doubled {
            assert!((b.length - 2.0 * b.chain_length()).abs() <= 1e-12 * b.length);
        }
    }
}
