use obsroute::corpus::{random_convex_polygon, random_instance, rng};
use obsroute::ewrp::visible_edges;
use obsroute::orp::{detour_transform, discretized_opt_orp_over, orp_candidate_universe, visibility_regions};
use obsroute::tspn::{common_point, tspn_tour, RegionSet, Tour};
use obsroute::{convex_hull, dilation_upper_bound, orient_sign, Instance, Location, Point, Rect};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orientation_is_antisymmetric(a in (-50i64..50, -50i64..50), b in (-50i64..50, -50i64..50), c in (-50i64..50, -50i64..50)) {
        let (a, b, c) = (Point::from_ints(a.0, a.1), Point::from_ints(b.0, b.1), Point::from_ints(c.0, c.1));
        prop_assert_eq!(orient_sign(&a, &b, &c), -orient_sign(&b, &a, &c));
        prop_assert_eq!(orient_sign(&a, &b, &c), orient_sign(&b, &c, &a));
    }

    #[test]
    fn hull_contains_its_points(pts in prop::collection::vec((-30i64..30, -30i64..30), 3..20)) {
        let pts: Vec<Point> = pts.into_iter().map(|(x, y)| Point::from_ints(x, y)).collect();
        if let Ok(h) = convex_hull(&pts) {
            for p in &pts {
                prop_assert!(h.locate(p) != Location::Outside);
            }
        }
    }

    #[test]
    fn no_point_watches_a_whole_polygon(seed in 0u64..10_000, k in 3usize..10, a in 0.0f64..6.3, d in 0.0f64..100.0) {
        let p = random_convex_polygon(&mut rng(seed), [0.0, 0.0], 4.0, k);
        let x = Point::from_f64(d * a.cos(), d * a.sin());
        prop_assume!(p.locate(&x) != Location::Inside);
        prop_assert!(!visible_edges(&p, &x).iter().all(|&v| v));
    }

    #[test]
    fn detours_respect_dilation_bound(seed in 0u64..10_000, k in 3usize..9, y0 in -3.0f64..3.0, y1 in -3.0f64..3.0) {
        let p = random_convex_polygon(&mut rng(seed), [0.0, 0.0], 2.0, k);
        let inst = Instance::new(Rect::from_ints(-6, -6, 6, 6).unwrap(), vec![p.clone()]).unwrap();
        let t = Tour::from_order(vec![Point::from_f64(-5.0, y0), Point::from_f64(5.0, y1)], &[0, 1]);
        let (out, log, _) = detour_transform(&t, &inst).unwrap();
        let bound = dilation_upper_bound(p.fatness()).unwrap();
        prop_assert!(log.iter().all(|r| r.ratio() <= bound + 1e-9));
        prop_assert!(out.edges().all(|(a, b)| inst.segment_is_free(a, b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tspn_tours_touch_every_region(seed in 0u64..10_000, n in 1usize..5) {
        let inst = random_instance(seed, n, 24, 20.0).unwrap();
        let rs = RegionSet { regions: visibility_regions(&inst).unwrap(), bbox: inst.bbox().clone() };
        let t = tspn_tour(&rs).unwrap();
        for (i, r) in rs.regions.iter().enumerate() {
            prop_assert!(r.locate(&t.witness[i]) != Location::Outside);
            prop_assert!(t.passes_through(&t.witness[i]));
        }
        prop_assert_eq!(common_point(&rs.regions).is_some(), t.length() == 0.0);
    }

    #[test]
    fn deleting_an_obstacle_never_lengthens_the_oracle(seed in 0u64..10_000, n in 2usize..4) {
        let inst = random_instance(seed, n, 16, 20.0).unwrap();
        let universe = orp_candidate_universe(&inst, 4, 40).unwrap();
        let full = discretized_opt_orp_over(&inst, &universe, None).unwrap().value;
        for k in 0..inst.len() {
            let v = discretized_opt_orp_over(&inst.without(k).unwrap(), &universe, None).unwrap().value;
            prop_assert!(v <= full + 1e-9, "deleting {} raised {} to {}", k, full, v);
        }
    }
}
