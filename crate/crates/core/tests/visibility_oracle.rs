use obsroute::corpus::random_instance;
use obsroute::{Location, Point};

fn grid_mismatches(seed: u64, n: usize, res: usize) -> (usize, usize) {
    let inst = random_instance(seed, n, 30, 20.0).unwrap();
    let mut bad = 0;
    let mut checked = 0;
    for t in 0..inst.len() {
        let v = inst.visibility_region(t).unwrap();
        for i in 0..res {
            for j in 0..res {
                let x = 20.0 * (i as f64 + 0.5) / res as f64;
                let y = 20.0 * (j as f64 + 0.5) / res as f64;
                if v.boundary_distance_f64([x, y]) <= 1e-6 {
                    continue;
                }
                let p = Point::from_f64(x, y);
                let direct = inst.sees(&p, t).unwrap_or(false);
                checked += 1;
                if direct != (v.locate(&p) != Location::Outside) {
                    bad += 1;
                }
            }
        }
    }
    (bad, checked)
}

#[test]
fn grid_classification_matches_regions() {
    for seed in 0..4 {
        let (bad, checked) = grid_mismatches(seed, 2 + (seed as usize % 4), 60);
        assert_eq!(bad, 0, "seed {seed}: {bad} of {checked} grid points disagree");
    }
}

#[test]
fn two_hole_example_has_two_holes() {
    let inst = obsroute::corpus::two_hole_example().unwrap();
    let v = inst.visibility_region(0).unwrap();
    assert_eq!(v.holes.len(), 2, "{:?}", v);
}

#[test]
fn translate_regions_have_one_hole() {
    for seed in 0..6 {
        let inst = obsroute::corpus::random_translate_family(seed, 3 + seed as usize % 4, 20.0).unwrap();
        for t in 0..inst.len() {
            let v = inst.visibility_region(t).unwrap();
            assert_eq!(v.holes.len(), 1, "seed {seed} target {t}");
        }
        let a = inst.common_observation_point().unwrap();
        let b = inst.translate_intersection_simplification().unwrap();
        assert_eq!(a.is_some(), b.is_some(), "seed {seed}");
    }
}
