//! Fixed instances shared by the benchmarks.

use obsroute::{corpus, ewrp, ConvexPolygon, Instance};

pub fn random_scatter() -> Instance {
    corpus::random_instance(7, 5, 30, 20.0).expect("seeded instance")
}

pub fn fort() -> Instance {
    corpus::pinwheel_fort(3, true).expect("seeded instance")
}

pub fn pentagon() -> ConvexPolygon {
    ewrp::obtuse_watchman_polygon(5, 0.001).expect("valid parameters")
}
