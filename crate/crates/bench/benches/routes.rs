use criterion::{black_box, criterion_group, criterion_main, Criterion};
use obsroute::constructions::{maximal_disk_packing, strip_traversal_route, StripMode};
use obsroute::ewrp::best_external_watchman;
use obsroute::orp::{solve_orp, visibility_regions};
use obsroute_bench::{fort, pentagon, random_scatter};

fn visibility(c: &mut Criterion) {
    let inst = random_scatter();
    c.bench_function("visibility_regions/scatter5", |b| b.iter(|| visibility_regions(black_box(&inst)).unwrap()));
}

fn orp(c: &mut Criterion) {
    let inst = fort();
    let mut g = c.benchmark_group("solve_orp");
    g.sample_size(10);
    g.bench_function("fort", |b| b.iter(|| solve_orp(black_box(&inst)).unwrap()));
    g.finish();
}

fn ewrp(c: &mut Criterion) {
    let p = pentagon();
    c.bench_function("best_external_watchman/pentagon", |b| b.iter(|| best_external_watchman(black_box(&p))));
}

fn strips(c: &mut Criterion) {
    let inst = maximal_disk_packing(10.0, 8, 0).unwrap();
    c.bench_function("strip_route/ewrp/side10", |b| {
        b.iter(|| strip_traversal_route(black_box(&inst), StripMode::Ewrp).unwrap())
    });
}

criterion_group!(benches, visibility, orp, ewrp, strips);
criterion_main!(benches);
