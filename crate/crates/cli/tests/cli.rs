use std::path::Path;
use std::process::{Command, Output};

use obsroute_cli::io::{InstanceFile, RouteFile};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_obsroute"));
    c.env_remove("OBS_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn set_cover_file_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("sc.json");
    let o = run(&["gen", "set-cover", "--n", "2", "--m", "2", "--sets", "1;2", "-o", p(&f)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&f).unwrap();
    let file = InstanceFile::from_json(&text).unwrap();
    assert_eq!(file.to_json(), text);
    let inst = file.to_instance().unwrap();
    assert_eq!(InstanceFile::from_instance(&inst, file.metadata.clone()), file);
    assert_eq!(file.metadata.generator, "set-cover");
}

#[test]
fn single_point_on_six_squares() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("six.json");
    assert_eq!(code(&run(&["gen", "six-squares", "--delta", "1", "-o", p(&f)])), 0);
    let o = run(&["single-point", p(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).split_whitespace().count(), 2);
}

#[test]
fn emitted_route_revalidates_and_bad_route_is_an_invariant_failure() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("fort.json");
    let fort = obsroute::corpus::pinwheel_fort(1, false).unwrap();
    std::fs::write(&inst, InstanceFile::from_instance(&fort, Default::default()).to_json()).unwrap();
    let route = dir.path().join("r.json");
    assert_eq!(code(&run(&["solve-orp", p(&inst), "-o", p(&route)])), 0);
    assert_eq!(code(&run(&["solve-orp", p(&inst), "--validate-only", "--route", p(&route)])), 0);
    // a single far corner cannot see the enclosed square
    let corner = fort.bbox().min.clone();
    let bad = RouteFile::from_polyline("orp", &[corner]);
    std::fs::write(&route, bad.to_json()).unwrap();
    assert_eq!(code(&run(&["solve-orp", p(&inst), "--validate-only", "--route", p(&route)])), 3);
}

#[test]
fn exit_codes_for_bad_input_and_absent_results() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["single-point", "/no/such/file.json"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    let f = dir.path().join("garbage.json");
    std::fs::write(&f, "{\"version\": 1}").unwrap();
    assert_eq!(code(&run(&["solve-orp", p(&f)])), 1);
    let pk = dir.path().join("pack.json");
    assert_eq!(code(&run(&["gen", "packing", "--side", "10", "-o", p(&pk)])), 0);
    assert_eq!(code(&run(&["oracle", "orp", p(&pk)])), 2);
    assert_eq!(code(&run(&["single-point", p(&pk)])), 2);
    assert_eq!(code(&run(&["gen", "set-cover", "--n", "3", "--m", "2", "--sets", "1;2"])), 1);
}

#[test]
fn seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let seed_of = |f: &Path| InstanceFile::from_json(&std::fs::read_to_string(f).unwrap()).unwrap().metadata.seed;
    let a = dir.path().join("a.json");
    assert_eq!(code(&run(&["gen", "packing", "-o", p(&a)])), 0);
    assert_eq!(seed_of(&a), Some(42));
    let b = dir.path().join("b.json");
    let o = bin().env("OBS_SEED", "7").args(["gen", "packing", "-o", p(&b)]).output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(seed_of(&b), Some(7));
    let c = dir.path().join("c.json");
    let o = bin().env("OBS_SEED", "7").args(["gen", "packing", "--seed", "3", "-o", p(&c)]).output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(seed_of(&c), Some(3));
}

#[test]
fn render_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("two.json");
    let inst = obsroute::corpus::two_hole_example().unwrap();
    std::fs::write(&f, InstanceFile::from_instance(&inst, Default::default()).to_json()).unwrap();
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    assert_eq!(code(&run(&["render", p(&f), "--region", "0", "-o", p(&a)])), 0);
    assert_eq!(code(&run(&["render", p(&f), "--region", "0", "-o", p(&b)])), 0);
    let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    assert_eq!(String::from_utf8(sa).unwrap().matches("class=\"hole\"").count(), 2);
}

#[test]
fn ewrp_convex_and_visibility() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("pent.json");
    let poly = obsroute::ewrp::obtuse_watchman_polygon(5, 0.001).unwrap();
    let inst = obsroute::Instance::new(
        obsroute::Rect::from_ints(-10, -10, 10, 10).unwrap(),
        vec![poly.clone()],
    )
    .unwrap();
    std::fs::write(&f, InstanceFile::from_instance(&inst, Default::default()).to_json()).unwrap();
    let o = run(&["ewrp-convex", p(&f)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let route = RouteFile::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    let perimeter = obsroute::tspn::closed_length(poly.vertices());
    assert!(route.length / perimeter <= 0.93);
    let o = run(&["visibility", p(&f), "--target", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["visibility", p(&f), "--target", "4"])), 1);
}

#[test]
fn compare_keeps_orp_below_strip_route() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("pack.json");
    assert_eq!(code(&run(&["gen", "packing", "--side", "10", "--seed", "1", "-o", p(&f)])), 0);
    let o = run(&["compare", p(&f)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["orp_at_most_ewrp"], true);
    assert!(v["orp_length"].as_f64().unwrap() <= v["ewrp_strip_length"].as_f64().unwrap());
}
