use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use obsroute::constructions::{
    grid_cluster_instance, maximal_disk_packing, setcover_instance, six_squares, ClusterKind, SetSystem,
};
use obsroute::ewrp::{best_external_watchman, coverage_check};
use obsroute::orp::{discretized_opt_orp, observers_on_tour, solve_orp, validate_observation_route, ObservationRoute};
use obsroute::tspn::exact_small_tspn;
use obsroute::{Error, Instance, Point};
use obsroute_cli::io::{format_point, read_instance, read_route, resolve_seed, InstanceFile, Metadata, RouteFile};
use obsroute_cli::render::{render_svg, Overlays};
use obsroute_cli::report::{compare, obstacle_regions};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "obsroute", version, about = "Observation routes among convex obstacles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Observation route for an instance (or validate a given route).
    SolveOrp {
        input: PathBuf,
        /// Check `--route` instead of solving.
        #[arg(long, requires = "route")]
        validate_only: bool,
        #[arg(long)]
        route: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A point seeing every obstacle, if one exists.
    SinglePoint { input: PathBuf },
    /// Visibility region of one obstacle.
    Visibility {
        input: PathBuf,
        #[arg(long)]
        target: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shortest external watchman route of a single convex polygon.
    EwrpConvex {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate an instance family.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Small exact oracles.
    Oracle {
        #[command(subcommand)]
        which: Oracle,
    },
    /// SVG picture of an instance with optional region and route.
    Render {
        input: PathBuf,
        #[arg(long)]
        route: Option<PathBuf>,
        /// Outline the visibility region of this obstacle.
        #[arg(long)]
        region: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// ORP, TSPN and strip EWRP lengths side by side.
    Compare {
        input: PathBuf,
        /// Grid resolution for the discretized ORP oracle (n <= 6).
        #[arg(long)]
        oracle_grid: Option<usize>,
    },
}

#[derive(Args)]
struct GenOut {
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Full,
    Reduced,
}

#[derive(Subcommand)]
enum Family {
    SixSquares {
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[command(flatten)]
        out: GenOut,
    },
    GridCluster {
        /// Lattice points `x,y;x,y;...`.
        #[arg(long)]
        points: String,
        #[arg(long, value_enum, default_value_t = Kind::Reduced)]
        kind: Kind,
        #[command(flatten)]
        out: GenOut,
    },
    SetCover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Sets separated by `;`, elements by `,` (1-based).
        #[arg(long)]
        sets: String,
        #[command(flatten)]
        out: GenOut,
    },
    Packing {
        #[arg(long, default_value_t = 10.0)]
        side: f64,
        #[arg(long, default_value_t = 8)]
        kgon: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: GenOut,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Discretized optimal observation route (n <= 6).
    Orp {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        grid: usize,
    },
    /// Exact tour touching every obstacle (n <= 9).
    Tspn {
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        candidates: usize,
    },
}

enum Failure {
    Input(String),
    Absent(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::WitnessInsideObstacle(..) => Failure::Internal(e.to_string()),
            Error::TooManyRegions(..) | Error::TooManyObstacles(..) | Error::ClusterNotHiding => {
                Failure::Absent(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Run = Result<(), Failure>;

fn emit(text: &str, output: &Option<PathBuf>) -> Run {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    Ok(read_instance(path)?.0)
}

fn meta(generator: &str, params: Vec<(&str, Value)>, seed: Option<u64>) -> Metadata {
    Metadata {
        generator: generator.to_string(),
        params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>(),
        seed,
    }
}

fn write_instance(inst: &Instance, m: Metadata, out: &GenOut) -> Run {
    emit(&InstanceFile::from_instance(inst, m).to_json(), &out.output)
}

fn parse_list<T: std::str::FromStr>(s: &str, sep: char) -> Result<Vec<T>, Failure> {
    s.split(sep)
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Failure::Input(format!("cannot parse {t:?}"))))
        .collect()
}

fn solve(input: &Path, validate_only: bool, route: Option<PathBuf>, output: Option<PathBuf>) -> Run {
    let inst = load(input)?;
    let route = if validate_only {
        let tour = read_route(route.as_deref().expect("clap requires --route"))?.to_tour()?;
        let observed_from = observers_on_tour(&tour, &inst, 8)
            .ok_or_else(|| Failure::Internal("route does not observe every obstacle".into()))?;
        ObservationRoute { tour, observed_from, detour_log: vec![], detour_iterations: 0 }
    } else {
        solve_orp(&inst)?
    };
    let report = validate_observation_route(&route, &inst);
    if !report.is_valid() {
        return Err(Failure::Internal(format!("route fails validation: {}", report.failures.join("; "))));
    }
    if validate_only {
        println!("valid, length {}", report.length);
        return Ok(());
    }
    eprintln!(
        "length {:.6}, {} detours in {} passes",
        route.length(),
        route.detour_log.len(),
        route.detour_iterations
    );
    emit(&RouteFile::from_tour("orp", &route.tour).to_json(), &output)
}

fn gen(family: Family) -> Run {
    match family {
        Family::SixSquares { delta, out } => {
            let (inst, eps) = six_squares(delta)?;
            let eps = obsroute_cli::io::format_rational(&eps);
            write_instance(&inst, meta("six-squares", vec![("delta", json!(delta)), ("eps", json!(eps))], None), &out)
        }
        Family::GridCluster { points, kind, out } => {
            let pts = points
                .split(';')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    let v: Vec<i64> = parse_list(t, ',')?;
                    match v[..] {
                        [x, y] => Ok((x, y)),
                        _ => Err(Failure::Input(format!("bad point {t:?}"))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            let k = match kind {
                Kind::Full => ClusterKind::Full,
                Kind::Reduced => ClusterKind::Reduced,
            };
            let art = grid_cluster_instance(&pts, k)?;
            let name = if matches!(kind, Kind::Full) { "full" } else { "reduced" };
            write_instance(
                &art.instance,
                meta("grid-cluster", vec![("points", json!(points)), ("kind", json!(name))], None),
                &out,
            )
        }
        Family::SetCover { n, m, sets, out } => {
            let parsed = sets.split(';').map(|s| parse_list::<usize>(s, ',')).collect::<Result<Vec<_>, _>>()?;
            if parsed.len() != m {
                return Err(Failure::Input(format!("expected {m} sets, got {}", parsed.len())));
            }
            let ss = SetSystem::new(n, parsed)?;
            let art = setcover_instance(&ss)?;
            write_instance(
                &art.instance,
                meta("set-cover", vec![("n", json!(n)), ("m", json!(m)), ("sets", json!(sets))], None),
                &out,
            )
        }
        Family::Packing { side, kgon, seed, out } => {
            let seed = resolve_seed(seed);
            let inst = maximal_disk_packing(side, kgon, seed)?;
            write_instance(&inst, meta("packing", vec![("side", json!(side)), ("kgon", json!(kgon))], Some(seed)), &out)
        }
    }
}

fn region_json(r: &obsroute::PolygonWithHoles) -> Value {
    let ring = |pts: &[Point]| pts.iter().map(format_point).collect::<Vec<_>>();
    json!({
        "outer": ring(&r.outer),
        "holes": r.holes.iter().map(|h| ring(h)).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::SolveOrp { input, validate_only, route, output } => solve(&input, validate_only, route, output),
        Command::SinglePoint { input } => {
            let inst = load(&input)?;
            match inst.common_observation_point()? {
                Some(p) => {
                    let [x, y] = format_point(&p);
                    println!("{x} {y}");
                    Ok(())
                }
                None => Err(Failure::Absent("no single point sees every obstacle".into())),
            }
        }
        Command::Visibility { input, target, output } => {
            let inst = load(&input)?;
            let r = inst.visibility_region(target)?;
            eprintln!("{} vertices, {} holes", r.vertex_count(), r.holes.len());
            emit(&serde_json::to_string_pretty(&region_json(&r)).unwrap(), &output)
        }
        Command::EwrpConvex { input, output } => {
            let inst = load(&input)?;
            if inst.len() != 1 {
                return Err(Failure::Input(format!("expected one obstacle, found {}", inst.len())));
            }
            let p = &inst.obstacles()[0];
            let route = best_external_watchman(p);
            if !coverage_check(&route, p, 64)? {
                return Err(Failure::Internal("watchman route misses part of the boundary".into()));
            }
            let perimeter = obsroute::tspn::closed_length(p.vertices());
            eprintln!("{:?} route, length {:.6}, perimeter ratio {:.6}", route.kind, route.length, route.length / perimeter);
            let mut pts = route.polyline.clone();
            if route.doubled && pts.len() > 2 {
                pts.extend(route.polyline[1..route.polyline.len() - 1].iter().rev().cloned());
            }
            let mut file = RouteFile::from_polyline("ewrp", &pts);
            file.length = route.length;
            emit(&file.to_json(), &output)
        }
        Command::Gen { family } => gen(family),
        Command::Oracle { which } => match which {
            Oracle::Orp { input, grid } => {
                let inst = load(&input)?;
                let t = discretized_opt_orp(&inst, grid)?;
                println!("{}", RouteFile::from_tour("orp-oracle", &t).to_json());
                Ok(())
            }
            Oracle::Tspn { input, candidates } => {
                let inst = load(&input)?;
                let t = exact_small_tspn(&obstacle_regions(&inst), candidates)?;
                println!("{}", RouteFile::from_tour("tspn-oracle", &t).to_json());
                Ok(())
            }
        },
        Command::Render { input, route, region, output } => {
            let inst = load(&input)?;
            let tour = route.map(|r| read_route(&r).and_then(|f| f.to_tour())).transpose()?;
            let reg = region.map(|k| inst.visibility_region(k)).transpose()?;
            let svg = render_svg(&inst, &Overlays { region: reg.as_ref(), tour: tour.as_ref() });
            emit(&svg, &Some(output))
        }
        Command::Compare { input, oracle_grid } => {
            let inst = load(&input)?;
            let report = compare(&inst, oracle_grid)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            if report.orp_valid && report.tspn_valid && report.ewrp_strip_valid {
                Ok(())
            } else {
                Err(Failure::Internal("an emitted route failed validation".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Absent(m)) => {
            eprintln!("no result: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
