//! Side-by-side runs of the three route problems on one instance.

use std::time::Instant;

use obsroute::constructions::{strip_traversal_route, StripMode};
use obsroute::orp::{discretized_opt_orp, solve_orp, validate_observation_route};
use obsroute::tspn::{tspn_tour, RegionSet};
use obsroute::{Instance, PolygonWithHoles, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::io::{InstanceFile, Metadata};

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    /// SHA-256 of the instance file without metadata.
    pub digest: String,
    pub obstacles: usize,
    pub orp_length: f64,
    pub orp_valid: bool,
    pub tspn_length: f64,
    pub tspn_valid: bool,
    /// Strip traversal circling every obstacle.
    pub ewrp_strip_length: f64,
    pub ewrp_strip_valid: bool,
    /// Discretized ORP optimum (small instances only).
    pub orp_oracle: Option<f64>,
    pub orp_at_most_ewrp: bool,
    pub millis: u128,
}

pub fn digest(inst: &Instance) -> String {
    let json = InstanceFile::from_instance(inst, Metadata::default()).to_json();
    Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Obstacles themselves as neighbourhoods.
pub fn obstacle_regions(inst: &Instance) -> RegionSet {
    RegionSet {
        regions: inst.obstacles().iter().map(|o| PolygonWithHoles { outer: o.vertices().to_vec(), holes: vec![] }).collect(),
        bbox: inst.bbox().clone(),
    }
}

pub fn compare(inst: &Instance, oracle_grid: Option<usize>) -> Result<RunReport> {
    let start = Instant::now();
    let orp = solve_orp(inst)?;
    let orp_valid = validate_observation_route(&orp, inst).is_valid();
    let (tspn_length, tspn_valid) = if inst.is_empty() {
        (0.0, true)
    } else {
        let rs = obstacle_regions(inst);
        let t = tspn_tour(&rs)?;
        let valid = inst.obstacles().iter().enumerate().all(|(i, o)| {
            t.passes_through(&t.witness[i]) && o.locate(&t.witness[i]) != obsroute::Location::Outside
        });
        (t.length(), valid)
    };
    let strip = strip_traversal_route(inst, StripMode::Ewrp)?;
    let ewrp_strip_valid = strip.edges().all(|(a, b)| inst.segment_is_free(a, b))
        && inst.obstacles().iter().all(|o| o.vertices().iter().all(|v| strip.vertices.contains(v)));
    let orp_oracle = match oracle_grid {
        Some(g) if inst.len() <= 6 && !inst.is_empty() => Some(discretized_opt_orp(inst, g)?.length()),
        _ => None,
    };
    Ok(RunReport {
        digest: digest(inst),
        obstacles: inst.len(),
        orp_length: orp.length(),
        orp_valid,
        tspn_length,
        tspn_valid,
        ewrp_strip_length: strip.length(),
        ewrp_strip_valid,
        orp_oracle,
        orp_at_most_ewrp: orp.length() <= strip.length() + 1e-9,
        millis: start.elapsed().as_millis(),
    })
}
