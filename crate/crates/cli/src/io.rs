//! JSON instance and route files. Coordinates are exact rationals written as
//! `"num/den"` strings.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use obsroute::tspn::{Tour, VertexKind};
use obsroute::{ConvexPolygon, Error, Instance, Point, Rational, Rect, Result};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

pub type Coord = [String; 2];

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub generator: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    /// Lower-left and upper-right corners.
    #[serde(rename = "box")]
    pub bbox: [Coord; 2],
    pub obstacles: Vec<Vec<Coord>>,
    #[serde(default)]
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RouteFile {
    pub version: u32,
    /// `orp`, `tspn`, `ewrp` or `strip`.
    pub kind: String,
    /// Closed polyline; the last vertex connects back to the first.
    pub vertices: Vec<Coord>,
    /// Vertices inserted by detours are flagged `true`.
    #[serde(default)]
    pub detour: Vec<bool>,
    /// Point of the route associated with each obstacle.
    #[serde(default)]
    pub witness: Vec<Coord>,
    pub length: f64,
}

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn format_point(p: &Point) -> Coord {
    [format_rational(p.x()), format_rational(p.y())]
}

pub fn parse_point(c: &Coord) -> Result<Point> {
    Ok(Point::new(parse_rational(&c[0])?, parse_rational(&c[1])?))
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance, metadata: Metadata) -> Self {
        InstanceFile {
            version: FORMAT_VERSION,
            bbox: [format_point(&inst.bbox().min), format_point(&inst.bbox().max)],
            obstacles: inst.obstacles().iter().map(|o| o.vertices().iter().map(format_point).collect()).collect(),
            metadata,
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported version {}", self.version)));
        }
        let bbox = Rect::new(parse_point(&self.bbox[0])?, parse_point(&self.bbox[1])?)?;
        let obs = self
            .obstacles
            .iter()
            .map(|o| ConvexPolygon::new(o.iter().map(parse_point).collect::<Result<Vec<_>>>()?))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(bbox, obs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl RouteFile {
    pub fn from_tour(kind: &str, tour: &Tour) -> Self {
        RouteFile {
            version: FORMAT_VERSION,
            kind: kind.to_string(),
            vertices: tour.vertices.iter().map(format_point).collect(),
            detour: tour.kinds.iter().map(|k| *k == VertexKind::Detour).collect(),
            witness: tour.witness.iter().map(format_point).collect(),
            length: tour.length(),
        }
    }

    /// Route given as a closed polyline without witnesses.
    pub fn from_polyline(kind: &str, pts: &[Point]) -> Self {
        RouteFile {
            version: FORMAT_VERSION,
            kind: kind.to_string(),
            vertices: pts.iter().map(format_point).collect(),
            detour: vec![false; pts.len()],
            witness: Vec::new(),
            length: obsroute::tspn::closed_length(pts),
        }
    }

    pub fn to_tour(&self) -> Result<Tour> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported version {}", self.version)));
        }
        let vertices = self.vertices.iter().map(parse_point).collect::<Result<Vec<_>>>()?;
        let kinds = (0..vertices.len())
            .map(|i| if self.detour.get(i).copied().unwrap_or(false) { VertexKind::Detour } else { VertexKind::Witness })
            .collect();
        let witness = self.witness.iter().map(parse_point).collect::<Result<Vec<_>>>()?;
        Ok(Tour { vertices, kinds, witness })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("route files serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn read_instance(path: &Path) -> Result<(Instance, InstanceFile)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let file = InstanceFile::from_json(&text)?;
    Ok((file.to_instance()?, file))
}

pub fn read_route(path: &Path) -> Result<RouteFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    RouteFile::from_json(&text)
}

/// Seed precedence: explicit flag, then `OBS_SEED`, then 42.
pub fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("OBS_SEED").ok().and_then(|s| s.trim().parse().ok())).unwrap_or(42)
}

#[cfg(test)]
mod tests {
    use super::*;
    use obsroute::rat;

    #[test]
    fn rationals_round_trip() {
        for q in [rat(3, 4), rat(-7, 2), rat(5, 1), rat(0, 1)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
        assert_eq!(format_rational(&rat(6, 8)), "3/4");
        assert_eq!(parse_rational("12").unwrap(), rat(12, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn instance_round_trip() {
        let inst = obsroute::corpus::two_hole_example().unwrap();
        let f = InstanceFile::from_instance(&inst, Metadata { generator: "two-hole".into(), ..Default::default() });
        let back = InstanceFile::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_instance().unwrap().obstacles(), inst.obstacles());
    }

    #[test]
    fn version_is_checked() {
        let inst = obsroute::corpus::two_hole_example().unwrap();
        let mut f = InstanceFile::from_instance(&inst, Metadata::default());
        f.version = 9;
        assert!(f.to_instance().is_err());
    }

    #[test]
    fn seed_flag_wins() {
        assert_eq!(resolve_seed(Some(7)), 7);
    }
}
