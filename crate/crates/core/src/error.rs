use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("point lies inside the body")]
    PointInsideBody,
    #[error("bodies intersect")]
    BodiesIntersect,
    #[error("fatness must be positive, got {0}")]
    NonPositiveFatness(f64),
    #[error("point is not on the polygon boundary")]
    PointNotOnBoundary,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("viewpoint lies in the interior of obstacle {0}")]
    PointInsideObstacle(usize),
    #[error("obstacle index {0} out of range")]
    NoSuchObstacle(usize),
    #[error("obstacles are not translates of a single polygon")]
    NotTranslateFamily,
    #[error("region set is empty")]
    EmptyRegionSet,
    #[error("too many regions for the exact oracle: {0} > {1}")]
    TooManyRegions(usize, usize),
    #[error("too many obstacles for the discretized oracle: {0} > {1}")]
    TooManyObstacles(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("points do not lie on the integer grid: {0}")]
    PointsNotInGrid(String),
    #[error("invalid set system: {0}")]
    InvalidSetSystem(String),
    #[error("cluster layout does not hide its center square")]
    ClusterNotHiding,
    #[error("route intersects the polygon interior")]
    RouteIntersectsInterior,
    #[error("witness {0} lies strictly inside obstacle {1}")]
    WitnessInsideObstacle(usize, usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
