pub mod arrangement;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod ewrp;
pub mod geom;
pub mod orp;
pub mod tspn;
pub mod visibility;

pub use error::{Error, Result};
pub use geom::*;
pub use visibility::{AngularIntervalSet, DirectionInterval, Instance, PolygonWithHoles, TangentRay};
