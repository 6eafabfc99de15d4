//! File formats, SVG rendering and experiment reports for the `obsroute`
//! command-line tool.

pub mod io;
pub mod render;
pub mod report;
