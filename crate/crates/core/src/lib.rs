//! Planar, bounded-edge-length spanning subgraphs of unit disk graphs.

pub mod augmentation;
pub mod crossing;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod io;
mod lowlink;
pub mod oracle;
pub mod spanning;
pub mod udg;
mod work;

pub use error::{Error, Result};
pub use geometry::{Point, PointSet, Segment};
pub use udg::{audit, build_udg, EdgeKind, GeometricGraph, Property, VerificationReport};
