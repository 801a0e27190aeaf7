//! Edge-coloured Cayley graphs with strictly monotone colour profiles:
//! group arithmetic, subset algebra, graph products, construction pipelines,
//! brute-force verification and bound tables.

pub mod analysis;
pub mod construct;
pub mod error;
pub mod graph;
pub mod group;
pub mod pipelines;
pub mod setalg;

pub use error::{FlipError, Result};
pub use graph::{Colour, ColourProfile, EdgeColouredGraph};
pub use group::{GroupElement, GroupSpec};
pub use setalg::GroupSubset;
