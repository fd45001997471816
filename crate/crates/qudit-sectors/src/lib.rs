//! Sector lengths, separability bounds and white-noise robustness thresholds
//! for qudit stabilizer and graph states.
//!
//! Integer quantities (sector counts, bounds) are exact. The [`dense`] module
//! is a small numerical engine used to cross-check every closed form.

pub mod bounds;
pub mod dense;
pub mod error;
pub mod graph;
pub mod io;
pub mod pauli;
pub mod ring;
pub mod sector;
pub mod thresholds;

pub use error::{Error, Result};
pub use graph::{AdjacencyMatrix, GraphFamily};
pub use pauli::{PauliOp, StabilizerGroupSpec};
pub use ring::RingDim;
pub use sector::SectorDistribution;
