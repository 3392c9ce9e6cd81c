//! Concurrence of assistance and Tsallis-q entanglement for generalized
//! W-class (GW) states: closed forms, numerical cross-checks, and
//! parameterized monogamy and polygamy bounds.

pub mod bounds;
pub mod error;
pub mod figures;
pub mod fixtures;
pub mod fuzz;
pub mod linalg;
pub mod measures;
pub mod oracle;
pub mod states;

pub use bounds::{BoundFamily, BoundParams, BoundReport, ChainInputs, HypothesisCheck, SweepTable};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition, StateVector};
pub use measures::{Bipartition, MeasureValue, Method};
pub use states::{GwSpec, PartyWeights, Partition, PcsSpec};
pub use num_complex::Complex64;
