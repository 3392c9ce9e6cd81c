//! Shared inputs for the criterion benchmarks.

use gw_monogamy::states::{build_gw_vector, reduce_density};
use gw_monogamy::{ComplexMatrix, GwSpec, StateVector};

/// Normalized `n`-qubit W-class state with uneven real amplitudes.
pub fn w_state(n: usize) -> GwSpec {
    let raw: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * (i as f64 * 1.7).sin()).collect();
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    let b: Vec<f64> = raw.iter().map(|x| x / norm).collect();
    GwSpec::w_class(&b).expect("normalized by construction")
}

pub fn w_vector(n: usize) -> StateVector {
    build_gw_vector(&w_state(n)).expect("small state")
}

/// Two-qubit reduction on the first two sites of [`w_vector`].
pub fn pair_density(n: usize) -> ComplexMatrix {
    reduce_density(&w_vector(n), &[0, 1]).expect("valid sites")
}
