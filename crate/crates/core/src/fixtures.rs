//! Worked-example inputs shipped with the crate as state and partition files.

use crate::error::Result;
use crate::states::{GwSpec, Partition};

pub const EXAMPLE1_STATE: &str = include_str!("../fixtures/example1_state.toml");
pub const EXAMPLE1_PARTITION: &str = include_str!("../fixtures/example1_partition.toml");
pub const EXAMPLE2_STATE: &str = include_str!("../fixtures/example2_state.toml");
pub const EXAMPLE2_PARTITION: &str = include_str!("../fixtures/example2_partition.toml");

fn load(state: &str, partition: &str) -> Result<(GwSpec, Partition)> {
    let spec = GwSpec::parse_toml(state)?;
    let part = Partition::parse_toml(partition, spec.n())?;
    Ok((spec, part))
}

/// Four-qubit W-class state with amplitudes `(sqrt(1/2), 1/2, 2/5, 3/10)`;
/// parties `A, B, C` on the first three qubits, the fourth traced out.
pub fn example1() -> (GwSpec, Partition) {
    load(EXAMPLE1_STATE, EXAMPLE1_PARTITION).expect("bundled fixture parses")
}

/// Three-qubit W-class state `(|100> + |010> + 2|001>) / sqrt6`, one party
/// per qubit. Also the input of the Tsallis residual example.
pub fn example2() -> (GwSpec, Partition) {
    load(EXAMPLE2_STATE, EXAMPLE2_PARTITION).expect("bundled fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::party_weights;

    #[test]
    fn fixtures_load() {
        let (s, p) = example1();
        assert_eq!((s.n(), p.len(), p.traced()), (4, 3, vec![3]));
        let w = party_weights(&s, &p).unwrap();
        assert!((w.get(0) - 0.5).abs() < 1e-15 && (w.get(2) - 0.16).abs() < 1e-15);
        let (s, p) = example2();
        let w = party_weights(&s, &p).unwrap();
        assert!((w.get(2) - 4.0 / 6.0).abs() < 1e-15);
        assert_eq!(p.traced(), Vec::<usize>::new());
    }
}
