//! Monogamy and polygamy bounds for CoA and Tsallis-q assistance, their
//! hypothesis chains, admissible parameter intervals and comparison sweeps.
//!
//! Conventions shared by every evaluator:
//! - `x^0 = 1` for every `x >= 0`, including `x = 0` (`f64::powf` already does this).
//! - A hypothesis holds when its margin is at least `-HYPOTHESIS_TOL`, so
//!   equality cases survive roundoff.
//! - Per-index parameter sequences (`omega`, `ell`, `delta`) of length one are
//!   broadcast to every index.

use std::fmt;

use crate::error::{Error, Result};
use crate::measures::{coa_one_vs_rest_gw, coa_pair_gw};
use crate::states::PartyWeights;

mod admissible;
mod lemma;
mod prior;
mod sweep;
mod theorems;
mod tsallis;

pub use admissible::{admissible_params, AdmissibleIntervals, CoaTriple, Interval};
pub use lemma::{lemma1_check, lemma2_check};
pub use prior::{prior_bounds, PriorInputs};
pub use sweep::{format_sig12, remark_orderings, Grid, RemarkOrderings, SweepTable};
pub use theorems::{thm1_bound, thm2_bound, thm3_bound, thm4_bound};
pub use tsallis::{tq_monogamy_residual, tq_polygamy_residual};

/// Slack allowed on hypothesis margins.
pub const HYPOTHESIS_TOL: f64 = 1e-12;
/// Residual tolerance used when a bound is asserted.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// One labelled condition of a hypothesis chain.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisCheck {
    pub label: String,
    pub holds: bool,
    /// signed slack; non-negative when the condition holds exactly
    pub margin: f64,
}

impl HypothesisCheck {
    pub fn new(label: impl Into<String>, margin: f64) -> Self {
        HypothesisCheck {
            label: label.into(),
            holds: margin >= -HYPOTHESIS_TOL,
            margin,
        }
    }
}

/// Which of the two symmetric cases of a tripartite theorem was applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// conditions on `(C_AB, C_AC)` as written
    Direct,
    /// roles of `B` and `C` exchanged
    Mirrored,
    /// chain bounds and prior forms
    Chain,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Direct => "direct",
            Orientation::Mirrored => "mirrored",
            Orientation::Chain => "chain",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundFamily {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    /// sum of `alpha`-th powers
    Zxn,
    /// `(alpha/2)` weights
    JzxA,
    /// `(2^(alpha/2) - 1)` weights
    JzxB,
    /// `alpha` family with `(omega + l)^(alpha/gamma) - l^(alpha/gamma)` weights
    XhlfA,
    /// `beta` family with `2^(beta/gamma) - 1` weights
    Sx,
    /// `beta` family with `((1+k)^(beta/gamma) - 1) / k^(beta/gamma)` weights
    Lyy,
    /// `beta` family with `(omega + l)^(beta/gamma) - l^(beta/gamma)` weights
    XhlfB,
}

impl BoundFamily {
    pub const PRIOR: [BoundFamily; 7] = [
        BoundFamily::Zxn,
        BoundFamily::JzxA,
        BoundFamily::JzxB,
        BoundFamily::XhlfA,
        BoundFamily::Sx,
        BoundFamily::Lyy,
        BoundFamily::XhlfB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::Thm1 => "thm1",
            BoundFamily::Thm2 => "thm2",
            BoundFamily::Thm3 => "thm3",
            BoundFamily::Thm4 => "thm4",
            BoundFamily::Zxn => "zxn",
            BoundFamily::JzxA => "jzx-a",
            BoundFamily::JzxB => "jzx-b",
            BoundFamily::XhlfA => "xhlf-a",
            BoundFamily::Sx => "sx",
            BoundFamily::Lyy => "lyy",
            BoundFamily::XhlfB => "xhlf-b",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace('_', "-");
        [
            BoundFamily::Thm1,
            BoundFamily::Thm2,
            BoundFamily::Thm3,
            BoundFamily::Thm4,
        ]
        .into_iter()
        .chain(BoundFamily::PRIOR)
        .find(|f| f.name() == lower)
        .ok_or_else(|| Error::Parse(format!("unknown bound family '{s}'")))
    }

    pub fn is_prior(self) -> bool {
        BoundFamily::PRIOR.contains(&self)
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of every bound family. Fields not used by a family are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub omega: Vec<f64>,
    pub ell: Vec<f64>,
    pub delta: Vec<f64>,
    pub p: f64,
    pub z: usize,
    pub k: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            alpha: 2.0,
            beta: 1.0,
            gamma: 2.0,
            omega: vec![1.0],
            ell: vec![1.0],
            delta: vec![1.0],
            p: 1.0,
            z: 1,
            k: 1.0,
        }
    }
}

impl BoundParams {
    /// Single-index parameters for the tripartite forms.
    pub fn tripartite(omega: f64, ell: f64, delta: f64) -> Self {
        BoundParams {
            omega: vec![omega],
            ell: vec![ell],
            delta: vec![delta],
            ..Default::default()
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn with_z(mut self, z: usize) -> Self {
        self.z = z;
        self
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k = k;
        self
    }

    pub(crate) fn omega_at(&self, r: usize) -> Result<f64> {
        indexed(&self.omega, r, "omega")
    }

    pub(crate) fn ell_at(&self, r: usize) -> Result<f64> {
        indexed(&self.ell, r, "ell")
    }

    pub(crate) fn delta_at(&self, r: usize) -> Result<f64> {
        indexed(&self.delta, r, "delta")
    }
}

fn indexed(seq: &[f64], r: usize, name: &str) -> Result<f64> {
    match seq.len() {
        0 => Err(Error::shape(format!("parameter sequence {name} is empty"))),
        1 => Ok(seq[0]),
        n if r < n => Ok(seq[r]),
        n => Err(Error::shape(format!(
            "parameter sequence {name} has {n} entries, index {r} requested"
        ))),
    }
}

/// Result of evaluating one inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub family: BoundFamily,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`
    pub residual: f64,
    pub hypotheses: Vec<HypothesisCheck>,
    pub orientation: Orientation,
}

impl BoundReport {
    pub(crate) fn new(
        family: BoundFamily,
        lhs: f64,
        rhs: f64,
        hypotheses: Vec<HypothesisCheck>,
        orientation: Orientation,
    ) -> Self {
        BoundReport {
            family,
            lhs,
            rhs,
            residual: lhs - rhs,
            hypotheses,
            orientation,
        }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(msg()))
    }
}

pub(crate) fn check_ca(values: &[f64]) -> Result<()> {
    for &v in values {
        require(v.is_finite() && v >= 0.0, || {
            format!("CoA inputs must be finite and non-negative, got {v}")
        })?;
    }
    Ok(())
}

/// Pairwise and tail CoA values along a chain `A | B_1 ... B_{N-1}`.
///
/// `pair[k] = C_a(A B_{k+1})` and `tail[k] = C_a(A | B_{k+1} ... B_{N-1})`, so
/// `tail[0]` is the full one-vs-rest value and `tail[N-2] = pair[N-2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainInputs {
    pub pair: Vec<f64>,
    pub tail: Vec<f64>,
}

impl ChainInputs {
    /// GW closed forms for the chain `order[0] | order[1] ... order[N-1]`. Each
    /// tail is the one-vs-rest value of `A` within the tail's parties.
    pub fn from_gw(w: &PartyWeights, order: &[usize]) -> Result<Self> {
        if order.len() < 3 {
            return Err(Error::shape("a chain needs A and at least two further parties"));
        }
        let mut seen = vec![false; w.len()];
        for &t in order {
            if t >= w.len() || std::mem::replace(&mut seen[t], true) {
                return Err(Error::shape(format!("chain order {order:?} is not a set of parties")));
            }
        }
        let a = order[0];
        let pair = order[1..]
            .iter()
            .map(|&b| coa_pair_gw(w, a, b).map(|m| m.value))
            .collect::<Result<Vec<_>>>()?;
        let tail = (1..order.len())
            .map(|i| {
                let mut sub = vec![w.get(a)];
                sub.extend(order[i..].iter().map(|&b| w.get(b)));
                let sub = PartyWeights::new(sub)?;
                coa_one_vs_rest_gw(&sub, 0).map(|m| m.value)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainInputs { pair, tail })
    }

    pub fn parties(&self) -> usize {
        self.pair.len() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broadcast_and_index() {
        let p = BoundParams {
            omega: vec![1.5, 2.0],
            ..Default::default()
        };
        assert_eq!(p.omega_at(1).unwrap(), 2.0);
        assert!(p.omega_at(2).is_err());
        assert_eq!(p.ell_at(7).unwrap(), 1.0);
    }

    #[test]
    fn family_names_round_trip() {
        for f in BoundFamily::PRIOR {
            assert_eq!(BoundFamily::parse(f.name()).unwrap(), f);
        }
        assert_eq!(BoundFamily::parse("XHLF_A").unwrap(), BoundFamily::XhlfA);
        assert!(BoundFamily::parse("nope").is_err());
    }

    #[test]
    fn chain_from_gw_weights() {
        let w = PartyWeights::new(vec![0.4, 0.3, 0.2, 0.1]).unwrap();
        let c = ChainInputs::from_gw(&w, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.parties(), 4);
        for (k, &t) in c.tail.iter().enumerate() {
            let sq: f64 = c.pair[k..].iter().map(|x| x * x).sum();
            assert!((t * t - sq).abs() < 1e-14);
        }
        assert_eq!(c.tail[2], c.pair[2]);
        assert!(ChainInputs::from_gw(&w, &[0, 1, 1]).is_err());
        assert!(ChainInputs::from_gw(&w, &[0, 1]).is_err());
    }

    #[test]
    fn hypothesis_tolerance() {
        assert!(HypothesisCheck::new("x", -1e-13).holds);
        assert!(!HypothesisCheck::new("x", -1e-9).holds);
    }
}
