use std::fmt;

use super::{check_ca, require};
use crate::error::Result;

/// Closed interval `[lo, hi]`; `hi` may be infinite. Empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo <= self.hi)
    }

    pub fn is_unbounded(&self) -> bool {
        self.hi.is_infinite()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "empty")
        } else if self.is_unbounded() {
            write!(f, "[{}, inf)", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// `C_a(AB)`, `C_a(AC)` and `C_a(A|BC)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoaTriple {
    pub ab: f64,
    pub ac: f64,
    pub a_bc: f64,
}

impl CoaTriple {
    /// Fills in `C_a(A|BC)` from the pairwise values of a GW reduction.
    pub fn from_pairs(ab: f64, ac: f64) -> Self {
        CoaTriple {
            ab,
            ac,
            a_bc: (ab * ab + ac * ac).sqrt(),
        }
    }
}

/// Parameter intervals on which the tripartite hypotheses hold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmissibleIntervals {
    /// `l` with `C_AB^g >= l^d C_AC^g`, `l >= 1`
    pub alpha_ell: Interval,
    /// `l` with `C_AB^g <= l C_AC^g`, `0 <= l <= 1`
    pub beta_ell: Interval,
    /// `w` with `C_A|BC^g >= C_AB^g + w C_AC^g`, `w >= 1`
    pub omega: Interval,
}

/// `r / s` for non-negative inputs, with `0/0` reported as `nan` and `r/0` as infinity.
fn ratio(r: f64, s: f64) -> f64 {
    if s > 0.0 {
        r / s
    } else if r > 0.0 {
        f64::INFINITY
    } else {
        f64::NAN
    }
}

pub fn admissible_params(ca: CoaTriple, gamma: f64, delta: f64) -> Result<AdmissibleIntervals> {
    check_ca(&[ca.ab, ca.ac, ca.a_bc])?;
    require(gamma >= 2.0, || format!("need gamma >= 2, got {gamma}"))?;
    require(delta >= 1.0, || format!("need delta >= 1, got {delta}"))?;
    let (ab, ac, whole) = (ca.ab.powf(gamma), ca.ac.powf(gamma), ca.a_bc.powf(gamma));

    let q = ratio(ab, ac);
    let alpha_ell = if q.is_nan() {
        // C_AB = C_AC = 0: every l satisfies the ratio condition
        Interval::new(1.0, f64::INFINITY)
    } else {
        Interval::new(1.0, q.powf(1.0 / delta))
    };
    let beta_ell = if q.is_nan() {
        Interval::new(0.0, 1.0)
    } else {
        Interval::new(q.max(0.0), 1.0)
    };
    let w = ratio((whole - ab).max(0.0), ac);
    let omega = if w.is_nan() {
        Interval::new(1.0, f64::INFINITY)
    } else {
        Interval::new(1.0, w)
    };
    Ok(AdmissibleIntervals {
        alpha_ell,
        beta_ell,
        omega,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn example1_ell_interval() {
        let ca = CoaTriple::from_pairs(std::f64::consts::FRAC_1_SQRT_2, 2.0 * 2f64.sqrt() / 5.0);
        let iv = admissible_params(ca, 2.0, 1.3).unwrap();
        assert_eq!(iv.alpha_ell.lo, 1.0);
        assert_abs_diff_eq!(iv.alpha_ell.hi, 1.40959, epsilon = 1e-4);
        assert_abs_diff_eq!(iv.alpha_ell.hi.powf(1.3), 25.0 / 16.0, epsilon = 1e-12);
    }

    #[test]
    fn example2_intervals() {
        let ca = CoaTriple {
            ab: 1.0 / 3.0,
            ac: 2.0 / 3.0,
            a_bc: 5f64.sqrt() / 3.0,
        };
        let iv = admissible_params(ca, 3.0, 1.0).unwrap();
        assert_abs_diff_eq!(iv.beta_ell.lo, 1.0 / 8.0, epsilon = 1e-12);
        assert_eq!(iv.beta_ell.hi, 1.0);
        assert_abs_diff_eq!(iv.omega.hi, (5.0 * 5f64.sqrt() - 1.0) / 8.0, epsilon = 1e-12);
        assert!(iv.alpha_ell.is_empty());
    }

    #[test]
    fn degenerate_inputs() {
        let iv = admissible_params(CoaTriple::from_pairs(0.5, 0.0), 2.0, 1.0).unwrap();
        assert!(iv.alpha_ell.is_unbounded());
        assert!(iv.omega.is_unbounded());
        assert!(iv.beta_ell.is_empty());
        let iv = admissible_params(CoaTriple::from_pairs(0.0, 0.0), 2.0, 1.0).unwrap();
        assert!(iv.alpha_ell.is_unbounded());
        assert_eq!(iv.beta_ell, Interval::new(0.0, 1.0));
        assert_eq!(iv.beta_ell.to_string(), "[0, 1]");
        assert!(admissible_params(CoaTriple::from_pairs(0.5, 0.4), 1.5, 1.0).is_err());
    }
}
