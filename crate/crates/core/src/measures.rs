//! Concurrence, concurrence of assistance (CoA) and Tsallis-q entanglement.
//!
//! Each quantity has a numerical route that works from amplitudes or density
//! matrices, and, for GW states, a closed form in terms of [`PartyWeights`].

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, StateVector};
use crate::states::PartyWeights;

/// Lower end of the first Tsallis index interval, `(5 - sqrt 13) / 2`.
pub fn q_low() -> f64 {
    (5.0 - 13f64.sqrt()) / 2.0
}

/// Upper end of the second Tsallis index interval, `(5 + sqrt 13) / 2`.
pub fn q_high() -> f64 {
    (5.0 + 13f64.sqrt()) / 2.0
}

/// The two intervals of `q` on which Tsallis-q entanglement and its
/// assistance version of a GW reduction are both `f_q(C^2)`.
pub fn q_intervals() -> [(f64, f64); 2] {
    [(q_low(), 2.0), (3.0, q_high())]
}

pub fn q_in_validity_union(q: f64) -> bool {
    q_intervals().iter().any(|&(lo, hi)| q >= lo && q <= hi)
}

fn check_q_union(q: f64) -> Result<()> {
    if q_in_validity_union(q) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "q = {q} outside the valid set [(5-sqrt13)/2, 2] U [3, (5+sqrt13)/2]"
        )))
    }
}

fn check_q_tsallis(q: f64) -> Result<()> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::domain(format!("Tsallis index q = {q} must be positive")));
    }
    if q == 1.0 {
        return Err(Error::domain("Tsallis index q = 1 (von Neumann limit) is not supported"));
    }
    Ok(())
}

/// How a measure value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Numerical,
    /// certified one-sided bound from decomposition sampling
    SampledBound,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Numerical => "numerical",
            Method::SampledBound => "sampled-bound",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureValue {
    pub value: f64,
    pub method: Method,
}

impl MeasureValue {
    pub fn closed(value: f64) -> Self {
        MeasureValue {
            value,
            method: Method::ClosedForm,
        }
    }

    pub fn numerical(value: f64) -> Self {
        MeasureValue {
            value,
            method: Method::Numerical,
        }
    }
}

/// Two disjoint, non-empty sets of subsystems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(mut side_a: Vec<usize>, mut side_b: Vec<usize>) -> Result<Self> {
        side_a.sort_unstable();
        side_a.dedup();
        side_b.sort_unstable();
        side_b.dedup();
        if side_a.is_empty() || side_b.is_empty() {
            return Err(Error::shape("both sides of a bipartition must be non-empty"));
        }
        let a: BTreeSet<_> = side_a.iter().collect();
        if side_b.iter().any(|s| a.contains(s)) {
            return Err(Error::shape("bipartition sides overlap"));
        }
        Ok(Bipartition { side_a, side_b })
    }

    /// `side_a` against every other subsystem of an `n`-subsystem register.
    pub fn against_rest(side_a: Vec<usize>, n: usize) -> Result<Self> {
        let a: BTreeSet<_> = side_a.iter().copied().collect();
        let side_b = (0..n).filter(|s| !a.contains(s)).collect();
        Self::new(side_a, side_b)
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }

    pub fn swapped(&self) -> Self {
        Bipartition {
            side_a: self.side_b.clone(),
            side_b: self.side_a.clone(),
        }
    }

    fn check_covers(&self, n: usize) -> Result<()> {
        let mut all: Vec<usize> = self.side_a.iter().chain(&self.side_b).copied().collect();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() {
            return Err(Error::shape(format!(
                "pure-state cut {:?}|{:?} must cover all {n} subsystems",
                self.side_a, self.side_b
            )));
        }
        Ok(())
    }
}

/// Picks the side of a pure-state cut with the smaller local dimension; both
/// reduced states share their nonzero spectrum.
fn smaller_side<'a>(dims: &[usize], cut: &'a Bipartition) -> &'a [usize] {
    let dim = |s: &[usize]| s.iter().map(|&i| dims[i]).product::<usize>();
    if dim(cut.side_a()) <= dim(cut.side_b()) {
        cut.side_a()
    } else {
        cut.side_b()
    }
}

/// `p C(v / sqrt p) = sqrt(2 (p^2 - Tr rho_A^2))` for an unnormalized vector
/// of squared norm `p`; zero for the zero vector.
pub fn weighted_concurrence(amps: &[C64], dims: &[usize], side_a: &[usize]) -> Result<f64> {
    let p: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if p == 0.0 {
        return Ok(0.0);
    }
    Ok((2.0 * linalg::pure_minor_entropy(amps, dims, side_a)?).sqrt())
}

/// `sqrt(2 (1 - Tr rho_A^2))` of a pure state across `cut`.
pub fn concurrence_pure(vec: &StateVector, cut: &Bipartition) -> Result<MeasureValue> {
    cut.check_covers(vec.dims().len())?;
    let side = smaller_side(vec.dims(), cut);
    let rho = linalg::reduce_pure(vec.amps(), vec.dims(), side)?;
    let c = (2.0 * (1.0 - rho.purity())).max(0.0).sqrt();
    Ok(MeasureValue::numerical(c))
}

/// Wootters concurrence `max(z1 - z2 - z3 - z4, 0)` of a two-qubit state.
pub fn concurrence_wootters(rho: &ComplexMatrix) -> Result<MeasureValue> {
    let z = linalg::wootters_lambdas(rho)?;
    Ok(MeasureValue::numerical((z[0] - z[1] - z[2] - z[3]).max(0.0)))
}

/// Two-qubit CoA as the sum of the Wootters lambdas.
pub fn coa_two_qubit(rho: &ComplexMatrix) -> Result<MeasureValue> {
    let z = linalg::wootters_lambdas(rho)?;
    Ok(MeasureValue::numerical(z.iter().sum()))
}

fn check_party(w: &PartyWeights, t: usize) -> Result<()> {
    if t >= w.len() {
        return Err(Error::domain(format!("party {t} out of range for {} parties", w.len())));
    }
    Ok(())
}

/// `C(rho_{P_t P_l}) = C_a(rho_{P_t P_l}) = 2 sqrt(w_t w_l)`.
pub fn coa_pair_gw(w: &PartyWeights, t: usize, l: usize) -> Result<MeasureValue> {
    check_party(w, t)?;
    check_party(w, l)?;
    if t == l {
        return Err(Error::domain(format!("pair ({t}, {l}) needs two distinct parties")));
    }
    Ok(MeasureValue::closed(2.0 * (w.get(t) * w.get(l)).sqrt()))
}

/// `C_a(P_t | rest) = sqrt(sum_{l != t} C_a(P_t P_l)^2)`.
pub fn coa_one_vs_rest_gw(w: &PartyWeights, t: usize) -> Result<MeasureValue> {
    check_party(w, t)?;
    if w.len() < 2 {
        return Err(Error::domain("one-vs-rest needs at least two parties"));
    }
    let others: f64 = (0..w.len()).filter(|&l| l != t).map(|l| w.get(l)).sum();
    Ok(MeasureValue::closed((4.0 * w.get(t) * others).sqrt()))
}

/// `(1 - sum lambda^q) / (q - 1)` over a spectrum; non-positive entries are dropped.
pub fn tsallis_of_spectrum(spectrum: &[f64], q: f64) -> Result<f64> {
    check_q_tsallis(q)?;
    let s: f64 = spectrum.iter().filter(|&&x| x > 0.0).map(|x| x.powf(q)).sum();
    Ok((1.0 - s) / (q - 1.0))
}

/// Tsallis-q entanglement `(1 - Tr rho_A^q) / (q - 1)` of a pure state.
pub fn tsallis_pure(vec: &StateVector, cut: &Bipartition, q: f64) -> Result<MeasureValue> {
    check_q_tsallis(q)?;
    cut.check_covers(vec.dims().len())?;
    let side = smaller_side(vec.dims(), cut);
    let rho = linalg::reduce_pure(vec.amps(), vec.dims(), side)?;
    let eig = linalg::hermitian_eig(&rho)?;
    Ok(MeasureValue::numerical(tsallis_of_spectrum(&eig.values, q)?))
}

/// `f_q(theta) = [1 - ((1 + sqrt(1-theta))/2)^q - ((1 - sqrt(1-theta))/2)^q] / (q - 1)`,
/// the Tsallis-q entanglement of a two-term Schmidt state with squared
/// concurrence `theta`.
pub fn f_q(theta: f64, q: f64) -> Result<f64> {
    check_q_tsallis(q)?;
    if !(-1e-12..=1.0 + 1e-12).contains(&theta) || theta.is_nan() {
        return Err(Error::domain(format!("f_q argument {theta} outside [0, 1]")));
    }
    let theta = theta.clamp(0.0, 1.0);
    let r = (1.0 - theta).sqrt();
    let hi = (1.0 + r) / 2.0;
    let lo = (1.0 - r) / 2.0;
    let lo_q = if lo > 0.0 { lo.powf(q) } else { 0.0 };
    Ok((1.0 - hi.powf(q) - lo_q) / (q - 1.0))
}

/// Tsallis-q entanglement of assistance of `P_t` against the other parties,
/// `f_q(C_a(P_t|rest)^2)`.
pub fn tqeeoa_gw(w: &PartyWeights, t: usize, q: f64) -> Result<MeasureValue> {
    check_q_union(q)?;
    let c = coa_one_vs_rest_gw(w, t)?.value;
    Ok(MeasureValue::closed(f_q(c * c, q)?))
}

/// Pairwise version, `f_q(C_a(P_t P_l)^2)`.
pub fn tqeeoa_pair_gw(w: &PartyWeights, t: usize, l: usize, q: f64) -> Result<MeasureValue> {
    check_q_union(q)?;
    let c = coa_pair_gw(w, t, l)?.value;
    Ok(MeasureValue::closed(f_q(c * c, q)?))
}

/// Tsallis values for the 3x2x2 state that violates the CKW inequality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rank2Counterexample {
    /// `T_q^a(A|BC) = (1 - (1/3)^(q-1)) / (q - 1)`
    pub lhs: f64,
    /// `T_q(rho_AB) = (1 - (1 + 2^q) (1/3)^q) / (q - 1)`
    pub t_ab: f64,
    pub t_ac: f64,
    /// `lhs - t_ab - t_ac`, an upper bound on the polygamy residual
    pub residual_bound: f64,
}

pub fn tq_rank2_counterexample(q: f64) -> Result<Rank2Counterexample> {
    check_q_union(q)?;
    let third: f64 = 1.0 / 3.0;
    let lhs = (1.0 - third.powf(q - 1.0)) / (q - 1.0);
    let t_ab = (1.0 - (1.0 + 2f64.powf(q)) * third.powf(q)) / (q - 1.0);
    Ok(Rank2Counterexample {
        lhs,
        t_ab,
        t_ac: t_ab,
        residual_bound: lhs - 2.0 * t_ab,
    })
}
