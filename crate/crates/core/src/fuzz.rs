//! Randomized sweeps of the lemmas, the four CoA theorems and the Tsallis
//! relations.
//!
//! Instance `i` of a run with seed `s` draws from a ChaCha stream `i` seeded
//! by `s`, so any instance can be replayed alone with [`replay`]. Theorem
//! instances whose hypotheses fail are counted as rejections by the label of
//! the first failing condition; they are never folded into the margins.
//! Every theorem margin uses a left-hand side computed from the party weights,
//! not the value the evaluator reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    admissible_params, lemma1_check, lemma2_check, thm1_bound, thm2_bound, thm3_bound, thm4_bound,
    tq_monogamy_residual, tq_polygamy_residual, BoundParams, BoundReport, ChainInputs, CoaTriple, RESIDUAL_TOL,
};
use crate::error::{Error, Result};
use crate::measures::{coa_one_vs_rest_gw, coa_pair_gw, q_intervals};
use crate::oracle::{random_gw_spec, random_partition_into};
use crate::states::{party_weights, PartyWeights};

/// Margin tolerance for the lemma sweeps.
pub const LEMMA_TOL: f64 = 1e-12;
/// Attempts allowed per requested instance before a run gives up.
const ATTEMPTS_PER_INSTANCE: usize = 50;
/// Factor by which sampled parameter ranges overshoot their admissible
/// endpoints, so that some draws land outside and exercise rejection.
const OVERSHOOT: f64 = 1.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FuzzTarget {
    Lemma1,
    Lemma2,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    /// Tsallis monogamy, residual >= 0
    Tq2,
    /// Tsallis polygamy, residual <= 0
    Tq3,
}

impl FuzzTarget {
    pub const ALL: [FuzzTarget; 8] = [
        FuzzTarget::Lemma1,
        FuzzTarget::Lemma2,
        FuzzTarget::Thm1,
        FuzzTarget::Thm2,
        FuzzTarget::Thm3,
        FuzzTarget::Thm4,
        FuzzTarget::Tq2,
        FuzzTarget::Tq3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FuzzTarget::Lemma1 => "lemma1",
            FuzzTarget::Lemma2 => "lemma2",
            FuzzTarget::Thm1 => "thm1",
            FuzzTarget::Thm2 => "thm2",
            FuzzTarget::Thm3 => "thm3",
            FuzzTarget::Thm4 => "thm4",
            FuzzTarget::Tq2 => "tq2",
            FuzzTarget::Tq3 => "tq3",
        }
    }

    /// Most negative margin still counted as a pass.
    pub fn tol(self) -> f64 {
        match self {
            FuzzTarget::Lemma1 | FuzzTarget::Lemma2 => LEMMA_TOL,
            _ => RESIDUAL_TOL,
        }
    }
}

impl fmt::Display for FuzzTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FuzzTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FuzzTarget::ALL
            .into_iter()
            .find(|t| t.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown fuzz target '{s}'")))
    }
}

/// Outcome of one sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzSummary {
    pub target: FuzzTarget,
    pub seed: u64,
    pub requested: usize,
    pub accepted: usize,
    pub rejected: usize,
    /// rejections keyed by the first failing hypothesis
    pub rejections: BTreeMap<String, usize>,
    /// smallest margin over accepted instances; `+inf` when none
    pub min_margin: f64,
    /// instance index of `min_margin`, for [`replay`]
    pub worst_index: Option<usize>,
    /// largest gap between the evaluator's left-hand side and the independent one
    pub max_lhs_gap: f64,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        let tol = self.target.tol();
        self.accepted == self.requested && self.min_margin >= -tol && self.max_lhs_gap <= tol
    }

    /// One line: target, counts, worst margin and a reproducer.
    pub fn line(&self) -> String {
        let worst = self
            .worst_index
            .map_or_else(|| "none".to_string(), |i| format!("seed {} index {i}", self.seed));
        format!(
            "{}: {} accepted of {} requested, {} rejected, min margin {:.3e} ({worst}), lhs gap {:.1e}, {}",
            self.target,
            self.accepted,
            self.requested,
            self.rejected,
            self.min_margin,
            self.max_lhs_gap,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

enum Outcome {
    Accepted { margin: f64, lhs_gap: f64 },
    Rejected(String),
}

fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Party weights of a random GW state under a random partition into
/// `parties` parties, possibly with traced sites.
fn random_weights(rng: &mut ChaCha8Rng, parties: usize) -> Result<PartyWeights> {
    let d = rng.random_range(2..=3);
    let n = parties + rng.random_range(0..=2);
    let traced = rng.random_range(0..=n - parties);
    let spec = random_gw_spec(rng, d, n)?;
    let part = random_partition_into(rng, n, parties, traced)?;
    party_weights(&spec, &part)
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        rng.random_range(lo..=hi)
    } else {
        lo
    }
}

/// Draws from `[1, max(1, hi) * OVERSHOOT]`; unbounded ends are capped at 3.
fn at_least_one(rng: &mut ChaCha8Rng, hi: f64) -> f64 {
    let hi = if hi.is_finite() { hi.max(1.0) } else { 3.0 };
    uniform(rng, 1.0, hi * OVERSHOOT)
}

fn random_q(rng: &mut ChaCha8Rng) -> f64 {
    let (lo, hi) = q_intervals()[rng.random_range(0..2)];
    loop {
        let q = uniform(rng, lo, hi);
        // q = 1 is excluded from every Tsallis formula
        if (q - 1.0).abs() > 1e-6 {
            return q;
        }
    }
}

fn judged(report: Result<BoundReport>, lhs: f64) -> Result<Outcome> {
    match report {
        Ok(r) => Ok(Outcome::Accepted {
            margin: lhs - r.rhs,
            lhs_gap: (lhs - r.lhs).abs(),
        }),
        Err(Error::Hypothesis { checks, .. }) => {
            let first = checks
                .iter()
                .find(|c| !c.holds)
                .map_or_else(|| "unlabelled".to_string(), |c| c.label.clone());
            Ok(Outcome::Rejected(first))
        }
        Err(e) => Err(e),
    }
}

fn tripartite_pairs(w: &PartyWeights) -> Result<(f64, f64)> {
    Ok((coa_pair_gw(w, 0, 1)?.value, coa_pair_gw(w, 0, 2)?.value))
}

fn thm1_instance(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let w = random_weights(rng, 3)?;
    let (ab, ac) = tripartite_pairs(&w)?;
    let gamma = uniform(rng, 2.0, 4.0);
    let alpha = uniform(rng, gamma, gamma + 3.0);
    let delta = uniform(rng, 1.0, 3.0);
    let (major, minor) = if ab >= ac { (ab, ac) } else { (ac, ab) };
    let iv = admissible_params(CoaTriple::from_pairs(major, minor), gamma, delta)?;
    let ell = at_least_one(rng, iv.alpha_ell.hi);
    let omega = at_least_one(rng, iv.omega.hi);
    let params = BoundParams::tripartite(omega, ell, delta).with_gamma(gamma).with_alpha(alpha);
    let lhs = coa_one_vs_rest_gw(&w, 0)?.value.powf(alpha);
    judged(thm1_bound(ab, ac, &params), lhs)
}

fn thm3_instance(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let w = random_weights(rng, 3)?;
    let (ab, ac) = tripartite_pairs(&w)?;
    let gamma = uniform(rng, 2.0, 4.0);
    let beta = uniform(rng, 0.0, gamma / 2.0);
    let p = uniform(rng, 0.5, 1.0);
    let (minor, major) = if ab <= ac { (ab, ac) } else { (ac, ab) };
    let iv = admissible_params(CoaTriple::from_pairs(minor, major), gamma, 1.0)?;
    let ell = uniform(rng, (iv.beta_ell.lo / OVERSHOOT).min(1.0), 1.0);
    let omega = at_least_one(rng, iv.omega.hi);
    let params = BoundParams::tripartite(omega, ell, 1.0)
        .with_gamma(gamma)
        .with_beta(beta)
        .with_p(p);
    let lhs = coa_one_vs_rest_gw(&w, 0)?.value.powf(beta);
    judged(thm3_bound(ab, ac, &params), lhs)
}

/// Chain over `N` parties with `A` = party 0, plus its split index.
fn random_chain(rng: &mut ChaCha8Rng, dominant_front: bool) -> Result<(PartyWeights, ChainInputs, usize)> {
    let n = rng.random_range(4..=6);
    let w = random_weights(rng, n)?;
    let z = rng.random_range(1..=n - 3);
    let mut rest: Vec<usize> = (1..n).collect();
    if dominant_front {
        // heavy parties first give the front conditions a chance; the back
        // conditions want the remainder in increasing order
        rest.sort_by(|&a, &b| w.get(b).total_cmp(&w.get(a)));
        rest[z..].reverse();
    } else {
        rest.shuffle(rng);
    }
    let mut order = vec![0];
    order.extend(rest);
    let chain = ChainInputs::from_gw(&w, &order)?;
    Ok((w, chain, z))
}

/// `(L bound, omega upper end)` for index `r` of a chain at exponent `g`.
/// The `L` bound is an upper end for dominant ratios and a lower end for
/// dominated ones.
fn chain_ranges(chain: &ChainInputs, r: usize, z: usize, g: f64, dominant: bool) -> (f64, f64) {
    let c = chain.pair[r].powf(g);
    let t = chain.tail[r].powf(g);
    let next = chain.tail[r + 1].powf(g);
    let front = r < z;
    let ratio = match (front, dominant) {
        (true, true) | (false, false) => c / next,
        (true, false) | (false, true) => next / c,
    };
    let omega_hi = if front { (t - c) / next } else { (t - next) / c };
    (ratio, omega_hi)
}

fn thm2_instance(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (w, chain, z) = random_chain(rng, true)?;
    let gamma = uniform(rng, 2.0, 4.0);
    let alpha = uniform(rng, gamma, gamma + 3.0);
    let steps = chain.parties() - 2;
    let mut params = BoundParams::default().with_gamma(gamma).with_alpha(alpha).with_z(z);
    params.omega.clear();
    params.ell.clear();
    params.delta.clear();
    for r in 0..steps {
        let (l_hi, omega_hi) = chain_ranges(&chain, r, z, gamma, true);
        let delta = uniform(rng, 1.0, 2.0);
        params.delta.push(delta);
        params.ell.push(at_least_one(rng, l_hi.powf(1.0 / delta)));
        params.omega.push(at_least_one(rng, omega_hi));
    }
    let lhs = coa_one_vs_rest_gw(&w, 0)?.value.powf(alpha);
    judged(thm2_bound(&chain.pair, &chain.tail, &params), lhs)
}

fn thm4_instance(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (w, chain, z) = random_chain(rng, false)?;
    let gamma = uniform(rng, 2.0, 4.0);
    let beta = uniform(rng, 0.0, gamma / 2.0);
    let p = uniform(rng, 0.5, 1.0);
    let steps = chain.parties() - 2;
    let mut params = BoundParams::default()
        .with_gamma(gamma)
        .with_beta(beta)
        .with_p(p)
        .with_z(z);
    params.omega.clear();
    params.ell.clear();
    params.delta.clear();
    for r in 0..steps {
        let (l_lo, omega_hi) = chain_ranges(&chain, r, z, gamma, false);
        let delta = uniform(rng, 1.0, 2.0);
        let base = l_lo.max(1.0).powf(1.0 / delta);
        params.delta.push(delta);
        params.ell.push((base * uniform(rng, 1.0 / OVERSHOOT, 1.5)).max(1.0));
        params.omega.push(at_least_one(rng, omega_hi));
    }
    let lhs = coa_one_vs_rest_gw(&w, 0)?.value.powf(beta);
    judged(thm4_bound(&chain.pair, &chain.tail, &params), lhs)
}

fn tq_instance(rng: &mut ChaCha8Rng, monogamy: bool) -> Result<Outcome> {
    let n = rng.random_range(3..=5);
    let w = random_weights(rng, n)?;
    let t = rng.random_range(0..n);
    let q = random_q(rng);
    let margin = if monogamy {
        tq_monogamy_residual(&w, t, q, uniform(rng, 2.0, 5.0))?
    } else {
        -tq_polygamy_residual(&w, t, q, uniform(rng, 0.0, 1.0))?
    };
    Ok(Outcome::Accepted { margin, lhs_gap: 0.0 })
}

fn lemma1_instance(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let tau = uniform(rng, 1.0, 2.0);
    let delta = uniform(rng, 1.0, 2.0);
    let base = tau.powf(delta);
    // the equality case gets a share of its own
    let theta = if rng.random_bool(0.05) {
        base
    } else {
        base + uniform(rng, 0.0, 3.0)
    };
    let z = uniform(rng, 1.0, 3.0);
    let margin = lemma1_check(theta, tau, delta, z)?;
    Ok(Outcome::Accepted { margin, lhs_gap: 0.0 })
}

fn lemma2_instance(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let a = uniform(rng, 0.0, 1.0);
    let b = if rng.random_bool(0.05) { a } else { uniform(rng, 0.0, 1.0) };
    let (x, y) = if a <= b { (a, b) } else { (b, a) };
    let p = uniform(rng, 0.5, 1.0);
    let r = uniform(rng, 0.0, 0.5);
    let margin = lemma2_check(x, y, p, r)?;
    Ok(Outcome::Accepted { margin, lhs_gap: 0.0 })
}

fn instance(target: FuzzTarget, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    match target {
        FuzzTarget::Lemma1 => lemma1_instance(rng),
        FuzzTarget::Lemma2 => lemma2_instance(rng),
        FuzzTarget::Thm1 => thm1_instance(rng),
        FuzzTarget::Thm2 => thm2_instance(rng),
        FuzzTarget::Thm3 => thm3_instance(rng),
        FuzzTarget::Thm4 => thm4_instance(rng),
        FuzzTarget::Tq2 => tq_instance(rng, true),
        FuzzTarget::Tq3 => tq_instance(rng, false),
    }
}

/// Draws instances until `count` pass their hypotheses (or the attempt
/// budget of 50 per instance runs out) and summarizes the margins.
pub fn fuzz(target: FuzzTarget, count: usize, seed: u64) -> Result<FuzzSummary> {
    let mut summary = FuzzSummary {
        target,
        seed,
        requested: count,
        accepted: 0,
        rejected: 0,
        rejections: BTreeMap::new(),
        min_margin: f64::INFINITY,
        worst_index: None,
        max_lhs_gap: 0.0,
    };
    let budget = count.saturating_mul(ATTEMPTS_PER_INSTANCE).max(100);
    for index in 0..budget {
        if summary.accepted == count {
            break;
        }
        match instance(target, &mut rng_for(seed, index))? {
            Outcome::Accepted { margin, lhs_gap } => {
                summary.accepted += 1;
                summary.max_lhs_gap = summary.max_lhs_gap.max(lhs_gap);
                if margin < summary.min_margin {
                    summary.min_margin = margin;
                    summary.worst_index = Some(index);
                }
            }
            Outcome::Rejected(label) => {
                summary.rejected += 1;
                *summary.rejections.entry(label).or_insert(0) += 1;
            }
        }
    }
    Ok(summary)
}

/// Margin of instance `index` of the run seeded with `seed`; `None` when its
/// hypotheses fail.
pub fn replay(target: FuzzTarget, seed: u64, index: usize) -> Result<Option<f64>> {
    Ok(match instance(target, &mut rng_for(seed, index))? {
        Outcome::Accepted { margin, .. } => Some(margin),
        Outcome::Rejected(_) => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_target_passes_a_short_run() {
        for target in FuzzTarget::ALL {
            let s = fuzz(target, 300, 11).unwrap();
            assert!(s.passed(), "{}", s.line());
            assert_eq!(s.rejected, s.rejections.values().sum::<usize>());
        }
    }

    #[test]
    fn theorem_runs_see_rejections() {
        for target in [FuzzTarget::Thm1, FuzzTarget::Thm2, FuzzTarget::Thm3, FuzzTarget::Thm4] {
            let s = fuzz(target, 300, 5).unwrap();
            assert!(s.rejected > 0, "{}", s.line());
        }
    }

    #[test]
    fn replay_reproduces_the_worst_instance() {
        let s = fuzz(FuzzTarget::Thm2, 200, 3).unwrap();
        let worst = replay(FuzzTarget::Thm2, 3, s.worst_index.unwrap()).unwrap();
        assert_eq!(worst, Some(s.min_margin));
    }

    #[test]
    fn names_round_trip() {
        for t in FuzzTarget::ALL {
            assert_eq!(t.name().parse::<FuzzTarget>().unwrap(), t);
        }
        assert!("thm5".parse::<FuzzTarget>().is_err());
    }
}
