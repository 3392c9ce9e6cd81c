//! Random pure-state decompositions of a density matrix.
//!
//! For `rho = sum_k lambda_k |e_k><e_k|` of rank `r` and an `m x r` isometry
//! `U`, the unnormalized members `v_i = sum_k U_ik sqrt(lambda_k) |e_k>`
//! decompose `rho`. The average concurrence over a decomposition is
//! `sum_i ||v_i||^2 C(v_i / ||v_i||)`; every decomposition gives a value
//! between the convex roof and the concave roof.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::SamplingConfig;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::measures::{weighted_concurrence, MeasureValue, Method};

pub const MAX_SAMPLING_RANK: usize = 8;
/// Eigenvalues below this are outside the support.
const RANK_TOL: f64 = 1e-13;
const INITIAL_STEP: f64 = 0.05;
/// Step multipliers after an accepted and a rejected perturbation; the pair
/// settles near a one-in-five acceptance rate.
const STEP_GROWTH: f64 = 2.0;
const STEP_SHRINK: f64 = 0.84;
const MAX_STEP: f64 = 0.5;

/// `sqrt(lambda_k) e_k` for the support of `rho`.
struct Support {
    dims: Vec<usize>,
    side_a: Vec<usize>,
    scaled: Vec<Vec<C64>>,
}

impl Support {
    fn new(rho: &ComplexMatrix, dims: &[usize], side_a: &[usize]) -> Result<Self> {
        let side: usize = dims.iter().product();
        if rho.rows() != side || rho.cols() != side {
            return Err(Error::shape(format!(
                "density matrix {}x{} does not match dims {dims:?}",
                rho.rows(),
                rho.cols()
            )));
        }
        if side_a.is_empty() || side_a.iter().any(|&s| s >= dims.len()) {
            return Err(Error::shape(format!("side {side_a:?} invalid for dims {dims:?}")));
        }
        let eig = linalg::hermitian_eig(rho)?;
        let scaled: Vec<Vec<C64>> = eig
            .values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > RANK_TOL)
            .map(|(k, &v)| eig.column(k).into_iter().map(|x| x * v.sqrt()).collect())
            .collect();
        if scaled.is_empty() {
            return Err(Error::domain("density matrix has no support"));
        }
        if scaled.len() > MAX_SAMPLING_RANK {
            return Err(Error::Size {
                what: "sampling rank",
                got: scaled.len(),
                cap: MAX_SAMPLING_RANK,
            });
        }
        Ok(Support {
            dims: dims.to_vec(),
            side_a: side_a.to_vec(),
            scaled,
        })
    }

    fn rank(&self) -> usize {
        self.scaled.len()
    }

    /// Average member concurrence for the isometry `u` (`m` rows of `r` entries).
    fn average(&self, u: &[Vec<C64>]) -> f64 {
        let len = self.scaled[0].len();
        let mut member = vec![C64::new(0.0, 0.0); len];
        let mut total = 0.0;
        for row in u {
            member.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
            for (coef, vec) in row.iter().zip(&self.scaled) {
                for (m, v) in member.iter_mut().zip(vec) {
                    *m += coef * v;
                }
            }
            // shapes were validated in `new`
            total += weighted_concurrence(&member, &self.dims, &self.side_a).unwrap_or(0.0);
        }
        total
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Gram-Schmidt on the columns of an `m x r` row-major array.
fn orthonormalize_columns(u: &mut [Vec<C64>]) {
    let r = u[0].len();
    for k in 0..r {
        for j in 0..k {
            let dot: C64 = u.iter().map(|row| row[j].conj() * row[k]).sum();
            for row in u.iter_mut() {
                let uj = row[j];
                row[k] -= dot * uj;
            }
        }
        let norm = u.iter().map(|row| row[k].norm_sqr()).sum::<f64>().sqrt();
        for row in u.iter_mut() {
            row[k] /= norm;
        }
    }
}

fn random_isometry(rng: &mut ChaCha8Rng, m: usize, r: usize) -> Vec<Vec<C64>> {
    let mut u: Vec<Vec<C64>> = (0..m).map(|_| (0..r).map(|_| gaussian(rng)).collect()).collect();
    orthonormalize_columns(&mut u);
    u
}

/// One trial: a random isometry improved by accepted perturbations with an
/// adaptive step. Returns the best value of `sign * average`. Trials depend
/// only on the seed and their own index, so more trials never do worse.
fn trial(support: &Support, cfg: &SamplingConfig, m: usize, index: usize, sign: f64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let r = support.rank();
    let mut best_u = random_isometry(&mut rng, m, r);
    let mut best = sign * support.average(&best_u);
    let mut step = INITIAL_STEP;
    for _ in 0..cfg.refine_steps {
        let mut cand: Vec<Vec<C64>> = best_u
            .iter()
            .map(|row| row.iter().map(|&x| x + gaussian(&mut rng) * step).collect())
            .collect();
        orthonormalize_columns(&mut cand);
        let value = sign * support.average(&cand);
        if value > best {
            best = value;
            best_u = cand;
            step = (step * STEP_GROWTH).min(MAX_STEP);
        } else {
            step *= STEP_SHRINK;
        }
    }
    best
}

fn search(rho: &ComplexMatrix, dims: &[usize], side_a: &[usize], cfg: &SamplingConfig, sign: f64) -> Result<f64> {
    if cfg.trials == 0 {
        return Err(Error::domain("sampling needs at least one trial"));
    }
    let support = Support::new(rho, dims, side_a)?;
    let r = support.rank();
    let m = cfg.decomposition_size.unwrap_or(r);
    if m < r || m > 4 * r {
        return Err(Error::domain(format!(
            "decomposition size {m} outside [rank, 4 rank] = [{r}, {}]",
            4 * r
        )));
    }
    let values: Vec<f64> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| trial(&support, cfg, m, t, sign))
        .collect();
    Ok(sign * values.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

/// Largest average concurrence found across `side_a | rest`; a lower bound on
/// the concurrence of assistance.
pub fn coa_sampling_max(
    rho: &ComplexMatrix,
    dims: &[usize],
    side_a: &[usize],
    cfg: &SamplingConfig,
) -> Result<MeasureValue> {
    let value = search(rho, dims, side_a, cfg, 1.0)?;
    Ok(MeasureValue {
        value,
        method: Method::SampledBound,
    })
}

/// Smallest average concurrence found; an upper bound on the concurrence.
pub fn concurrence_sampling_min(
    rho: &ComplexMatrix,
    dims: &[usize],
    side_a: &[usize],
    cfg: &SamplingConfig,
) -> Result<MeasureValue> {
    let value = search(rho, dims, side_a, cfg, -1.0)?;
    Ok(MeasureValue {
        value,
        method: Method::SampledBound,
    })
}
