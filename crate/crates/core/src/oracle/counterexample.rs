//! The pure `3 x 2 x 2` state whose two-qubit-like reductions have rank two
//! yet violate the Tsallis CKW-type inequality.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{CertificationReport, CheckLine, SamplingConfig};
use crate::error::{Error, Result};
use crate::linalg::{self, StateVector};
use crate::measures::{q_in_validity_union, tq_rank2_counterexample, tsallis_of_spectrum};
use crate::states::reduce_density;

const SPECTRUM_TOL: f64 = 1e-8;
const VALUE_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-12;
/// Members drawn per reduction; each is one element of some decomposition.
const MAX_MEMBERS: usize = 256;

/// `(sqrt2 |010> + sqrt2 |101> + |200> + |211>) / sqrt6` with the qutrit first.
pub fn counterexample_state() -> StateVector {
    let s = (2.0f64 / 6.0).sqrt();
    let u = (1.0f64 / 6.0).sqrt();
    let mut amps = vec![C64::new(0.0, 0.0); 12];
    // index = a * 4 + b * 2 + c
    amps[2] = C64::new(s, 0.0);
    amps[5] = C64::new(s, 0.0);
    amps[8] = C64::new(u, 0.0);
    amps[11] = C64::new(u, 0.0);
    StateVector::new(vec![3, 2, 2], amps).expect("counterexample amplitudes are normalized")
}

fn sorted_spectrum(rho: &linalg::ComplexMatrix) -> Result<Vec<f64>> {
    let mut v = linalg::hermitian_eig(rho)?.values;
    v.sort_by(|a, b| a.total_cmp(b));
    Ok(v)
}

fn max_deviation(got: &[f64], want: &[f64]) -> f64 {
    got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Worst deviation of the qutrit spectrum of a normalized random member of
/// the support of `rho` (a two-party reduction with the qutrit first) from
/// `(0, 1/3, 2/3)`; also returns the Tsallis spectrum of the last member.
fn member_spectra(rho: &linalg::ComplexMatrix, trials: usize, rng: &mut ChaCha8Rng) -> Result<(f64, Vec<f64>)> {
    let eig = linalg::hermitian_eig(rho)?;
    let support: Vec<Vec<C64>> = (0..eig.values.len())
        .filter(|&k| eig.values[k] > 1e-13)
        .map(|k| eig.column(k).into_iter().map(|x| x * eig.values[k].sqrt()).collect())
        .collect();
    if support.len() != 2 {
        return Err(Error::Certification(format!(
            "two-party reduction has rank {}, expected 2",
            support.len()
        )));
    }
    let want = [0.0, 1.0 / 3.0, 2.0 / 3.0];
    let mut worst: f64 = 0.0;
    let mut last = Vec::new();
    for _ in 0..trials.clamp(1, MAX_MEMBERS) {
        let (a, b) = (gaussian(rng), gaussian(rng));
        let member: Vec<C64> = support[0].iter().zip(&support[1]).map(|(x, y)| a * x + b * y).collect();
        let member = StateVector::normalized(vec![3, 2], member)?;
        let spec = sorted_spectrum(&reduce_density(&member, &[0])?)?;
        worst = worst.max(max_deviation(&spec, &want));
        last = spec;
    }
    Ok((worst, last))
}

/// Numerical confirmation of the counterexample over `q_grid`: qutrit
/// spectrum, spectra of sampled decomposition members of both reductions, and
/// the closed-form Tsallis values and residual at every `q`.
pub fn counterexample_numeric(q_grid: &[f64], cfg: &SamplingConfig) -> Result<CertificationReport> {
    if let Some(q) = q_grid.iter().find(|&&q| !q_in_validity_union(q)) {
        return Err(Error::domain(format!(
            "q = {q} outside [(5 - sqrt13)/2, 2] u [3, (5 + sqrt13)/2]"
        )));
    }
    let psi = counterexample_state();
    let mut report = CertificationReport::default();

    let spec_a = sorted_spectrum(&reduce_density(&psi, &[0])?)?;
    for (k, &v) in spec_a.iter().enumerate() {
        report.push(CheckLine::close(format!("rho_A eigenvalue {k}"), 1.0 / 3.0, v, SPECTRUM_TOL));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (dev_ab, spec_ab) = member_spectra(&reduce_density(&psi, &[0, 1])?, cfg.trials, &mut rng)?;
    let (dev_ac, spec_ac) = member_spectra(&reduce_density(&psi, &[0, 2])?, cfg.trials, &mut rng)?;
    report.push(CheckLine::close("rho_AB member spectrum deviation", 0.0, dev_ab, SPECTRUM_TOL));
    report.push(CheckLine::close("rho_AC member spectrum deviation", 0.0, dev_ac, SPECTRUM_TOL));

    for &q in q_grid {
        let closed = tq_rank2_counterexample(q)?;
        // every member has the same spectrum, so the convex roof is that value
        let lhs = tsallis_of_spectrum(&spec_a, q)?;
        let t_ab = tsallis_of_spectrum(&spec_ab, q)?;
        let t_ac = tsallis_of_spectrum(&spec_ac, q)?;
        report.push(CheckLine::close(format!("q={q} lhs"), closed.lhs, lhs, VALUE_TOL));
        report.push(CheckLine::close(format!("q={q} t_ab"), closed.t_ab, t_ab, VALUE_TOL));
        report.push(CheckLine::close(format!("q={q} t_ac"), closed.t_ac, t_ac, VALUE_TOL));
        report.push(CheckLine::at_most(
            format!("q={q} residual"),
            0.0,
            closed.residual_bound,
            RESIDUAL_TOL,
        ));
    }
    Ok(report)
}
