use super::{coa_sampling_max, concurrence_sampling_min, CertificationReport, CheckLine, SamplingConfig};
use crate::error::{Error, Result};
use crate::linalg::StateVector;
use crate::measures::{
    coa_one_vs_rest_gw, coa_pair_gw, coa_two_qubit, concurrence_pure, concurrence_wootters, Bipartition,
};
use crate::states::{build_gw_vector, party_weights, reduce_density, GwSpec, Partition};

/// Tolerances for [`run_certification`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyConfig {
    /// exact numerical paths (Wootters, pure-state cuts)
    pub tol: f64,
    /// how far a sampled bound may fall short of the closed form
    pub sampling_tol: f64,
    pub sampling: SamplingConfig,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            tol: 1e-8,
            sampling_tol: 5e-3,
            sampling: SamplingConfig::default(),
        }
    }
}

impl CertifyConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_sampling(mut self, sampling: SamplingConfig) -> Self {
        self.sampling = sampling;
        self
    }
}

/// Slack allowed on the side where a sampled value is a rigorous bound.
const BOUND_SLACK: f64 = 1e-9;

fn positions(sites: &[usize], of: &[usize]) -> Vec<usize> {
    of.iter()
        .map(|s| sites.binary_search(s).expect("party sites are retained"))
        .collect()
}

fn label(parties: &[Vec<usize>], t: usize) -> String {
    let sites: Vec<String> = parties[t].iter().map(|s| s.to_string()).collect();
    format!("P{t}[{}]", sites.join(" "))
}

/// Compares the closed form against the sampled upper bound on `C` and the
/// sampled lower bound on `C_a` of the reduction of `vec` onto `sites`.
fn bracket(
    report: &mut CertificationReport,
    name: &str,
    vec: &StateVector,
    sites: &[usize],
    side_a: &[usize],
    expected: f64,
    cfg: &CertifyConfig,
) -> Result<()> {
    let rho = reduce_density(vec, sites)?;
    let dims: Vec<usize> = sites.iter().map(|&s| vec.dims()[s]).collect();
    let side = positions(sites, side_a);
    let hi = coa_sampling_max(&rho, &dims, &side, &cfg.sampling)?.value;
    let lo = concurrence_sampling_min(&rho, &dims, &side, &cfg.sampling)?.value;
    report.push(CheckLine::bracket(
        format!("{name} sampled C_a lower bound"),
        expected,
        hi,
        cfg.sampling_tol,
        BOUND_SLACK,
    ));
    report.push(CheckLine::bracket(
        format!("{name} sampled C upper bound"),
        expected,
        lo,
        BOUND_SLACK,
        cfg.sampling_tol,
    ));
    Ok(())
}

/// Checks every pairwise and one-vs-rest closed form of `spec` under `part`
/// against numerical reductions of the explicit state vector.
///
/// Two singleton qubit parties go through the Wootters formula; pure cuts
/// (nothing traced) through the reduced purity; everything else through the
/// decomposition samplers.
pub fn run_certification(spec: &GwSpec, part: &Partition, cfg: &CertifyConfig) -> Result<CertificationReport> {
    if part.len() < 2 {
        return Err(Error::domain("certification needs at least two parties"));
    }
    let w = party_weights(spec, part)?;
    let vec = build_gw_vector(spec)?;
    let parties = part.parties();
    let qubits = spec.d() == 2;
    let mut report = CertificationReport::default();

    for t in 0..parties.len() {
        for l in t + 1..parties.len() {
            let expected = coa_pair_gw(&w, t, l)?.value;
            let name = format!("pair {},{}", label(parties, t), label(parties, l));
            let mut sites: Vec<usize> = parties[t].iter().chain(&parties[l]).copied().collect();
            sites.sort_unstable();
            if qubits && parties[t].len() == 1 && parties[l].len() == 1 {
                // sites are sorted, and the two-qubit formulas are symmetric
                let rho = reduce_density(&vec, &sites)?;
                let c = concurrence_wootters(&rho)?.value;
                let ca = coa_two_qubit(&rho)?.value;
                report.push(CheckLine::close(format!("{name} wootters C"), expected, c, cfg.tol));
                report.push(CheckLine::close(format!("{name} two-qubit C_a"), expected, ca, cfg.tol));
            } else {
                bracket(&mut report, &name, &vec, &sites, &parties[t], expected, cfg)?;
            }
        }
    }

    let traced = part.traced();
    let retained = part.retained();
    for t in 0..parties.len() {
        let expected = coa_one_vs_rest_gw(&w, t)?.value;
        let name = format!("{} vs rest", label(parties, t));
        if traced.is_empty() {
            let cut = Bipartition::against_rest(parties[t].clone(), spec.n())?;
            let c = concurrence_pure(&vec, &cut)?.value;
            report.push(CheckLine::close(format!("{name} pure C"), expected, c, cfg.tol));
        } else {
            bracket(&mut report, &name, &vec, &retained, &parties[t], expected, cfg)?;
        }
    }
    Ok(report)
}

/// [`run_certification`], failing with a certification error that names
/// every check outside tolerance.
pub fn certify_gw_closed_forms(spec: &GwSpec, part: &Partition, cfg: &CertifyConfig) -> Result<CertificationReport> {
    run_certification(spec, part, cfg)?.ensure_passed()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> CertifyConfig {
        CertifyConfig::default().with_sampling(SamplingConfig::default().with_trials(50))
    }

    #[test]
    fn example1_with_traced_site() {
        let spec = GwSpec::w_class(&[0.5f64.sqrt(), 0.5, 0.4, 0.3]).unwrap();
        let part = Partition::new(4, vec![vec![0], vec![1], vec![2]]).unwrap();
        let report = certify_gw_closed_forms(&spec, &part, &quick()).unwrap();
        let ab = report.lines.iter().find(|l| l.name == "pair P0[0],P1[1] wootters C").unwrap();
        assert!((ab.got - 2f64.sqrt() / 2.0).abs() < 1e-8);
        assert!(report.lines.iter().any(|l| l.name.contains("vs rest sampled")));
    }

    #[test]
    fn example2_pure_cut() {
        let s = 6f64.sqrt();
        let spec = GwSpec::w_class(&[1.0 / s, 1.0 / s, 2.0 / s]).unwrap();
        let cfg = quick().with_tol(1e-10);
        let report = certify_gw_closed_forms(&spec, &Partition::singletons(3), &cfg).unwrap();
        let a = report.lines.iter().find(|l| l.name == "P0[0] vs rest pure C").unwrap();
        assert!((a.got - 5f64.sqrt() / 3.0).abs() < 1e-10);
    }

    #[test]
    fn grouped_parties_use_sampling() {
        let spec = GwSpec::w_class(&[0.5, 0.5, 0.5, 0.5]).unwrap();
        let part = Partition::new(4, vec![vec![0, 2], vec![1], vec![3]]).unwrap();
        let report = certify_gw_closed_forms(&spec, &part, &quick()).unwrap();
        assert!(report.lines.iter().any(|l| l.name.starts_with("pair P0[0 2],P1[1] sampled")));
    }

    #[test]
    fn wrong_closed_form_is_named() {
        let spec = GwSpec::w_class(&[0.6, 0.8]).unwrap();
        let mut report = run_certification(&spec, &Partition::singletons(2), &quick()).unwrap();
        report.lines[0].expected += 0.1;
        report.lines[0].pass = false;
        let err = report.ensure_passed().unwrap_err();
        assert!(err.to_string().contains("wootters"));
    }

    #[test]
    fn single_party_rejected() {
        let spec = GwSpec::w_class(&[0.6, 0.8]).unwrap();
        let part = Partition::new(2, vec![vec![0, 1]]).unwrap();
        assert!(run_certification(&spec, &part, &quick()).is_err());
    }
}
