//! Earlier CoA monogamy bounds, kept for comparison curves.
//!
//! Prior forms never fail on their ordering conditions: the conditions are
//! recorded in the report and the caller decides what to do with them.

use super::theorems::{alpha_chain, beta_chain, chain_checks, chain_rhs, check_chain, Ratio};
use super::{check_ca, require, BoundFamily, BoundParams, BoundReport, ChainInputs, HypothesisCheck, Orientation};
use crate::error::{Error, Result};

/// Inputs for a prior bound: either two pairwise values for the tripartite
/// form or a full chain.
#[derive(Clone, Debug, PartialEq)]
pub enum PriorInputs {
    Tripartite { ca_ab: f64, ca_ac: f64 },
    Chain(ChainInputs),
}

fn alpha_at_least_two(params: &BoundParams) -> Result<()> {
    require(params.alpha >= 2.0, || format!("need alpha >= 2, got {}", params.alpha))
}

fn beta_range(params: &BoundParams) -> Result<()> {
    let (b, g) = (params.beta, params.gamma);
    require(g >= 2.0 && (0.0..=g).contains(&b), || {
        format!("need gamma >= 2 and 0 <= beta <= gamma, got beta={b}, gamma={g}")
    })
}

fn xhlf_a_params(params: &BoundParams) -> Result<(f64, f64)> {
    let (a, g) = (params.alpha, params.gamma);
    require(g >= 2.0 && a >= g, || format!("need alpha >= gamma >= 2, got alpha={a}, gamma={g}"))?;
    let (w, l) = (params.omega_at(0)?, params.ell_at(0)?);
    require(w >= 1.0 && l >= 1.0, || format!("need omega >= 1 and l >= 1, got omega={w}, l={l}"))?;
    Ok((w, l))
}

/// `omega >= 1`, `l >= 0`; the tripartite `beta` form is used with `l < 1`
/// in comparisons.
fn xhlf_b_params(params: &BoundParams) -> Result<(f64, f64)> {
    beta_range(params)?;
    let (w, l) = (params.omega_at(0)?, params.ell_at(0)?);
    require(w >= 1.0 && l >= 0.0, || format!("need omega >= 1 and l >= 0, got omega={w}, l={l}"))?;
    Ok((w, l))
}

fn lyy_weight(params: &BoundParams) -> Result<f64> {
    require(params.k >= 1.0, || format!("need k >= 1, got {}", params.k))?;
    let r = params.beta / params.gamma;
    Ok(((1.0 + params.k).powf(r) - 1.0) / params.k.powf(r))
}

/// Evaluates one of the prior families on tripartite or chain inputs.
pub fn prior_bounds(family: BoundFamily, inputs: &PriorInputs, params: &BoundParams) -> Result<BoundReport> {
    if !family.is_prior() {
        return Err(Error::domain(format!("{family} is not a prior bound family")));
    }
    match inputs {
        PriorInputs::Tripartite { ca_ab, ca_ac } => tripartite(family, *ca_ab, *ca_ac, params),
        PriorInputs::Chain(chain) => chain_form(family, chain, params),
    }
}

fn tripartite(family: BoundFamily, ab: f64, ac: f64, params: &BoundParams) -> Result<BoundReport> {
    check_ca(&[ab, ac])?;
    let g = params.gamma;
    let sq = ab * ab + ac * ac;
    let (e, coef, hyps) = match family {
        BoundFamily::Zxn => {
            alpha_at_least_two(params)?;
            (params.alpha, 1.0, vec![])
        }
        BoundFamily::JzxA | BoundFamily::JzxB => {
            alpha_at_least_two(params)?;
            let a = params.alpha;
            let coef = if family == BoundFamily::JzxA {
                a / 2.0
            } else {
                2f64.powf(a / 2.0) - 1.0
            };
            (a, coef, vec![HypothesisCheck::new("C_AB >= C_AC", ab - ac)])
        }
        BoundFamily::XhlfA => {
            let (w, l) = xhlf_a_params(params)?;
            let x = params.alpha / g;
            let hyps = vec![
                HypothesisCheck::new("C_AB^g >= l C_AC^g", ab.powf(g) - l * ac.powf(g)),
                HypothesisCheck::new(
                    "C_A|BC^g >= C_AB^g + w C_AC^g",
                    sq.powf(g / 2.0) - ab.powf(g) - w * ac.powf(g),
                ),
            ];
            (params.alpha, (w + l).powf(x) - l.powf(x), hyps)
        }
        BoundFamily::Sx => {
            beta_range(params)?;
            let coef = 2f64.powf(params.beta / g) - 1.0;
            (params.beta, coef, vec![HypothesisCheck::new("C_AB <= C_AC", ac - ab)])
        }
        BoundFamily::Lyy => {
            beta_range(params)?;
            let coef = lyy_weight(params)?;
            let hyps = vec![HypothesisCheck::new(
                "k C_AB^g <= C_AC^g",
                ac.powf(g) - params.k * ab.powf(g),
            )];
            (params.beta, coef, hyps)
        }
        BoundFamily::XhlfB => {
            let (w, l) = xhlf_b_params(params)?;
            let r = params.beta / g;
            let hyps = vec![
                HypothesisCheck::new("C_AB^g <= l C_AC^g", l * ac.powf(g) - ab.powf(g)),
                HypothesisCheck::new(
                    "C_A|BC^g >= C_AB^g + w C_AC^g",
                    sq.powf(g / 2.0) - ab.powf(g) - w * ac.powf(g),
                ),
            ];
            (params.beta, (w + l).powf(r) - l.powf(r), hyps)
        }
        _ => unreachable!("non-prior family filtered above"),
    };
    let lhs = sq.powf(e / 2.0);
    let rhs = ab.powf(e) + coef * ac.powf(e);
    Ok(BoundReport::new(family, lhs, rhs, hyps, Orientation::Direct))
}

fn chain_form(family: BoundFamily, chain: &ChainInputs, params: &BoundParams) -> Result<BoundReport> {
    let (pair, tail) = (&chain.pair[..], &chain.tail[..]);
    let n = check_chain(pair, tail, params.z)?;
    let z = params.z;
    let unit = |_: usize| 1.0;
    match family {
        BoundFamily::Zxn => {
            alpha_at_least_two(params)?;
            let a = params.alpha;
            let rhs = pair.iter().map(|c| c.powf(a)).sum();
            Ok(BoundReport::new(family, tail[0].powf(a), rhs, vec![], Orientation::Chain))
        }
        BoundFamily::JzxA | BoundFamily::JzxB => {
            alpha_at_least_two(params)?;
            let a = params.alpha;
            let k = if family == BoundFamily::JzxA {
                a / 2.0
            } else {
                2f64.powf(a / 2.0) - 1.0
            };
            let powers: Vec<f64> = pair.iter().map(|c| c.powf(a)).collect();
            let rhs = chain_rhs(&powers, z, &|_| k, &unit, &unit, 1.0);
            let hyps = chain_checks(pair, tail, z, 1.0, Ratio::Dominant, &|_| Ok(1.0), None)?;
            Ok(BoundReport::new(family, tail[0].powf(a), rhs, hyps, Orientation::Chain))
        }
        BoundFamily::Sx | BoundFamily::Lyy => {
            beta_range(params)?;
            let b = params.beta;
            let powers: Vec<f64> = pair.iter().map(|c| c.powf(b)).collect();
            let (l, hyps) = if family == BoundFamily::Sx {
                let l = 2f64.powf(b / params.gamma) - 1.0;
                let hyps = chain_checks(pair, tail, z, 1.0, Ratio::Dominated, &|_| Ok(1.0), None)?;
                (l, hyps)
            } else {
                let l = lyy_weight(params)?;
                let hyps = if l > 0.0 {
                    chain_checks(pair, tail, z, params.gamma, Ratio::Dominated, &|_| Ok(1.0 / l), None)?
                } else {
                    vec![]
                };
                (l, hyps)
            };
            let zi = z as i32;
            let rhs = if family == BoundFamily::Sx {
                // exponent N-1 on the last term, as stated for this family
                chain_rhs(&powers, z, &unit, &|i| l.powi(i as i32 + 1), &|_| l.powi(zi), l.powi(n as i32 - 1))
            } else {
                chain_rhs(&powers, z, &unit, &|i| l.powi(i as i32), &|_| l.powi(zi), l.powi(zi + 1))
            };
            Ok(BoundReport::new(family, tail[0].powf(b), rhs, hyps, Orientation::Chain))
        }
        BoundFamily::XhlfA => alpha_chain(family, pair, tail, params, false, false),
        BoundFamily::XhlfB => {
            xhlf_b_params(params)?;
            beta_chain(family, pair, tail, params, false, false, 0.0, false)
        }
        _ => unreachable!("non-prior family filtered above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::PartyWeights;
    use approx::assert_abs_diff_eq;

    const AB1: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn ac1() -> f64 {
        2.0 * 2f64.sqrt() / 5.0
    }

    fn tri(ab: f64, ac: f64) -> PriorInputs {
        PriorInputs::Tripartite { ca_ab: ab, ca_ac: ac }
    }

    #[test]
    fn zxn_example1() {
        let r = prior_bounds(BoundFamily::Zxn, &tri(AB1, ac1()), &BoundParams::default()).unwrap();
        assert_abs_diff_eq!(r.rhs, 0.82, epsilon = 1e-14);
        assert_abs_diff_eq!(r.residual, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn jzx_a_example1_alpha3() {
        let p = BoundParams::default().with_alpha(3.0);
        let r = prior_bounds(BoundFamily::JzxA, &tri(AB1, ac1()), &p).unwrap();
        assert_abs_diff_eq!(r.rhs, AB1.powi(3) + 1.5 * ac1().powi(3), epsilon = 1e-14);
        assert!(r.hypotheses_hold());
    }

    #[test]
    fn sx_example2() {
        let p = BoundParams::default().with_gamma(3.0).with_beta(1.0);
        let r = prior_bounds(BoundFamily::Sx, &tri(1.0 / 3.0, 2.0 / 3.0), &p).unwrap();
        let expect = 1.0 / 3.0 + (2f64.powf(1.0 / 3.0) - 1.0) * 2.0 / 3.0;
        assert_abs_diff_eq!(r.rhs, expect, epsilon = 1e-14);
    }

    #[test]
    fn xhlf_families_record_hypotheses() {
        let p = BoundParams::tripartite(1.0, 1.3, 1.0).with_alpha(4.0);
        let r = prior_bounds(BoundFamily::XhlfA, &tri(AB1, ac1()), &p).unwrap();
        assert!(r.hypotheses_hold());
        assert_abs_diff_eq!(
            r.rhs,
            AB1.powi(4) + (2.3f64.powi(2) - 1.3f64.powi(2)) * ac1().powi(4),
            epsilon = 1e-14
        );
        let p = BoundParams::tripartite(9.0 / 8.0, 0.75, 1.0).with_gamma(3.0).with_beta(1.0);
        let r = prior_bounds(BoundFamily::XhlfB, &tri(1.0 / 3.0, 2.0 / 3.0), &p).unwrap();
        assert!(r.hypotheses_hold());
        let lyy = prior_bounds(BoundFamily::Lyy, &tri(1.0 / 3.0, 2.0 / 3.0), &p.clone().with_k(4.0 / 3.0)).unwrap();
        assert!(lyy.hypotheses_hold());
        assert!(r.rhs >= lyy.rhs);
    }

    #[test]
    fn non_prior_family_rejected() {
        assert!(prior_bounds(BoundFamily::Thm1, &tri(0.5, 0.4), &BoundParams::default()).is_err());
    }

    #[test]
    fn chain_forms_reduce_as_stated() {
        let w = PartyWeights::new(vec![0.3, 0.4, 0.1, 0.2]).unwrap();
        let c = ChainInputs::from_gw(&w, &[0, 1, 2, 3]).unwrap();
        let input = PriorInputs::Chain(c.clone());
        let p = BoundParams::default().with_alpha(3.0);
        let jzx_b = prior_bounds(BoundFamily::JzxB, &input, &p).unwrap();
        let xhlf = prior_bounds(BoundFamily::XhlfA, &input, &p).unwrap();
        let thm2 = crate::bounds::thm2_bound(&c.pair, &c.tail, &p).unwrap();
        assert_abs_diff_eq!(jzx_b.rhs, xhlf.rhs, epsilon = 1e-14);
        assert_abs_diff_eq!(thm2.rhs, xhlf.rhs, epsilon = 1e-14);
        let zxn = prior_bounds(BoundFamily::Zxn, &input, &p).unwrap();
        let jzx_a = prior_bounds(BoundFamily::JzxA, &input, &p).unwrap();
        assert!(jzx_b.rhs >= jzx_a.rhs && jzx_a.rhs >= zxn.rhs);
        assert!(zxn.residual >= 0.0);
    }

    #[test]
    fn sx_and_lyy_chain_weights() {
        let pair = [0.1, 0.2, 0.5, 0.3];
        let tail = [0.9, 0.8, 0.6, 0.3];
        let input = PriorInputs::Chain(ChainInputs {
            pair: pair.to_vec(),
            tail: tail.to_vec(),
        });
        let p = BoundParams::default().with_gamma(2.0).with_beta(1.0).with_z(1).with_k(1.0);
        let l = 2f64.sqrt() - 1.0;
        let sx = prior_bounds(BoundFamily::Sx, &input, &p).unwrap();
        let expect = l * 0.1 + l * (0.2 + 0.5) + l.powi(4) * 0.3;
        assert_abs_diff_eq!(sx.rhs, expect, epsilon = 1e-14);
        let lyy = prior_bounds(BoundFamily::Lyy, &input, &p).unwrap();
        let expect = 0.1 + l * (0.2 + 0.5) + l * l * 0.3;
        assert_abs_diff_eq!(lyy.rhs, expect, epsilon = 1e-14);
    }
}
