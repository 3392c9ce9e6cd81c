use super::require;
use crate::error::Result;
use crate::measures::{tqeeoa_gw, tqeeoa_pair_gw};
use crate::states::PartyWeights;

/// `T(t|rest)^e - sum_{l != t} T(t l)^e` with every Tsallis-q assistance value
/// from the GW closed form.
fn residual(w: &PartyWeights, t: usize, q: f64, e: f64) -> Result<f64> {
    let whole = tqeeoa_gw(w, t, q)?.value;
    let mut pairs = 0.0;
    for l in (0..w.len()).filter(|&l| l != t) {
        pairs += tqeeoa_pair_gw(w, t, l, q)?.value.powf(e);
    }
    Ok(whole.powf(e) - pairs)
}

/// Monogamy residual of the `alpha`-th power, `alpha >= 2`; non-negative on
/// GW states.
pub fn tq_monogamy_residual(w: &PartyWeights, t: usize, q: f64, alpha: f64) -> Result<f64> {
    require(alpha >= 2.0, || format!("need alpha >= 2, got {alpha}"))?;
    residual(w, t, q, alpha)
}

/// Polygamy residual of the `beta`-th power, `0 <= beta <= 1`; non-positive
/// on GW states.
pub fn tq_polygamy_residual(w: &PartyWeights, t: usize, q: f64, beta: f64) -> Result<f64> {
    require((0.0..=1.0).contains(&beta), || format!("need 0 <= beta <= 1, got {beta}"))?;
    residual(w, t, q, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::f_q;
    use approx::assert_abs_diff_eq;

    fn example2() -> PartyWeights {
        PartyWeights::new(vec![1.0 / 6.0, 1.0 / 6.0, 4.0 / 6.0]).unwrap()
    }

    #[test]
    fn example3_point() {
        let r = tq_monogamy_residual(&example2(), 0, 2.0, 2.0).unwrap();
        let f = |x: f64| f_q(x, 2.0).unwrap();
        let expect = f(5.0 / 9.0).powi(2) - f(1.0 / 9.0).powi(2) - f(4.0 / 9.0).powi(2);
        assert_abs_diff_eq!(r, expect, epsilon = 1e-15);
        // f_2(x) = x / 2
        assert_abs_diff_eq!(r, (25.0 - 1.0 - 16.0) / 324.0, epsilon = 1e-15);
        assert!(r > 0.0);
    }

    #[test]
    fn two_parties_have_zero_residual() {
        let w = PartyWeights::new(vec![0.3, 0.7]).unwrap();
        assert_abs_diff_eq!(tq_monogamy_residual(&w, 0, 3.2, 2.5).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(tq_polygamy_residual(&w, 1, 0.9, 0.5).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn polygamy_examples() {
        let r = tq_polygamy_residual(&example2(), 0, 2.0, 1.0).unwrap();
        assert_abs_diff_eq!(r, (5.0 - 1.0 - 4.0) / 18.0, epsilon = 1e-15);
        assert!(r <= 1e-15);
        let r0 = tq_polygamy_residual(&example2(), 0, 2.0, 0.0).unwrap();
        assert_eq!(r0, 1.0 - 2.0);
        let four = PartyWeights::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(tq_polygamy_residual(&four, 2, 3.0, 0.0).unwrap(), 1.0 - 3.0);
    }

    #[test]
    fn ranges() {
        assert!(tq_monogamy_residual(&example2(), 0, 2.0, 1.5).is_err());
        assert!(tq_polygamy_residual(&example2(), 0, 2.0, 1.5).is_err());
        assert!(tq_monogamy_residual(&example2(), 0, 2.5, 2.0).is_err());
    }
}
