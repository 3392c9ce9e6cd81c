//! Parameterized CoA monogamy bounds: the tripartite `alpha` and `beta`
//! families and their chain extensions to `N` parties.

use super::{check_ca, require, BoundFamily, BoundParams, BoundReport, HypothesisCheck, Orientation};
use crate::error::{Error, Result};

/// `(C_AB^2 + C_AC^2)^(e/2)`, the one-vs-rest CoA of a GW reduction to the power `e`.
fn gw_lhs(ab: f64, ac: f64, e: f64) -> f64 {
    (ab * ab + ac * ac).powf(e / 2.0)
}

fn hypothesis_error(family: BoundFamily, checks: Vec<HypothesisCheck>) -> Error {
    Error::Hypothesis {
        family: family.name().to_string(),
        checks,
    }
}

fn check_alpha_family(params: &BoundParams) -> Result<()> {
    let (a, g) = (params.alpha, params.gamma);
    require(g >= 2.0 && a >= g, || format!("need alpha >= gamma >= 2, got alpha={a}, gamma={g}"))
}

fn check_beta_family(params: &BoundParams) -> Result<()> {
    let (b, g) = (params.beta, params.gamma);
    require(g >= 2.0 && (0.0..=g / 2.0).contains(&b), || {
        format!("need gamma >= 2 and 0 <= beta <= gamma/2, got beta={b}, gamma={g}")
    })
}

fn check_at_least_one(name: &str, v: f64) -> Result<()> {
    require(v >= 1.0, || format!("need {name} >= 1, got {v}"))
}

fn check_p(p: f64) -> Result<()> {
    require((0.5..=1.0).contains(&p), || format!("need 1/2 <= p <= 1, got {p}"))
}

/// Tripartite bound for the `alpha`-th power of CoA.
///
/// Case 1 needs `C_AB^g >= l^d C_AC^g` and `C_A|BC^g >= C_AB^g + w C_AC^g`
/// and gives `C_A|BC^a >= C_AB^a + ((w + l^d)^(a/g) - l^(d a/g)) C_AC^a`.
/// Case 2 exchanges `B` and `C`. The first case that holds is used.
pub fn thm1_bound(ca_ab: f64, ca_ac: f64, params: &BoundParams) -> Result<BoundReport> {
    check_ca(&[ca_ab, ca_ac])?;
    check_alpha_family(params)?;
    let (omega, ell, delta) = (params.omega_at(0)?, params.ell_at(0)?, params.delta_at(0)?);
    check_at_least_one("omega", omega)?;
    check_at_least_one("l", ell)?;
    check_at_least_one("delta", delta)?;

    let g = params.gamma;
    let x = params.alpha / g;
    let big_l = ell.powf(delta);
    let whole = gw_lhs(ca_ab, ca_ac, g);
    let coef = (omega + big_l).powf(x) - big_l.powf(x);
    let lhs = gw_lhs(ca_ab, ca_ac, params.alpha);

    let cases = [
        (Orientation::Direct, ca_ab, ca_ac, "AB", "AC"),
        (Orientation::Mirrored, ca_ac, ca_ab, "AC", "AB"),
    ];
    let mut all = Vec::new();
    for (orientation, major, minor, mj, mn) in cases {
        let (mg, ng) = (major.powf(g), minor.powf(g));
        let checks = vec![
            HypothesisCheck::new(format!("{orientation}: C_{mj}^g >= l^d C_{mn}^g"), mg - big_l * ng),
            HypothesisCheck::new(
                format!("{orientation}: C_A|BC^g >= C_{mj}^g + w C_{mn}^g"),
                whole - mg - omega * ng,
            ),
        ];
        if checks.iter().all(|c| c.holds) {
            let rhs = major.powf(params.alpha) + coef * minor.powf(params.alpha);
            return Ok(BoundReport::new(BoundFamily::Thm1, lhs, rhs, checks, orientation));
        }
        all.extend(checks);
    }
    Err(hypothesis_error(BoundFamily::Thm1, all))
}

/// Tripartite bound for the `beta`-th power of CoA, `0 <= beta <= gamma/2`.
///
/// Case 1 needs `C_AB^g <= l C_AC^g` and `C_A|BC^g >= C_AB^g + w C_AC^g` and
/// gives `C_A|BC^b >= p^(b/g) C_AB^b + ((w + l)^(b/g) - (p l)^(b/g)) C_AC^b`.
/// Case 2 exchanges `B` and `C`.
pub fn thm3_bound(ca_ab: f64, ca_ac: f64, params: &BoundParams) -> Result<BoundReport> {
    check_ca(&[ca_ab, ca_ac])?;
    check_beta_family(params)?;
    check_p(params.p)?;
    let (omega, ell) = (params.omega_at(0)?, params.ell_at(0)?);
    check_at_least_one("omega", omega)?;
    require((0.0..=1.0).contains(&ell), || format!("need 0 <= l <= 1, got {ell}"))?;

    let g = params.gamma;
    let r = params.beta / g;
    let whole = gw_lhs(ca_ab, ca_ac, g);
    let lead = params.p.powf(r);
    let coef = (omega + ell).powf(r) - (params.p * ell).powf(r);
    let lhs = gw_lhs(ca_ab, ca_ac, params.beta);

    let cases = [
        (Orientation::Direct, ca_ab, ca_ac, "AB", "AC"),
        (Orientation::Mirrored, ca_ac, ca_ab, "AC", "AB"),
    ];
    let mut all = Vec::new();
    for (orientation, minor, major, mn, mj) in cases {
        let (ng, mg) = (minor.powf(g), major.powf(g));
        let checks = vec![
            HypothesisCheck::new(format!("{orientation}: C_{mn}^g <= l C_{mj}^g"), ell * mg - ng),
            HypothesisCheck::new(
                format!("{orientation}: C_A|BC^g >= C_{mn}^g + w C_{mj}^g"),
                whole - ng - omega * mg,
            ),
        ];
        if checks.iter().all(|c| c.holds) {
            let rhs = lead * minor.powf(params.beta) + coef * major.powf(params.beta);
            return Ok(BoundReport::new(BoundFamily::Thm3, lhs, rhs, checks, orientation));
        }
        all.extend(checks);
    }
    Err(hypothesis_error(BoundFamily::Thm3, all))
}

/// Validates chain inputs and the split index; returns `N`.
pub(crate) fn check_chain(pair: &[f64], tail: &[f64], z: usize) -> Result<usize> {
    if pair.len() != tail.len() {
        return Err(Error::shape(format!(
            "chain has {} pair values but {} tail values",
            pair.len(),
            tail.len()
        )));
    }
    let n = pair.len() + 1;
    require(n >= 4, || format!("chain bounds need N >= 4 parties, got {n}"))?;
    require(z >= 1 && z + 3 <= n, || format!("need 1 <= z <= N-3 = {}, got z={z}", n - 3))?;
    check_ca(pair)?;
    check_ca(tail)?;
    Ok(n)
}

/// Orientation of the per-index ratio conditions of a chain.
#[derive(Clone, Copy)]
pub(crate) enum Ratio {
    /// `C_i^e >= L_i T_(i+1)^e` for `i <= z`, `T_(j+1)^e >= L_j C_j^e` beyond
    Dominant,
    /// `C_i^e <= L_i T_(i+1)^e` for `i <= z`, `T_(j+1)^e <= L_j C_j^e` beyond
    Dominated,
}

/// Margins of the ratio conditions and, when `omega` is given, of the
/// splitting conditions `T_i^e >= C_i^e + w_i T_(i+1)^e` (`i <= z`) and
/// `T_j^e >= w_j C_j^e + T_(j+1)^e` (`j > z`). Labels use 1-based indices.
pub(crate) fn chain_checks(
    pair: &[f64],
    tail: &[f64],
    z: usize,
    e: f64,
    ratio: Ratio,
    big_l: &dyn Fn(usize) -> Result<f64>,
    omega: Option<&dyn Fn(usize) -> Result<f64>>,
) -> Result<Vec<HypothesisCheck>> {
    let n = pair.len() + 1;
    let mut out = Vec::new();
    for r in 0..n - 2 {
        let c = pair[r].powf(e);
        let t_here = tail[r].powf(e);
        let t_next = tail[r + 1].powf(e);
        let l = big_l(r)?;
        let idx = r + 1;
        let front = r < z;
        let (label, margin) = match (front, ratio) {
            (true, Ratio::Dominant) => (format!("i={idx}: C_i^e >= L_i T_i+1^e"), c - l * t_next),
            (true, Ratio::Dominated) => (format!("i={idx}: C_i^e <= L_i T_i+1^e"), l * t_next - c),
            (false, Ratio::Dominant) => (format!("j={idx}: T_j+1^e >= L_j C_j^e"), t_next - l * c),
            (false, Ratio::Dominated) => (format!("j={idx}: T_j+1^e <= L_j C_j^e"), l * c - t_next),
        };
        out.push(HypothesisCheck::new(label, margin));
        if let Some(omega) = omega {
            let w = omega(r)?;
            let check = if front {
                HypothesisCheck::new(
                    format!("i={idx}: T_i^e >= C_i^e + w_i T_i+1^e"),
                    t_here - c - w * t_next,
                )
            } else {
                HypothesisCheck::new(
                    format!("j={idx}: T_j^e >= w_j C_j^e + T_j+1^e"),
                    t_here - w * c - t_next,
                )
            };
            out.push(check);
        }
    }
    Ok(out)
}

/// Generic chain right-hand side over `powers[k] = C_(k+1)^e`:
///
/// `sum_{i<z} prod_{s<i} coef(s) lead(i) P_i + prod_{s<z} coef(s) (sum_{z<=j<N-2} coef(j) mid(j) P_j + last P_(N-2))`
/// with 0-based indices.
pub(crate) fn chain_rhs(
    powers: &[f64],
    z: usize,
    coef: &dyn Fn(usize) -> f64,
    lead: &dyn Fn(usize) -> f64,
    mid: &dyn Fn(usize) -> f64,
    last: f64,
) -> f64 {
    let n = powers.len() + 1;
    let mut prod = 1.0;
    let mut rhs = 0.0;
    for i in 0..z {
        rhs += prod * lead(i) * powers[i];
        prod *= coef(i);
    }
    for j in z..n - 2 {
        rhs += prod * coef(j) * mid(j) * powers[j];
    }
    rhs + prod * last * powers[n - 2]
}

/// `alpha`-family chain with `Omega_r = (w_r + l_r^d_r)^(a/g) - l_r^(d_r a/g)`.
/// With `use_delta = false` every `d_r` is taken as 1. With `strict` a failed
/// hypothesis is an error; otherwise it is only recorded.
pub(crate) fn alpha_chain(
    family: BoundFamily,
    pair: &[f64],
    tail: &[f64],
    params: &BoundParams,
    use_delta: bool,
    strict: bool,
) -> Result<BoundReport> {
    let n = check_chain(pair, tail, params.z)?;
    check_alpha_family(params)?;
    let mut big_l = Vec::with_capacity(n - 2);
    let mut omegas = Vec::with_capacity(n - 2);
    for r in 0..n - 2 {
        let (w, l) = (params.omega_at(r)?, params.ell_at(r)?);
        let d = if use_delta { params.delta_at(r)? } else { 1.0 };
        check_at_least_one("omega", w)?;
        check_at_least_one("l", l)?;
        check_at_least_one("delta", d)?;
        big_l.push(l.powf(d));
        omegas.push(w);
    }
    let g = params.gamma;
    let checks = chain_checks(
        pair,
        tail,
        params.z,
        g,
        Ratio::Dominant,
        &|r| Ok(big_l[r]),
        Some(&|r| Ok(omegas[r])),
    )?;
    if strict && !checks.iter().all(|c| c.holds) {
        return Err(hypothesis_error(family, checks));
    }
    let x = params.alpha / g;
    let big_omega: Vec<f64> = (0..n - 2)
        .map(|r| (omegas[r] + big_l[r]).powf(x) - big_l[r].powf(x))
        .collect();
    let powers: Vec<f64> = pair.iter().map(|c| c.powf(params.alpha)).collect();
    let rhs = chain_rhs(&powers, params.z, &|r| big_omega[r], &|_| 1.0, &|_| 1.0, 1.0);
    let lhs = tail[0].powf(params.alpha);
    Ok(BoundReport::new(family, lhs, rhs, checks, Orientation::Chain))
}

/// `beta`-family chain with `Gamma_r = (w_r + L_r)^(b/g) - L_r^(b/g)`,
/// `L_r = l_r^d_r`, and the `p` weights
/// `p^(b/g) C_1^b`, `p^((i-1) b/g)` for `2 <= i <= z`, `p^((j-z-2) b/g)` for
/// `z+2 <= j <= N-2`, and `p^((N-z-2) b/g)` on `C_(N-1)^b`.
pub(crate) fn beta_chain(
    family: BoundFamily,
    pair: &[f64],
    tail: &[f64],
    params: &BoundParams,
    use_delta: bool,
    use_p: bool,
    min_ell: f64,
    strict: bool,
) -> Result<BoundReport> {
    let n = check_chain(pair, tail, params.z)?;
    check_beta_family(params)?;
    let p = if use_p { params.p } else { 1.0 };
    check_p(p)?;
    let mut big_l = Vec::with_capacity(n - 2);
    let mut omegas = Vec::with_capacity(n - 2);
    for r in 0..n - 2 {
        let (w, l) = (params.omega_at(r)?, params.ell_at(r)?);
        let d = if use_delta { params.delta_at(r)? } else { 1.0 };
        check_at_least_one("omega", w)?;
        require(l >= min_ell, || format!("need l >= {min_ell}, got {l}"))?;
        check_at_least_one("delta", d)?;
        big_l.push(l.powf(d));
        omegas.push(w);
    }
    let g = params.gamma;
    let z = params.z;
    let checks = chain_checks(
        pair,
        tail,
        z,
        g,
        Ratio::Dominated,
        &|r| Ok(big_l[r]),
        Some(&|r| Ok(omegas[r])),
    )?;
    if strict && !checks.iter().all(|c| c.holds) {
        return Err(hypothesis_error(family, checks));
    }
    let r = params.beta / g;
    let big_gamma: Vec<f64> = (0..n - 2)
        .map(|k| (omegas[k] + big_l[k]).powf(r) - big_l[k].powf(r))
        .collect();
    let pw = |e: usize| p.powf(e as f64 * r);
    let powers: Vec<f64> = pair.iter().map(|c| c.powf(params.beta)).collect();
    let rhs = chain_rhs(
        &powers,
        z,
        &|k| big_gamma[k],
        &|i| if i == 0 { pw(1) } else { pw(i) },
        &|j| if j == z { 1.0 } else { pw(j - z - 1) },
        pw(n - z - 2),
    );
    let lhs = tail[0].powf(params.beta);
    Ok(BoundReport::new(family, lhs, rhs, checks, Orientation::Chain))
}

/// `N`-party bound for the `alpha`-th power of CoA.
///
/// `pair_cas[k] = C_a(A B_(k+1))`, `tail_cas[k] = C_a(A | B_(k+1) ... B_(N-1))`.
/// Requires `N >= 4`, `1 <= z <= N-3`, and for `i <= z`:
/// `C_i^g >= l_i^d_i T_(i+1)^g` and `T_i^g >= C_i^g + w_i T_(i+1)^g`;
/// for `j > z`: `T_(j+1)^g >= l_j^d_j C_j^g` and `T_j^g >= w_j C_j^g + T_(j+1)^g`.
pub fn thm2_bound(pair_cas: &[f64], tail_cas: &[f64], params: &BoundParams) -> Result<BoundReport> {
    alpha_chain(BoundFamily::Thm2, pair_cas, tail_cas, params, true, true)
}

/// `N`-party bound for the `beta`-th power of CoA with `1/2 <= p <= 1`.
///
/// Requires `l_r, d_r, w_r >= 1`, and for `i <= z`:
/// `C_i^g <= l_i^d_i T_(i+1)^g` and `T_i^g >= C_i^g + w_i T_(i+1)^g`;
/// for `j > z`: `T_(j+1)^g <= l_j^d_j C_j^g` and `T_j^g >= w_j C_j^g + T_(j+1)^g`.
pub fn thm4_bound(pair_cas: &[f64], tail_cas: &[f64], params: &BoundParams) -> Result<BoundReport> {
    beta_chain(BoundFamily::Thm4, pair_cas, tail_cas, params, true, true, 1.0, true)
}
