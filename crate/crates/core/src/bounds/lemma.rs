use super::require;
use crate::error::Result;

/// `(1+theta)^z - theta^z - [(1+tau^delta)^z - tau^(delta z)]`, non-negative
/// for `tau, delta, z >= 1` and `theta >= tau^delta`.
pub fn lemma1_check(theta: f64, tau: f64, delta: f64, z: f64) -> Result<f64> {
    require(tau >= 1.0 && delta >= 1.0 && z >= 1.0, || {
        format!("need tau >= 1, delta >= 1, z >= 1 (got tau={tau}, delta={delta}, z={z})")
    })?;
    let t = tau.powf(delta);
    require(theta.is_finite() && theta >= t, || {
        format!("need theta >= tau^delta = {t}, got {theta}")
    })?;
    let g = |x: f64| (1.0 + x).powf(z) - x.powf(z);
    Ok(g(theta) - g(t))
}

/// `(1+x)^r - (p x)^r - [(1+y)^r - (p y)^r]`, non-negative for
/// `1/2 <= p <= 1`, `0 <= r <= 1/2` and `0 <= x <= y <= 1`.
pub fn lemma2_check(x: f64, y: f64, p: f64, r: f64) -> Result<f64> {
    require((0.5..=1.0).contains(&p), || format!("need 1/2 <= p <= 1, got {p}"))?;
    require((0.0..=0.5).contains(&r), || format!("need 0 <= r <= 1/2, got {r}"))?;
    require(0.0 <= x && x <= y && y <= 1.0, || {
        format!("need 0 <= x <= y <= 1, got x={x}, y={y}")
    })?;
    let u = |v: f64| (1.0 + v).powf(r) - (p * v).powf(r);
    Ok(u(x) - u(y))
}
