use num_complex::Complex64 as C64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::states::{GwSpec, Partition};

/// Normalized GW spec with complex Gaussian coefficients on every site and
/// level. Sites are never exactly zero with probability one.
pub fn random_gw_spec<R: Rng + ?Sized>(rng: &mut R, d: usize, n: usize) -> Result<GwSpec> {
    if d < 2 || n < 2 {
        // the checked constructor reports which bound is violated
        return GwSpec::new(d, n, &[]);
    }
    let mut coeffs: Vec<C64> = (0..n * (d - 1))
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im)
        })
        .collect();
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    coeffs.iter_mut().for_each(|c| *c /= norm);
    let spec = GwSpec::from_table(d, n, coeffs);
    spec.validate()?;
    Ok(spec)
}

/// Random partition of `n` sites into at least two parties. With
/// `allow_traced`, some sites may be left out of every party.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, n: usize, allow_traced: bool) -> Result<Partition> {
    if n < 2 {
        return Partition::new(n, vec![]);
    }
    let kept = if allow_traced { rng.random_range(2..=n) } else { n };
    let parties = rng.random_range(2..=kept);
    random_partition_into(rng, n, parties, n - kept)
}

/// Random partition of `n` sites into exactly `parties` parties with
/// `traced` sites left out.
pub fn random_partition_into<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    parties: usize,
    traced: usize,
) -> Result<Partition> {
    let kept = n.saturating_sub(traced);
    if parties == 0 || parties > kept {
        return Err(Error::domain(format!(
            "cannot split {kept} retained sites into {parties} parties"
        )));
    }
    let mut sites: Vec<usize> = (0..n).collect();
    sites.shuffle(rng);
    // parties - 1 distinct cut points in 1..kept
    let mut cuts: Vec<usize> = (1..kept).collect();
    cuts.shuffle(rng);
    let mut cuts = cuts[..parties - 1].to_vec();
    cuts.sort_unstable();
    let mut groups = Vec::with_capacity(parties);
    let mut start = 0;
    for &c in cuts.iter().chain(std::iter::once(&kept)) {
        groups.push(sites[start..c].to_vec());
        start = c;
    }
    Partition::new(n, groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn specs_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (d, n) in [(2, 2), (2, 6), (3, 4), (4, 3)] {
            let s = random_gw_spec(&mut rng, d, n).unwrap();
            assert_eq!((s.d(), s.n()), (d, n));
            assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        }
        assert!(random_gw_spec(&mut rng, 1, 3).is_err());
        assert!(random_gw_spec(&mut rng, 2, 1).is_err());
    }

    #[test]
    fn partitions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let n = rng.random_range(2..7);
            let p = random_partition(&mut rng, n, false).unwrap();
            assert!(p.len() >= 2);
            assert!(p.traced().is_empty());
            let p = random_partition(&mut rng, n, true).unwrap();
            assert!(p.len() >= 2);
            assert_eq!(p.retained().len() + p.traced().len(), n);
        }
        assert!(random_partition(&mut rng, 1, false).is_err());
        let p = random_partition_into(&mut rng, 6, 4, 1).unwrap();
        assert_eq!((p.len(), p.traced().len()), (4, 1));
        assert!(random_partition_into(&mut rng, 4, 4, 1).is_err());
    }
}
