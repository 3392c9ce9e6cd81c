use gw_monogamy::bounds::{
    lemma1_check, lemma2_check, prior_bounds, thm1_bound, thm3_bound, tq_monogamy_residual, tq_polygamy_residual,
    BoundFamily, BoundParams, PriorInputs,
};
use gw_monogamy::linalg::{hermitian_eig, ComplexMatrix};
use gw_monogamy::measures::{
    coa_one_vs_rest_gw, coa_pair_gw, coa_two_qubit, concurrence_pure, concurrence_wootters, f_q, q_intervals,
    tsallis_pure,
};
use gw_monogamy::oracle::{
    coa_sampling_max, concurrence_sampling_min, random_gw_spec, random_partition, SamplingConfig,
};
use gw_monogamy::states::{build_gw_vector, party_weights, reduce_density};
use gw_monogamy::{Bipartition, Complex64, Partition, StateVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn valid_q() -> impl Strategy<Value = f64> {
    let [(a, b), (c, d)] = q_intervals();
    prop_oneof![a..=b, c..=d].prop_filter("q = 1 is excluded", |q| (q - 1.0).abs() > 1e-6)
}

/// Random two-qubit density matrix of rank at most four.
fn random_two_qubit(seed: u64) -> ComplexMatrix {
    let mut r = rng(seed);
    let rank = r.random_range(1..=4);
    let mut rho = ComplexMatrix::zeros(4, 4);
    for _ in 0..rank {
        let v: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
            .collect();
        rho = rho.add(&ComplexMatrix::outer(&v)).unwrap();
    }
    let tr = rho.trace().re;
    rho.scale(Complex64::new(1.0 / tr, 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduced_pairs_meet_the_closed_form(seed: u64, n in 2usize..=6) {
        let mut r = rng(seed);
        let spec = random_gw_spec(&mut r, 2, n).unwrap();
        let w = party_weights(&spec, &Partition::singletons(n)).unwrap();
        let vec = build_gw_vector(&spec).unwrap();
        let (t, l) = (r.random_range(0..n - 1), n - 1);
        let rho = reduce_density(&vec, &[t, l]).unwrap();
        let closed = coa_pair_gw(&w, t, l).unwrap().value;
        prop_assert!((concurrence_wootters(&rho).unwrap().value - closed).abs() < 1e-8);
        prop_assert!((coa_two_qubit(&rho).unwrap().value - closed).abs() < 1e-8);
    }

    #[test]
    fn pure_cut_is_additive_over_pairs(seed: u64, n in 2usize..=6, d in 2usize..=3) {
        let mut r = rng(seed);
        let n = if d == 3 { n.min(4) } else { n };
        let spec = random_gw_spec(&mut r, d, n).unwrap();
        let part = random_partition(&mut r, n, false).unwrap();
        let w = party_weights(&spec, &part).unwrap();
        let vec = build_gw_vector(&spec).unwrap();
        let t = r.random_range(0..part.len());
        let cut = Bipartition::against_rest(part.parties()[t].clone(), n).unwrap();
        let c = concurrence_pure(&vec, &cut).unwrap().value;
        let pairs: f64 = (0..part.len())
            .filter(|&l| l != t)
            .map(|l| coa_pair_gw(&w, t, l).unwrap().value.powi(2))
            .sum();
        prop_assert!((c * c - pairs).abs() < 1e-8);
        prop_assert!((c - coa_one_vs_rest_gw(&w, t).unwrap().value).abs() < 1e-8);
        let back = concurrence_pure(&vec, &cut.swapped()).unwrap().value;
        prop_assert!((c - back).abs() < 1e-12);
    }

    #[test]
    fn f_q_is_increasing(q in valid_q(), theta in 0.0f64..=0.9999) {
        let a = f_q(theta, q).unwrap();
        let b = f_q(theta + 1e-4, q).unwrap();
        prop_assert!(b > a);
    }

    #[test]
    fn tsallis_of_schmidt_rank_two(q in valid_q(), x in 0.0f64..=1.0, phase in 0.0f64..6.3) {
        let (a, b) = (x.sqrt(), (1.0 - x).sqrt());
        let amps = vec![
            Complex64::new(a, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(b, phase),
        ];
        let v = StateVector::new(vec![2, 2], amps).unwrap();
        let cut = Bipartition::new(vec![0], vec![1]).unwrap();
        let c = concurrence_pure(&v, &cut).unwrap().value;
        let t = tsallis_pure(&v, &cut, q).unwrap().value;
        prop_assert!((t - f_q(c * c, q).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn lemma_margins_are_non_negative(
        tau in 1.0f64..3.0,
        delta in 1.0f64..2.5,
        extra in 0.0f64..5.0,
        z in 1.0f64..4.0,
        x in 0.0f64..=1.0,
        y in 0.0f64..=1.0,
        p in 0.5f64..=1.0,
        r in 0.0f64..=0.5,
    ) {
        prop_assert!(lemma1_check(tau.powf(delta) + extra, tau, delta, z).unwrap() >= -1e-12);
        let (x, y) = if x <= y { (x, y) } else { (y, x) };
        prop_assert!(lemma2_check(x, y, p, r).unwrap() >= -1e-12);
    }

    #[test]
    fn alpha_family_dominance(seed: u64, alpha in 2.0f64..6.0, wx in 0.0f64..=1.0, lx in 0.0f64..=1.0, delta in 1.0f64..2.0) {
        let mut r = rng(seed);
        let spec = random_gw_spec(&mut r, 2, 3).unwrap();
        let w = party_weights(&spec, &Partition::singletons(3)).unwrap();
        let (ab, ac) = (coa_pair_gw(&w, 0, 1).unwrap().value, coa_pair_gw(&w, 0, 2).unwrap().value);
        let (ab, ac) = if ab >= ac { (ab, ac) } else { (ac, ab) };
        // stay inside the admissible region so that every form is defined
        let l_hi = (ab / ac).powi(2).powf(1.0 / delta);
        let w_hi = (ab * ab + ac * ac - ab * ab) / (ac * ac);
        let ell = 1.0 + lx * (l_hi - 1.0).max(0.0);
        let omega = 1.0 + wx * (w_hi - 1.0).max(0.0);
        prop_assume!(ell.powf(delta) * ac * ac <= ab * ab);
        let params = BoundParams::tripartite(omega, ell, delta).with_alpha(alpha);
        let ours = thm1_bound(ab, ac, &params).unwrap();
        let inputs = PriorInputs::Tripartite { ca_ab: ab, ca_ac: ac };
        let mut last = ours.rhs;
        prop_assert!(ours.residual >= -1e-10);
        for f in [BoundFamily::XhlfA, BoundFamily::JzxB, BoundFamily::JzxA, BoundFamily::Zxn] {
            let rhs = prior_bounds(f, &inputs, &params).unwrap().rhs;
            prop_assert!(last >= rhs - 1e-12, "{f} rhs {rhs} above {last}");
            last = rhs;
        }
    }

    #[test]
    fn beta_family_dominance(seed: u64, gamma in 2.0f64..4.0, bx in 0.0f64..=1.0, p in 0.5f64..=1.0, lx in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let spec = random_gw_spec(&mut r, 2, 3).unwrap();
        let w = party_weights(&spec, &Partition::singletons(3)).unwrap();
        let (ab, ac) = (coa_pair_gw(&w, 0, 1).unwrap().value, coa_pair_gw(&w, 0, 2).unwrap().value);
        let (ab, ac) = if ab <= ac { (ab, ac) } else { (ac, ab) };
        let l_lo = (ab / ac).powf(gamma);
        let ell = (l_lo + lx * (1.0 - l_lo)).clamp(l_lo, 1.0);
        prop_assume!(ell > 0.0);
        let beta = bx * gamma / 2.0;
        let params = BoundParams::tripartite(1.0, ell, 1.0)
            .with_gamma(gamma)
            .with_beta(beta)
            .with_p(p)
            .with_k(1.0 / ell);
        prop_assume!(params.k >= 1.0);
        let ours = thm3_bound(ab, ac, &params).unwrap();
        prop_assert!(ours.residual >= -1e-10);
        let inputs = PriorInputs::Tripartite { ca_ab: ab, ca_ac: ac };
        let mut last = ours.rhs;
        for f in [BoundFamily::XhlfB, BoundFamily::Lyy, BoundFamily::Sx] {
            let rhs = prior_bounds(f, &inputs, &params).unwrap().rhs;
            prop_assert!(last >= rhs - 1e-12, "{f} rhs {rhs} above {last}");
            last = rhs;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sampling_brackets_closed_forms(seed: u64) {
        let rho = random_two_qubit(seed);
        let cfg = SamplingConfig::default().with_trials(40).with_seed(seed);
        let lo = concurrence_sampling_min(&rho, &[2, 2], &[0], &cfg).unwrap().value;
        let hi = coa_sampling_max(&rho, &[2, 2], &[0], &cfg).unwrap().value;
        prop_assert!(lo >= concurrence_wootters(&rho).unwrap().value - 1e-9);
        prop_assert!(hi <= coa_two_qubit(&rho).unwrap().value + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn sampling_is_deterministic_and_monotone(seed: u64, trials in 1usize..60) {
        let rho = random_two_qubit(seed);
        let cfg = SamplingConfig::default().with_trials(trials).with_seed(seed);
        let a = coa_sampling_max(&rho, &[2, 2], &[0], &cfg).unwrap().value;
        let b = coa_sampling_max(&rho, &[2, 2], &[0], &cfg).unwrap().value;
        prop_assert_eq!(a.to_bits(), b.to_bits());
        let more = coa_sampling_max(&rho, &[2, 2], &[0], &cfg.with_trials(trials + 20)).unwrap().value;
        prop_assert!(more >= a);
    }
}

/// The two-qubit assistance formula is attained: sampling gets within the
/// bracket tolerance of it on random states of rank at most four.
#[test]
fn two_qubit_coa_is_attained() {
    let cfg = SamplingConfig::default();
    for seed in 0..50 {
        let rho = random_two_qubit(1000 + seed);
        let hi = coa_sampling_max(&rho, &[2, 2], &[0], &cfg).unwrap().value;
        let closed = coa_two_qubit(&rho).unwrap().value;
        assert!(hi <= closed + 1e-9 && hi >= closed - 5e-3, "seed {seed}: {hi} vs {closed}");
    }
}

#[test]
fn tsallis_residual_signs_on_random_states() {
    let mut r = rng(99);
    for (lo, hi) in q_intervals() {
        for _ in 0..500 {
            let n = r.random_range(2..=6);
            let d = r.random_range(2..=3);
            let spec = random_gw_spec(&mut r, d, n).unwrap();
            let part = random_partition(&mut r, n, true).unwrap();
            let w = party_weights(&spec, &part).unwrap();
            let t = r.random_range(0..part.len());
            let q = r.random_range(lo..=hi);
            if (q - 1.0).abs() < 1e-6 {
                continue;
            }
            let mono = tq_monogamy_residual(&w, t, q, r.random_range(2.0..=5.0)).unwrap();
            let poly = tq_polygamy_residual(&w, t, q, r.random_range(0.0..=1.0)).unwrap();
            assert!(mono >= -1e-10, "q {q}: {mono}");
            assert!(poly <= 1e-10, "q {q}: {poly}");
        }
    }
}

#[test]
fn reduced_spectra_are_non_negative() {
    let mut r = rng(5);
    for _ in 0..50 {
        let spec = random_gw_spec(&mut r, 3, 3).unwrap();
        let vec = build_gw_vector(&spec).unwrap();
        let rho = reduce_density(&vec, &[0, 2]).unwrap();
        let eig = hermitian_eig(&rho).unwrap();
        assert!(eig.values.iter().all(|&v| v > -1e-12));
        assert!((eig.values.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
