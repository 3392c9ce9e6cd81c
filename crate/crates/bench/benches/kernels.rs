use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gw_monogamy::figures::{figure_table, Figure, FigureOverrides};
use gw_monogamy::fuzz::{fuzz, FuzzTarget};
use gw_monogamy::measures::{coa_two_qubit, concurrence_wootters};
use gw_monogamy::oracle::{coa_sampling_max, SamplingConfig};
use gw_monogamy::states::{build_gw_vector, reduce_density};
use gw_monogamy_bench::{pair_density, w_state, w_vector};

fn states(c: &mut Criterion) {
    let spec = w_state(12);
    c.bench_function("build_gw_vector n=12", |b| b.iter(|| build_gw_vector(black_box(&spec)).unwrap()));
    let v = w_vector(12);
    c.bench_function("reduce_density n=12 keep 2", |b| {
        b.iter(|| reduce_density(black_box(&v), &[0, 5]).unwrap())
    });
}

fn measures(c: &mut Criterion) {
    let rho = pair_density(6);
    c.bench_function("wootters concurrence", |b| b.iter(|| concurrence_wootters(black_box(&rho)).unwrap()));
    c.bench_function("two-qubit CoA", |b| b.iter(|| coa_two_qubit(black_box(&rho)).unwrap()));
    let cfg = SamplingConfig::default().with_trials(50);
    c.bench_function("sampled CoA 50 trials", |b| {
        b.iter(|| coa_sampling_max(black_box(&rho), &[2, 2], &[0], &cfg).unwrap())
    });
}

fn tables(c: &mut Criterion) {
    let over = FigureOverrides::default();
    for which in [Figure::Fig1, Figure::Fig2, Figure::Fig3, Figure::Fig5] {
        c.bench_function(&format!("{which} table"), |b| b.iter(|| figure_table(which, black_box(&over)).unwrap()));
    }
    c.bench_function("thm2 fuzz 1000", |b| b.iter(|| fuzz(FuzzTarget::Thm2, 1000, black_box(3)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = states, measures, tables
}
criterion_main!(benches);
