use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use weidual::algebra::{BilinearForm, Ring, SubspaceLattice};
use weidual::checks::{fuzz, FuzzConfig};
use weidual::demipolymatroid::SubspaceFamily;
use weidual::error::Caps;
use weidual::galois::{central_theorem_report, dual_connection};
use weidual::generate::random_step_bounded_pair;
use weidual::hamming::{ghw_table, wei_forney_report, GhwMethod, LinearCode};
use weidual::metric_codes::{theorem73_report, theorem74_report, ChainRingCode, CodeFlagFamily};
use weidual::poset::Poset;
use weidual::rng::SplitMix64;

fn hamming74() -> LinearCode {
    LinearCode::new(
        Ring::field(2, 1).unwrap(),
        7,
        &[
            vec![1, 0, 0, 0, 0, 1, 1],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 1, 1, 1],
        ],
    )
    .unwrap()
}

fn bench_weight_tables(c: &mut Criterion) {
    let caps = Caps::default();
    let code = hamming74();
    c.bench_function("ghw_subset_hamming74", |b| {
        b.iter(|| ghw_table(black_box(&code), GhwMethod::Subset, &caps).unwrap())
    });
    c.bench_function("ghw_subcode_hamming74", |b| {
        b.iter(|| ghw_table(black_box(&code), GhwMethod::Subcode, &caps).unwrap())
    });
    c.bench_function("wei_forney_hamming74", |b| {
        b.iter(|| wei_forney_report(black_box(&code), &caps).unwrap())
    });
}

fn bench_central_equivalence(c: &mut Criterion) {
    let mut rng = SplitMix64::new(1);
    let pair = random_step_bounded_pair(&mut rng, 9, 6, 2);
    let dual = dual_connection(&pair, 2).unwrap();
    c.bench_function("central_equivalence_w2_m6", |b| {
        b.iter(|| central_theorem_report(black_box(&pair), black_box(&dual), 2).unwrap())
    });
}

fn bench_matrix_metric(c: &mut Criterion) {
    let caps = Caps::default();
    let ring = Ring::field(2, 1).unwrap();
    let code = weidual::algebra::Subspace::from_rows(ring.clone(), 4, &[vec![1, 0, 0, 1]]).unwrap();
    let flags = CodeFlagFamily::new(ring.clone(), 2, 2, vec![vec![code]]).unwrap();
    let lattice = SubspaceLattice::new(ring.clone(), 2, &caps).unwrap();
    let fam = SubspaceFamily::full_lattice(&lattice);
    let form = BilinearForm::standard(ring, 2);
    c.bench_function("matrix_metric_duality_2x2", |b| {
        b.iter(|| theorem73_report(black_box(&flags), &fam, &form, &caps).unwrap())
    });
}

fn bench_chain_ring(c: &mut Criterion) {
    let caps = Caps::default();
    let ring = Ring::chain(2, 2).unwrap();
    let code = ChainRingCode::new(ring, 3, &[vec![2, 2, 0], vec![0, 2, 2]]).unwrap();
    let poset = Poset::chain(3);
    c.bench_function("closure_duality_z4_len3", |b| {
        b.iter(|| theorem74_report(black_box(&code), &poset, &caps).unwrap())
    });
}

fn bench_fuzz_suite(c: &mut Criterion) {
    let cfg = FuzzConfig {
        codes: 10,
        pairs: 50,
        bridges: 10,
        demimatroids: 10,
        polymatroids: 5,
        flags: 3,
        z4_len: 1,
        ..FuzzConfig::default()
    };
    c.bench_function("fuzz_small_suite", |b| b.iter(|| fuzz(black_box(&cfg)).unwrap()));
}

criterion_group!(
    benches,
    bench_weight_tables,
    bench_central_equivalence,
    bench_matrix_metric,
    bench_chain_ring,
    bench_fuzz_suite
);
criterion_main!(benches);
