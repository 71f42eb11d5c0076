use brauer_core::certify::input::curve_from_rows;
use brauer_core::certify::setup::{elimination_resultant, example_forms, separability_scan, test_primes, EXTRA_TEST_PRIMES};
use brauer_core::certify::{indec, input::IndecInput, noncyclic, RunOptions};
use brauer_core::curves::plane::certify_smooth_with_budget;
use brauer_core::ss_lift::ss_verify;
use brauer_core::tate::{certify_all, tate_coefficients, BrauerTorsion, TateFieldDesc};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn resultant(c: &mut Criterion) {
    let (f1, f2) = example_forms();
    c.bench_function("elimination_resultant", |b| b.iter(|| elimination_resultant(black_box(&f1), black_box(&f2)).unwrap()));
    let res = elimination_resultant(&f1, &f2).unwrap();
    let primes = test_primes(1000, &EXTRA_TEST_PRIMES);
    c.bench_function("separability_scan_1000", |b| b.iter(|| separability_scan(black_box(&res), &primes).unwrap()));
}

fn curves(c: &mut Criterion) {
    let input = noncyclic::example_input(61);
    let c1 = curve_from_rows(61, &input.f1).unwrap();
    c.bench_function("smoothness_p61", |b| b.iter(|| certify_smooth_with_budget(black_box(&c1), u128::MAX).unwrap()));
    c.bench_function("noncyclic_p19", |b| b.iter(|| noncyclic::certify(&noncyclic::example_input(19), &RunOptions::default())));
    let f3 = IndecInput { p: 3, cubic: vec![[0, 2, 1, 1], [0, 1, 2, 1], [3, 0, 0, -1], [1, 0, 2, 1]], origin: Some([0, 1, 0]), m_max: 6 };
    c.bench_function("indec_p3", |b| b.iter(|| indec::certify(black_box(&f3), &RunOptions::default())));
}

fn lifting(c: &mut Criterion) {
    c.bench_function("ss_verify_p3", |b| b.iter(|| ss_verify(black_box(3), None, false).unwrap()));
}

fn tate(c: &mut Criterion) {
    c.bench_function("tate_coefficients_50", |b| b.iter(|| tate_coefficients(black_box(50)).unwrap()));
    let tor = BrauerTorsion::new(TateFieldDesc::new(5, 1, true).unwrap(), 125).unwrap();
    c.bench_function("certify_all_m125", |b| b.iter(|| certify_all(black_box(&tor), 4, u128::MAX).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = resultant, curves, lifting, tate
}
criterion_main!(benches);
