//! Criterion benchmarks for the hot paths behind the acceptance run.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qell::charts::{d1_matrix, smith_leading_terms};
use qell::chromatic::{beta_table, displayed_congruences, BetaFamily};
use qell::level_maps::composite_identity_check;
use qell::weierstrass::{default_tate_parameters, order_five_certificate, tate_round_trip};

fn curves(c: &mut Criterion) {
    let b = default_tate_parameters();
    c.bench_function("tate_round_trip/10x10", |bench| bench.iter(|| tate_round_trip(black_box(7), &b, 10).unwrap()));
    c.bench_function("order_five_certificate", |bench| bench.iter(|| order_five_certificate().unwrap()));
}

fn level_maps(c: &mut Criterion) {
    c.bench_function("composite_identities/ell=5", |bench| bench.iter(|| composite_identity_check(black_box(5)).unwrap()));
}

fn charts(c: &mut Criterion) {
    for (ell, w) in [(3, 12), (5, 12)] {
        let m = d1_matrix(ell, w).unwrap();
        c.bench_function(&format!("d1_matrix/ell={ell}/w={w}"), |bench| bench.iter(|| d1_matrix(ell, black_box(w)).unwrap()));
        c.bench_function(&format!("smith_leading_terms/ell={ell}/w={w}"), |bench| bench.iter(|| smith_leading_terms(black_box(&m))));
    }
}

fn chromatic(c: &mut Criterion) {
    c.bench_function("displayed_congruences/m=1/n<=2/k<=3", |bench| {
        bench.iter(|| displayed_congruences(black_box(&[1]), 2, 3).unwrap())
    });
    c.bench_function("beta_table/Q3/i<=64", |bench| bench.iter(|| beta_table(BetaFamily::Q3, black_box(64), 256, 8).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = curves, level_maps, charts, chromatic
}
criterion_main!(benches);
