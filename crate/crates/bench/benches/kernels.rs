//! Timings for the numerical kernels: the Hermitian eigensolver across the
//! supported sizes, the three approximation maps, the two-qubit concurrence,
//! and the end-to-end report.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use spa_detect::bipartite::TOL_HERM;
use spa_detect::{
    eigvalsh, full_report, q_star, spa_pt_generic, spa_pt_qutrit_qubit, spa_pt_two_qubit,
    wootters_concurrence, QutritQubitSpaParams, ReportConfig, SpaSelection, WitnessSelection, C64,
};
use spa_detect_bench::{qutrit_qubit_state, seeded_state, two_qubit_state};

fn bench_eigenvalues(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian-eigenvalues");
    for (d1, d2) in [(2usize, 2usize), (3, 2), (3, 3)] {
        let rho = seeded_state(d1, d2);
        group.bench_with_input(
            BenchmarkId::from_parameter(d1 * d2),
            rho.matrix(),
            |b, m| b.iter(|| eigvalsh(m, TOL_HERM).expect("hermitian input")),
        );
    }
    group.finish();
}

fn bench_spa_maps(c: &mut Criterion) {
    let mut group = c.benchmark_group("spa-maps");
    let rho4 = seeded_state(2, 2);
    let rho6 = seeded_state(3, 2);
    let rho9 = seeded_state(3, 3);
    let params = QutritQubitSpaParams::default();

    group.bench_function("two-qubit-closed-form", |b| {
        b.iter(|| spa_pt_two_qubit(&rho4).expect("valid state"))
    });
    group.bench_function("generic-noise-mix-n4", |b| {
        let q = q_star(rho4.dims());
        b.iter(|| spa_pt_generic(&rho4, q).expect("q* keeps the output positive"))
    });
    group.bench_function("qutrit-qubit-structured", |b| {
        b.iter(|| spa_pt_qutrit_qubit(&rho6, &params).expect("valid state"))
    });
    group.bench_function("generic-noise-mix-n9", |b| {
        let q = q_star(rho9.dims());
        b.iter(|| spa_pt_generic(&rho9, q).expect("q* keeps the output positive"))
    });
    group.finish();
}

fn bench_concurrence(c: &mut Criterion) {
    let rho = two_qubit_state();
    c.bench_function("wootters-concurrence", |b| {
        b.iter(|| wootters_concurrence(&rho).expect("two-qubit state"))
    });
}

fn bench_full_report(c: &mut Criterion) {
    let mut group = c.benchmark_group("full-report");
    let rho1 = two_qubit_state();
    let config1 = ReportConfig {
        description: String::from("two-qubit reference state"),
        witness: WitnessSelection::Family1 {
            f: C64::new(0.4, 0.1),
        },
        spa: SpaSelection::Auto,
    };
    group.bench_function("two-qubit", |b| {
        b.iter(|| full_report(&rho1, &config1).expect("report succeeds"))
    });

    let rho2 = qutrit_qubit_state();
    let config2 = ReportConfig {
        description: String::from("qutrit-qubit reference state"),
        witness: WitnessSelection::Family2 { alpha: 0.5 },
        spa: SpaSelection::Auto,
    };
    group.bench_function("qutrit-qubit", |b| {
        b.iter(|| full_report(&rho2, &config2).expect("report succeeds"))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_eigenvalues,
    bench_spa_maps,
    bench_concurrence,
    bench_full_report
);
criterion_main!(benches);
