//! Sequential vs parallel timings for the box-scan verifiers.
//!
//! Run with `cargo bench -p ellstab-core`. The parallel variants exercise
//! the rayon path (the default `parallel` feature); with
//! `--no-default-features` only the sequential variants remain meaningful.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ellstab_core::scan::ScanMode;
use ellstab_core::verify::{
    verify_chi_correspondence, verify_involution, verify_slope_correspondence,
};

fn modes() -> Vec<(&'static str, ScanMode)> {
    let mut out = vec![("sequential", ScanMode::Sequential)];
    if cfg!(feature = "parallel") {
        out.push(("parallel", ScanMode::Parallel));
    }
    out
}

fn bench_involution(c: &mut Criterion) {
    let mut group = c.benchmark_group("involution");
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 3), &mode, |b, &mode| {
            b.iter(|| {
                let report = verify_involution(3, mode);
                assert_eq!(report.failures, 0);
                report.cases
            })
        });
    }
    group.finish();
}

fn bench_slopes(c: &mut Criterion) {
    let mut group = c.benchmark_group("slope_correspondence");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 3), &mode, |b, &mode| {
            b.iter(|| {
                let report = verify_slope_correspondence(3, 1, mode);
                assert_eq!(report.failures, 0);
                report.cases
            })
        });
    }
    group.finish();
}

fn bench_chi(c: &mut Criterion) {
    let mut group = c.benchmark_group("chi_correspondence");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 2), &mode, |b, &mode| {
            b.iter(|| {
                let report = verify_chi_correspondence(2, 1, mode);
                assert_eq!(report.failures, 0);
                report.cases
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_involution, bench_slopes, bench_chi);
criterion_main!(benches);
