//! Compares the rayon-backed batch trial runner against the forced
//! sequential path on identical workloads. Solver runs themselves are always
//! sequential; only the per-trial fan-out differs, so on multi-core hosts
//! the parallel runner should approach a core-count speedup while producing
//! the same reports.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gaped::harness::{run_trials, run_trials_sequential, InstanceKind, TrialSpec};
use gaped::solver::SolverConfig;

fn spec(n: usize, trials: usize) -> TrialSpec {
    TrialSpec {
        kind: InstanceKind::Planted { n, edits: 8, sigma: 4 },
        k: 8,
        big_k: 512,
        delta_cap: None,
        trials,
        seed: 0xBE7C,
        certify: false,
    }
}

fn bench_trials(c: &mut Criterion) {
    let cfg = SolverConfig::desk();
    let mut group = c.benchmark_group("trial_batches");
    group.sample_size(10);
    for &n in &[1usize << 10, 1 << 12] {
        let s = spec(n, 8);
        group.bench_with_input(BenchmarkId::new("parallel", n), &s, |b, s| {
            b.iter(|| run_trials(s, &cfg))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &s, |b, s| {
            b.iter(|| run_trials_sequential(s, &cfg))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_trials);
criterion_main!(benches);
