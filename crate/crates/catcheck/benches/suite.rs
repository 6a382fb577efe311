//! Scheduler over a slice of the desk matrix: worker pool against one
//! thread. Cases are rebuilt every iteration so nothing is memoized.

use std::sync::Arc;

use catcheck::{desk_matrix, matrix_jobs, run_jobs, Settings};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn suite(c: &mut Criterion) {
    let settings = Arc::new(Settings::default());
    let mut g = c.benchmark_group("desk_sl2_categorification");
    g.sample_size(10);
    for (name, threads) in [("parallel", 0usize), ("sequential", 1)] {
        g.bench_with_input(BenchmarkId::from_parameter(name), &threads, |b, &threads| {
            b.iter(|| {
                let m = desk_matrix();
                let mut jobs = matrix_jobs(&m, &settings, Some("sl2"));
                jobs.extend(matrix_jobs(&m, &settings, Some("categorification")));
                run_jobs(&jobs, threads).len()
            });
        });
    }
    g.finish();
}

criterion_group!(benches, suite);
criterion_main!(benches);
