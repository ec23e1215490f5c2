use criterion::{criterion_group, criterion_main, Criterion};
use qelliptic::harness::{registry, run_suite, Exec, RunConfig};

fn suite(c: &mut Criterion) {
    let cases: Vec<_> = registry().iter().collect();
    let mut g = c.benchmark_group("verify_all");
    for (name, exec) in [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)] {
        let cfg = RunConfig { exec, ..RunConfig::default() };
        g.bench_function(name, |b| b.iter(|| run_suite(&cases, &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, suite);
criterion_main!(benches);
