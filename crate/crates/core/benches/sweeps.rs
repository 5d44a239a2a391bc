use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jordan_motive::par::Exec;
use jordan_motive::scalars::FieldSpec;
use jordan_motive::verify::{birational_case, blowup_suite, fp_witt_suite, jordan_cases, standard_spec, SweepOptions};

const STRATEGIES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn birational_sweep(c: &mut Criterion) {
    let spec = standard_spec(FieldSpec::prime(7).unwrap(), 1, 3).unwrap();
    let mut group = c.benchmark_group("birational F_7 r=1 n=3");
    group.sample_size(10).measurement_time(Duration::from_secs(5));
    for (name, exec) in STRATEGIES {
        let opts = SweepOptions { exec, rank_one_budget: 200, ..SweepOptions::default() };
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, opts| {
            b.iter(|| birational_case(&spec, opts).unwrap())
        });
    }
    group.finish();
}

fn witt_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("fp witt p<=7 dim<=6");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| fp_witt_suite(&[3, 5, 7], 6, 2, exec).unwrap()));
    }
    group.finish();
}

fn blowup_sweep(c: &mut Criterion) {
    let cases = jordan_cases(10);
    let mut group = c.benchmark_group("blowup n<=10");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| blowup_suite(&cases, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, birational_sweep, witt_sweep, blowup_sweep);
criterion_main!(benches);
