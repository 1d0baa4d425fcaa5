use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use contactlab::cutoff::{
    integrate_cutoff_with, sigma_set_with, FlowOptions, HamiltonianSchedule, SmoothingProfile,
};
use contactlab::disk::DiskPoint;
use contactlab::exec::{self, ExecMode};
use contactlab::INV_SQRT_PI;

const MODES: [ExecMode; 2] = [ExecMode::Sequential, ExecMode::Parallel];

fn grid(n: usize) -> Vec<DiskPoint> {
    let r = INV_SQRT_PI;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let z = DiskPoint {
                p: -r + (2 * i + 1) as f64 * r / n as f64,
                q: -r + (2 * j + 1) as f64 * r / n as f64,
            };
            if z.capacity() < 0.99 {
                out.push(z);
            }
        }
    }
    out
}

fn bench_cutoff_batch(c: &mut Criterion) {
    let sched = HamiltonianSchedule::new(5.0, 0.02, SmoothingProfile::default()).unwrap();
    let starts = grid(8);
    let opts = FlowOptions::default();
    let mut group = c.benchmark_group("cutoff_flow_batch");
    group.sample_size(10);
    for mode in MODES {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{mode:?}")),
            &mode,
            |b, &mode| {
                b.iter(|| {
                    exec::try_map(mode, black_box(&starts), |&z| {
                        integrate_cutoff_with(z, &sched, &opts).map(|t| t.scaling_exponent())
                    })
                    .unwrap()
                })
            },
        );
    }
    group.finish();
}

fn bench_sigma(c: &mut Criterion) {
    let sched = HamiltonianSchedule::new(5.0, 0.02, SmoothingProfile::default()).unwrap();
    let mut group = c.benchmark_group("sigma_set");
    group.sample_size(10);
    for mode in MODES {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{mode:?}")),
            &mode,
            |b, &mode| b.iter(|| sigma_set_with(black_box(&sched), 16, mode).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_cutoff_batch, bench_sigma);
criterion_main!(benches);
