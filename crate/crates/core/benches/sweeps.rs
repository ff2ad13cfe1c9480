use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use modlie::cartan_w::{build_witt, DEFAULT_CAP};
use modlie::exec::Strategy;
use modlie::field::Field;
use modlie::gen::{obstruction_report, strata_census, SamplingPlan};
use modlie::liealg::validate_with;

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn census(c: &mut Criterion) {
    let f = Field::prime(5).unwrap();
    let w = build_witt(1, &[1], &f, DEFAULT_CAP).unwrap();
    let plan = SamplingPlan::Random { seed: 1, count: 4000 };
    let mut g = c.benchmark_group("census W(1,1) 4000 pairs");
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| strata_census(&w.base, &plan, u64::MAX, s).unwrap())
        });
    }
    g.finish();
}

fn obstruction(c: &mut Criterion) {
    let f = Field::prime(5).unwrap();
    let w = build_witt(2, &[1, 1], &f, DEFAULT_CAP).unwrap();
    let x = w.base.basis_vec(w.component(w.s)[0]);
    let mut g = c.benchmark_group("obstruction W(2,1) 50 trials");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| obstruction_report(&w, &x, 50, 7, s).unwrap())
        });
    }
    g.finish();
}

fn jacobi(c: &mut Criterion) {
    let f = Field::prime(5).unwrap();
    let w = build_witt(2, &[1, 2], &f, DEFAULT_CAP).unwrap();
    let mut g = c.benchmark_group("validate W(2,(1,2))");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| b.iter(|| validate_with(&w.base, s)));
    }
    g.finish();
}

criterion_group!(sweeps, census, obstruction, jacobi);
criterion_main!(sweeps);
