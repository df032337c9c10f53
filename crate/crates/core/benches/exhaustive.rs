use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subclose::codes::{
    build_code, enumerate_grassmannian, higher_weight_exhaustive, FieldTable, DEFAULT_POINT_BUDGET,
    DEFAULT_SUBSPACE_BUDGET,
};
use subclose::combinat::SubsetIndexer;
use subclose::families::{k_r_oracle, SearchOptions};
use subclose::graphs::graph_census;
use subclose::Exec;

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn kr_oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("k_r_oracle(3,6,7)");
    for (name, exec) in POLICIES {
        let opts = SearchOptions::default().with_exec(exec);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| k_r_oracle(3, 6, black_box(7), &opts).unwrap())
        });
    }
    g.finish();
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("graph_census(7)");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| graph_census(black_box(7), exec, u128::MAX).unwrap())
        });
    }
    g.finish();
}

fn higher_weights(c: &mut Criterion) {
    let f = FieldTable::with_order(3).unwrap();
    let pts = enumerate_grassmannian(2, 4, &f, DEFAULT_POINT_BUDGET, Exec::Parallel).unwrap();
    let code = build_code(&f, 2, 4, &pts, &SubsetIndexer::new(4, 2).unwrap().all()).unwrap();
    let mut g = c.benchmark_group("d_3(C(2,4)/F3)");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| higher_weight_exhaustive(&f, &code, black_box(3), exec, DEFAULT_SUBSPACE_BUDGET).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, kr_oracle, census, higher_weights);
criterion_main!(benches);
