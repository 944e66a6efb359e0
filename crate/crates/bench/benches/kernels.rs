use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lformal_bench::fixtures;
use lformal_core::{
    detect_nonformality, homotopy_transfer, run_formality_pipeline, validate_dgla, validate_pairing, PipelineOptions,
};

fn validate(c: &mut Criterion) {
    let mut g = c.benchmark_group("validate");
    for f in fixtures() {
        let a = &f.instance.algebra;
        let p = f.instance.pairing.as_ref().expect("pairing");
        g.bench_function(BenchmarkId::from_parameter(f.name()), |b| {
            b.iter(|| (validate_dgla(a), validate_pairing(a, p)))
        });
    }
    g.finish();
}

fn transfer(c: &mut Criterion) {
    let mut g = c.benchmark_group("transfer");
    g.sample_size(10);
    for f in fixtures() {
        for arity in [3, 5] {
            g.bench_with_input(BenchmarkId::new(f.name(), arity), &arity, |b, &n| {
                b.iter(|| homotopy_transfer(&f.instance.algebra, &f.splitting, n).expect("transfer"))
            });
        }
    }
    g.finish();
}

fn massey_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("massey_scan");
    for f in fixtures() {
        g.bench_function(BenchmarkId::from_parameter(f.name()), |b| {
            b.iter(|| detect_nonformality(&f.instance.algebra, &f.splitting))
        });
    }
    g.finish();
}

fn witness(c: &mut Criterion) {
    let mut g = c.benchmark_group("formality_pipeline");
    g.sample_size(10);
    for f in fixtures() {
        let opts = PipelineOptions { h0: None, arity: 4 };
        g.bench_function(BenchmarkId::from_parameter(f.name()), |b| {
            b.iter(|| run_formality_pipeline(&f.quasi, &opts).expect("pipeline"))
        });
    }
    g.finish();
}

criterion_group!(benches, validate, transfer, massey_scan, witness);
criterion_main!(benches);
