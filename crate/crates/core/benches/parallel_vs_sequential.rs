use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use logcsm::arrangement::{build_lattice_with, Arrangement};
use logcsm::groebner::{buchberger_with, jacobian_ideal, GbOptions};
use logcsm::verify::{batch_verify, verify_formula, VerifyOptions};
use logcsm::Execution;

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    for (name, a) in [
        ("braid_s5", Arrangement::braid(3, true)),
        ("boolean_p5", Arrangement::boolean(5)),
    ] {
        for mode in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("{mode:?}")), &a, |b, a| {
                b.iter(|| build_lattice_with(a, mode))
            });
        }
    }
    group.finish();
}

fn buchberger(c: &mut Criterion) {
    let mut group = c.benchmark_group("buchberger");
    group.sample_size(10);
    let q = Arrangement::braid(2, true).defining_polynomial();
    let ideal = jacobian_ideal(&q).expect("nonconstant");
    for mode in MODES {
        let opts = GbOptions {
            execution: mode,
            ..GbOptions::default()
        };
        group.bench_function(BenchmarkId::new("braid_p2_jacobian", format!("{mode:?}")), |b| {
            b.iter(|| buchberger_with(&ideal, &opts).expect("within step cap"))
        });
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    let a = Arrangement::braid(3, true);
    for mode in MODES {
        let opts = VerifyOptions {
            execution: mode,
            ..VerifyOptions::default()
        };
        group.bench_function(BenchmarkId::new("braid_s5", format!("{mode:?}")), |b| {
            b.iter(|| verify_formula(&a, &opts).expect("verifies"))
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch");
    group.sample_size(10);
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/arrangements");
    let out = tempfile::tempdir().expect("temp dir");
    for mode in MODES {
        group.bench_function(BenchmarkId::new("fixture_corpus", format!("{mode:?}")), |b| {
            b.iter(|| batch_verify(&fixtures, Some(out.path()), mode).expect("corpus readable"))
        });
    }
    group.finish();
}

criterion_group!(benches, lattice, buchberger, verify, batch);
criterion_main!(benches);
