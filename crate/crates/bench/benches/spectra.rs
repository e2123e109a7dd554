use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cn_spectra::family::Family;
use cn_spectra::graph::CommutingGraph;
use cn_spectra::group::GroupSpec;
use cn_spectra::pipeline::{verify_instance, VerifyOptions};
use cn_spectra::spectral::{
    certify_integral, cn_matrix, cnrs_cnl_cnsl, jacobi_eigenvalues, numeric_spectrum, CnMode,
    IntMatrix,
};

fn cnl_of(spec: GroupSpec) -> IntMatrix {
    let g = CommutingGraph::from_group(&spec.build().unwrap()).unwrap();
    cnrs_cnl_cnsl(&cn_matrix(&g, CnMode::AllPairs)).cnl
}

fn jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi");
    for n in [16usize, 48, 96] {
        // Dense symmetric matrix with no zero entries.
        let a: Vec<f64> = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                ((i * j + i + j) % 17) as f64 - 8.5
            })
            .collect();
        group.bench_with_input(BenchmarkId::new("dense", n), &a, |b, a| {
            b.iter(|| jacobi_eigenvalues(black_box(a.clone()), n).unwrap())
        });
    }
    let m = cnl_of(GroupSpec::Sl2 { q: 4 });
    group.bench_function("cnl SL(2,4)", |b| {
        b.iter(|| numeric_spectrum(black_box(&m)).unwrap())
    });
    group.finish();
}

fn certification(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify");
    group.sample_size(20);
    for (name, spec) in [
        ("GL(2,3)", GroupSpec::Gl2 { q: 3 }),
        (
            "D(2,13)xZ19",
            GroupSpec::Dihedral { m: 13 }.times_cyclic(19),
        ),
    ] {
        let m = cnl_of(spec);
        let s = numeric_spectrum(&m).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| certify_integral(black_box(&m), &s).unwrap())
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    let opts = VerifyOptions::default();
    for f in [
        Family::Qd { n: 6 },
        Family::Sz2Quotient { z: 5 },
        Family::Psl { k: 3 },
    ] {
        group.bench_function(f.to_string(), |b| {
            b.iter(|| verify_instance(black_box(&f), &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, jacobi, certification, pipeline);
criterion_main!(benches);
