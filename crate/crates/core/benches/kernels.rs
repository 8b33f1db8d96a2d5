use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use superq::catalog::construct_str;
use superq::dercoh::{derivations, h2_restricted};
use superq::exactla::NumberField;
use superq::liealg::validate;
use superq::parallel::set_sequential;

const ALGEBRAS: &[&str] = &["psl(3,3)", "F(1,3)", "G(1,2)"];

fn kernels(c: &mut Criterion) {
    let q = NumberField::rationals();
    let algs: Vec<_> = ALGEBRAS.iter().map(|s| (*s, construct_str(s, &q).unwrap())).collect();
    for (mode, seq) in [("parallel", false), ("sequential", true)] {
        let mut group = c.benchmark_group(mode);
        group.sample_size(10);
        set_sequential(seq);
        for (name, g) in &algs {
            group.bench_with_input(BenchmarkId::new("validate", name), g, |b, g| b.iter(|| validate(g)));
            group.bench_with_input(BenchmarkId::new("derivations", name), g, |b, g| b.iter(|| derivations(g).unwrap()));
            group.bench_with_input(BenchmarkId::new("h2_restricted", name), g, |b, g| b.iter(|| h2_restricted(g).unwrap()));
        }
        group.finish();
    }
    set_sequential(false);
}

criterion_group!(benches, kernels);
criterion_main!(benches);
