use adequacy_core::levelmod::{build_pair, run_samples};
use adequacy_core::{GaloisField, NilpotentType};
use criterion::{criterion_group, criterion_main, Criterion};

fn levelmod(c: &mut Criterion) {
    let k = GaloisField::prime(7).unwrap();
    let mut g = c.benchmark_group("levelmod");
    g.sample_size(10);
    for parts in [vec![3, 2], vec![2, 2, 1], vec![5]] {
        let sigma = NilpotentType::new(parts.clone()).unwrap();
        let label = format!("{parts:?}");
        g.bench_function(format!("build_pair/{label}"), |b| b.iter(|| build_pair(&sigma, 2, &k).unwrap()));
        g.bench_function(format!("samples_100/{label}"), |b| b.iter(|| run_samples(&sigma, 2, &k, 100, 1).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, levelmod);
criterion_main!(benches);
