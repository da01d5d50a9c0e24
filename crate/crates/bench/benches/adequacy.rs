use adequacy_core::{builtin, Mode};
use criterion::{criterion_group, criterion_main, Criterion};

const CAP: usize = 2_000_000;

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("closure");
    for name in ["sl2_f7", "gl2_f7", "gn_gl2_f7"] {
        let entry = builtin(name).unwrap();
        g.bench_function(name, |b| b.iter(|| entry.group.build(CAP).unwrap().order()));
    }
    g.finish();
}

fn check(c: &mut Criterion) {
    let mut g = c.benchmark_group("check");
    g.sample_size(10);
    for name in ["sl2_f5", "dihedral_f13", "monomial3_f11", "gn_sl2_f5"] {
        let built = builtin(name).unwrap().group.build(CAP).unwrap();
        for (label, mode) in [("big", Mode::Big), ("adequate", Mode::Adequate)] {
            g.bench_function(format!("{name}/{label}"), |b| b.iter(|| built.check(mode, true).unwrap()));
        }
    }
    g.finish();
}

criterion_group!(benches, closure, check);
criterion_main!(benches);
