use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use golodsyz::corpus;
use golodsyz::edim2::{split_syz2, thm54_classify};
use golodsyz::koszul::koszul_homology;
use golodsyz::{EngineConfig, ModuleKind, QuotientRing, Resolver};

fn ring(stem: &str) -> QuotientRing {
    let s = corpus::find(stem)
        .expect("corpus entry")
        .session()
        .expect("parses");
    s.quotient("I", EngineConfig::default()).expect("ring")
}

fn resolve(c: &mut Criterion) {
    let mut g = c.benchmark_group("resolve_k");
    for (stem, len) in [
        ("02_cubic_monomials", 6),
        ("09_cube_of_max", 5),
        ("07_cusp", 8),
        ("13_three_vars", 4),
    ] {
        let q = ring(stem);
        g.bench_function(format!("{stem}/{len}"), |b| {
            b.iter(|| {
                Resolver::new(&q)
                    .unwrap()
                    .resolve(ModuleKind::K, black_box(len))
                    .unwrap()
            })
        });
    }
    g.finish();
}

fn edim2(c: &mut Criterion) {
    let cubic = ring("02_cubic_monomials");
    c.bench_function("koszul_homology/cubic", |b| {
        b.iter(|| koszul_homology(black_box(&cubic)).unwrap())
    });
    c.bench_function("split_syz2/cubic", |b| {
        b.iter(|| split_syz2(black_box(&cubic), 1).unwrap())
    });
    let cusp = ring("07_cusp");
    c.bench_function("thm54/cusp", |b| {
        b.iter(|| thm54_classify(black_box(&cusp), 1).unwrap())
    });
}

criterion_group!(benches, resolve, edim2);
criterion_main!(benches);
