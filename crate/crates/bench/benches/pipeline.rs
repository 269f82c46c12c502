use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sefe_cplanar::drawing::{compute_regions, verify_cplanarity, verify_planarity};
use sefe_cplanar::{
    place_vertices_flat, place_vertices_nonflat, reduce_flat, reduce_nonflat, solve,
    CPlanarDrawing, SolveOptions, Strategy,
};
use sefe_cplanar_bench::{corpus, yes_corpus};

fn bench_solve(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    for leaves in [5, 7] {
        let inst = corpus(leaves, 4, 8);
        for (name, s) in [
            ("child-perm", Strategy::ByChildPermutation),
            ("filtered-perm", Strategy::ByFilteredPermutation),
        ] {
            g.bench_with_input(BenchmarkId::new(name, leaves), &inst, |b, inst| {
                b.iter(|| {
                    for i in inst {
                        black_box(solve(i, SolveOptions::with_strategy(s)).unwrap());
                    }
                })
            });
        }
    }
    g.finish();
}

fn bench_reduce(c: &mut Criterion) {
    let inst = corpus(8, 8, 8);
    c.bench_function("reduce/nonflat", |b| {
        b.iter(|| {
            for i in &inst {
                black_box(reduce_nonflat(i).unwrap());
            }
        })
    });
    c.bench_function("reduce/flat", |b| {
        b.iter(|| {
            for i in &inst {
                black_box(reduce_flat(i).unwrap());
            }
        })
    });
}

fn bench_draw_verify(c: &mut Criterion) {
    let yes = yes_corpus(8, 8, 8);
    let nonflat: Vec<_> = yes
        .iter()
        .map(|(i, w)| {
            let (g, gm) = reduce_nonflat(i).unwrap();
            (g, gm, w.clone())
        })
        .collect();
    c.bench_function("draw+verify/nonflat", |b| {
        b.iter(|| {
            for (g, gm, w) in &nonflat {
                let xy = place_vertices_nonflat(g, gm, w).unwrap();
                let cpd = CPlanarDrawing::new(xy.clone(), compute_regions(&xy, g));
                black_box(verify_planarity(&cpd.coords, &g.graph));
                black_box(verify_cplanarity(&cpd, g));
            }
        })
    });
    let flat: Vec<_> = yes
        .iter()
        .map(|(i, w)| {
            let (g, gm) = reduce_flat(i).unwrap();
            (g, gm, w.clone())
        })
        .collect();
    c.bench_function("draw+verify/flat", |b| {
        b.iter(|| {
            for (g, gm, w) in &flat {
                black_box(place_vertices_flat(g, gm, w).unwrap());
            }
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_solve, bench_reduce, bench_draw_verify
}
criterion_main!(benches);
