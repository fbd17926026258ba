use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use m3lattice::catalog::{chain, m_k};
use m3lattice::congruence::all_congruences;
use m3lattice::construct::{close, m3_of};
use m3lattice::rank::{antichain_rank_scan, default_cap, modularity_rank};
use m3lattice::tensor::{hom_lattice, tensor_product};
use m3lattice_bench::{all_triples, fano_lattice, m3_of_m4, pentagon};
use std::hint::black_box;

fn rank_scans(c: &mut Criterion) {
    let m3m4 = m3_of_m4();
    let cap = default_cap(&m3m4);
    let mut g = c.benchmark_group("rank");
    g.sample_size(10);
    g.bench_function("antichain_scan_m3_m4", |b| b.iter(|| antichain_rank_scan(black_box(&m3m4), cap)));
    let fano = fano_lattice();
    g.bench_function("triple_rank_fano", |b| b.iter(|| modularity_rank(black_box(&fano), default_cap(&fano))));
    g.finish();
}

fn closures(c: &mut Criterion) {
    let fano = fano_lattice();
    let triples = all_triples(&fano);
    c.bench_function("close_all_fano_triples", |b| {
        b.iter(|| triples.iter().map(|t| close(&fano, *t).1).max())
    });
}

fn constructions(c: &mut Criterion) {
    let mut g = c.benchmark_group("construct");
    g.sample_size(10);
    let fano = fano_lattice();
    g.bench_function("m3_of_fano", |b| b.iter(|| m3_of(black_box(&fano)).unwrap().size()));
    let c3 = chain(3).unwrap();
    g.bench_function("m3_of_c3_congruences", |b| {
        b.iter_batched(
            || m3_of(&c3).unwrap().into_lattice().unwrap(),
            |k| all_congruences(&k).unwrap(),
            BatchSize::SmallInput,
        )
    });
    g.finish();
}

fn tensors(c: &mut Criterion) {
    let mut g = c.benchmark_group("tensor");
    g.sample_size(20);
    let m3 = m_k(3).unwrap();
    let n5 = pentagon();
    g.bench_function("m3_x_n5", |b| b.iter(|| tensor_product(black_box(&m3), black_box(&n5)).unwrap()));
    g.bench_function("hom_m3_n5", |b| b.iter(|| hom_lattice(black_box(&m3), black_box(&n5)).unwrap()));
    g.finish();
}

criterion_group!(benches, rank_scans, closures, constructions, tensors);
criterion_main!(benches);
