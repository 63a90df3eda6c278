//! Hot paths: table computation, whole-cube coefficient scans, hook-length
//! tables, and induced-multiplicity matrices.

use criterion::{criterion_group, criterion_main, Criterion};
use mbx_core::{
    character_table, class_fusion, induced_matrix, kron_analysis, sn_character_table, Family,
    Kron, SubgroupPair, SN_TABLE_CAP,
};
use std::hint::black_box;

fn bench_tables(c: &mut Criterion) {
    let s5 = Family::parse("s:5").unwrap().build().unwrap();
    c.bench_function("character_table s:5", |b| {
        b.iter(|| character_table(black_box(&s5), 0))
    });
    let sl27 = Family::parse("sl2:7").unwrap().build().unwrap();
    c.bench_function("character_table sl2:7", |b| {
        b.iter(|| character_table(black_box(&sl27), 0))
    });
    c.bench_function("sn_character_table 10", |b| {
        b.iter(|| sn_character_table(black_box(10), SN_TABLE_CAP).unwrap())
    });
}

fn bench_kron(c: &mut Criterion) {
    let g = Family::parse("s:6").unwrap().build().unwrap();
    let t = character_table(&g, 0);
    c.bench_function("kron_analysis s:6", |b| {
        b.iter(|| {
            let kron = Kron::new(black_box(&t)).unwrap();
            kron_analysis(&kron, 0).unwrap()
        })
    });
}

fn bench_induce(c: &mut Criterion) {
    let e = SubgroupPair::parse("s:5/s:4").unwrap().build().unwrap();
    let tg = character_table(&e.parent, 0);
    let th = character_table(&e.sub, 0);
    let fusion = class_fusion(&e);
    c.bench_function("induced_matrix s:5/s:4", |b| {
        b.iter(|| induced_matrix(black_box(&tg), black_box(&th), black_box(&fusion)).unwrap())
    });
}

criterion_group!(benches, bench_tables, bench_kron, bench_induce);
criterion_main!(benches);
