use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hsp_bench::{random_matrix, sampling_fixture};
use hsp_core::groups::GroupHandle;
use hsp_core::qfs::{distinguishability, weak_distribution, Caps, GroupModel};
use hsp_core::symrep::{partitions, sn_character_table};
use hsp_core::Field;

fn field_ops(c: &mut Criterion) {
    for q in [2u32, 25, 256] {
        let f = Field::with_order(q).unwrap();
        c.bench_function(&format!("field_mul_all_pairs_q{q}"), |b| {
            b.iter(|| {
                let mut acc = 0u32;
                for x in f.elements() {
                    for y in f.elements() {
                        acc ^= f.mul(x, y);
                    }
                }
                black_box(acc)
            })
        });
    }
}

fn rank(c: &mut Criterion) {
    for (rows, cols, q) in [(16, 32, 2u32), (24, 48, 9)] {
        let (f, m) = random_matrix(rows, cols, q, 1);
        c.bench_function(&format!("rank_{rows}x{cols}_q{q}"), |b| b.iter(|| black_box(m.column_rank(&f))));
    }
}

fn characters(c: &mut Criterion) {
    let parts = partitions(12).unwrap();
    c.bench_function("mn_table_s12", |b| b.iter(|| black_box(sn_character_table(&parts).unwrap())));
    c.bench_function("model_gl2_5", |b| {
        let h = GroupHandle::parse("gl2-5").unwrap();
        b.iter(|| black_box(GroupModel::build(&h, Caps::default()).unwrap()))
    });
}

fn sampling(c: &mut Criterion) {
    let (model, realized, h) = sampling_fixture("s4", &["(12)"]);
    c.bench_function("weak_s4", |b| b.iter(|| black_box(weak_distribution(&model, &h))));
    c.bench_function("distinguishability_s4", |b| b.iter(|| black_box(distinguishability(&model, &realized, &h))));
    let (model, realized, h) = sampling_fixture("s5", &["(12)(34)", "(13)(24)"]);
    c.bench_function("distinguishability_s5_klein", |b| {
        b.iter(|| black_box(distinguishability(&model, &realized, &h)))
    });
}

criterion_group!(benches, field_ops, rank, characters, sampling);
criterion_main!(benches);
