use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use seqgauntlet::lab::{evaluate_oracle, synth_landscape, train_oracle};
use seqgauntlet::rank::{consistency_report, kendall_tau, RankRow};
use seqgauntlet::{OracleKind, RankTable, SplitSpec, StatisticKind};

fn landscape(c: &mut Criterion) {
    c.bench_function("synth landscape K=2 L=8", |b| {
        b.iter(|| synth_landscape(black_box(7), 2, 8).unwrap())
    });
}

fn oracles(c: &mut Criterion) {
    let landscape = synth_landscape(7, 2, 8).unwrap();
    let split = SplitSpec::new(0.01, 0).unwrap();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("ridge fit (1%)", |b| {
        b.iter(|| train_oracle(&landscape, &split, OracleKind::Ridge, 0).unwrap())
    });
    group.bench_function("mlp fit (1%, 2000 epochs)", |b| {
        b.iter(|| train_oracle(&landscape, &split, OracleKind::Mlp, 0).unwrap())
    });
    let model = train_oracle(&landscape, &split, OracleKind::Ridge, 0).unwrap();
    group.bench_function("evaluate over 65536 sequences", |b| {
        b.iter(|| evaluate_oracle(&model, &landscape, &split).unwrap())
    });
    group.finish();
}

fn table(id: &str, order: &[usize]) -> RankTable {
    RankTable {
        evaluator_id: id.to_string(),
        statistic_kind: StatisticKind::Max,
        rows: order
            .iter()
            .enumerate()
            .map(|(i, m)| RankRow {
                method: format!("m{m:02}"),
                statistic: -(i as f64),
                mean: 0.0,
            })
            .collect(),
    }
}

fn ranking(c: &mut Criterion) {
    let a = table("a", &(0..12).collect::<Vec<_>>());
    let b = table("b", &(0..12).rev().collect::<Vec<_>>());
    c.bench_function("kendall tau (12 methods)", |bench| {
        bench.iter(|| kendall_tau(black_box(&a), &b).unwrap())
    });
    let tables: Vec<RankTable> = (0..5)
        .map(|s| {
            table(
                &format!("e{s}"),
                &(0..12).map(|i| (i * [1, 5, 7, 11, 1][s] + s) % 12).collect::<Vec<_>>(),
            )
        })
        .collect();
    c.bench_function("consistency report (5 x 12)", |bench| {
        bench.iter(|| consistency_report(black_box(&tables)).unwrap())
    });
}

criterion_group!(benches, landscape, oracles, ranking);
criterion_main!(benches);
