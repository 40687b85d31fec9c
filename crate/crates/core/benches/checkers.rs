use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use reesmon::identities::{check_rees_with, check_table_with};
use reesmon::verify::enumerate_small_rees_with;
use reesmon::{parse_identity, separation_identity, ReesQuotient, Strategy, WordSet};

const STRATEGIES: [(&str, Strategy); 2] = [("parallel", Strategy::Parallel), ("sequential", Strategy::Sequential)];

fn table(c: &mut Criterion) {
    let source = WordSet::wn_family([2]).unwrap();
    let q = ReesQuotient::new(&source);
    let id = parse_identity("yzx^3=xyxzx").unwrap();
    let mut group = c.benchmark_group("check_table M(w_2)");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| check_table_with(q.monoid(), black_box(&id), u64::MAX, s).unwrap())
        });
    }
    group.finish();
}

fn rees(c: &mut Criterion) {
    let source = WordSet::wn_family([1, 2]).unwrap();
    let id = separation_identity(2).unwrap();
    let mut group = c.benchmark_group("check_rees separation n=2");
    group.sample_size(20);
    for (name, s) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| check_rees_with(&source, black_box(&id), u64::MAX, s).unwrap()));
    }
    group.finish();
}

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate length 8");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| enumerate_small_rees_with(black_box(8), 10, s)));
    }
    group.finish();
}

criterion_group!(benches, table, rees, enumerate);
criterion_main!(benches);
