use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use turan::constructors::{extremal, Audit};
use turan::formulas::{ex_mixed_closed_form, ex_mixed_recursive, table};
use turan::oracle::{oracle_ex, SearchConfig};
use turan::{contains, contains_fast, ForbiddenFamily, TreePattern};

fn formulas(c: &mut Criterion) {
    let spider = TreePattern::spider(11).unwrap();
    c.bench_function("table spider:11 p=11..1000", |b| b.iter(|| table(black_box(&spider), 11..=1000).unwrap()));
    c.bench_function("mixed closed form vs recursion n=40", |b| {
        b.iter(|| {
            for r in 1..=35 {
                assert_eq!(ex_mixed_closed_form(40, r).unwrap(), ex_mixed_recursive(40, r).unwrap());
            }
        })
    });
}

fn constructors(c: &mut Criterion) {
    let mut group = c.benchmark_group("extremal");
    for name in ["star:12", "broom:12", "spider:12", "path:12"] {
        let pattern: TreePattern = name.parse().unwrap();
        group.bench_with_input(BenchmarkId::new(name, "p=200 audit"), &pattern, |b, pat| {
            b.iter(|| extremal(pat, 200, Audit::Full).unwrap())
        });
        group.bench_with_input(BenchmarkId::new(name, "p=200 no audit"), &pattern, |b, pat| {
            b.iter(|| extremal(pat, 200, Audit::Off).unwrap())
        });
    }
    group.finish();
}

fn containment(c: &mut Criterion) {
    let mut group = c.benchmark_group("containment");
    for name in ["broom:9", "spider:9"] {
        let pattern: TreePattern = name.parse().unwrap();
        let host = extremal(&pattern, 14, Audit::Off).unwrap().graph;
        group.bench_with_input(BenchmarkId::new("embedder", name), &pattern, |b, pat| b.iter(|| contains(&host, pat)));
        group.bench_with_input(BenchmarkId::new("counting", name), &pattern, |b, pat| {
            b.iter(|| contains_fast(&host, pat))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for name in ["star:5", "broom:6", "spider:7", "path:5"] {
        let family: ForbiddenFamily = name.parse().unwrap();
        group.bench_with_input(BenchmarkId::new(name, "p=8"), &family, |b, fam| {
            b.iter(|| oracle_ex(fam, 8, &SearchConfig::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, formulas, constructors, containment, oracle);
criterion_main!(benches);
