use std::collections::BTreeSet;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use knfrag::expressiveness::{search_weak_translation_with, strong_translation_check_with, weak_equiv_check_with, SearchOptions};
use knfrag::solver::{sat_bruteforce_with, tree_model_bound};
use knfrag::{parse, Fragment, Limits};

fn modes() -> [(&'static str, Limits); 2] {
    let limits = Limits::default().with_max_models(u64::MAX);
    [("parallel", limits.with_parallel(true)), ("sequential", limits.sequential())]
}

fn letters(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn weak_check(c: &mut Criterion) {
    let f = parse("<a>p | [a]q").unwrap();
    let g = parse("~([a]~p & <a>~q)").unwrap();
    let alphabet = letters(&["p", "q"]);
    let mut group = c.benchmark_group("weak_equiv_check_4_worlds");
    for (name, limits) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| weak_equiv_check_with(black_box(&f), black_box(&g), &alphabet, 4, &limits).unwrap())
        });
    }
    group.finish();
}

fn strong_check(c: &mut Criterion) {
    let f = parse("<a>p & <a>q").unwrap();
    let g = knfrag::translate::translate(&knfrag::recognize_clausal(&f).unwrap(), knfrag::translate::Target::Box)
        .unwrap()
        .formula
        .to_formula();
    let mut group = c.benchmark_group("strong_translation_check_3_worlds");
    group.sample_size(10);
    for (name, limits) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| strong_translation_check_with(black_box(&f), black_box(&g), 3, &limits).unwrap())
        });
    }
    group.finish();
}

fn bruteforce(c: &mut Criterion) {
    let f = parse("<a>p & <a>q & <a>~p & [a](p | q) & [a]<a>T").unwrap();
    let bound = tree_model_bound(&f);
    let mut group = c.benchmark_group("sat_bruteforce");
    for (name, limits) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sat_bruteforce_with(black_box(&f), bound, &limits).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let target = parse("p & q -> r").unwrap();
    let options = SearchOptions {
        fragment: Fragment::KROM,
        alphabet: letters(&["p", "q", "r"]),
        modalities: None,
        max_size: 7,
        max_worlds: 3,
    };
    let mut group = c.benchmark_group("search_weak_translation");
    group.sample_size(10);
    for (name, limits) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| search_weak_translation_with(black_box(&target), &options, &limits).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, weak_check, strong_check, bruteforce, search);
criterion_main!(benches);
