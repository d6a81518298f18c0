//! Sequential versus parallel sweeps. Build with `--no-default-features` to
//! measure the sequential fallback alone (thread counts are then ignored).

use std::thread::available_parallelism;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use permtri::analysis::differential_spectrum;
use permtri::families::{instantiate_default, FamilyInstance};
use permtri::permcheck::is_permutation;
use permtri::search::{enumerate, SearchOptions};
use permtri::SweepConfig;

fn thread_counts() -> Vec<usize> {
    let n = available_parallelism().map_or(1, |n| n.get());
    let mut t = vec![1, 2, 4, n];
    t.sort_unstable();
    t.dedup();
    t
}

fn bench_is_permutation(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_permutation");
    group.sample_size(10);
    for s in ["T21:m=15", "T32:m=16", "T33:q=4,k=3,m=6"] {
        let spec = instantiate_default(&s.parse::<FamilyInstance>().unwrap()).unwrap();
        for threads in thread_counts() {
            group.bench_with_input(BenchmarkId::new(s, threads), &threads, |b, &t| {
                let cfg = SweepConfig::with_threads(t);
                b.iter(|| is_permutation(&spec, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for threads in thread_counts() {
        group.bench_with_input(BenchmarkId::new("m=8", threads), &threads, |b, &t| {
            let cfg = SweepConfig::with_threads(t);
            b.iter(|| enumerate(8, SearchOptions::default(), &cfg).unwrap())
        });
    }
    group.finish();
}

fn bench_differential(c: &mut Criterion) {
    let mut group = c.benchmark_group("differential_spectrum");
    group.sample_size(10);
    let spec = instantiate_default(&"T23:m=9".parse::<FamilyInstance>().unwrap()).unwrap();
    for threads in thread_counts() {
        group.bench_with_input(BenchmarkId::new("T23:m=9", threads), &threads, |b, &t| {
            let cfg = SweepConfig::with_threads(t);
            b.iter(|| differential_spectrum(&spec, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_is_permutation, bench_search, bench_differential);
criterion_main!(benches);
