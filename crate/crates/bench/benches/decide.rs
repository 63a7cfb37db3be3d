use std::hint::black_box;

use capelli_bench::grid;
use capelli_core::{decide, oracle_decide, polyring, BigInt};
use criterion::{criterion_group, criterion_main, Criterion};

fn bench_decide(c: &mut Criterion) {
    let cells = grid(12, 50);
    c.bench_function("decide grid n<=12 |a|<=50", |b| {
        b.iter(|| {
            for (n, a) in &cells {
                black_box(decide(*n, a).unwrap());
            }
        })
    });
    let big = BigInt::from(59049);
    c.bench_function("decide x^25 - 243^2", |b| b.iter(|| decide(25, black_box(&big)).unwrap()));
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_decide");
    for (n, a) in [(8u32, -4i64), (12, 7), (16, -3), (24, -64)] {
        let a = BigInt::from(a);
        group.bench_function(format!("x^{n} - ({a})"), |b| {
            b.iter(|| oracle_decide(n, black_box(&a)).unwrap())
        });
    }
    group.finish();
}

fn bench_cyclotomic(c: &mut Criterion) {
    c.bench_function("cyclotomic 1..=60 product check", |b| {
        b.iter(|| {
            for n in 1..=60u32 {
                black_box(polyring::cyclotomic(n));
            }
        })
    });
}

criterion_group!(benches, bench_decide, bench_oracle, bench_cyclotomic);
criterion_main!(benches);
