use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qrr_core::qfunctions::{pochhammer_infinite, SignedMonomial};
use qrr_core::series::series_mul_with_threshold;

fn bench_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_mul");
    group.sample_size(10);
    for order in [64usize, 128, 256, 512, 1024, 2048] {
        let a = pochhammer_infinite(&SignedMonomial::q_pow(1), 1, order)
            .unwrap()
            .invert()
            .unwrap();
        let b = pochhammer_infinite(&SignedMonomial::neg_q_pow(1), 2, order).unwrap();
        group.bench_with_input(BenchmarkId::new("schoolbook", order), &order, |bench, _| {
            bench.iter(|| series_mul_with_threshold(&a, &b, usize::MAX))
        });
        group.bench_with_input(BenchmarkId::new("karatsuba", order), &order, |bench, _| {
            bench.iter(|| series_mul_with_threshold(&a, &b, 0))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_mul);
criterion_main!(benches);
