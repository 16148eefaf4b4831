use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use tropgr::ladder::rho;
use tropgr::ncfan::{decompose_by_walk, nc_decompose, NoncrossingFan};
use tropgr::sample;
use tropgr::troplin::diameter_check;
use tropgr::verify::{duality_check, planar_duality_check};
use tropgr::weight::weight_report;

fn duality(c: &mut Criterion) {
    let mut g = c.benchmark_group("duality");
    g.sample_size(10);
    for (k, n) in [(3, 6), (3, 7), (4, 7)] {
        g.bench_function(format!("rho_t/{k},{n}"), |b| b.iter(|| duality_check(black_box(k), black_box(n)).unwrap()));
        g.bench_function(format!("planar/{k},{n}"), |b| b.iter(|| planar_duality_check(black_box(k), black_box(n)).unwrap()));
    }
    g.finish();
}

fn decompose(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose");
    NoncrossingFan::get(3, 6).unwrap();
    let mut rng = sample::rng(1);
    g.bench_function("scan/3,6", |b| {
        b.iter_batched(|| sample::random_integer_tpoint(3, 6, 5, &mut rng).unwrap(), |t| nc_decompose(&t).unwrap(), BatchSize::SmallInput)
    });
    let mut rng = sample::rng(2);
    g.bench_function("walk/3,8", |b| {
        b.iter_batched(|| sample::random_integer_tpoint(3, 8, 5, &mut rng).unwrap(), |t| decompose_by_walk(&t).unwrap(), BatchSize::SmallInput)
    });
    g.finish();
}

fn ladder(c: &mut Criterion) {
    let mut g = c.benchmark_group("ladder");
    for (k, n) in [(3, 7), (4, 9)] {
        let mut rng = sample::rng(3);
        g.bench_function(format!("rho/{k},{n}"), |b| {
            b.iter_batched(|| sample::random_integer_tpoint(k, n, 5, &mut rng).unwrap(), |t| rho(&t).unwrap(), BatchSize::SmallInput)
        });
    }
    let mut rng = sample::rng(4);
    g.bench_function("weight_report/3,7", |b| {
        b.iter_batched(|| sample::random_positive_vector(3, 7, 4, &mut rng).unwrap().0, |pi| weight_report(&pi).unwrap(), BatchSize::SmallInput)
    });
    g.finish();
}

fn bounded(c: &mut Criterion) {
    let mut g = c.benchmark_group("bounded");
    g.sample_size(10);
    let mut rng = sample::rng(5);
    g.bench_function("diameter/3,6", |b| {
        b.iter_batched(|| sample::random_positive_vector(3, 6, 4, &mut rng).unwrap().0, |pi| diameter_check(&pi).unwrap(), BatchSize::SmallInput)
    });
    g.finish();
}

criterion_group!(benches, duality, decompose, ladder, bounded);
criterion_main!(benches);
