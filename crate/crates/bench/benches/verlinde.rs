use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sodual::weights::{enumerate_level_set, WeightClass};
use sodual::{DualityCase, DualityChecker, VerlindeEngine, YoungDiagram, DEFAULT_BITS};

fn engine_setup(c: &mut Criterion) {
    let mut g = c.benchmark_group("engine_new");
    g.sample_size(10);
    for level in [3u32, 7] {
        g.bench_with_input(BenchmarkId::from_parameter(level), &level, |b, &l| {
            b.iter(|| VerlindeEngine::new(3, l, DEFAULT_BITS).unwrap())
        });
    }
    g.finish();
}

fn three_point(c: &mut Criterion) {
    let e = VerlindeEngine::new(3, 7, DEFAULT_BITS).unwrap();
    let ws = enumerate_level_set(3, 7, WeightClass::All);
    let triple = [ws[1].clone(), ws[2].clone(), ws[3].clone()];
    // warm the character cache so only the sum is timed
    e.dim(&triple, 0).unwrap();
    c.bench_function("dim_genus0_three_point_b3_level7", |b| b.iter(|| e.dim(&triple, 0).unwrap()));
}

fn duality(c: &mut Criterion) {
    let d = DualityChecker::new(3, 3, DEFAULT_BITS).unwrap();
    let ys = vec![YoungDiagram::new(vec![2, 1]).unwrap(), YoungDiagram::new(vec![1, 1, 1]).unwrap()];
    d.check(&ys, DualityCase::Even).unwrap();
    c.bench_function("duality_check_3_3", |b| b.iter(|| d.check(&ys, DualityCase::Even).unwrap()));
}

criterion_group!(benches, engine_setup, three_point, duality);
criterion_main!(benches);
