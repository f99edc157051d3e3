use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sodual::fock::default_box_sequence;
use sodual::{FockSpace, Variant, YoungDiagram};

fn current_action(c: &mut Criterion) {
    let f = FockSpace::new(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let v = f.random_vector(&mut rng, 4);
    let ops: Vec<_> = (0..16).map(|_| f.random_current(&mut rng, 2)).collect();
    c.bench_function("current_apply_16_random", |b| {
        b.iter(|| {
            for op in &ops {
                let _ = f.current_apply(op, &v);
            }
        })
    });
}

fn hwv(c: &mut Criterion) {
    let f = FockSpace::new(3, 3).unwrap();
    let y = YoungDiagram::new(vec![2, 1]).unwrap();
    let (l, r) = {
        let p = sodual::BranchPair::new(&y, Variant::Plain, 3, 3).unwrap();
        (p.left, p.right)
    };
    c.bench_function("verify_hwv_21_plain", |b| {
        b.iter(|| {
            let v = f.hwv_wedge(&y, Variant::Plain).unwrap();
            f.verify_hwv(&v, &l, &r).unwrap()
        })
    });
}

fn build(c: &mut Criterion) {
    let f = FockSpace::new(3, 3).unwrap();
    let y = YoungDiagram::new(vec![2, 2, 1]).unwrap();
    let steps = default_box_sequence(&y);
    c.bench_function("kacmoody_build_221", |b| b.iter(|| f.kacmoody_build(&y, &steps).unwrap()));
}

criterion_group!(benches, current_action, hwv, build);
criterion_main!(benches);
