use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sodual::fock::{default_box_sequence, q_pair, YMatrix};
use sodual::{BranchPair, CurrentOp, Error, FockSpace, FockVector, ModeIndex, Side, Source, Variant, YoungDiagram};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn spaces() -> impl Strategy<Value = FockSpace> {
    prop::sample::select(vec![(1usize, 1usize), (2, 1), (2, 3), (3, 3)]).prop_map(|(r, s)| FockSpace::new(r, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clifford_relations(f in spaces(), seed in any::<u64>(), pair in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = f.random_vector(&mut rng, 4);
        let m1 = f.random_mode(&mut rng, 5);
        let m2 = if pair { m1.partner() } else { f.random_mode(&mut rng, 5) };
        prop_assert!(f.verify_anticommutation(m1, m2, &v).unwrap());
    }

    #[test]
    fn currents_represent_the_loop_algebra(f in spaces(), seed in any::<u64>(), central in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = f.random_vector(&mut rng, 4);
        let x = f.random_current(&mut rng, 2);
        let mut y = f.random_current(&mut rng, 2);
        if central {
            y.m = -x.m;
        }
        prop_assert!(f.verify_bracket(&x, &y, &v).unwrap());
    }

    #[test]
    fn currents_preserve_energy_shift(f in spaces(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = f.random_vector(&mut rng, 3);
        let x = f.random_current(&mut rng, 2);
        let out = f.current_apply(&x, &v).unwrap();
        // B(m) lowers L_0 by m and keeps the parity
        for m in out.terms().keys() {
            prop_assert!(v.terms().keys().any(|n| n.energy2() - 2 * x.m as i64 == m.energy2()
                && n.degree() % 2 == m.degree() % 2));
        }
    }
}

#[test]
fn parity_matches_source() {
    for (r, s) in [(2, 3), (3, 3), (3, 4)] {
        let f = FockSpace::new(r, s).unwrap();
        for y in YoungDiagram::enumerate(r, s) {
            for v in Variant::ALL {
                let pair = BranchPair::new(&y, v, r, s).unwrap();
                let w = f.hwv_wedge(&y, v).unwrap();
                let want = if pair.source == Source::Vacuum { 0 } else { 1 };
                assert_eq!(w.parity(), Some(want), "{y} {v}");
                let rep = f.verify_hwv(&w, &pair.left, &pair.right).unwrap();
                assert!(rep.pass, "({r},{s}) {y} {v}: {:?}", rep.failures);
            }
        }
    }
}

#[test]
fn plain_energy_is_half_the_size() {
    let f = FockSpace::new(3, 4).unwrap();
    for y in YoungDiagram::enumerate(3, 4) {
        let w = f.hwv_wedge(&y, Variant::Plain).unwrap();
        assert_eq!(w.energy2(), Some(y.size() as i64));
    }
}

#[test]
fn sigma_lr_empty_has_the_extra_mode() {
    let f = FockSpace::new(3, 3).unwrap();
    let w = f.hwv_wedge(&YoungDiagram::empty(), Variant::SigmaLR).unwrap();
    let (mono, c) = w.terms().iter().next().unwrap();
    assert_eq!(*c, q(1));
    assert!(mono.modes().contains(&ModeIndex::new(1, 1, -3).unwrap()));
    // energy r + s + 1
    assert_eq!(w.energy2(), Some(14));
}

#[test]
fn y_matrix_zeros_are_the_boxes() {
    let y = YoungDiagram::new(vec![2, 1]).unwrap();
    let m = YMatrix::tilde(&y, 3, 3).unwrap();
    assert_eq!(m.zeros(), vec![(1, 1), (1, 2), (2, 1)]);
    assert!(YMatrix::tilde(&YoungDiagram::new(vec![4]).unwrap(), 3, 3).is_err());
}

#[test]
fn build_routes_agree_up_to_scalar() {
    let f = FockSpace::new(3, 3).unwrap();
    for y in YoungDiagram::enumerate(3, 3).into_iter().filter(|y| y.size() <= 5) {
        let b = f.kacmoody_build(&y, &default_box_sequence(&y)).unwrap();
        let c = b.scalar.expect("proportional");
        assert!(c == q(1) || c == q(-1), "{y}: {c}");
        let low = f.kacmoody_build_lowest(&y, &default_box_sequence(&y)).unwrap();
        assert!(low.scalar.is_some());
    }
}

#[test]
fn q_pair_is_bilinear() {
    let a = FockVector::wedge(vec![ModeIndex::lowest(1, 1)]).unwrap();
    let b = FockVector::wedge(vec![ModeIndex::lowest(2, -1)]).unwrap();
    let c = FockVector::wedge(vec![ModeIndex::lowest(-1, -1)]).unwrap();
    let d = FockVector::wedge(vec![ModeIndex::lowest(-2, 1)]).unwrap();
    let u = a.scale(&q(3)).add(&b.scale(&q(-2)));
    let v = c.scale(&q(5)).add(&d);
    assert_eq!(q_pair(&u, &v).unwrap(), q(15 - 2));
    assert!(matches!(q_pair(&FockVector::vacuum(), &a), Err(Error::Domain(_))));
}

#[test]
fn subalgebra_sums_match_currents() {
    let f = FockSpace::new(2, 3).unwrap();
    let v = FockVector::wedge(vec![ModeIndex::lowest(1, 2), ModeIndex::lowest(-2, 0)]).unwrap();
    let mut by_hand = FockVector::zero();
    for p in -3..=3 {
        by_hand = by_hand.add(&f.current_apply(&CurrentOp::new(1, p, 2, p, -1), &v).unwrap());
    }
    assert_eq!(f.subalgebra_apply(Side::Left, 1, 2, -1, &v).unwrap(), by_hand);
}

#[test]
fn out_of_range_species_is_a_domain_error() {
    let f = FockSpace::new(2, 2).unwrap();
    let v = FockVector::vacuum();
    assert!(matches!(f.current_apply(&CurrentOp::new(3, 0, 0, 0, 0), &v), Err(Error::Domain(_))));
    assert!(matches!(f.clifford_apply(ModeIndex::lowest(0, 3), &v), Err(Error::Domain(_))));
}
