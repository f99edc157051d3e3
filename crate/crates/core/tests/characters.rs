use std::f64::consts::PI;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sodual::characters::{
    alpha_beta_sign, alpha_beta_sign_formula, char_value, char_value_oracle, det_bigint, phi_k,
    positive_root_product, verify_char_duality, verify_minor_identity, verify_minor_identity_with, verify_trig2,
};
use sodual::{
    enumerate_level_set, young_to_weight, BWeight, LabelKind, TrigTable, ULabel, WeightClass, YoungDiagram,
    DEFAULT_BITS, IDENTITY_TOL,
};

fn labels(r: usize, level: u32) -> Vec<ULabel> {
    enumerate_level_set(r, level, WeightClass::All)
        .iter()
        .map(|w| w.u_label(level).unwrap())
        .collect()
}

#[test]
fn matches_closed_forms_for_vector_and_spin() {
    for (r, level) in [(3, 7), (3, 9), (4, 7), (2, 5)] {
        let k = (level as usize + 2 * r - 1) as f64;
        let table = TrigTable::new(k as i64, DEFAULT_BITS);
        for label in labels(r, level) {
            let u: Vec<f64> = label.point_doubled().iter().map(|p| *p as f64 / 2.0).collect();
            let vector = 1.0 + u.iter().map(|x| 2.0 * (2.0 * PI * x / k).cos()).sum::<f64>();
            let spin: f64 = u.iter().map(|x| 2.0 * (PI * x / k).cos()).product();
            let cv = char_value(&BWeight::omega(r, 1), &label, &table).unwrap();
            let cs = char_value(&BWeight::omega(r, r), &label, &table).unwrap();
            assert!((cv.re_f64() - vector).abs() < 1e-9 && cv.im_f64().abs() < 1e-9, "{label}");
            assert!((cs.re_f64() - spin).abs() < 1e-9 && cs.im_f64().abs() < 1e-9, "{label}");
        }
    }
}

#[test]
fn matches_freudenthal_oracle_on_small_diagrams() {
    for (r, s) in [(3, 3), (3, 4)] {
        let level = 2 * s as u32 + 1;
        let table = TrigTable::new(2 * (r + s) as i64, DEFAULT_BITS);
        let diagrams: Vec<YoungDiagram> =
            YoungDiagram::enumerate(r, s).into_iter().filter(|y| y.size() <= 4).collect();
        for label in labels(r, level) {
            for y in &diagrams {
                let w = young_to_weight(y, r).unwrap();
                let a = char_value(&w, &label, &table).unwrap();
                let b = char_value_oracle(&w, &label, DEFAULT_BITS).unwrap();
                assert!(a.distance(&b) < IDENTITY_TOL, "{y} at {label}");
            }
        }
    }
}

#[test]
fn phi_is_positive_and_is_the_root_product() {
    for (r, level) in [(3, 9), (4, 7)] {
        let table = TrigTable::new((level as usize + 2 * r - 1) as i64, DEFAULT_BITS);
        for mu in enumerate_level_set(r, level, WeightClass::All) {
            let phi = phi_k(mu.u_label(level).unwrap().doubled(), &table);
            assert!(phi.re_f64() > 0.0 && phi.im_f64().abs() < 1e-30);
            let direct = positive_root_product(&mu, level, &table).unwrap();
            assert!(phi.distance(&direct) < IDENTITY_TOL);
        }
    }
}

#[test]
fn trig2_edge_cases() {
    let table = TrigTable::new(6, DEFAULT_BITS);
    assert!(verify_trig2(&[], 3, &table, IDENTITY_TOL).unwrap().pass);
    assert!(verify_trig2(&[1, 3, 5], 3, &table, IDENTITY_TOL).unwrap().pass);
    assert!(verify_trig2(&[2], 3, &table, IDENTITY_TOL).is_err());
}

#[test]
fn char_duality_example() {
    let table = TrigTable::new(12, DEFAULT_BITS);
    let label = ULabel::from_integers(&[6, 2, 1], 7, LabelKind::Plain).unwrap();
    let y = YoungDiagram::new(vec![1]).unwrap();
    let rep = verify_char_duality(&y, &label, 3, 3, &table, &table, IDENTITY_TOL).unwrap();
    assert!(rep.pass);
    // complement of {6,2,1} in [6]
    assert_eq!(rep.image, "(5,4,3)");
    assert_eq!(rep.sign, -1);
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect()).collect()
}

/// Laplace expansion along the first row.
fn det_laplace(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::from(0);
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> =
            a[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &a[0][j] * det_laplace(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[test]
fn bareiss_matches_laplace() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=6 {
        for _ in 0..10 {
            let a = random_matrix(&mut rng, n);
            assert_eq!(det_bigint(&a).unwrap(), det_laplace(&a));
        }
    }
}

#[test]
fn minor_identity_with_diagonal_product() {
    // any B with AB diagonal works, not only the adjugate
    let d = |v: &[i64]| -> Vec<Vec<BigInt>> {
        (0..v.len()).map(|i| (0..v.len()).map(|j| BigInt::from(if i == j { v[i] } else { 0 })).collect()).collect()
    };
    let a = d(&[2, -3, 5, 7]);
    let b = d(&[1, 4, -2, 3]);
    assert!(verify_minor_identity_with(&a, &b, &[0, 2], &[2, 0]).unwrap());
    assert!(verify_minor_identity_with(&a, &b, &[1, 3], &[1, 3]).unwrap());
}

#[test]
fn minor_identity_on_singular_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let mut a = random_matrix(&mut rng, 5);
        a[4] = a[0].iter().zip(&a[1]).map(|(x, y)| x + y).collect();
        assert!(verify_minor_identity(&a, &[1, 4], &[0, 3]).unwrap());
    }
}

proptest! {
    #[test]
    fn sign_lemma_closed_form(r in 1usize..=6, s in 1usize..=6, pick in any::<prop::sample::Index>()) {
        let all = YoungDiagram::enumerate(r, s);
        let y = pick.get(&all);
        prop_assert_eq!(alpha_beta_sign(y, r, s).unwrap(), alpha_beta_sign_formula(y, r, s));
    }

    #[test]
    fn minor_identity_random(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, n);
        let k = rng.gen_range(1..n);
        let mut idx: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(idx.as_mut_slice(), &mut rng);
        let u = idx[..k].to_vec();
        rand::seq::SliceRandom::shuffle(idx.as_mut_slice(), &mut rng);
        let t = idx[..k].to_vec();
        prop_assert!(verify_minor_identity(&a, &u, &t).unwrap());
    }
}
