use proptest::prelude::*;

use sodual::verlinde::{lr_rule, verlinde_dim, verlinde_dim_orbit};
use sodual::{
    enumerate_level_set, young_to_weight, BWeight, DualityCase, DualityChecker, Error, VerlindeEngine, WeightClass,
    YoungDiagram, DEFAULT_BITS, ROUNDING_TOL,
};

/// Level-1 `B_r` has the Ising fusion rules: `1`, `ψ = ω_1`, `σ = ω_r`.
fn ising(ws: &[usize]) -> u64 {
    let sig = ws.iter().filter(|&&w| w == 2).count();
    let psi = ws.iter().filter(|&&w| w == 1).count();
    u64::from((sig == 0 && psi % 2 == 0) || sig == 2)
}

#[test]
fn level_one_is_ising() {
    for r in 2..=5 {
        let e = VerlindeEngine::new(r, 1, DEFAULT_BITS).unwrap();
        let basis = [BWeight::zero(r), BWeight::omega(r, 1), BWeight::omega(r, r)];
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let d = e.fusion_coeff(&basis[a], &basis[b], &basis[c]).unwrap();
                    assert_eq!(d, ising(&[a, b, c]), "r={r} ({a},{b},{c})");
                }
            }
        }
    }
}

#[test]
fn level_one_genus_counts() {
    // Σ_μ S_{0μ}^{2-2g} for Ising is 2^{g-1}(2^g + 1)
    let e = VerlindeEngine::new(3, 1, DEFAULT_BITS).unwrap();
    for g in 0..=4u32 {
        let want = if g == 0 { 1 } else { (1u64 << (g - 1)) * ((1u64 << g) + 1) };
        let d = e.dim(&[], g).unwrap();
        assert_eq!(d.dim, want, "g={g}");
        assert!(d.residual < ROUNDING_TOL);
    }
    // four sigma insertions on the sphere: 2
    let s = BWeight::omega(3, 3);
    assert_eq!(e.dim(&[s.clone(), s.clone(), s.clone(), s], 0).unwrap().dim, 2);
}

#[test]
fn torus_counts_weights() {
    for (r, level) in [(2, 4), (3, 5), (4, 3)] {
        let n = enumerate_level_set(r, level, WeightClass::All).len() as u64;
        assert_eq!(verlinde_dim(r, level, 1, &[], DEFAULT_BITS).unwrap().dim, n);
    }
}

#[test]
fn orbit_sum_agrees_with_full_sum() {
    let e = VerlindeEngine::new(3, 7, DEFAULT_BITS).unwrap();
    let ys = [vec![1], vec![2, 1], vec![1, 1], vec![2]];
    let ws: Vec<BWeight> = ys.iter().map(|r| young_to_weight(&YoungDiagram::new(r.clone()).unwrap(), 3).unwrap()).collect();
    for n in 2..=4 {
        let full = e.dim(&ws[..n], 0).unwrap().dim;
        let orbit = verlinde_dim_orbit(3, 3, &ws[..n], DEFAULT_BITS).unwrap();
        assert_eq!(orbit.dim, full);
    }
}

#[test]
fn two_single_box_points_are_dual() {
    let c = DualityChecker::new(3, 3, DEFAULT_BITS).unwrap();
    let box1 = YoungDiagram::new(vec![1]).unwrap();
    let rep = c.check(&[box1.clone(), box1.clone()], DualityCase::Even).unwrap();
    assert_eq!((rep.lhs, rep.rhs, rep.pass), (1, 1, true));
    assert!(matches!(c.check(&[box1], DualityCase::Even), Err(Error::Domain(_))));
}

#[test]
fn lr_rule_stays_in_the_box_rank() {
    let w = young_to_weight(&YoungDiagram::new(vec![1, 1, 1]).unwrap(), 3).unwrap();
    let out = lr_rule(&w).unwrap();
    // (1,1,1) -> (2,1,1), (1,1), and itself since a_3 = 2
    assert_eq!(out.len(), 3);
    assert!(out.contains(&w));
}

#[test]
fn rank_one_engine_is_rejected() {
    assert!(VerlindeEngine::new(1, 3, DEFAULT_BITS).is_err());
}

fn tuple_at(r: usize, level: u32) -> impl Strategy<Value = Vec<BWeight>> {
    let set = enumerate_level_set(r, level, WeightClass::All);
    prop::collection::vec(prop::sample::select(set), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn permutation_and_vacuum_invariance(ws in tuple_at(2, 5), seed in any::<u64>()) {
        let e = VerlindeEngine::new(2, 5, DEFAULT_BITS).unwrap();
        let d = e.dim(&ws, 0).unwrap();
        prop_assert!(d.residual < ROUNDING_TOL);
        let mut rev = ws.clone();
        rev.reverse();
        rev.rotate_left((seed % ws.len() as u64) as usize);
        prop_assert_eq!(e.dim(&rev, 0).unwrap().dim, d.dim);
        prop_assert!(e.propagation_check(&ws).unwrap().pass);
    }

    #[test]
    fn factorization_random(ws in prop::collection::vec(prop::sample::select(enumerate_level_set(3, 3, WeightClass::All)), 4)) {
        let e = VerlindeEngine::new(3, 3, DEFAULT_BITS).unwrap();
        prop_assert!(e.factorization_check(&ws, 2).unwrap().pass);
        prop_assert!(e.factorization_check(&ws, 1).unwrap().pass);
    }
}
