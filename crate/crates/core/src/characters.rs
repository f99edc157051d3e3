//! Weyl characters of so(2r+1) at the roots of unity `exp(2πi (μ+ρ)/k)`, the
//! sine product `Φ_k`, and the trigonometric and character identities that
//! make the duality of dimensions work.

use std::collections::BTreeMap;

use astro_float::{BigFloat, RoundingMode};
use serde::Serialize;

use crate::complex::{determinant, ComplexValue, TrigTable};
use crate::error::{domain, Error, Result};
use crate::weights::{
    orbit_bijection_plus, orbit_bijection_zero, young_to_weight, BWeight, LabelKind, ULabel,
    YoungDiagram,
};

pub use crate::minors::{adjugate, det_bigint, verify_minor_identity, verify_minor_identity_with};

const RM: RoundingMode = RoundingMode::ToEven;

/// Doubled coordinates of `λ + ρ`, i.e. `2λ^j + 2(r-j) + 1`.
pub fn shifted_weight_doubled(w: &BWeight) -> Vec<i64> {
    let r = w.rank() as i64;
    w.l_coords_doubled()
        .iter()
        .enumerate()
        .map(|(j, l)| l + 2 * (r - 1 - j as i64) + 1)
        .collect()
}

/// `det(e(p_i m_j) - e(-p_i m_j))` with `p`, `m` doubled.
pub(crate) fn alternant(table: &TrigTable, point: &[i64], m: &[i64]) -> ComplexValue {
    let rows = point
        .iter()
        .map(|&p| m.iter().map(|&mj| table.alternating(p * mj)).collect())
        .collect();
    determinant(rows, table.precision())
}

/// Weyl denominator at a label: the alternant of `ρ`.
pub(crate) fn denominator(table: &TrigTable, point: &[i64]) -> Result<ComplexValue> {
    let r = point.len() as i64;
    let rho: Vec<i64> = (0..r).map(|j| 2 * (r - 1 - j) + 1).collect();
    let d = alternant(table, point, &rho).check_finite("Weyl denominator")?;
    // Hadamard bound on the rows is at most 2^r * sqrt(r)^r; anything many
    // orders below that is a numerical zero.
    let scale = (2.0 * (r as f64).sqrt()).powi(r as i32);
    if d.abs_f64() < 1e-30 * scale {
        return Err(Error::Singular(format!("denominator vanishes at {point:?}")));
    }
    Ok(d)
}

fn check_table(label: &ULabel, table: &TrigTable) -> Result<()> {
    if table.k() != label.k() {
        return domain(format!(
            "table built for k = {} but label {label} needs k = {}",
            table.k(),
            label.k()
        ));
    }
    Ok(())
}

/// Character of `V_w` at the point attached to `label`, as a ratio of alternants.
pub fn char_value(w: &BWeight, label: &ULabel, table: &TrigTable) -> Result<ComplexValue> {
    if w.rank() != label.rank() {
        return domain(format!("weight {w} and label {label} have different ranks"));
    }
    check_table(label, table)?;
    let point = label.point_doubled();
    let den = denominator(table, &point)?;
    let num = alternant(table, &point, &shifted_weight_doubled(w));
    (&num / &den).check_finite("character value")
}

/// [`char_value`] for the tensor weight of a Young diagram.
pub fn char_value_young(y: &YoungDiagram, label: &ULabel, table: &TrigTable) -> Result<ComplexValue> {
    char_value(&young_to_weight(y, label.rank())?, label, table)
}

/// Largest L-coordinate sum the Freudenthal oracle accepts.
pub const ORACLE_MAX_SIZE: i64 = 12;

/// Weight multiplicities of `V_w` by Freudenthal's recursion, keyed by doubled
/// L-coordinates.
pub fn weight_multiplicities(w: &BWeight) -> Result<BTreeMap<Vec<i64>, u64>> {
    let r = w.rank();
    let top = w.l_coords_doubled();
    if top.iter().sum::<i64>() > 2 * ORACLE_MAX_SIZE {
        return Err(Error::Resource(format!("weight {w} is too large for the oracle")));
    }
    let bound = top[0];
    let parity = top[0].rem_euclid(2);

    // all same-class vectors in the box, keyed by height below the top
    let mut candidates: Vec<(i64, Vec<i64>)> = Vec::new();
    let vals: Vec<i64> = (-bound..=bound).filter(|x| x.rem_euclid(2) == parity).collect();
    let mut idx = vec![0usize; r];
    loop {
        let mu: Vec<i64> = idx.iter().map(|&i| vals[i]).collect();
        let mut partial = 0;
        let mut height = 0;
        let mut ok = true;
        for j in 0..r {
            partial += top[j] - mu[j];
            if partial < 0 || partial % 2 != 0 {
                ok = false;
                break;
            }
            height += partial / 2;
        }
        if ok {
            candidates.push((height, mu));
        }
        let mut j = 0;
        while j < r {
            idx[j] += 1;
            if idx[j] < vals.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == r {
            break;
        }
    }
    candidates.sort();

    // positive roots, doubled: L_i, L_i - L_j, L_i + L_j
    let mut roots: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let mut a = vec![0; r];
        a[i] = 2;
        roots.push(a);
        for j in i + 1..r {
            let mut a = vec![0; r];
            a[i] = 2;
            a[j] = -2;
            roots.push(a.clone());
            a[j] = 2;
            roots.push(a);
        }
    }
    let rho: Vec<i64> = (0..r as i64).map(|j| 2 * (r as i64 - 1 - j) + 1).collect();
    let norm = |v: &[i64]| -> i64 {
        v.iter().zip(&rho).map(|(x, p)| (x + p) * (x + p)).sum()
    };
    let top_norm = norm(&top);

    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for (height, mu) in candidates {
        if height == 0 {
            mult.insert(mu, 1);
            continue;
        }
        let mut num: i64 = 0;
        for a in &roots {
            let mut shifted = mu.clone();
            loop {
                for (s, x) in shifted.iter_mut().zip(a) {
                    *s += x;
                }
                if shifted.iter().any(|x| x.abs() > bound) {
                    break;
                }
                if let Some(&m) = mult.get(&shifted) {
                    let dot: i64 = shifted.iter().zip(a).map(|(x, y)| x * y).sum();
                    num += 2 * m as i64 * dot;
                }
            }
        }
        if num == 0 {
            continue;
        }
        let den = top_norm - norm(&mu);
        if den == 0 || num % den != 0 || num / den < 0 {
            return Err(Error::Domain(format!(
                "Freudenthal recursion produced a non-integer multiplicity at {mu:?}"
            )));
        }
        mult.insert(mu, (num / den) as u64);
    }
    Ok(mult)
}

/// Independent character evaluation: sum of `mult(μ) exp(2πi (μ, u)/k)` over
/// the weight system, carried out in `f64`.
pub fn char_value_oracle(w: &BWeight, label: &ULabel, prec: usize) -> Result<ComplexValue> {
    if w.rank() != label.rank() {
        return domain(format!("weight {w} and label {label} have different ranks"));
    }
    let point = label.point_doubled();
    let n = 4 * label.k();
    let mut by_phase: BTreeMap<i64, u64> = BTreeMap::new();
    for (mu, m) in weight_multiplicities(w)? {
        let dot: i64 = mu.iter().zip(&point).map(|(x, y)| x * y).sum();
        *by_phase.entry(dot.rem_euclid(n)).or_default() += m;
    }
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for (phase, m) in by_phase {
        let theta = 2.0 * std::f64::consts::PI * phase as f64 / n as f64;
        re += m as f64 * theta.cos();
        im += m as f64 * theta.sin();
    }
    Ok(ComplexValue::from_f64(re, im, prec))
}

/// `Φ_k(V) = Π (2 sin πv/k)^2 Π_{v<w} (2 sin π(v-w)/k)^2 (2 sin π(v+w)/k)^2`
/// for entries given doubled.
pub fn phi_k(v_doubled: &[i64], table: &TrigTable) -> ComplexValue {
    let p = table.precision();
    let two = BigFloat::from_i64(2, p);
    let factor = |n: i64| {
        let s = table.sin(n).mul(&two, p, RM);
        s.mul(&s, p, RM)
    };
    let mut acc = BigFloat::from_i64(1, p);
    for (i, &v) in v_doubled.iter().enumerate() {
        acc = acc.mul(&factor(v), p, RM);
        for &w in &v_doubled[i + 1..] {
            acc = acc.mul(&factor(v - w), p, RM).mul(&factor(v + w), p, RM);
        }
    }
    ComplexValue::new(acc, BigFloat::from_i64(0, p), p)
}

/// `Π_{α>0} |2 sin π(μ+ρ, α)/k|^2` with the positive roots of `B_r` listed
/// explicitly. Equal to `Φ_k` of the u-label of `μ`.
pub fn positive_root_product(mu: &BWeight, level: u32, table: &TrigTable) -> Result<ComplexValue> {
    let label = mu.u_label(level)?;
    check_table(&label, table)?;
    let point = shifted_weight_doubled(mu);
    let r = point.len();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let mut a = vec![0; r];
        a[i] = 1;
        roots.push(a);
        for j in i + 1..r {
            for sign in [-1, 1] {
                let mut a = vec![0; r];
                a[i] = 1;
                a[j] = sign;
                roots.push(a);
            }
        }
    }
    let p = table.precision();
    let mut acc = ComplexValue::one(p);
    for a in roots {
        let n: i64 = point.iter().zip(&a).map(|(x, y)| x * y).sum();
        let s = ComplexValue::new(table.sin(n), BigFloat::from_i64(0, p), p);
        let f = &s * &ComplexValue::from_i64(2, p);
        acc = &acc * &(&f * &f);
    }
    Ok(acc)
}

fn power_ratio(a2: i64, size: usize, phi: &ComplexValue) -> ComplexValue {
    let p = phi.precision();
    &ComplexValue::from_i64(a2, p).powi(size as u32) / phi
}

/// Result of checking one identity between two complex numbers.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub pass: bool,
}

impl IdentityReport {
    fn compare(lhs: &ComplexValue, rhs: &ComplexValue, tol: f64) -> Self {
        let residual = lhs.distance(rhs);
        IdentityReport {
            lhs: lhs.re_f64(),
            rhs: rhs.re_f64(),
            residual,
            pass: residual < tol,
        }
    }
}

/// For `V ⊆ {1..a-1}`:
/// `(2a)^|V| / Φ_2a(V) = 2 (2a)^|W| / Φ_2a(W)` with `W = V^c ∪ {a}`.
pub fn verify_trig1(v: &[i64], a: i64, table: &TrigTable, tol: f64) -> Result<IdentityReport> {
    if table.k() != 2 * a {
        return domain(format!("table must be built for k = {}", 2 * a));
    }
    if v.iter().any(|&x| x < 1 || x >= a) {
        return domain(format!("{v:?} is not a subset of 1..{}", a - 1));
    }
    let mut w: Vec<i64> = (1..a).filter(|x| !v.contains(x)).collect();
    w.push(a);
    let dbl = |s: &[i64]| s.iter().map(|x| 2 * x).collect::<Vec<_>>();
    let lhs = power_ratio(2 * a, v.len(), &phi_k(&dbl(v), table));
    let rhs = &ComplexValue::from_i64(2, table.precision())
        * &power_ratio(2 * a, w.len(), &phi_k(&dbl(&w), table));
    Ok(IdentityReport::compare(&lhs, &rhs, tol))
}

/// For `V' ⊆ {1/2, ..., a-1/2}` (entries doubled):
/// `(2a)^|V'| / Φ_2a(V') = (2a)^|V'^c| / Φ_2a(a - V'^c)`.
pub fn verify_trig2(v_doubled: &[i64], a: i64, table: &TrigTable, tol: f64) -> Result<IdentityReport> {
    if table.k() != 2 * a {
        return domain(format!("table must be built for k = {}", 2 * a));
    }
    if v_doubled.iter().any(|&x| x < 1 || x > 2 * a - 1 || x % 2 == 0) {
        return domain(format!("{v_doubled:?} is not a set of half-integers below {a}"));
    }
    let comp: Vec<i64> = (0..a)
        .map(|i| 2 * i + 1)
        .filter(|x| !v_doubled.contains(x))
        .collect();
    let reflected: Vec<i64> = comp.iter().map(|x| 2 * a - x).collect();
    let lhs = power_ratio(2 * a, v_doubled.len(), &phi_k(v_doubled, table));
    let rhs = power_ratio(2 * a, comp.len(), &phi_k(&reflected, table));
    Ok(IdentityReport::compare(&lhs, &rhs, tol))
}

/// `[α] = {λ^i + r + 1 - i}` and its complement `[β]` in `[r+s]`, both decreasing.
pub fn alpha_beta(y: &YoungDiagram, r: usize, s: usize) -> Result<(Vec<i64>, Vec<i64>)> {
    if !y.fits(r, s) {
        return domain(format!("{y} does not fit in {r} rows and {s} columns"));
    }
    let alpha: Vec<i64> = (0..r).map(|i| y.row(i) as i64 + (r - i) as i64).collect();
    let beta = (1..=(r + s) as i64).rev().filter(|x| !alpha.contains(x)).collect();
    Ok((alpha, beta))
}

/// Sign of a sequence viewed as a permutation of `1..=n`.
pub fn permutation_sign(seq: &[i64]) -> i32 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sgn([α],[β])` computed from the explicit permutation.
pub fn alpha_beta_sign(y: &YoungDiagram, r: usize, s: usize) -> Result<i32> {
    let (alpha, beta) = alpha_beta(y, r, s)?;
    Ok(permutation_sign(&[alpha, beta].concat()))
}

/// Closed form `(-1)^{r(r-1)/2 + s(s-1)/2 + |λ|}` for [`alpha_beta_sign`].
pub fn alpha_beta_sign_formula(y: &YoungDiagram, r: usize, s: usize) -> i32 {
    let e = r * (r - 1) / 2 + s * (s - 1) / 2 + y.size() as usize;
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Report of one character duality check.
#[derive(Debug, Clone, Serialize)]
pub struct CharDualityReport {
    pub label: String,
    pub image: String,
    pub sign: i32,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub pass: bool,
}

/// Checks `Tr_λ` at a level `2s+1` label against `Tr_{λ^T}` at the bijected
/// level `2r+1` label.
///
/// Integral labels are first moved to their orbit representative inside
/// `[r+s]`, and the relation carries the sign `(-1)^{|λ|}`. Shifted tensor
/// labels use `U' ↦ (r+s+1) - U'^c` and carry no sign.
pub fn verify_char_duality(
    y: &YoungDiagram,
    label: &ULabel,
    r: usize,
    s: usize,
    left: &TrigTable,
    right: &TrigTable,
    tol: f64,
) -> Result<CharDualityReport> {
    if !y.fits(r, s) {
        return domain(format!("{y} does not fit in {r} rows and {s} columns"));
    }
    let rep = label.representative();
    let (image, sign) = match label.kind() {
        LabelKind::Plain => {
            let sign = if y.size().is_multiple_of(2) { 1 } else { -1 };
            (orbit_bijection_plus(&rep, r, s)?, sign)
        }
        LabelKind::Shifted => (orbit_bijection_zero(&rep, r, s)?, 1),
    };
    let lhs = char_value_young(y, &rep, left)?;
    let rhs = char_value_young(&y.transpose(), &image, right)?;
    let rhs = &ComplexValue::from_i64(sign as i64, rhs.precision()) * &rhs;
    let cmp = IdentityReport::compare(&lhs, &rhs, tol);
    Ok(CharDualityReport {
        label: rep.to_string(),
        image: image.to_string(),
        sign,
        lhs: cmp.lhs,
        rhs: cmp.rhs,
        residual: cmp.residual,
        pass: cmp.pass,
    })
}

/// Checks that the product of characters of `weights` takes the same value at
/// `σμ + ρ` as at `μ + ρ`, up to the sign `(-1)^{#spin weights}`.
///
/// Each tensor weight is individually invariant, so for the tensor tuples of
/// the duality theorem the sign is `+1` whatever the parity of the total size.
pub fn verify_center_trace(
    weights: &[BWeight],
    mu: &BWeight,
    level: u32,
    table: &TrigTable,
    tol: f64,
) -> Result<IdentityReport> {
    let label = mu.u_label(level)?;
    let sigma_label = mu.sigma(level)?.u_label(level)?;
    let p = table.precision();
    let mut at_mu = ComplexValue::one(p);
    let mut at_sigma = ComplexValue::one(p);
    let mut sign = 1;
    for w in weights {
        at_mu = &at_mu * &char_value(w, &label, table)?;
        at_sigma = &at_sigma * &char_value(w, &sigma_label, table)?;
        if !w.is_tensor() {
            sign = -sign;
        }
    }
    let expected = &ComplexValue::from_i64(sign, p) * &at_mu;
    Ok(IdentityReport::compare(&at_sigma, &expected, tol))
}

/// Every `r`-subset of `[r+s]`, decreasing, as a label at level `2s+1`.
pub fn subset_labels(r: usize, s: usize, kind: LabelKind) -> Result<Vec<ULabel>> {
    let n = (r + s) as i64;
    let mut out = Vec::new();
    let mut pick: Vec<i64> = (1..=r as i64).collect();
    loop {
        let dec: Vec<i64> = pick.iter().rev().copied().collect();
        out.push(ULabel::from_integers(&dec, 2 * s as u32 + 1, kind)?);
        // next combination in lex order
        let mut i = r;
        while i > 0 && pick[i - 1] == n - (r - i) as i64 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        pick[i - 1] += 1;
        for j in i..r {
            pick[j] = pick[j - 1] + 1;
        }
    }
    Ok(out)
}

/// `Tr_{(2s+1)ω_1}` at a label with entries in `[r+s]`: `+1` when the point is
/// `U - 1/2`, `-1` when it is `U`.
pub fn verify_trace_lemma(label: &ULabel, s: usize, table: &TrigTable, tol: f64) -> Result<IdentityReport> {
    let r = label.rank();
    if label.level() != 2 * s as u32 + 1 {
        return domain(format!("label level {} is not 2s+1 = {}", label.level(), 2 * s + 1));
    }
    let w = BWeight::new(std::iter::once(2 * s as u32 + 1).chain(std::iter::repeat_n(0, r - 1)).collect())?;
    let value = char_value(&w, label, table)?;
    let expected = match label.kind() {
        LabelKind::Shifted => 1,
        LabelKind::Plain => -1,
    };
    Ok(IdentityReport::compare(&value, &ComplexValue::from_i64(expected, table.precision()), tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{DEFAULT_BITS, IDENTITY_TOL};
    use crate::weights::{enumerate_level_set, WeightClass};

    fn y(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn trace_lemmas_at_three_three() {
        let table = TrigTable::new(12, DEFAULT_BITS);
        for kind in [LabelKind::Plain, LabelKind::Shifted] {
            let labels = subset_labels(3, 3, kind).unwrap();
            assert_eq!(labels.len(), 20);
            for l in &labels {
                let rep = verify_trace_lemma(l, 3, &table, IDENTITY_TOL).unwrap();
                assert!(rep.pass, "{l}: {rep:?}");
            }
        }
    }

    #[test]
    fn trivial_character_is_one() {
        let table = TrigTable::new(12, DEFAULT_BITS);
        for mu in enumerate_level_set(3, 7, WeightClass::All) {
            let v = char_value(&BWeight::zero(3), &mu.u_label(7).unwrap(), &table).unwrap();
            assert!(v.distance(&ComplexValue::one(DEFAULT_BITS)) < IDENTITY_TOL);
        }
    }

    #[test]
    fn vector_character_matches_cosines() {
        let table = TrigTable::new(12, DEFAULT_BITS);
        let label = BWeight::zero(3).u_label(7).unwrap();
        let v = char_value(&BWeight::omega(3, 1), &label, &table).unwrap();
        let expected: f64 = 1.0
            + [2.5f64, 1.5, 0.5]
                .iter()
                .map(|u| 2.0 * (std::f64::consts::PI * u / 6.0).cos())
                .sum::<f64>();
        assert!((v.re_f64() - expected).abs() < 1e-12);
        assert!(v.im_f64().abs() < 1e-12);
    }

    #[test]
    fn freudenthal_dimensions() {
        let dim = |fund: &[u32]| -> u64 {
            weight_multiplicities(&BWeight::new(fund.to_vec()).unwrap())
                .unwrap()
                .values()
                .sum()
        };
        assert_eq!(dim(&[0, 0, 0]), 1);
        assert_eq!(dim(&[1, 0, 0]), 7);
        assert_eq!(dim(&[0, 1, 0]), 21);
        assert_eq!(dim(&[0, 0, 1]), 8);
        assert_eq!(dim(&[2, 0, 0]), 27);
        assert_eq!(dim(&[1, 0, 1]), 48);
        assert_eq!(dim(&[0, 0, 2]), 35);
        assert_eq!(dim(&[1, 0, 0, 0]), 9);
        assert_eq!(dim(&[0, 0, 0, 1]), 16);
    }

    #[test]
    fn oracle_agrees_on_small_weights() {
        let table = TrigTable::new(12, DEFAULT_BITS);
        for w in [BWeight::omega(3, 1), BWeight::omega(3, 2), BWeight::omega(3, 3)] {
            for mu in enumerate_level_set(3, 7, WeightClass::All) {
                let label = mu.u_label(7).unwrap();
                let a = char_value(&w, &label, &table).unwrap();
                let b = char_value_oracle(&w, &label, DEFAULT_BITS).unwrap();
                assert!(a.distance(&b) < IDENTITY_TOL, "{w} at {label}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn phi_examples() {
        let table = TrigTable::new(6, DEFAULT_BITS);
        assert!(phi_k(&[], &table).distance(&ComplexValue::one(DEFAULT_BITS)) < 1e-30);
        assert!(phi_k(&[6], &table).distance(&ComplexValue::from_i64(4, DEFAULT_BITS)) < 1e-30);
    }

    #[test]
    fn positive_root_product_is_phi() {
        let table = TrigTable::new(12, DEFAULT_BITS);
        for mu in enumerate_level_set(3, 7, WeightClass::All) {
            let label = mu.u_label(7).unwrap();
            let a = positive_root_product(&mu, 7, &table).unwrap();
            let b = phi_k(label.doubled(), &table);
            assert!(a.distance(&b) < 1e-20);
            assert!(b.re_f64() > 0.0);
        }
    }

    #[test]
    fn sign_lemma() {
        for (r, s) in [(3, 3), (3, 4), (4, 3), (2, 5)] {
            for lam in YoungDiagram::enumerate(r, s) {
                assert_eq!(
                    alpha_beta_sign(&lam, r, s).unwrap(),
                    alpha_beta_sign_formula(&lam, r, s)
                );
            }
        }
        // sgn(T, T^c) is the empty-diagram case
        assert_eq!(alpha_beta_sign(&y(&[]), 3, 3).unwrap(), 1);
    }

    #[test]
    fn char_duality_single_box() {
        let left = TrigTable::new(12, DEFAULT_BITS);
        let label = ULabel::from_integers(&[6, 2, 1], 7, LabelKind::Plain).unwrap();
        let rep = verify_char_duality(&y(&[1]), &label, 3, 3, &left, &left, IDENTITY_TOL).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.sign, -1);
        let rep = verify_char_duality(&y(&[]), &label, 3, 3, &left, &left, IDENTITY_TOL).unwrap();
        assert!(rep.pass && (rep.lhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn center_trace_examples() {
        let table = TrigTable::new(12, DEFAULT_BITS);
        let zero = BWeight::zero(3);
        let v = BWeight::omega(3, 1);
        let check = |ws: &[BWeight], mu: &BWeight| {
            verify_center_trace(ws, mu, 7, &table, IDENTITY_TOL).unwrap().pass
        };
        assert!(check(&[zero.clone(), zero.clone()], &zero));
        assert!(check(&[v.clone(), v.clone()], &zero));
        let pair = [
            young_to_weight(&y(&[2]), 3).unwrap(),
            young_to_weight(&y(&[1, 1]), 3).unwrap(),
        ];
        for mu in enumerate_level_set(3, 7, WeightClass::All) {
            assert!(check(&pair, &mu));
        }
    }
}
