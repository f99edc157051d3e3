//! Configurable-precision complex numbers, root-of-unity tables and small
//! dense determinants.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};

use crate::error::{Error, Result};

/// Default working precision in bits.
pub const DEFAULT_BITS: usize = 192;

/// Residue allowed when checking an identity between complex values.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Residue allowed when rounding a sum to an integer.
pub const ROUNDING_TOL: f64 = 1e-6;

const RM: RoundingMode = RoundingMode::ToEven;

fn consts() -> Consts {
    Consts::new().expect("allocating astro-float constant cache")
}

/// Nearest `f64` to a `BigFloat`.
pub(crate) fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let Some((m, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let bits = Word::BITS as i32;
    let mut v = 0.0f64;
    for (i, w) in m.iter().rev().take(128 / bits as usize).enumerate() {
        v += (*w as f64) * 2f64.powi(-bits * (i as i32 + 1));
    }
    // split the scaling so neither factor over/underflows on its own
    let v = v * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// A complex number with `re` and `im` carried at `prec` bits.
#[derive(Clone)]
pub struct ComplexValue {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

impl ComplexValue {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        ComplexValue { re, im, prec }
    }

    pub fn zero(prec: usize) -> Self {
        ComplexValue::from_i64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        ComplexValue::from_i64(1, prec)
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        ComplexValue {
            re: BigFloat::from_i64(n, prec),
            im: BigFloat::from_i64(0, prec),
            prec,
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        ComplexValue {
            re: BigFloat::from_f64(re, prec),
            im: BigFloat::from_f64(im, prec),
            prec,
        }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn re_f64(&self) -> f64 {
        big_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        big_to_f64(&self.im)
    }

    pub fn is_finite(&self) -> bool {
        let ok = |x: &BigFloat| !x.is_nan() && !x.is_inf();
        ok(&self.re) && ok(&self.im)
    }

    /// Errors out if a NaN or infinity slipped through.
    pub fn check_finite(self, what: &str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::Singular(format!("{what} is not finite")))
        }
    }

    /// `|z|^2` as a real `BigFloat`.
    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs_f64(&self) -> f64 {
        big_to_f64(&self.norm_sqr()).sqrt()
    }

    pub fn conj(&self) -> Self {
        ComplexValue { re: self.re.clone(), im: BigFloat::neg(&self.im), prec: self.prec }
    }

    /// `self^n` by repeated squaring.
    pub fn powi(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexValue::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// `|self - other|`.
    pub fn distance(&self, other: &ComplexValue) -> f64 {
        (self - other).abs_f64()
    }

    /// Nearest integer to the real part together with the rounding residual
    /// `max(|re - n|, |im|)`.
    pub fn round_to_integer(&self) -> (i64, f64) {
        let re = self.re_f64();
        let n = re.round();
        let frac = self.re.sub(&BigFloat::from_f64(n, self.prec), self.prec, RM);
        let residual = big_to_f64(&frac).abs().max(self.im_f64().abs());
        (n as i64, residual)
    }
}

impl fmt::Debug for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}{:+e}i", self.re_f64(), self.im_f64())
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re_f64(), self.im_f64())
    }
}

impl Add for &ComplexValue {
    type Output = ComplexValue;

    fn add(self, rhs: &ComplexValue) -> ComplexValue {
        let p = self.prec.max(rhs.prec);
        ComplexValue {
            re: self.re.add(&rhs.re, p, RM),
            im: self.im.add(&rhs.im, p, RM),
            prec: p,
        }
    }
}

impl Sub for &ComplexValue {
    type Output = ComplexValue;

    fn sub(self, rhs: &ComplexValue) -> ComplexValue {
        let p = self.prec.max(rhs.prec);
        ComplexValue {
            re: self.re.sub(&rhs.re, p, RM),
            im: self.im.sub(&rhs.im, p, RM),
            prec: p,
        }
    }
}

impl Mul for &ComplexValue {
    type Output = ComplexValue;

    fn mul(self, rhs: &ComplexValue) -> ComplexValue {
        let p = self.prec.max(rhs.prec);
        let ac = self.re.mul(&rhs.re, p, RM);
        let bd = self.im.mul(&rhs.im, p, RM);
        let ad = self.re.mul(&rhs.im, p, RM);
        let bc = self.im.mul(&rhs.re, p, RM);
        ComplexValue { re: ac.sub(&bd, p, RM), im: ad.add(&bc, p, RM), prec: p }
    }
}

impl Div for &ComplexValue {
    type Output = ComplexValue;

    fn div(self, rhs: &ComplexValue) -> ComplexValue {
        let p = self.prec.max(rhs.prec);
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        ComplexValue {
            re: num.re.div(&den, p, RM),
            im: num.im.div(&den, p, RM),
            prec: p,
        }
    }
}

impl Neg for &ComplexValue {
    type Output = ComplexValue;

    fn neg(self) -> ComplexValue {
        ComplexValue { re: BigFloat::neg(&self.re), im: BigFloat::neg(&self.im), prec: self.prec }
    }
}

/// Neumaier-compensated running sum. Adding the same terms in the same order
/// always yields the same bits.
pub struct CompensatedSum {
    sum: [BigFloat; 2],
    comp: [BigFloat; 2],
    prec: usize,
}

impl CompensatedSum {
    pub fn new(prec: usize) -> Self {
        let z = || BigFloat::from_i64(0, prec);
        CompensatedSum { sum: [z(), z()], comp: [z(), z()], prec }
    }

    pub fn add(&mut self, x: &ComplexValue) {
        let p = self.prec;
        for (i, xi) in [&x.re, &x.im].into_iter().enumerate() {
            let s = &self.sum[i];
            let t = s.add(xi, p, RM);
            let c = if s.abs_cmp(xi).unwrap_or(0) >= 0 {
                s.sub(&t, p, RM).add(xi, p, RM)
            } else {
                xi.sub(&t, p, RM).add(s, p, RM)
            };
            self.comp[i] = self.comp[i].add(&c, p, RM);
            self.sum[i] = t;
        }
    }

    pub fn total(&self) -> ComplexValue {
        let p = self.prec;
        ComplexValue {
            re: self.sum[0].add(&self.comp[0], p, RM),
            im: self.sum[1].add(&self.comp[1], p, RM),
            prec: p,
        }
    }
}

/// The `4k`-th roots of unity `exp(2πi n / 4k)`, `n = 0..4k`.
///
/// With every half-integer stored doubled, `exp(2πi x y / k)` for half-integers
/// `x, y` is the entry at index `(2x)(2y) mod 4k`.
#[derive(Clone, Debug)]
pub struct TrigTable {
    k: i64,
    prec: usize,
    roots: Vec<ComplexValue>,
}

impl TrigTable {
    pub fn new(k: i64, prec: usize) -> Self {
        assert!(k > 0, "k must be positive");
        let n = 4 * k;
        let guard = prec + 64;
        let mut cc = consts();
        let two_pi = cc.pi(guard, RM).mul(&BigFloat::from_i64(2, guard), guard, RM);
        let step = two_pi.div(&BigFloat::from_i64(n, guard), guard, RM);
        let roots = (0..n)
            .map(|i| {
                let theta = step.mul(&BigFloat::from_i64(i, guard), guard, RM);
                let mut re = theta.cos(guard, RM, &mut cc);
                let mut im = theta.sin(guard, RM, &mut cc);
                re.set_precision(prec, RM).expect("rounding cosine");
                im.set_precision(prec, RM).expect("rounding sine");
                ComplexValue { re, im, prec }
            })
            .collect();
        TrigTable { k, prec, roots }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// `exp(2πi n / 4k)`.
    pub fn root(&self, n: i64) -> &ComplexValue {
        &self.roots[n.rem_euclid(4 * self.k) as usize]
    }

    /// `sin(2π n / 4k)`, i.e. `sin(π x / k)` for `n = 2x`.
    pub fn sin(&self, n: i64) -> BigFloat {
        self.root(n).im.clone()
    }

    /// `exp(2πi n/4k) - exp(-2πi n/4k) = 2i sin(2π n/4k)`.
    pub fn alternating(&self, n: i64) -> ComplexValue {
        self.root(n) - self.root(-n)
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(mut m: Vec<Vec<ComplexValue>>, prec: usize) -> ComplexValue {
    let n = m.len();
    let mut det = ComplexValue::one(prec);
    for col in 0..n {
        let mut pivot = col;
        let mut best = m[col][col].norm_sqr();
        for (row, entries) in m.iter().enumerate().skip(col + 1) {
            let cand = entries[col].norm_sqr();
            if cand.cmp(&best).unwrap_or(0) > 0 {
                best = cand;
                pivot = row;
            }
        }
        if best.is_zero() {
            return ComplexValue::zero(prec);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -&det;
        }
        let p = m[col][col].clone();
        det = &det * &p;
        for row in col + 1..n {
            let factor = &m[row][col] / &p;
            if factor.re.is_zero() && factor.im.is_zero() {
                continue;
            }
            for j in col + 1..n {
                let delta = &factor * &m[col][j];
                m[row][j] = &m[row][j] - &delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_conversion_round_trips() {
        for x in [1.0, -2.5, 1e-12, 123456.789, -3.0e20, 0.1] {
            assert_eq!(big_to_f64(&BigFloat::from_f64(x, 192)), x);
        }
        assert_eq!(big_to_f64(&BigFloat::from_i64(0, 192)), 0.0);
    }

    #[test]
    fn table_matches_std_trig() {
        let t = TrigTable::new(7, 128);
        for n in -30..30 {
            let theta = std::f64::consts::PI * 2.0 * n as f64 / 28.0;
            assert!((t.root(n).re_f64() - theta.cos()).abs() < 1e-13);
            assert!((t.root(n).im_f64() - theta.sin()).abs() < 1e-13);
        }
    }

    #[test]
    fn determinant_small() {
        let c = |x: i64| ComplexValue::from_i64(x, 128);
        let m = vec![vec![c(0), c(2)], vec![c(3), c(4)]];
        assert_eq!(determinant(m, 128).round_to_integer(), (-6, 0.0));
        let m = vec![
            vec![c(2), c(-1), c(0)],
            vec![c(-1), c(2), c(-1)],
            vec![c(0), c(-1), c(2)],
        ];
        let (v, res) = determinant(m, 128).round_to_integer();
        assert_eq!(v, 4);
        assert!(res < 1e-30);
    }

    #[test]
    fn complex_arithmetic() {
        let a = ComplexValue::from_f64(1.0, 2.0, 128);
        let b = ComplexValue::from_f64(3.0, -1.0, 128);
        let q = &(&a * &b) / &b;
        assert!(q.distance(&a) < 1e-30);
        let p = a.powi(3);
        assert!(p.distance(&(&(&a * &a) * &a)) < 1e-30);
    }

    #[test]
    fn compensated_sum_is_exact_on_integers() {
        let mut s = CompensatedSum::new(128);
        for i in 1..=100 {
            s.add(&ComplexValue::from_i64(i, 128));
        }
        assert_eq!(s.total().round_to_integer(), (5050, 0.0));
    }
}
