//! Conformal block dimensions from the Verlinde formula, fusion coefficients,
//! consistency checks and the rank-level duality of dimensions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{alternant, denominator, phi_k, shifted_weight_doubled};
use crate::complex::{CompensatedSum, ComplexValue, TrigTable, ROUNDING_TOL};
use crate::error::{domain, Error, Result};
use crate::weights::{enumerate_level_set, young_to_weight, BWeight, ULabel, WeightClass, YoungDiagram};

/// An integer dimension together with the rounding residual it came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Dimension {
    pub dim: u64,
    pub residual: f64,
    pub bits: usize,
}

/// Orbit-reduced genus-0 evaluation, with the two label families kept apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitDimension {
    pub dim: u64,
    pub residual: f64,
    /// Contribution of integral labels (spin-class `μ`).
    pub integral_part: f64,
    /// Contribution of half-integral labels (tensor `μ`).
    pub tensor_part: f64,
}

/// Precomputed data for one `(rank, level)` pair: the level set, its labels,
/// Weyl denominators and Verlinde measure. Character rows are cached per weight.
pub struct VerlindeEngine {
    rank: usize,
    level: u32,
    prec: usize,
    table: TrigTable,
    level_set: Vec<BWeight>,
    labels: Vec<ULabel>,
    denominators: Vec<ComplexValue>,
    measure: Vec<ComplexValue>,
    rows: Mutex<HashMap<BWeight, Arc<Vec<ComplexValue>>>>,
}

impl VerlindeEngine {
    pub fn new(rank: usize, level: u32, prec: usize) -> Result<Self> {
        if rank == 0 {
            return domain("rank must be positive");
        }
        if rank < 2 {
            return domain("the Verlinde engine needs rank at least 2");
        }
        let k = level as i64 + 2 * rank as i64 - 1;
        let table = TrigTable::new(k, prec);
        let level_set = enumerate_level_set(rank, level, WeightClass::All);
        let labels = level_set
            .iter()
            .map(|w| w.u_label(level))
            .collect::<Result<Vec<_>>>()?;
        let denominators = labels
            .par_iter()
            .map(|u| denominator(&table, &u.point_doubled()))
            .collect::<Result<Vec<_>>>()?;
        // |P/Q_long| k^r = 4 k^r for type B
        let norm = &ComplexValue::from_i64(4, prec) * &ComplexValue::from_i64(k, prec).powi(rank as u32);
        let measure = labels
            .par_iter()
            .map(|u| &phi_k(u.doubled(), &table) / &norm)
            .collect();
        Ok(VerlindeEngine {
            rank,
            level,
            prec,
            table,
            level_set,
            labels,
            denominators,
            measure,
            rows: Mutex::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// The level set in lexicographic order; this is also the summation order.
    pub fn level_set(&self) -> &[BWeight] {
        &self.level_set
    }

    pub fn labels(&self) -> &[ULabel] {
        &self.labels
    }

    fn check_weight(&self, w: &BWeight) -> Result<()> {
        if w.rank() != self.rank {
            return domain(format!("weight {w} does not have rank {}", self.rank));
        }
        if w.level() > self.level {
            return domain(format!("weight {w} is above level {}", self.level));
        }
        Ok(())
    }

    /// `χ_w(μ)` for every `μ` of the level set.
    pub fn character_row(&self, w: &BWeight) -> Result<Arc<Vec<ComplexValue>>> {
        self.check_weight(w)?;
        if let Some(row) = self.rows.lock().expect("row cache poisoned").get(w) {
            return Ok(row.clone());
        }
        let m = shifted_weight_doubled(w);
        let row: Vec<ComplexValue> = self
            .labels
            .par_iter()
            .zip(&self.denominators)
            .map(|(u, den)| &alternant(&self.table, &u.point_doubled(), &m) / den)
            .collect();
        let row = Arc::new(row);
        self.rows
            .lock()
            .expect("row cache poisoned")
            .insert(w.clone(), row.clone());
        Ok(row)
    }

    fn rows_for(&self, weights: &[BWeight]) -> Result<Vec<Arc<Vec<ComplexValue>>>> {
        weights.iter().map(|w| self.character_row(w)).collect()
    }

    fn term(&self, rows: &[Arc<Vec<ComplexValue>>], i: usize, genus: u32) -> ComplexValue {
        let mut t = ComplexValue::one(self.prec);
        for row in rows {
            t = &t * &row[i];
        }
        match genus {
            0 => &t * &self.measure[i],
            1 => t,
            g => &t / &self.measure[i].powi(g - 1),
        }
    }

    /// The unrounded Verlinde sum.
    pub fn raw_sum(&self, weights: &[BWeight], genus: u32) -> Result<ComplexValue> {
        let rows = self.rows_for(weights)?;
        let terms: Vec<ComplexValue> = (0..self.labels.len())
            .into_par_iter()
            .map(|i| self.term(&rows, i, genus))
            .collect();
        let mut sum = CompensatedSum::new(self.prec);
        for t in &terms {
            sum.add(t);
        }
        sum.total().check_finite("Verlinde sum")
    }

    fn round(&self, value: &ComplexValue) -> Result<(u64, f64)> {
        let (n, residual) = value.round_to_integer();
        if residual >= ROUNDING_TOL || n < 0 {
            return Err(Error::Precision { residual, bits: self.prec });
        }
        Ok((n as u64, residual))
    }

    fn dim_once(&self, weights: &[BWeight], genus: u32) -> Result<Dimension> {
        let (dim, residual) = self.round(&self.raw_sum(weights, genus)?)?;
        Ok(Dimension { dim, residual, bits: self.prec })
    }

    /// Dimension of the genus-`genus` conformal block with the given insertions.
    /// A rounding failure is retried once at doubled precision.
    pub fn dim(&self, weights: &[BWeight], genus: u32) -> Result<Dimension> {
        match self.dim_once(weights, genus) {
            Err(Error::Precision { .. }) => {
                log::info!("retrying at {} bits", 2 * self.prec);
                VerlindeEngine::new(self.rank, self.level, 2 * self.prec)?.dim_once(weights, genus)
            }
            other => other,
        }
    }

    fn orbit_once(&self, weights: &[BWeight]) -> Result<OrbitDimension> {
        for w in weights {
            if !w.is_tensor() {
                return domain(format!("orbit-reduced sum needs tensor weights, got {w}"));
            }
        }
        let rows = self.rows_for(weights)?;
        let k = self.table.k();
        let mut integral = CompensatedSum::new(self.prec);
        let mut tensor = CompensatedSum::new(self.prec);
        for (i, label) in self.labels.iter().enumerate() {
            let p1 = label.point_doubled()[0];
            if p1 > k {
                continue;
            }
            let mult = ComplexValue::from_i64(label.orbit_length() as i64, self.prec);
            let t = &mult * &self.term(&rows, i, 0);
            if label.is_integral() {
                integral.add(&t);
            } else {
                tensor.add(&t);
            }
        }
        let (a, b) = (integral.total(), tensor.total());
        let (dim, residual) = self.round(&(&a + &b))?;
        Ok(OrbitDimension {
            dim,
            residual,
            integral_part: a.re_f64(),
            tensor_part: b.re_f64(),
        })
    }

    /// Genus-0 dimension summed over orbits of the diagram automorphism, each
    /// representative weighted by its orbit length. Needs tensor weights.
    pub fn dim_orbit(&self, weights: &[BWeight]) -> Result<OrbitDimension> {
        match self.orbit_once(weights) {
            Err(Error::Precision { .. }) => {
                VerlindeEngine::new(self.rank, self.level, 2 * self.prec)?.orbit_once(weights)
            }
            other => other,
        }
    }

    /// Three-point genus-0 dimension.
    pub fn fusion_coeff(&self, a: &BWeight, b: &BWeight, c: &BWeight) -> Result<u64> {
        Ok(self.dim(&[a.clone(), b.clone(), c.clone()], 0)?.dim)
    }

    /// Checks `dim(λ) = Σ_μ dim(λ_1.., μ) dim(μ, ..λ_n)`, cutting after `split` points.
    pub fn factorization_check(&self, weights: &[BWeight], split: usize) -> Result<CheckReport> {
        if weights.len() < 2 || split == 0 || split >= weights.len() {
            return domain("factorization needs at least one point on each side");
        }
        for w in weights {
            self.check_weight(w)?;
        }
        let lhs = self.dim(weights, 0)?.dim;
        let mut rhs = 0u64;
        for mu in &self.level_set {
            let mut left = weights[..split].to_vec();
            left.push(mu.clone());
            let a = self.dim(&left, 0)?.dim;
            if a == 0 {
                continue;
            }
            let mut right = vec![mu.clone()];
            right.extend_from_slice(&weights[split..]);
            rhs += a * self.dim(&right, 0)?.dim;
        }
        Ok(CheckReport { lhs, rhs, pass: lhs == rhs })
    }

    /// Inserting the vacuum does not change the dimension.
    pub fn propagation_check(&self, weights: &[BWeight]) -> Result<CheckReport> {
        let lhs = self.dim(weights, 0)?.dim;
        let mut with_vacuum = weights.to_vec();
        with_vacuum.push(BWeight::zero(self.rank));
        let rhs = self.dim(&with_vacuum, 0)?.dim;
        Ok(CheckReport { lhs, rhs, pass: lhs == rhs })
    }
}

/// Outcome of comparing two integer dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub lhs: u64,
    pub rhs: u64,
    pub pass: bool,
}

/// One-shot Verlinde dimension.
pub fn verlinde_dim(r: usize, level: u32, genus: u32, weights: &[BWeight], prec: usize) -> Result<Dimension> {
    VerlindeEngine::new(r, level, prec)?.dim(weights, genus)
}

/// One-shot orbit-reduced dimension at level `2s+1`.
pub fn verlinde_dim_orbit(r: usize, s: usize, weights: &[BWeight], prec: usize) -> Result<OrbitDimension> {
    VerlindeEngine::new(r, 2 * s as u32 + 1, prec)?.dim_orbit(weights)
}

/// Classical decomposition of `V_λ ⊗ V_{ω_1}` for a tensor weight: add or
/// delete a box, plus `λ` itself when `a_r ≠ 0`.
pub fn lr_rule(w: &BWeight) -> Result<Vec<BWeight>> {
    let r = w.rank();
    let y = w
        .young()
        .ok_or_else(|| Error::Domain(format!("{w} is not a tensor weight")))?;
    let mut out = Vec::new();
    for (row, col) in y.addable_boxes() {
        if row <= r {
            out.push(young_to_weight(&y.with_box(row, col)?, r)?);
        }
    }
    for (row, col) in y.removable_boxes() {
        out.push(young_to_weight(&y.without_box(row, col)?, r)?);
    }
    if w.fund()[r - 1] != 0 {
        out.push(w.clone());
    }
    out.sort();
    Ok(out)
}

/// The three forms of the duality theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DualityCase {
    /// Even total size: `(λ) ↔ (λ^T)`.
    Even,
    /// Odd total size: `(λ, 0) ↔ (λ^T, σ0)`.
    Odd,
    /// Even total size: `(λ, σ0) ↔ (λ^T, σ0)`.
    Sigma0,
}

impl std::str::FromStr for DualityCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(DualityCase::Even),
            "odd" => Ok(DualityCase::Odd),
            "sigma0" => Ok(DualityCase::Sigma0),
            _ => domain(format!("unknown duality case {s:?}")),
        }
    }
}

/// Both sides of one duality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub lhs: u64,
    pub rhs: u64,
    pub pass: bool,
}

/// Engines for `so(2r+1)` at level `2s+1` and `so(2s+1)` at level `2r+1`,
/// shared across many duality checks.
pub struct DualityChecker {
    r: usize,
    s: usize,
    left: VerlindeEngine,
    right: VerlindeEngine,
}

impl DualityChecker {
    pub fn new(r: usize, s: usize, prec: usize) -> Result<Self> {
        Ok(DualityChecker {
            r,
            s,
            left: VerlindeEngine::new(r, 2 * s as u32 + 1, prec)?,
            right: VerlindeEngine::new(s, 2 * r as u32 + 1, prec)?,
        })
    }

    pub fn left(&self) -> &VerlindeEngine {
        &self.left
    }

    pub fn right(&self) -> &VerlindeEngine {
        &self.right
    }

    /// The two insertion lists compared for `case`.
    pub fn insertions(&self, diagrams: &[YoungDiagram], case: DualityCase) -> Result<(Vec<BWeight>, Vec<BWeight>)> {
        let (r, s) = (self.r, self.s);
        let total: u32 = diagrams.iter().map(|y| y.size()).sum();
        let even = total.is_multiple_of(2);
        match case {
            DualityCase::Even | DualityCase::Sigma0 if !even => {
                return domain(format!("case {case:?} needs an even total size, got {total}"))
            }
            DualityCase::Odd if even => {
                return domain(format!("case odd needs an odd total size, got {total}"))
            }
            _ => {}
        }
        let mut lhs = Vec::with_capacity(diagrams.len() + 1);
        let mut rhs = Vec::with_capacity(diagrams.len() + 1);
        for y in diagrams {
            if !y.fits(r, s) {
                return domain(format!("{y} does not fit in {r} rows and {s} columns"));
            }
            lhs.push(young_to_weight(y, r)?);
            rhs.push(young_to_weight(&y.transpose(), s)?);
        }
        let left_sigma0 = BWeight::zero(r).sigma(self.left.level())?;
        let right_sigma0 = BWeight::zero(s).sigma(self.right.level())?;
        match case {
            DualityCase::Even => {}
            DualityCase::Odd => {
                lhs.push(BWeight::zero(r));
                rhs.push(right_sigma0);
            }
            DualityCase::Sigma0 => {
                lhs.push(left_sigma0);
                rhs.push(right_sigma0);
            }
        }
        Ok((lhs, rhs))
    }

    pub fn check(&self, diagrams: &[YoungDiagram], case: DualityCase) -> Result<DualityReport> {
        let (lw, rw) = self.insertions(diagrams, case)?;
        let lhs = self.left.dim_orbit(&lw)?.dim;
        let rhs = self.right.dim_orbit(&rw)?.dim;
        Ok(DualityReport { lhs, rhs, pass: lhs == rhs })
    }
}

/// One-shot duality check.
pub fn duality_check(r: usize, s: usize, diagrams: &[YoungDiagram], case: DualityCase, prec: usize) -> Result<DualityReport> {
    DualityChecker::new(r, s, prec)?.check(diagrams, case)
}

/// JSON record for a computed dimension.
#[derive(Debug, Clone, Serialize)]
pub struct DimRecord {
    pub algebra: String,
    pub level: u32,
    pub genus: u32,
    pub weights: Vec<Vec<u32>>,
    pub dim: u64,
    pub residual: f64,
}

impl DimRecord {
    pub fn new(rank: usize, level: u32, genus: u32, weights: &[BWeight], d: &Dimension) -> Self {
        DimRecord {
            algebra: format!("B{rank}"),
            level,
            genus,
            weights: weights.iter().map(|w| w.fund().to_vec()).collect(),
            dim: d.dim,
            residual: d.residual,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DEFAULT_BITS;

    fn y(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn level_one_table() {
        let e = VerlindeEngine::new(3, 1, DEFAULT_BITS).unwrap();
        let (w1, w3, z) = (BWeight::omega(3, 1), BWeight::omega(3, 3), BWeight::zero(3));
        let d = |ws: &[BWeight]| e.dim(ws, 0).unwrap().dim;
        assert_eq!(d(&[w1.clone(), w1.clone(), z.clone()]), 1);
        assert_eq!(d(&[w1.clone(), w1.clone(), w1.clone()]), 0);
        assert_eq!(d(&[w1.clone(), w1.clone(), w3.clone()]), 0);
        assert_eq!(d(&[w1.clone(), w3.clone(), w3.clone()]), 1);
    }

    #[test]
    fn genus_one_counts_level_set() {
        let e = VerlindeEngine::new(3, 3, DEFAULT_BITS).unwrap();
        let n = e.level_set().len() as u64;
        assert_eq!(e.dim(&[], 1).unwrap().dim, n);
    }

    #[test]
    fn two_point_delta() {
        let e = VerlindeEngine::new(2, 3, DEFAULT_BITS).unwrap();
        for a in e.level_set() {
            for b in e.level_set() {
                let d = e.dim(&[a.clone(), b.clone()], 0).unwrap().dim;
                assert_eq!(d, (a == b) as u64, "{a} {b}");
            }
        }
    }

    #[test]
    fn lr_rule_examples() {
        assert_eq!(lr_rule(&BWeight::zero(3)).unwrap(), vec![BWeight::omega(3, 1)]);
        let mut expected = vec![
            BWeight::zero(3),
            young_to_weight(&y(&[2]), 3).unwrap(),
            young_to_weight(&y(&[1, 1]), 3).unwrap(),
        ];
        expected.sort();
        assert_eq!(lr_rule(&BWeight::omega(3, 1)).unwrap(), expected);
        let full = young_to_weight(&y(&[1, 1, 1]), 3).unwrap();
        assert!(lr_rule(&full).unwrap().contains(&full));
        assert!(lr_rule(&BWeight::omega(3, 3)).is_err());
    }

    #[test]
    fn orbit_sum_matches_full_sum() {
        let e = VerlindeEngine::new(3, 7, DEFAULT_BITS).unwrap();
        let ws = [
            young_to_weight(&y(&[1]), 3).unwrap(),
            young_to_weight(&y(&[2]), 3).unwrap(),
            young_to_weight(&y(&[1]), 3).unwrap(),
        ];
        assert_eq!(e.dim_orbit(&ws).unwrap().dim, 1);
        assert_eq!(e.dim(&ws, 0).unwrap().dim, 1);
    }

    #[test]
    fn duality_examples() {
        let c = DualityChecker::new(3, 3, DEFAULT_BITS).unwrap();
        let rep = c.check(&[y(&[1]), y(&[1])], DualityCase::Even).unwrap();
        assert_eq!(rep, DualityReport { lhs: 1, rhs: 1, pass: true });
        assert!(c.check(&[y(&[2]), y(&[1, 1])], DualityCase::Sigma0).unwrap().pass);
        assert!(c.check(&[y(&[1])], DualityCase::Even).is_err());
        let c = DualityChecker::new(3, 4, DEFAULT_BITS).unwrap();
        assert!(c.check(&[y(&[1]), y(&[1]), y(&[1])], DualityCase::Odd).unwrap().pass);
    }

    #[test]
    fn rejects_weight_above_level() {
        let e = VerlindeEngine::new(3, 1, DEFAULT_BITS).unwrap();
        let w = BWeight::new(vec![2, 0, 0]).unwrap();
        assert!(matches!(e.dim(&[w], 0), Err(Error::Domain(_))));
    }
}
