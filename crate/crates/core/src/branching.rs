//! Conformal embedding `so(2r+1) ⊕ so(2s+1) ⊂ so((2r+1)(2s+1))`: central
//! charges, trace anomalies, Dynkin indices and the level-1 branching sets.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::weights::{young_to_weight, BWeight, YoungDiagram};

pub type Rational = Ratio<i64>;

/// Sizes and levels of the embedding for a given `(r, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EmbeddingData {
    pub r: usize,
    pub s: usize,
    /// `N = (2r+1)(2s+1)`.
    pub n: usize,
    /// Rank of `so(N)`.
    pub d: usize,
    pub levels: (u32, u32),
    pub dual_coxeter: (u32, u32, u32),
}

impl EmbeddingData {
    pub fn new(r: usize, s: usize) -> Self {
        let n = (2 * r + 1) * (2 * s + 1);
        EmbeddingData {
            r,
            s,
            n,
            d: (n - 1) / 2,
            levels: (2 * s as u32 + 1, 2 * r as u32 + 1),
            dual_coxeter: (2 * r as u32 - 1, 2 * s as u32 - 1, n as u32 - 2),
        }
    }
}

/// `c(so(2r+1), ℓ) = ℓ r(2r+1) / (2r-1+ℓ)`.
pub fn central_charge(r: usize, level: u32) -> Rational {
    let (r, l) = (r as i64, level as i64);
    if l == 0 {
        return Rational::from_integer(0);
    }
    Rational::new(l * r * (2 * r + 1), 2 * r - 1 + l)
}

/// Central charges of the two factors add up to that of `so(N)` at level 1.
pub fn conformal_check(r: usize, s: usize) -> bool {
    let e = EmbeddingData::new(r, s);
    central_charge(r, e.levels.0) + central_charge(s, e.levels.1) == central_charge(e.d, 1)
}

/// `Δ_λ = (λ, λ+2ρ) / 2(g* + ℓ)` with `g* = 2r - 1`.
pub fn trace_anomaly(w: &BWeight, level: u32) -> Result<Rational> {
    if w.level() > level {
        return domain(format!("weight {w} is above level {level}"));
    }
    let r = w.rank() as i64;
    // doubled coordinates: (λ, λ+2ρ) = Σ Λ_i (Λ_i + 4r - 4i + 2) / 4, i 1-based
    let num: i64 = w
        .l_coords_doubled()
        .iter()
        .enumerate()
        .map(|(i, l)| l * (l + 4 * r - 4 * (i as i64 + 1) + 2))
        .sum();
    Ok(Rational::new(num, 4 * 2 * (2 * r - 1 + level as i64)))
}

/// `Δ_λ + Δ_{λ^T} = |λ| / 2` for `λ` in the `r x s` box.
pub fn delta_sum_check(y: &YoungDiagram, r: usize, s: usize) -> Result<bool> {
    if !y.fits(r, s) {
        return domain(format!("{y} does not fit in {r} rows and {s} columns"));
    }
    let left = trace_anomaly(&young_to_weight(y, r)?, 2 * s as u32 + 1)?;
    let right = trace_anomaly(&young_to_weight(&y.transpose(), s)?, 2 * r as u32 + 1)?;
    Ok(left + right == Rational::new(y.size() as i64, 2))
}

/// The level-1 `so(N)` weight a branching component comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Vacuum,
    Vector,
}

impl std::str::FromStr for Source {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vacuum" => Ok(Source::Vacuum),
            "vector" => Ok(Source::Vector),
            _ => domain(format!("unknown source {s:?}")),
        }
    }
}

/// Which sides of `(λ, λ^T)` the diagram automorphism is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "plain")]
    Plain,
    #[serde(rename = "sigmaL")]
    SigmaL,
    #[serde(rename = "sigmaR")]
    SigmaR,
    #[serde(rename = "sigmaLR")]
    SigmaLR,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Plain, Variant::SigmaL, Variant::SigmaR, Variant::SigmaLR];

    pub fn sigma_left(self) -> bool {
        matches!(self, Variant::SigmaL | Variant::SigmaLR)
    }

    pub fn sigma_right(self) -> bool {
        matches!(self, Variant::SigmaR | Variant::SigmaLR)
    }

    /// The source receiving this variant for a diagram of the given size.
    pub fn source(self, size: u32) -> Source {
        let flips = self.sigma_left() as u32 + self.sigma_right() as u32;
        if (size + flips).is_multiple_of(2) {
            Source::Vacuum
        } else {
            Source::Vector
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "sigmaL" => Ok(Variant::SigmaL),
            "sigmaR" => Ok(Variant::SigmaR),
            "sigmaLR" => Ok(Variant::SigmaLR),
            _ => domain(format!("unknown variant {s:?}")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Variant::Plain => "plain",
            Variant::SigmaL => "sigmaL",
            Variant::SigmaR => "sigmaR",
            Variant::SigmaLR => "sigmaLR",
        };
        f.write_str(name)
    }
}

/// One component of the decomposition of a level-1 `so(N)` module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BranchPair {
    pub left: BWeight,
    pub right: BWeight,
    pub source: Source,
    pub generator: YoungDiagram,
    pub variant: Variant,
}

impl BranchPair {
    /// The pair generated by `λ` under `variant`, routed to its source.
    pub fn new(y: &YoungDiagram, variant: Variant, r: usize, s: usize) -> Result<Self> {
        if !y.fits(r, s) {
            return domain(format!("{y} does not fit in {r} rows and {s} columns"));
        }
        let mut left = young_to_weight(y, r)?;
        let mut right = young_to_weight(&y.transpose(), s)?;
        if variant.sigma_left() {
            left = left.sigma(2 * s as u32 + 1)?;
        }
        if variant.sigma_right() {
            right = right.sigma(2 * r as u32 + 1)?;
        }
        Ok(BranchPair {
            left,
            right,
            source: variant.source(y.size()),
            generator: y.clone(),
            variant,
        })
    }

    /// `Δ_left + Δ_right`.
    pub fn anomaly(&self) -> Result<Rational> {
        let (r, s) = (self.left.rank() as u32, self.right.rank() as u32);
        Ok(trace_anomaly(&self.left, 2 * s + 1)? + trace_anomaly(&self.right, 2 * r + 1)?)
    }
}

/// Branching components of the given source whose generating diagram has at
/// most `bound` boxes. Ordered by diagram, then variant.
pub fn branch_set(r: usize, s: usize, source: Source, bound: u32) -> Result<Vec<BranchPair>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for y in YoungDiagram::enumerate(r, s) {
        if y.size() > bound {
            break;
        }
        for variant in Variant::ALL {
            if variant.source(y.size()) != source {
                continue;
            }
            let pair = BranchPair::new(&y, variant, r, s)?;
            if seen.insert((pair.left.clone(), pair.right.clone())) {
                out.push(pair);
            }
        }
    }
    Ok(out)
}

/// Splits a tensor weight of level `≤ 2s+1` into a diagram in the `r x s` box
/// and whether the automorphism was applied.
fn unfold(w: &BWeight, r: usize, s: usize) -> Option<(YoungDiagram, bool)> {
    let level = 2 * s as u32 + 1;
    if w.rank() != r || w.level() > level || !w.is_tensor() {
        return None;
    }
    if let Some(y) = w.young().filter(|y| y.fits(r, s)) {
        return Some((y, false));
    }
    let y = w.sigma(level).ok()?.young()?;
    y.fits(r, s).then_some((y, true))
}

/// Identifies `(left, right)` as a branching component, or `None`.
pub fn classify_pair(left: &BWeight, right: &BWeight) -> Option<BranchPair> {
    let (r, s) = (left.rank(), right.rank());
    let (lam, sl) = unfold(left, r, s)?;
    let (mu, sr) = unfold(right, s, r)?;
    if mu != lam.transpose() {
        return None;
    }
    let variant = match (sl, sr) {
        (false, false) => Variant::Plain,
        (true, false) => Variant::SigmaL,
        (false, true) => Variant::SigmaR,
        (true, true) => Variant::SigmaLR,
    };
    BranchPair::new(&lam, variant, r, s).ok()
}

type IntMatrix = Vec<Vec<i64>>;

fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0; n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn trace_of_product(a: &IntMatrix, b: &IntMatrix) -> i64 {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|k| a[i][k] * b[k][i]).sum::<i64>()).sum()
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

/// The Cartan element `E_{1,1} - E_{-1,-1}` of `so(2r+1)` in the basis
/// `e_1..e_r, e_0, e_{-r}..e_{-1}`.
fn cartan_generator(r: usize) -> IntMatrix {
    let n = 2 * r + 1;
    let mut h = vec![vec![0; n]; n];
    h[0][0] = 1;
    h[n - 1][n - 1] = -1;
    h
}

/// Dynkin indices of `so(2r+1)` and `so(2s+1)` inside `so(N)`, computed by
/// comparing `tr(X^2)` before and after `X ↦ X ⊗ I`.
pub fn dynkin_index(r: usize, s: usize) -> (i64, i64) {
    let index = |a: usize, b: usize, left: bool| {
        let x = cartan_generator(a);
        let big = if left {
            kron(&x, &identity(2 * b + 1))
        } else {
            kron(&identity(2 * b + 1), &x)
        };
        let small = trace_of_product(&x, &x);
        let embedded = trace_of_product(&big, &big);
        assert_eq!(embedded % small, 0, "index must be an integer");
        embedded / small
    };
    (index(r, s, true), index(s, r, false))
}
