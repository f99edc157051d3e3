//! Young diagrams, dominant weights of type B, the diagram automorphism and
//! u-coordinates.
//!
//! Half-integers are stored doubled throughout, so every comparison here is
//! exact integer arithmetic.

use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// A partition, stored as weakly decreasing positive row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl TryFrom<Vec<u32>> for YoungDiagram {
    type Error = Error;

    fn try_from(rows: Vec<u32>) -> Result<Self> {
        YoungDiagram::new(rows)
    }
}

impl From<YoungDiagram> for Vec<u32> {
    fn from(y: YoungDiagram) -> Self {
        y.rows
    }
}

impl YoungDiagram {
    /// Builds a diagram from row lengths. Trailing zeros are dropped.
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("rows {rows:?} are not weakly decreasing"));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn empty() -> Self {
        YoungDiagram::default()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Length of row `i` (0-based); zero past the last row.
    pub fn row(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// At most `r` rows and at most `s` columns.
    pub fn fits(&self, r: usize, s: usize) -> bool {
        self.rows.len() <= r && self.row(0) as usize <= s
    }

    pub fn transpose(&self) -> YoungDiagram {
        let cols = self.row(0) as usize;
        let rows = (0..cols)
            .map(|c| self.rows.iter().filter(|&&len| len as usize > c).count() as u32)
            .collect();
        YoungDiagram { rows }
    }

    /// Whether the box in row `i`, column `j` (both 1-based) belongs to the diagram.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && self.row(i - 1) as usize >= j
    }

    /// Boxes `(row, col)`, 1-based, in row-major order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &len) in self.rows.iter().enumerate() {
            for j in 1..=len as usize {
                out.push((i + 1, j));
            }
        }
        out
    }

    /// Boxes that can be added while staying a partition.
    pub fn addable_boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..=self.rows.len() {
            let len = self.row(i);
            if i == 0 || self.row(i - 1) > len {
                out.push((i + 1, len as usize + 1));
            }
        }
        out
    }

    /// Boxes whose removal leaves a partition.
    pub fn removable_boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &len) in self.rows.iter().enumerate() {
            if self.row(i + 1) < len {
                out.push((i + 1, len as usize));
            }
        }
        out
    }

    /// Adds the box at `(row, col)`; fails unless it is addable.
    pub fn with_box(&self, row: usize, col: usize) -> Result<YoungDiagram> {
        if !self.addable_boxes().contains(&(row, col)) {
            return domain(format!("box ({row},{col}) is not addable to {self}"));
        }
        let mut rows = self.rows.clone();
        if row > rows.len() {
            rows.push(1);
        } else {
            rows[row - 1] += 1;
        }
        Ok(YoungDiagram { rows })
    }

    /// Removes the box at `(row, col)`; fails unless it is removable.
    pub fn without_box(&self, row: usize, col: usize) -> Result<YoungDiagram> {
        if !self.removable_boxes().contains(&(row, col)) {
            return domain(format!("box ({row},{col}) is not removable from {self}"));
        }
        let mut rows = self.rows.clone();
        rows[row - 1] -= 1;
        YoungDiagram::new(rows)
    }

    /// Every diagram inside the `r x s` rectangle, ordered by size and then
    /// with longer first rows first.
    pub fn enumerate(r: usize, s: usize) -> Vec<YoungDiagram> {
        fn go(r: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
            out.push(YoungDiagram { rows: prefix.clone() });
            if prefix.len() == r {
                return;
            }
            for len in 1..=max {
                prefix.push(len);
                go(r, len, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(r, s as u32, &mut Vec::new(), &mut out);
        out.sort_by_key(|y| (y.size(), Reverse(y.rows.clone())));
        out
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// Dominant integral weight of so(2r+1), given by its coefficients on the
/// fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BWeight {
    rank: usize,
    fund: Vec<u32>,
}

impl BWeight {
    pub fn new(fund: Vec<u32>) -> Result<Self> {
        if fund.is_empty() {
            return domain("rank must be positive");
        }
        Ok(BWeight { rank: fund.len(), fund })
    }

    pub fn zero(rank: usize) -> Self {
        assert!(rank > 0, "rank must be positive");
        BWeight { rank, fund: vec![0; rank] }
    }

    /// The fundamental weight `ω_i`, 1-based.
    pub fn omega(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "fundamental index out of range");
        let mut w = BWeight::zero(rank);
        w.fund[i - 1] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn fund(&self) -> &[u32] {
        &self.fund
    }

    /// `(λ, θ)`: `a_1 + 2(a_2 + ... + a_{r-1}) + a_r`. For rank 1 this is `a_1`.
    pub fn level(&self) -> u32 {
        let r = self.rank;
        if r == 1 {
            return self.fund[0];
        }
        let middle: u32 = self.fund[1..r - 1].iter().sum();
        self.fund[0] + 2 * middle + self.fund[r - 1]
    }

    /// Tensor weights (those lifting to SO(2r+1)) have `a_r` even.
    pub fn is_tensor(&self) -> bool {
        self.fund[self.rank - 1].is_multiple_of(2)
    }

    /// Doubled L-coordinates `2λ^i`.
    pub fn l_coords_doubled(&self) -> Vec<i64> {
        let r = self.rank;
        let mut out = vec![0i64; r];
        let mut acc = self.fund[r - 1] as i64;
        out[r - 1] = acc;
        for i in (0..r - 1).rev() {
            acc += 2 * self.fund[i] as i64;
            out[i] = acc;
        }
        out
    }

    /// Inverse of [`young_to_weight`] on tensor weights.
    pub fn young(&self) -> Option<YoungDiagram> {
        if !self.is_tensor() {
            return None;
        }
        let rows = self.l_coords_doubled().iter().map(|&x| (x / 2) as u32).collect();
        YoungDiagram::new(rows).ok()
    }

    fn check_level(&self, level: u32) -> Result<()> {
        if self.level() > level {
            return domain(format!(
                "weight {self} has level {} above {level}",
                self.level()
            ));
        }
        Ok(())
    }

    /// The diagram automorphism: `a_1` becomes `ℓ - level(w)`, other
    /// coefficients are unchanged.
    pub fn sigma(&self, level: u32) -> Result<BWeight> {
        self.check_level(level)?;
        let mut fund = self.fund.clone();
        fund[0] = level - self.level();
        Ok(BWeight { rank: self.rank, fund })
    }

    /// u-coordinates of `λ + ρ`.
    pub fn u_label(&self, level: u32) -> Result<ULabel> {
        self.check_level(level)?;
        let r = self.rank;
        let mut doubled = vec![0i64; r];
        let mut acc = self.fund[r - 1] as i64 + 1;
        doubled[r - 1] = acc;
        for i in (0..r - 1).rev() {
            acc += 2 * (self.fund[i] as i64 + 1);
            doubled[i] = acc;
        }
        Ok(ULabel { doubled, level, kind: LabelKind::Plain })
    }

    /// Integer label `u'_i = u_i + 1/2` of a tensor weight.
    pub fn u0_label(&self, level: u32) -> Result<ULabel> {
        if !self.is_tensor() {
            return domain(format!("{self} is not a tensor weight"));
        }
        let u = self.u_label(level)?;
        Ok(ULabel {
            doubled: u.doubled.iter().map(|d| d + 1).collect(),
            level,
            kind: LabelKind::Shifted,
        })
    }

    /// Recovers the weight from a label of either kind.
    pub fn from_u_label(label: &ULabel) -> Result<BWeight> {
        let d = label.point_doubled();
        let r = d.len();
        let mut fund = vec![0u32; r];
        for i in 0..r {
            let t = if i + 1 == r {
                d[i]
            } else {
                let diff = d[i] - d[i + 1];
                if diff % 2 != 0 {
                    return domain(format!("label {label} mixes integer and half-integer entries"));
                }
                diff / 2
            };
            if t < 1 {
                return domain(format!("label {label} is not strictly decreasing and positive"));
            }
            fund[i] = (t - 1) as u32;
        }
        let w = BWeight { rank: r, fund };
        w.check_level(label.level)?;
        Ok(w)
    }
}

impl fmt::Display for BWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.fund.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Tensor weight whose L-coordinates are the rows of `y`.
pub fn young_to_weight(y: &YoungDiagram, r: usize) -> Result<BWeight> {
    if r == 0 {
        return domain("rank must be positive");
    }
    if y.num_rows() > r {
        return domain(format!("{y} has more than {r} rows"));
    }
    let fund = (0..r)
        .map(|i| {
            if i + 1 == r {
                2 * y.row(i)
            } else {
                y.row(i) - y.row(i + 1)
            }
        })
        .collect();
    Ok(BWeight { rank: r, fund })
}

/// Which subset of the level set to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightClass {
    All,
    Tensor,
}

/// Warning text for ranks below the range the duality theory is stated for.
pub fn rank_warning(r: usize) -> Option<String> {
    (r < 3).then(|| format!("rank {r} is below 3; results are smoke tests only"))
}

/// Dominant weights of level at most `level`, in lexicographic order of
/// fundamental coefficients.
pub fn enumerate_level_set(r: usize, level: u32, class: WeightClass) -> Vec<BWeight> {
    assert!(r > 0, "rank must be positive");
    if let Some(w) = rank_warning(r) {
        log::warn!("{w}");
    }
    fn go(r: usize, level: u32, class: WeightClass, prefix: &mut Vec<u32>, out: &mut Vec<BWeight>) {
        let i = prefix.len();
        if i == r {
            let w = BWeight { rank: r, fund: prefix.clone() };
            if w.level() <= level && (class == WeightClass::All || w.is_tensor()) {
                out.push(w);
            }
            return;
        }
        let used: u32 = prefix
            .iter()
            .enumerate()
            .map(|(j, &a)| if j == 0 || j + 1 == r { a } else { 2 * a })
            .sum();
        let weight = if i == 0 || i + 1 == r { 1 } else { 2 };
        for a in 0..=(level - used) / weight {
            prefix.push(a);
            go(r, level, class, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(r, level, class, &mut Vec::new(), &mut out);
    out
}

/// How the stored entries of a [`ULabel`] relate to the evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LabelKind {
    /// Entries are the coordinates `u_i` of `μ + ρ`.
    Plain,
    /// Entries are `u'_i = u_i + 1/2` for a tensor weight.
    Shifted,
}

/// Strictly decreasing positive entries, stored doubled, attached to a level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ULabel {
    doubled: Vec<i64>,
    level: u32,
    kind: LabelKind,
}

impl ULabel {
    /// Label from doubled entries. Validates ordering, class and level bound.
    pub fn from_doubled(doubled: Vec<i64>, level: u32, kind: LabelKind) -> Result<Self> {
        let label = ULabel { doubled, level, kind };
        if label.doubled.is_empty() {
            return domain("empty label");
        }
        BWeight::from_u_label(&label)?;
        Ok(label)
    }

    /// Label from integer entries.
    pub fn from_integers(entries: &[i64], level: u32, kind: LabelKind) -> Result<Self> {
        ULabel::from_doubled(entries.iter().map(|e| 2 * e).collect(), level, kind)
    }

    pub fn rank(&self) -> usize {
        self.doubled.len()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn kind(&self) -> LabelKind {
        self.kind
    }

    /// `k = ℓ + 2r - 1`.
    pub fn k(&self) -> i64 {
        self.level as i64 + 2 * self.rank() as i64 - 1
    }

    /// Stored entries, doubled.
    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    /// Stored entries as integers, if they all are.
    pub fn integers(&self) -> Option<Vec<i64>> {
        self.is_integral().then(|| self.doubled.iter().map(|d| d / 2).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|d| d % 2 == 0)
    }

    /// Doubled coordinates of the evaluation point `μ + ρ`.
    pub fn point_doubled(&self) -> Vec<i64> {
        match self.kind {
            LabelKind::Plain => self.doubled.clone(),
            LabelKind::Shifted => self.doubled.iter().map(|d| d - 1).collect(),
        }
    }

    /// `2u_1 + 2u_1'` for a label and its image. For `B_1` the automorphism
    /// is `a_1 ↦ ℓ - a_1`, which is not the rotation `u_1 ↦ k - u_1`.
    fn reflection_sum(&self) -> i64 {
        if self.rank() == 1 {
            self.k() + 1
        } else {
            2 * self.k()
        }
    }

    /// 1 if the diagram automorphism fixes the label, 2 otherwise.
    pub fn orbit_length(&self) -> usize {
        if 2 * self.point_doubled()[0] == self.reflection_sum() {
            1
        } else {
            2
        }
    }

    /// Image under the diagram automorphism: `u_1 ↦ k - u_1` for rank at least 2.
    pub fn sigma(&self) -> ULabel {
        let mut doubled = self.doubled.clone();
        let shift = match self.kind {
            LabelKind::Plain => 0,
            LabelKind::Shifted => 1,
        };
        let p1 = self.doubled[0] - shift;
        doubled[0] = self.reflection_sum() - p1 + shift;
        ULabel { doubled, level: self.level, kind: self.kind }
    }

    /// The orbit member with the smaller `u_1`.
    pub fn representative(&self) -> ULabel {
        if 2 * self.point_doubled()[0] > self.reflection_sum() {
            self.sigma()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for ULabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.doubled.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if d % 2 == 0 {
                write!(f, "{}", d / 2)?;
            } else {
                write!(f, "{d}/2")?;
            }
        }
        write!(f, ")")?;
        if self.kind == LabelKind::Shifted {
            write!(f, "'")?;
        }
        Ok(())
    }
}

fn complement(set: &[i64], n: i64) -> Vec<i64> {
    (1..=n).rev().filter(|x| !set.contains(x)).collect()
}

fn checked_subset(label: &ULabel, r: usize, s: usize, kind: LabelKind) -> Result<Vec<i64>> {
    if label.kind() != kind {
        return domain(format!("label {label} has the wrong kind for this bijection"));
    }
    if label.rank() != r || label.level() != 2 * s as u32 + 1 {
        return domain(format!("label {label} is not a rank {r}, level {} label", 2 * s + 1));
    }
    let entries = label
        .representative()
        .integers()
        .ok_or_else(|| Error::Domain(format!("label {label} is not integral")))?;
    let n = (r + s) as i64;
    if entries.iter().any(|&e| e < 1 || e > n) {
        return domain(format!("label {label} has entries outside [1, {n}]"));
    }
    Ok(entries)
}

/// Orbit bijection between integral labels of `(r, 2s+1)` and `(s, 2r+1)`:
/// the orbit representative inside `[r+s]` goes to its set complement.
pub fn orbit_bijection_plus(label: &ULabel, r: usize, s: usize) -> Result<ULabel> {
    let u = checked_subset(label, r, s, LabelKind::Plain)?;
    let c = complement(&u, (r + s) as i64);
    ULabel::from_integers(&c, 2 * r as u32 + 1, LabelKind::Plain)
}

/// Orbit bijection on shifted tensor labels: `U' ↦ (r+s+1) - U'^c`.
pub fn orbit_bijection_zero(label: &ULabel, r: usize, s: usize) -> Result<ULabel> {
    let u = checked_subset(label, r, s, LabelKind::Shifted)?;
    let n = (r + s) as i64;
    let mut z: Vec<i64> = complement(&u, n).iter().map(|c| n + 1 - c).collect();
    z.sort_unstable_by(|a, b| b.cmp(a));
    ULabel::from_integers(&z, 2 * r as u32 + 1, LabelKind::Shifted)
}

/// Weight literal used by files and the command line:
/// `{"young": [rows], "sigma": bool}` or `{"fund": [a_1, ..., a_r]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightLiteral {
    Young {
        young: Vec<u32>,
        #[serde(default)]
        sigma: bool,
    },
    Fund {
        fund: Vec<u32>,
    },
}

impl WeightLiteral {
    pub fn resolve(&self, r: usize, level: u32) -> Result<BWeight> {
        let w = match self {
            WeightLiteral::Young { young, sigma } => {
                let w = young_to_weight(&YoungDiagram::new(young.clone())?, r)?;
                if *sigma {
                    w.sigma(level)?
                } else {
                    w
                }
            }
            WeightLiteral::Fund { fund } => {
                if fund.len() != r {
                    return domain(format!("weight {fund:?} does not have rank {r}"));
                }
                BWeight::new(fund.clone())?
            }
        };
        w.check_level(level)?;
        Ok(w)
    }
}
