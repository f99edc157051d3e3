//! Exact model of the level-1 spin module of `so(N)`, `N = (2r+1)(2s+1)`:
//! fermion modes `φ^{j,p}(a)`, normal-ordered currents, highest-weight
//! vectors built from `Ỹ(λ)`, and the operator identities used in the
//! gauge-invariance argument.
//!
//! Half-integer modes are stored doubled. A monomial is a strictly increasing
//! list of creation modes; its coefficient carries every reordering sign.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::branching::{classify_pair, trace_anomaly, BranchPair, Rational, Source, Variant};
use crate::error::{domain, Error, Result};
use crate::weights::{BWeight, YoungDiagram};

pub type Coeff = BigRational;

/// Species `(j, p)` with `j ∈ [-r, r]`, `p ∈ [-s, s]`.
pub type Species = (i32, i32);

/// A fermion mode `φ^{j,p}(a)`, with `a2 = 2a` odd.
///
/// Field order gives the canonical order: `a` ascending, then `(j, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModeIndex {
    pub a2: i32,
    pub j: i32,
    pub p: i32,
}

impl ModeIndex {
    pub fn new(j: i32, p: i32, a2: i32) -> Result<Self> {
        if a2 % 2 == 0 {
            return domain(format!("mode 2a = {a2} is not odd"));
        }
        Ok(ModeIndex { a2, j, p })
    }

    /// `φ^{j,p}(-1/2)`.
    pub fn lowest(j: i32, p: i32) -> Self {
        ModeIndex { a2: -1, j, p }
    }

    pub fn species(&self) -> Species {
        (self.j, self.p)
    }

    pub fn is_creation(&self) -> bool {
        self.a2 < 0
    }

    /// The mode pairing to 1 with this one.
    pub fn partner(&self) -> ModeIndex {
        ModeIndex { a2: -self.a2, j: -self.j, p: -self.p }
    }
}

fn half(x2: i64) -> String {
    if x2 % 2 == 0 {
        format!("{}", x2 / 2)
    } else {
        format!("{x2}/2")
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi({},{},{})", self.j, self.p, half(self.a2 as i64))
    }
}

/// Canonically ordered wedge of distinct creation modes applied to the vacuum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct WedgeMonomial(Vec<ModeIndex>);

impl WedgeMonomial {
    pub fn vacuum() -> Self {
        WedgeMonomial(Vec::new())
    }

    /// Sorts `modes` into canonical order, returning the sign of the sort, or
    /// `None` if a mode repeats.
    pub fn from_modes(mut modes: Vec<ModeIndex>) -> Result<Option<(i32, WedgeMonomial)>> {
        if let Some(m) = modes.iter().find(|m| !m.is_creation()) {
            return domain(format!("{m} is not a creation mode"));
        }
        let mut sign = 1;
        // insertion sort so the sign is simply the inversion count
        for i in 1..modes.len() {
            let mut k = i;
            while k > 0 && modes[k - 1] > modes[k] {
                modes.swap(k - 1, k);
                sign = -sign;
                k -= 1;
            }
        }
        if modes.windows(2).any(|w| w[0] == w[1]) {
            return Ok(None);
        }
        Ok(Some((sign, WedgeMonomial(modes))))
    }

    pub fn modes(&self) -> &[ModeIndex] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Doubled energy `2 Σ(-a)`.
    pub fn energy2(&self) -> i64 {
        self.0.iter().map(|m| -(m.a2 as i64)).sum()
    }

    /// Wedge with a creation mode on the left.
    fn create(&self, m: ModeIndex) -> Option<(i32, WedgeMonomial)> {
        let pos = match self.0.binary_search(&m) {
            Ok(_) => return None,
            Err(pos) => pos,
        };
        let mut modes = self.0.clone();
        modes.insert(pos, m);
        Some((if pos % 2 == 0 { 1 } else { -1 }, WedgeMonomial(modes)))
    }

    /// Contraction with an annihilation mode.
    fn annihilate(&self, m: ModeIndex) -> Option<(i32, WedgeMonomial)> {
        let pos = self.0.binary_search(&m.partner()).ok()?;
        let mut modes = self.0.clone();
        modes.remove(pos);
        Some((if pos % 2 == 0 { 1 } else { -1 }, WedgeMonomial(modes)))
    }

    fn act(&self, m: ModeIndex) -> Option<(i32, WedgeMonomial)> {
        if m.is_creation() {
            self.create(m)
        } else {
            self.annihilate(m)
        }
    }
}

impl fmt::Display for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("^")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Finite linear combination of wedge monomials with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<WedgeMonomial, Coeff>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn vacuum() -> Self {
        FockVector::monomial(WedgeMonomial::vacuum(), Coeff::one())
    }

    pub fn monomial(m: WedgeMonomial, c: Coeff) -> Self {
        let mut v = FockVector::zero();
        v.add_term(m, c);
        v
    }

    /// `φ^{m_1} ∧ ... ∧ φ^{m_n} · 1` for modes given in any order.
    pub fn wedge(modes: Vec<ModeIndex>) -> Result<Self> {
        Ok(match WedgeMonomial::from_modes(modes)? {
            Some((sign, m)) => FockVector::monomial(m, Coeff::from_integer(BigInt::from(sign))),
            None => FockVector::zero(),
        })
    }

    pub fn add_term(&mut self, m: WedgeMonomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<WedgeMonomial, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        self.add(&other.scale(&-Coeff::one()))
    }

    pub fn scale(&self, c: &Coeff) -> FockVector {
        let mut out = FockVector::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Doubled energy if every monomial has the same energy.
    pub fn energy2(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.energy2());
        let first = it.next()?;
        it.all(|e| e == first).then_some(first)
    }

    /// Wedge degree mod 2 if homogeneous.
    pub fn parity(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree() % 2);
        let first = it.next()?;
        it.all(|e| e == first).then_some(first)
    }

    /// `c` with `self = c · other`, if the two are proportional and nonzero.
    pub fn ratio_to(&self, other: &FockVector) -> Option<Coeff> {
        let (m, c) = other.terms.iter().next()?;
        let k = self.terms.get(m)? / c;
        (other.scale(&k) == *self).then_some(k)
    }

    /// Coefficient map keyed by the printed monomial, for serialization.
    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.terms.iter().map(|(m, c)| (m.to_string(), c.to_string())).collect()
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({a}) {m}")?;
            }
        }
        Ok(())
    }
}

/// `B^{j,p}_{k,q}(m) = Σ_{a+b=m} :φ^{j,p}(a) φ^{-k,-q}(b):`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurrentOp {
    pub j: i32,
    pub p: i32,
    pub k: i32,
    pub q: i32,
    pub m: i32,
}

impl CurrentOp {
    pub fn new(j: i32, p: i32, k: i32, q: i32, m: i32) -> Self {
        CurrentOp { j, p, k, q, m }
    }
}

impl fmt::Display for CurrentOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B^{{{},{}}}_{{{},{}}}({})", self.j, self.p, self.k, self.q, self.m)
    }
}

/// Which factor of `so(2r+1) ⊕ so(2s+1)` a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Sparse integer matrix on species.
pub type SpeciesMatrix = BTreeMap<(Species, Species), i64>;

/// Default cap on the doubled energy of any vector produced.
pub const DEFAULT_ENERGY_CAP: u32 = 12;

/// The spin module for a given `(r, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    r: i32,
    s: i32,
    energy_cap2: i64,
}

impl FockSpace {
    pub fn new(r: usize, s: usize) -> Result<Self> {
        if r == 0 || s == 0 {
            return domain("ranks must be positive");
        }
        Ok(FockSpace {
            r: r as i32,
            s: s as i32,
            energy_cap2: 2 * DEFAULT_ENERGY_CAP as i64,
        })
    }

    /// Replaces the energy cap.
    pub fn with_energy_cap(mut self, cap: u32) -> Self {
        self.energy_cap2 = 2 * cap as i64;
        self
    }

    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn s(&self) -> usize {
        self.s as usize
    }

    /// All species in lexicographic order.
    pub fn species(&self) -> Vec<Species> {
        let mut out = Vec::new();
        for j in -self.r..=self.r {
            for p in -self.s..=self.s {
                out.push((j, p));
            }
        }
        out
    }

    fn check_species(&self, (j, p): Species) -> Result<()> {
        if j.abs() > self.r || p.abs() > self.s {
            return domain(format!("species ({j},{p}) outside [-{},{}] x [-{},{}]", self.r, self.r, self.s, self.s));
        }
        Ok(())
    }

    fn check_current(&self, op: &CurrentOp) -> Result<()> {
        self.check_species((op.j, op.p))?;
        self.check_species((op.k, op.q))
    }

    fn check_cap(&self, v: FockVector) -> Result<FockVector> {
        if let Some(m) = v.terms.keys().find(|m| m.energy2() > self.energy_cap2) {
            return Err(Error::Resource(format!(
                "energy {} exceeds the cap {}",
                half(m.energy2()),
                half(self.energy_cap2)
            )));
        }
        Ok(v)
    }

    /// Applies a single Clifford generator.
    pub fn clifford_apply(&self, m: ModeIndex, v: &FockVector) -> Result<FockVector> {
        self.check_species(m.species())?;
        if m.a2 % 2 == 0 {
            return domain(format!("mode 2a = {} is not odd", m.a2));
        }
        let mut out = FockVector::zero();
        for (mono, c) in &v.terms {
            if let Some((sign, res)) = mono.act(m) {
                out.add_term(res, c * Coeff::from_integer(BigInt::from(sign)));
            }
        }
        self.check_cap(out)
    }

    /// `:φ^A(x) φ^B(y):` on a monomial.
    fn normal_pair(a: Species, x2: i32, b: Species, y2: i32, mono: &WedgeMonomial) -> Option<(i32, WedgeMonomial)> {
        let ma = ModeIndex { a2: x2, j: a.0, p: a.1 };
        let mb = ModeIndex { a2: y2, j: b.0, p: b.1 };
        if x2 > 0 && y2 < 0 {
            let (s1, m1) = mono.act(ma)?;
            let (s2, m2) = m1.act(mb)?;
            Some((-s1 * s2, m2))
        } else {
            let (s1, m1) = mono.act(mb)?;
            let (s2, m2) = m1.act(ma)?;
            Some((s1 * s2, m2))
        }
    }

    fn current_on_monomial(op: &CurrentOp, mono: &WedgeMonomial, out: &mut FockVector, c: &Coeff) {
        let a = (op.j, op.p);
        let b = (-op.k, -op.q);
        let m2 = 2 * op.m;
        // only finitely many splittings can act nonzero: both factors creating,
        // or an annihilating factor meeting a mode already present
        let mut xs = BTreeSet::new();
        let mut x2 = m2 + 1;
        while x2 <= -1 {
            xs.insert(x2);
            x2 += 2;
        }
        for n in mono.modes() {
            xs.insert(-n.a2);
            xs.insert(m2 + n.a2);
        }
        for x2 in xs {
            let y2 = m2 - x2;
            if let Some((sign, res)) = FockSpace::normal_pair(a, x2, b, y2, mono) {
                out.add_term(res, c * Coeff::from_integer(BigInt::from(sign)));
            }
        }
    }

    /// Applies `B^{j,p}_{k,q}(m)`.
    pub fn current_apply(&self, op: &CurrentOp, v: &FockVector) -> Result<FockVector> {
        self.check_current(op)?;
        let mut out = FockVector::zero();
        for (mono, c) in &v.terms {
            FockSpace::current_on_monomial(op, mono, &mut out, c);
        }
        self.check_cap(out)
    }

    /// The currents whose sum realizes a subalgebra generator.
    pub fn subalgebra_currents(&self, side: Side, i: i32, j: i32, m: i32) -> Result<Vec<CurrentOp>> {
        let bound = match side {
            Side::Left => self.r,
            Side::Right => self.s,
        };
        if i.abs() > bound || j.abs() > bound {
            return domain(format!("generator indices ({i},{j}) out of range for the {side:?} factor"));
        }
        Ok(match side {
            Side::Left => (-self.s..=self.s).map(|p| CurrentOp::new(i, p, j, p, m)).collect(),
            Side::Right => (-self.r..=self.r).map(|x| CurrentOp::new(x, i, x, j, m)).collect(),
        })
    }

    /// Left `B^i_j(m) = Σ_p B^{i,p}_{j,p}(m)` or right `B^p_q(m) = Σ_j B^{j,p}_{j,q}(m)`.
    pub fn subalgebra_apply(&self, side: Side, i: i32, j: i32, m: i32, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for op in self.subalgebra_currents(side, i, j, m)? {
            for (mono, c) in &v.terms {
                FockSpace::current_on_monomial(&op, mono, &mut out, c);
            }
        }
        self.check_cap(out)
    }

    /// Matrix of `B^{j,p}_{k,q}` on the vector representation:
    /// `E_{(j,p),(k,q)} - E_{(-k,-q),(-j,-p)}`.
    pub fn current_matrix(op: &CurrentOp) -> SpeciesMatrix {
        let mut out = SpeciesMatrix::new();
        let mut add = |key: (Species, Species), v: i64| {
            let e = out.entry(key).or_insert(0);
            *e += v;
            if *e == 0 {
                out.remove(&key);
            }
        };
        add(((op.j, op.p), (op.k, op.q)), 1);
        add(((-op.k, -op.q), (-op.j, -op.p)), -1);
        out
    }

    fn matmul(x: &SpeciesMatrix, y: &SpeciesMatrix) -> SpeciesMatrix {
        let mut out = SpeciesMatrix::new();
        for (&(a, b), &u) in x {
            for (&(c, d), &w) in y {
                if b == c {
                    *out.entry((a, d)).or_insert(0) += u * w;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// `[X(m), Y(n)] v` from the bracket formula
    /// `[X, Y](m+n) + m δ_{m+n,0} (X, Y)` with `(X, Y) = tr(XY)/2` and `c = 1`.
    pub fn bracket_formula_apply(&self, x: &CurrentOp, y: &CurrentOp, v: &FockVector) -> Result<FockVector> {
        self.check_current(x)?;
        self.check_current(y)?;
        let (mx, my) = (FockSpace::current_matrix(x), FockSpace::current_matrix(y));
        let xy = FockSpace::matmul(&mx, &my);
        let yx = FockSpace::matmul(&my, &mx);
        let mut comm = xy.clone();
        for (key, val) in &yx {
            *comm.entry(*key).or_insert(0) -= val;
        }
        comm.retain(|_, v| *v != 0);
        // an so(N) matrix M acts as (1/2) Σ M_{xy} B^x_y
        let mut out = FockVector::zero();
        let half = Coeff::new(BigInt::one(), BigInt::from(2));
        for (&((a, b), (c, d)), &val) in &comm {
            let op = CurrentOp::new(a, b, c, d, x.m + y.m);
            let term = self.current_apply(&op, v)?;
            out = out.add(&term.scale(&(&half * Coeff::from_integer(BigInt::from(val)))));
        }
        if x.m + y.m == 0 {
            let trace: i64 = xy.iter().filter(|((a, b), _)| a == b).map(|(_, v)| v).sum();
            let central = Coeff::new(BigInt::from(x.m as i64 * trace), BigInt::from(2));
            out = out.add(&v.scale(&central));
        }
        self.check_cap(out)
    }

    /// `X(m) Y(n) v - Y(n) X(m) v` by composition.
    pub fn commutator_apply(&self, x: &CurrentOp, y: &CurrentOp, v: &FockVector) -> Result<FockVector> {
        let xy = self.current_apply(x, &self.current_apply(y, v)?)?;
        let yx = self.current_apply(y, &self.current_apply(x, v)?)?;
        Ok(xy.sub(&yx))
    }

    /// Anticommutator of two modes on `v` against `δ v`.
    pub fn verify_anticommutation(&self, m1: ModeIndex, m2: ModeIndex, v: &FockVector) -> Result<bool> {
        let lhs = self
            .clifford_apply(m1, &self.clifford_apply(m2, v)?)?
            .add(&self.clifford_apply(m2, &self.clifford_apply(m1, v)?)?);
        let rhs = if m1.partner() == m2 { v.clone() } else { FockVector::zero() };
        Ok(lhs == rhs)
    }

    /// Composition against the bracket formula.
    pub fn verify_bracket(&self, x: &CurrentOp, y: &CurrentOp, v: &FockVector) -> Result<bool> {
        Ok(self.commutator_apply(x, y, v)? == self.bracket_formula_apply(x, y, v)?)
    }

    fn check_diagram(&self, y: &YoungDiagram) -> Result<()> {
        if !y.fits(self.r(), self.s()) {
            return domain(format!("{y} does not fit in {} rows and {} columns", self.r, self.s));
        }
        Ok(())
    }

    /// `∧_{ỹ_{j,p} = 0} φ^{j,p}(-1/2) · 1` for the variant's matrix, with
    /// coefficient +1 on the canonically ordered monomial.
    ///
    /// For the empty diagram under both automorphisms no `-1/2` monomial has
    /// the right weight; there the vector is
    /// `φ^{1,1}(-3/2) φ^{1,1}(-1/2) ∧_{p ∈ {0,±2..±s}} φ^{1,p}(-1/2) ∧_{j ∈ {0,±2..±r}} φ^{j,1}(-1/2)`.
    pub fn hwv_wedge(&self, y: &YoungDiagram, variant: Variant) -> Result<FockVector> {
        self.check_diagram(y)?;
        let modes: Vec<ModeIndex> = if y.is_empty() && variant == Variant::SigmaLR {
            let mut modes = vec![ModeIndex { a2: -3, j: 1, p: 1 }, ModeIndex::lowest(1, 1)];
            modes.extend((-self.s..=self.s).filter(|p| p.abs() != 1).map(|p| ModeIndex::lowest(1, p)));
            modes.extend((-self.r..=self.r).filter(|j| j.abs() != 1).map(|j| ModeIndex::lowest(j, 1)));
            modes
        } else {
            YMatrix::for_variant(y, variant, self.r(), self.s())?
                .zeros()
                .into_iter()
                .map(|(j, p)| ModeIndex::lowest(j, p))
                .collect()
        };
        let mono = WedgeMonomial::from_modes(modes)?
            .expect("highest-weight modes are distinct")
            .1;
        Ok(FockVector::monomial(mono, Coeff::one()))
    }

    /// `∧_{(j,p) ∈ λ} φ^{-j,-p}(-1/2) · 1`.
    pub fn lowest_weight_wedge(&self, y: &YoungDiagram) -> Result<FockVector> {
        self.check_diagram(y)?;
        let modes = y
            .boxes()
            .into_iter()
            .map(|(j, p)| ModeIndex::lowest(-(j as i32), -(p as i32)))
            .collect();
        let mono = WedgeMonomial::from_modes(modes)?.expect("boxes are distinct").1;
        Ok(FockVector::monomial(mono, Coeff::one()))
    }

    /// Raising generators that must kill a highest-weight vector: simple roots
    /// at mode 0 and `f_θ` at mode 1, for one factor.
    pub fn raising_generators(&self, side: Side) -> Vec<(String, i32, i32, i32)> {
        let n = match side {
            Side::Left => self.r,
            Side::Right => self.s,
        };
        let name = match side {
            Side::Left => "left",
            Side::Right => "right",
        };
        let mut out = Vec::new();
        for i in 1..n {
            out.push((format!("{name} B^{i}_{}(0)", i + 1), i, i + 1, 0));
        }
        out.push((format!("{name} B^{n}_0(0)"), n, 0, 0));
        let (a, b) = if n >= 2 { (-1, 2) } else { (-1, 0) };
        out.push((format!("{name} B^{a}_{b}(1)"), a, b, 1));
        out
    }

    /// Checks that `v` is a highest-weight vector of weight `(left, right)`
    /// for `so(2r+1) ⊕ so(2s+1)` of the right parity and energy.
    pub fn verify_hwv(&self, v: &FockVector, left: &BWeight, right: &BWeight) -> Result<HwvReport> {
        let mut failures = Vec::new();
        if v.is_zero() {
            failures.push("vector is zero".to_string());
        }
        let energy2 = v.energy2();
        let parity = v.parity();
        if energy2.is_none() || parity.is_none() {
            failures.push("vector is not homogeneous".to_string());
        }
        if left.rank() != self.r() || right.rank() != self.s() {
            return domain("expected weights have the wrong ranks");
        }

        for (side, w, n) in [(Side::Left, left, self.r), (Side::Right, right, self.s)] {
            let coords = w.l_coords_doubled();
            for i in 1..=n {
                let hv = self.subalgebra_apply(side, i, i, 0, v)?;
                let expected = Coeff::new(BigInt::from(coords[i as usize - 1]), BigInt::from(2));
                if hv != v.scale(&expected) {
                    failures.push(format!("{side:?} Cartan B^{i}_{i}(0) eigenvalue is not {expected}"));
                }
            }
            for (label, a, b, m) in self.raising_generators(side) {
                if !self.subalgebra_apply(side, a, b, m, v)?.is_zero() {
                    failures.push(format!("{label} does not annihilate the vector"));
                }
            }
        }

        let pair = classify_pair(left, right);
        let source = pair.as_ref().map(|p| p.source);
        match (&pair, parity) {
            (None, _) => failures.push(format!("({left}, {right}) is not a branching component")),
            (Some(p), Some(par)) => {
                let want = if p.source == Source::Vacuum { 0 } else { 1 };
                if par != want {
                    failures.push(format!("wedge parity {par} does not match source {:?}", p.source));
                }
            }
            _ => {}
        }

        let anomaly = trace_anomaly(left, 2 * self.s as u32 + 1)? + trace_anomaly(right, 2 * self.r as u32 + 1)?;
        if let Some(e2) = energy2 {
            if Rational::new(e2, 2) != anomaly {
                failures.push(format!("energy {} differs from Δ sum {anomaly}", half(e2)));
            }
        }

        Ok(HwvReport {
            pass: failures.is_empty(),
            failures,
            energy: energy2.map(half),
            parity: parity.map(|p| if p == 0 { "even" } else { "odd" }.to_string()),
            source,
            anomaly: anomaly.to_string(),
        })
    }

    /// Builds the highest-weight vector of `λ` as `Π B^{a,b}_{-c,-d}(-1)` on
    /// `1` (or on `φ^{1,1}(-1/2)·1` for odd `|λ|`), each step adding the boxes
    /// `(a,b)` and `(c,d)`.
    pub fn kacmoody_build(&self, y: &YoungDiagram, steps: &[BoxPair]) -> Result<KacMoodyBuild> {
        self.build_from_pairs(y, steps, false)
    }

    /// Lowest-weight analogue using `B^{-a,-b}_{c,d}(-1)`.
    pub fn kacmoody_build_lowest(&self, y: &YoungDiagram, steps: &[BoxPair]) -> Result<KacMoodyBuild> {
        self.build_from_pairs(y, steps, true)
    }

    fn build_from_pairs(&self, y: &YoungDiagram, steps: &[BoxPair], lowest: bool) -> Result<KacMoodyBuild> {
        self.check_diagram(y)?;
        let (mut current, mut v) = if y.size().is_multiple_of(2) {
            (YoungDiagram::empty(), FockVector::vacuum())
        } else {
            let one = YoungDiagram::new(vec![1])?;
            let v = if lowest {
                self.lowest_weight_wedge(&one)?
            } else {
                self.hwv_wedge(&one, Variant::Plain)?
            };
            (one, v)
        };
        for &((a, b), (c, d)) in steps {
            let next = current
                .with_box(a, b)
                .and_then(|t| t.with_box(c, d))
                .or_else(|_| current.with_box(c, d).and_then(|t| t.with_box(a, b)))
                .map_err(|_| Error::Domain(format!("boxes ({a},{b}), ({c},{d}) cannot be added to {current}")))?;
            self.check_diagram(&next)?;
            let (a, b, c, d) = (a as i32, b as i32, c as i32, d as i32);
            let op = if lowest {
                CurrentOp::new(-a, -b, c, d, -1)
            } else {
                CurrentOp::new(a, b, -c, -d, -1)
            };
            v = self.current_apply(&op, &v)?;
            current = next;
        }
        if &current != y {
            return domain(format!("box sequence ends at {current}, not {y}"));
        }
        let target = if lowest {
            self.lowest_weight_wedge(y)?
        } else {
            self.hwv_wedge(y, Variant::Plain)?
        };
        let scalar = v.ratio_to(&target);
        Ok(KacMoodyBuild { vector: v, scalar })
    }

    /// `B^{a,b}_{-c,-d}(1) Φ_3 = 0`.
    pub fn verify_gauge_vanishing(&self, ab: (usize, usize), cd: (usize, usize), phi3: &FockVector) -> Result<bool> {
        let op = CurrentOp::new(ab.0 as i32, ab.1 as i32, -(cd.0 as i32), -(cd.1 as i32), 1);
        Ok(self.current_apply(&op, phi3)?.is_zero())
    }

    /// Every gauge-vanishing instance with `|λ_3|` even and at most `max_size`:
    /// `Φ_3 = B^{-a,-b}_{e,f}(-1) v^{λ''}` with `λ_3 = λ'' + (a,b) + (e,f)`,
    /// tested against every box `(c,d)` addable to `λ_3`.
    pub fn gauge_instances(&self, max_size: u32) -> Result<Vec<GaugeInstance>> {
        let mut out = Vec::new();
        for lam3 in YoungDiagram::enumerate(self.r(), self.s()) {
            if lam3.size() == 0 || lam3.size() % 2 == 1 {
                continue;
            }
            if lam3.size() > max_size {
                break;
            }
            for ab in lam3.removable_boxes() {
                let mid = lam3.without_box(ab.0, ab.1)?;
                for ef in mid.removable_boxes() {
                    let base = mid.without_box(ef.0, ef.1)?;
                    let op = CurrentOp::new(-(ab.0 as i32), -(ab.1 as i32), ef.0 as i32, ef.1 as i32, -1);
                    let phi3 = self.current_apply(&op, &self.lowest_weight_wedge(&base)?)?;
                    for cd in lam3.addable_boxes() {
                        if cd.0 as i32 > self.r || cd.1 as i32 > self.s {
                            continue;
                        }
                        let vanishes = self.verify_gauge_vanishing(ab, cd, &phi3)?;
                        out.push(GaugeInstance {
                            lambda3: lam3.clone(),
                            ab,
                            ef,
                            cd,
                            phi3_nonzero: !phi3.is_zero(),
                            vanishes,
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Uniform random mode with `|a| ≤ max_a2 / 2`.
    pub fn random_mode<R: Rng>(&self, rng: &mut R, max_a2: i32) -> ModeIndex {
        let a = rng.gen_range(0..(max_a2 + 1) / 2) * 2 + 1;
        ModeIndex {
            a2: if rng.gen_bool(0.5) { a } else { -a },
            j: rng.gen_range(-self.r..=self.r),
            p: rng.gen_range(-self.s..=self.s),
        }
    }

    /// Random current with mode in `[-max_m, max_m]`.
    pub fn random_current<R: Rng>(&self, rng: &mut R, max_m: i32) -> CurrentOp {
        CurrentOp::new(
            rng.gen_range(-self.r..=self.r),
            rng.gen_range(-self.s..=self.s),
            rng.gen_range(-self.r..=self.r),
            rng.gen_range(-self.s..=self.s),
            rng.gen_range(-max_m..=max_m),
        )
    }

    /// Random combination of up to three monomials of energy at most `max_energy`.
    pub fn random_vector<R: Rng>(&self, rng: &mut R, max_energy: u32) -> FockVector {
        let mut v = FockVector::zero();
        let cap2 = 2 * max_energy as i64;
        for _ in 0..rng.gen_range(1..=3) {
            let mut modes = Vec::new();
            let mut e2 = 0i64;
            for _ in 0..rng.gen_range(0..=4) {
                let a2 = -(rng.gen_range(0..3) * 2 + 1);
                if e2 - a2 as i64 > cap2 {
                    break;
                }
                let m = ModeIndex { a2, j: rng.gen_range(-self.r..=self.r), p: rng.gen_range(-self.s..=self.s) };
                if modes.contains(&m) {
                    continue;
                }
                e2 -= a2 as i64;
                modes.push(m);
            }
            let c = Coeff::from_integer(BigInt::from(rng.gen_range(-3i64..=3)));
            if let Ok(Some((sign, mono))) = WedgeMonomial::from_modes(modes) {
                v.add_term(mono, c * Coeff::from_integer(BigInt::from(sign)));
            }
        }
        v
    }
}

/// Two boxes `((a, b), (c, d))` added in one step.
pub type BoxPair = ((usize, usize), (usize, usize));

/// The row-major growth sequence of `λ`, two boxes at a time (after the first
/// box when `|λ|` is odd).
pub fn default_box_sequence(y: &YoungDiagram) -> Vec<BoxPair> {
    let boxes = y.boxes();
    let start = (y.size() % 2) as usize;
    boxes[start..].chunks(2).map(|c| (c[0], c[1])).collect()
}

/// Column-major growth sequence, for checking independence of the route.
pub fn column_box_sequence(y: &YoungDiagram) -> Vec<BoxPair> {
    let mut boxes: Vec<(usize, usize)> = y.transpose().boxes().into_iter().map(|(c, r)| (r, c)).collect();
    boxes.sort_by_key(|&(r, c)| (c, r));
    let start = (y.size() % 2) as usize;
    boxes[start..].chunks(2).map(|c| (c[0], c[1])).collect()
}

/// Result of [`FockSpace::kacmoody_build`].
#[derive(Debug, Clone)]
pub struct KacMoodyBuild {
    pub vector: FockVector,
    /// `vector = scalar · target`, if proportional.
    pub scalar: Option<Coeff>,
}

/// One evaluated gauge identity.
#[derive(Debug, Clone, Serialize)]
pub struct GaugeInstance {
    pub lambda3: YoungDiagram,
    pub ab: (usize, usize),
    pub ef: (usize, usize),
    pub cd: (usize, usize),
    pub phi3_nonzero: bool,
    pub vanishes: bool,
}

/// Outcome of [`FockSpace::verify_hwv`].
#[derive(Debug, Clone, Serialize)]
pub struct HwvReport {
    pub pass: bool,
    pub failures: Vec<String>,
    pub energy: Option<String>,
    pub parity: Option<String>,
    pub source: Option<Source>,
    pub anomaly: String,
}

/// `Q(φ^{j,p}(-1/2), φ^{k,q}(-1/2)) = δ_{j,-k} δ_{p,-q}`, extended bilinearly.
pub fn q_pair(u: &FockVector, v: &FockVector) -> Result<Coeff> {
    let single = |x: &FockVector| -> Result<Vec<(ModeIndex, Coeff)>> {
        x.terms()
            .iter()
            .map(|(m, c)| match m.modes() {
                [mode] if mode.a2 == -1 => Ok((*mode, c.clone())),
                _ => domain(format!("{m} is not a degree 1/2 vector")),
            })
            .collect()
    };
    let (a, b) = (single(u)?, single(v)?);
    let mut total = Coeff::zero();
    for (ma, ca) in &a {
        for (mb, cb) in &b {
            if ma.j == -mb.j && ma.p == -mb.p {
                total += ca * cb;
            }
        }
    }
    Ok(total)
}

/// The `(2r+1) x (2s+1)` zero/one matrix whose zeros index the modes of a
/// highest-weight wedge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YMatrix {
    r: i32,
    s: i32,
    entries: BTreeMap<Species, u8>,
}

impl YMatrix {
    /// `Ỹ(λ)`: zero exactly at the boxes of `λ`.
    pub fn tilde(y: &YoungDiagram, r: usize, s: usize) -> Result<Self> {
        if !y.fits(r, s) {
            return domain(format!("{y} does not fit in {r} rows and {s} columns"));
        }
        let (r, s) = (r as i32, s as i32);
        let mut entries = BTreeMap::new();
        for j in -r..=r {
            for p in -s..=s {
                let in_box = j >= 1 && p >= 1 && y.contains(j as usize, p as usize);
                entries.insert((j, p), if in_box { 0 } else { 1 });
            }
        }
        Ok(YMatrix { r, s, entries })
    }

    pub fn get(&self, j: i32, p: i32) -> u8 {
        self.entries[&(j, p)]
    }

    /// `σ^L(M)_{j,p} = M_{j,p} - δ_{j,1} δ_{M_{1,|p|},1}`.
    pub fn sigma_left(&self) -> YMatrix {
        let mut out = self.clone();
        for p in -self.s..=self.s {
            if self.get(1, p.abs()) == 1 {
                out.entries.insert((1, p), self.get(1, p) - 1);
            }
        }
        out
    }

    /// `σ^R(M)_{j,p} = M_{j,p} - δ_{p,1} δ_{M_{|j|,1},1}`.
    pub fn sigma_right(&self) -> YMatrix {
        let mut out = self.clone();
        for j in -self.r..=self.r {
            if self.get(j.abs(), 1) == 1 {
                out.entries.insert((j, 1), self.get(j, 1) - 1);
            }
        }
        out
    }

    pub fn for_variant(y: &YoungDiagram, variant: Variant, r: usize, s: usize) -> Result<Self> {
        let m = YMatrix::tilde(y, r, s)?;
        Ok(match variant {
            Variant::Plain => m,
            Variant::SigmaL => m.sigma_left(),
            Variant::SigmaR => m.sigma_right(),
            Variant::SigmaLR => m.sigma_right().sigma_left(),
        })
    }

    /// Positions of the zero entries.
    pub fn zeros(&self) -> Vec<Species> {
        self.entries.iter().filter(|(_, &v)| v == 0).map(|(&k, _)| k).collect()
    }
}

impl fmt::Display for YMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = |n: i32| (1..=n).chain(std::iter::once(0)).chain((-n..=-1).rev().collect::<Vec<_>>().into_iter().rev());
        for j in order(self.r) {
            let row: Vec<String> = order(self.s).map(|p| self.get(j, p).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Convenience: the pair and highest-weight vector for one `(λ, variant)`.
pub fn branch_hwv(space: &FockSpace, y: &YoungDiagram, variant: Variant) -> Result<(BranchPair, FockVector)> {
    let pair = BranchPair::new(y, variant, space.r(), space.s())?;
    Ok((pair, space.hwv_wedge(y, variant)?))
}
