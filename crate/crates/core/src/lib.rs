//! Rank-level duality for odd orthogonal affine Lie algebras, made computable.
//!
//! The crate covers weight and orbit combinatorics for `so(2r+1)`, Weyl
//! characters at the special roots of unity, Verlinde dimensions, the
//! branching data of the conformal embedding
//! `so(2r+1) ⊕ so(2s+1) ⊂ so((2r+1)(2s+1))`, and an exact model of the
//! level-1 fermionic Fock space.

pub mod branching;
pub mod characters;
pub mod complex;
pub mod error;
pub mod fock;
pub mod identities;
pub mod verlinde;
mod minors;
pub mod weights;

pub use complex::{ComplexValue, TrigTable, DEFAULT_BITS, IDENTITY_TOL, ROUNDING_TOL};
pub use error::{Error, Result};
pub use weights::{
    enumerate_level_set, orbit_bijection_plus, orbit_bijection_zero, young_to_weight, BWeight,
    LabelKind, ULabel, WeightClass, WeightLiteral, YoungDiagram,
};
pub use branching::{BranchPair, Source, Variant};
pub use fock::{CurrentOp, FockSpace, FockVector, ModeIndex, Side, WedgeMonomial};
pub use identities::{run_identities, HarnessConfig, HarnessReport, IdentityCheck};
pub use verlinde::{DimRecord, Dimension, DualityCase, DualityChecker, DualityReport, VerlindeEngine};
