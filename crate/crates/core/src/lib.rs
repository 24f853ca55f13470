//! Rank-metric codes over finite-field towers.
//!
//! The crate builds generalized Gabidulin (MRD) codes, computes Hermitian
//! and Euclidean hulls, walks the hull dimension down to any admissible
//! value through explicit GL_n(F_q) equivalence matrices, and constructs
//! Hermitian self-orthogonal MRD codes from scaled trace-self-dual bases.
//! Brute-force oracles double-check every construction at desk scale.

pub mod codes;
pub mod construct;
pub mod error;
pub mod fields;
pub mod gf;
pub mod hullvary;
pub mod jsonio;
pub mod linalg;
pub mod oracle;

pub use codes::{rank_weight, DualCode, Flavor, HullReport, RankCode};
pub use error::{Error, Result};
pub use gf::{build_field, FieldElement, FieldTower, TowerExt};
pub use linalg::{MatrixFq, MatrixK};
