//! The field towers shipped with the crate.
//!
//! These are the moduli used throughout the worked examples and the test
//! grids, so results reproduce bit-exactly without any configuration files.

use std::sync::Arc;

use crate::gf::{build_field, FieldTower};

/// F_16 over F_2 with z^4 + z + 1 (q = 2, m = 2).
pub fn f16() -> Arc<FieldTower> {
    build_field(2, 1, 2, None, &[1, 1, 0, 0, 1]).expect("shipped modulus")
}

/// F_9 over F_3 with z^2 + 1 (q = 3, m = 1).
pub fn f9() -> Arc<FieldTower> {
    build_field(3, 1, 1, None, &[1, 0, 1]).expect("shipped modulus")
}

/// F_4 over F_2 with z^2 + z + 1 (q = 2, m = 1).
pub fn f4() -> Arc<FieldTower> {
    build_field(2, 1, 1, None, &[1, 1, 1]).expect("shipped modulus")
}

/// F_81 over F_3 with z^4 + z + 2 (q = 3, m = 2).
pub fn f81() -> Arc<FieldTower> {
    build_field(3, 1, 2, None, &[2, 1, 0, 0, 1]).expect("shipped modulus")
}

/// F_16 over F_4 with base y^2 + y + 1 and top z^2 + z + w (q = 4, m = 1),
/// where w is the F_4 generator (code 2).
pub fn f16_over_f4() -> Arc<FieldTower> {
    build_field(2, 2, 1, Some(&[1, 1, 1]), &[2, 1, 1]).expect("shipped modulus")
}

/// Look up a shipped tower by its (q, m) parameters.
pub fn by_parameters(q: u64, m: u32) -> Option<Arc<FieldTower>> {
    match (q, m) {
        (2, 1) => Some(f4()),
        (2, 2) => Some(f16()),
        (3, 1) => Some(f9()),
        (3, 2) => Some(f81()),
        (4, 1) => Some(f16_over_f4()),
        _ => None,
    }
}
