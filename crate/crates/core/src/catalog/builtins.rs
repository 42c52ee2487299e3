//! Embedded ray tables for the three literature sets with hand-sized data.
//!
//! Entries are stored as small signed codes: `0` and `+-1` stand for
//! themselves, `+-2` stands for `+-sqrt2` (only the 33-ray set uses it).
//! The tables list one representative per projective ray; `VectorSet::new`
//! canonicalizes and checks distinctness on load.

use super::{CatalogError, Ray, VectorSet};
use crate::scalar::ExactScalar;

fn decode(code: i8) -> ExactScalar {
    match code {
        0 => ExactScalar::zero(),
        1 => ExactScalar::one(),
        -1 => ExactScalar::from_int(-1),
        2 => ExactScalar::sqrt2(),
        -2 => -&ExactScalar::sqrt2(),
        other => unreachable!("unknown entry code {other}"),
    }
}

fn table_to_rays<const D: usize>(table: &[[i8; D]]) -> Vec<Ray> {
    table
        .iter()
        .map(|row| row.iter().map(|&c| decode(c)).collect())
        .collect()
}

/// The 33 rays in dimension 3 with coordinates from `{0, +-1, +-sqrt2}`:
/// the three axes, six diagonals of coordinate planes, and the 24 rays
/// mixing one sqrt2 entry with units.
const PERES33: [[i8; 3]; 33] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 1, 0],
    [1, -1, 0],
    [1, 0, 1],
    [1, 0, -1],
    [0, 1, 1],
    [0, 1, -1],
    [0, 1, 2],
    [0, 1, -2],
    [0, 2, 1],
    [0, 2, -1],
    [1, 0, 2],
    [1, 0, -2],
    [2, 0, 1],
    [2, 0, -1],
    [1, 2, 0],
    [1, -2, 0],
    [2, 1, 0],
    [2, -1, 0],
    [1, 1, 2],
    [1, -1, 2],
    [-1, 1, 2],
    [-1, -1, 2],
    [1, 2, 1],
    [1, 2, -1],
    [-1, 2, 1],
    [-1, 2, -1],
    [2, 1, 1],
    [2, 1, -1],
    [2, -1, 1],
    [2, -1, -1],
];

/// The 18 rays in dimension 4 forming nine complete orthogonal bases with
/// every ray shared by exactly two of them.
const CABELLO18: [[i8; 4]; 18] = [
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [1, 1, 0, 0],
    [1, -1, 0, 0],
    [0, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, -1, 0],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
    [0, 0, 1, 1],
    [1, 1, 1, 1],
    [0, 1, 0, -1],
    [1, 0, 0, 1],
    [1, 0, 0, -1],
    [0, 1, -1, 0],
    [1, 1, -1, 1],
    [1, 1, 1, -1],
    [-1, 1, 1, 1],
];

/// The 24 rays in dimension 4: the computational axes, the twelve
/// two-coordinate diagonals and the eight full diagonals.
const PERES_MERMIN24: [[i8; 4]; 24] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 1, 0, 0],
    [1, -1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, -1, 0],
    [1, 0, 0, 1],
    [1, 0, 0, -1],
    [0, 1, 1, 0],
    [0, 1, -1, 0],
    [0, 1, 0, 1],
    [0, 1, 0, -1],
    [0, 0, 1, 1],
    [0, 0, 1, -1],
    [1, 1, 1, 1],
    [1, 1, 1, -1],
    [1, 1, -1, 1],
    [1, 1, -1, -1],
    [1, -1, 1, 1],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
    [1, -1, -1, -1],
];

pub fn peres33() -> Result<VectorSet, CatalogError> {
    VectorSet::new("peres33", 3, table_to_rays(&PERES33))
}

pub fn cabello18() -> Result<VectorSet, CatalogError> {
    VectorSet::new("cabello18", 4, table_to_rays(&CABELLO18))
}

pub fn peres_mermin24() -> Result<VectorSet, CatalogError> {
    VectorSet::new("peres_mermin24", 4, table_to_rays(&PERES_MERMIN24))
}
