//! Finite ray sets: embedded catalog entries, programmatic generators and
//! the JSON interchange format.
//!
//! A [`VectorSet`] owns `n` projectively distinct nonzero rays of a fixed
//! dimension `d >= 2`. Rays are stored in canonical projective form: each is
//! divided by its first nonzero coordinate, which Q(i, sqrt2) permits since
//! it is a field. Two input rays describe the same projective point exactly
//! when their canonical forms are equal componentwise, so duplicate
//! detection and projective comparison reduce to exact equality.

mod builtins;
mod e8;
mod json;
mod stabilizer;

pub use e8::generate_e8_rays;
pub use json::{parse_vector_set, serialize_vector_set};
pub use stabilizer::generate_stabilizer_rays;

use crate::scalar::ExactScalar;
use std::cmp::Ordering;
use thiserror::Error;

/// A single ray: `d` exact coordinates, not all zero.
pub type Ray = Vec<ExactScalar>;

/// Names of the built-in catalog entries, in presentation order.
pub const BUILTIN_NAMES: [&str; 5] = [
    "peres33",
    "cabello18",
    "peres_mermin24",
    "stabilizer2q",
    "e8",
];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog set `{0}`")]
    UnknownSet(String),
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("a vector set needs at least one ray")]
    EmptySet,
    #[error("ray {ray} has length {found}, expected dimension {expected}")]
    WrongRayLength {
        ray: usize,
        expected: usize,
        found: usize,
    },
    #[error("ray {ray} is the zero vector")]
    ZeroRay { ray: usize },
    #[error("rays {first} and {second} are projectively identical")]
    DuplicateRay { first: usize, second: usize },
    #[error("malformed vector-set JSON: {0}")]
    Malformed(String),
    #[error("ray {ray}, coordinate {coord}: {reason}")]
    InvalidCoordinate {
        ray: usize,
        coord: usize,
        reason: String,
    },
}

/// A named set of projectively distinct rays in dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSet {
    name: String,
    dimension: usize,
    rays: Vec<Ray>,
}

impl VectorSet {
    /// Validates and canonicalizes a set of rays.
    ///
    /// # Errors
    /// Rejects dimension below 2, empty sets, rays of the wrong length,
    /// zero rays and projective duplicates.
    pub fn new(
        name: impl Into<String>,
        dimension: usize,
        rays: Vec<Ray>,
    ) -> Result<Self, CatalogError> {
        if dimension < 2 {
            return Err(CatalogError::DimensionTooSmall(dimension));
        }
        if rays.is_empty() {
            return Err(CatalogError::EmptySet);
        }
        let mut canonical: Vec<Ray> = Vec::with_capacity(rays.len());
        for (idx, ray) in rays.into_iter().enumerate() {
            if ray.len() != dimension {
                return Err(CatalogError::WrongRayLength {
                    ray: idx,
                    expected: dimension,
                    found: ray.len(),
                });
            }
            let ray = canonicalize_ray(ray).ok_or(CatalogError::ZeroRay { ray: idx })?;
            if let Some(first) = canonical.iter().position(|r| *r == ray) {
                return Err(CatalogError::DuplicateRay { first, second: idx });
            }
            canonical.push(ray);
        }
        Ok(VectorSet {
            name: name.into(),
            dimension,
            rays: canonical,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

/// Scales a ray so its first nonzero coordinate becomes exactly 1, the
/// unique representative of its projective class. Returns `None` for the
/// zero vector.
pub fn canonicalize_ray(ray: Ray) -> Option<Ray> {
    let pivot = ray.iter().position(|c| !c.is_zero())?;
    if ray[pivot] == ExactScalar::one() {
        return Some(ray);
    }
    let inv = ray[pivot].inverse();
    Some(ray.iter().map(|c| c * &inv).collect())
}

/// Deterministic lexicographic order on rays, comparing coordinates by
/// their four rational coefficients. Not a value order on complex numbers;
/// used only to fix the output order of generated sets.
pub fn lex_cmp_rays(a: &Ray, b: &Ray) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let key = |s: &ExactScalar| {
            [
                s.re.rational.clone(),
                s.re.sqrt2.clone(),
                s.im.rational.clone(),
                s.im.sqrt2.clone(),
            ]
        };
        match key(x).cmp(&key(y)) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Renders a ray as `(c0, c1, ..., c{d-1})` using exact coefficients.
pub fn ray_to_string(ray: &Ray) -> String {
    let coords: Vec<String> = ray.iter().map(|c| c.to_string()).collect();
    format!("({})", coords.join(", "))
}

/// Loads one of the built-in sets by name.
///
/// `peres33`, `cabello18` and `peres_mermin24` come from embedded tables;
/// `stabilizer2q` and `e8` are generated deterministically from their
/// defining constructions.
pub fn load_builtin(name: &str) -> Result<VectorSet, CatalogError> {
    match name {
        "peres33" => builtins::peres33(),
        "cabello18" => builtins::cabello18(),
        "peres_mermin24" => builtins::peres_mermin24(),
        "stabilizer2q" => generate_stabilizer_rays(),
        "e8" => generate_e8_rays(),
        other => Err(CatalogError::UnknownSet(other.to_string())),
    }
}
