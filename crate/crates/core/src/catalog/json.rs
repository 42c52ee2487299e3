//! Vector-set JSON interchange.
//!
//! ```json
//! {
//!   "name": "example",
//!   "dimension": 3,
//!   "rays": [
//!     [[0,1, 0,1, 0,1, 0,1], [1,1, 0,1, 0,1, 0,1], [0,1, 1,1, 0,1, 0,1]]
//!   ]
//! }
//! ```
//!
//! Each coordinate is eight integers: numerator/denominator pairs for the
//! four coefficients of `(a + b*sqrt2) + i*(c + e*sqrt2)`. Integers may be
//! arbitrarily large; values are reduced on load, so serialization followed
//! by parsing reproduces the canonical set exactly.

use super::{CatalogError, Ray, VectorSet};
use crate::scalar::ExactScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

/// Parses a vector set from the JSON interchange format.
///
/// # Errors
/// Reports malformed JSON, missing or mistyped fields, non-integer or
/// zero-denominator coordinates, and every [`VectorSet::new`] validation
/// failure (dimension below 2, zero rays, projective duplicates, ...).
pub fn parse_vector_set(text: &str) -> Result<VectorSet, CatalogError> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| CatalogError::Malformed(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| CatalogError::Malformed("top level must be an object".into()))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| CatalogError::Malformed("missing string field `name`".into()))?;
    let dimension = obj
        .get("dimension")
        .and_then(Value::as_u64)
        .ok_or_else(|| CatalogError::Malformed("missing integer field `dimension`".into()))?
        as usize;
    let rays_json = obj
        .get("rays")
        .and_then(Value::as_array)
        .ok_or_else(|| CatalogError::Malformed("missing array field `rays`".into()))?;

    let mut rays: Vec<Ray> = Vec::with_capacity(rays_json.len());
    for (ray_idx, ray_val) in rays_json.iter().enumerate() {
        let coords = ray_val.as_array().ok_or_else(|| {
            CatalogError::Malformed(format!("ray {ray_idx} must be an array of coordinates"))
        })?;
        let mut ray: Ray = Vec::with_capacity(coords.len());
        for (coord_idx, coord_val) in coords.iter().enumerate() {
            ray.push(parse_coordinate(coord_val).map_err(|reason| {
                CatalogError::InvalidCoordinate {
                    ray: ray_idx,
                    coord: coord_idx,
                    reason,
                }
            })?);
        }
        rays.push(ray);
    }
    VectorSet::new(name, dimension, rays)
}

fn parse_coordinate(value: &Value) -> Result<ExactScalar, String> {
    let parts = value
        .as_array()
        .ok_or_else(|| "coordinate must be an array of eight integers".to_string())?;
    if parts.len() != 8 {
        return Err(format!("expected 8 integers, found {}", parts.len()));
    }
    let mut ints: Vec<BigInt> = Vec::with_capacity(8);
    for part in parts {
        let n = part
            .as_number()
            .ok_or_else(|| "coordinate entries must be integers".to_string())?;
        let i: BigInt = n
            .to_string()
            .parse()
            .map_err(|_| format!("`{n}` is not an integer"))?;
        ints.push(i);
    }
    let mut rationals = Vec::with_capacity(4);
    for pair in ints.chunks_exact(2) {
        if pair[1].is_zero() {
            return Err("zero denominator".to_string());
        }
        rationals.push(BigRational::new(pair[0].clone(), pair[1].clone()));
    }
    let e = rationals.pop().unwrap();
    let c = rationals.pop().unwrap();
    let b = rationals.pop().unwrap();
    let a = rationals.pop().unwrap();
    Ok(ExactScalar::from_parts(a, b, c, e))
}

/// Serializes a vector set to the JSON interchange format. Rays are written
/// in their canonical stored form.
pub fn serialize_vector_set(set: &VectorSet) -> String {
    let rays: Vec<Value> = set
        .rays()
        .iter()
        .map(|ray| Value::Array(ray.iter().map(coordinate_to_value).collect()))
        .collect();
    let root = serde_json::json!({
        "name": set.name(),
        "dimension": set.dimension(),
        "rays": rays,
    });
    serde_json::to_string_pretty(&root).expect("vector-set JSON serialization cannot fail")
}

fn coordinate_to_value(c: &ExactScalar) -> Value {
    let mut parts = Vec::with_capacity(8);
    for r in [&c.re.rational, &c.re.sqrt2, &c.im.rational, &c.im.sqrt2] {
        for i in [r.numer(), r.denom()] {
            let n: serde_json::Number = i
                .to_string()
                .parse()
                .expect("big integers parse as JSON numbers");
            parts.push(Value::Number(n));
        }
    }
    Value::Array(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{load_builtin, BUILTIN_NAMES};

    #[test]
    fn round_trip_preserves_every_builtin() {
        for name in BUILTIN_NAMES {
            let set = load_builtin(name).unwrap();
            let text = serialize_vector_set(&set);
            let back = parse_vector_set(&text).unwrap();
            assert_eq!(set, back, "{name}");
        }
    }

    #[test]
    fn parses_a_minimal_handwritten_set() {
        let text = r#"{
            "name": "pair",
            "dimension": 2,
            "rays": [
                [[1,1, 0,1, 0,1, 0,1], [0,1, 0,1, 0,1, 0,1]],
                [[0,1, 1,1, 0,1, 0,1], [0,1, 0,1, 1,1, 0,1]]
            ]
        }"#;
        let set = parse_vector_set(text).unwrap();
        assert_eq!(set.len(), 2);
        // Second ray (sqrt2, i) canonicalizes to (1, i/sqrt2) = (1, (sqrt2/2)i).
        let pivot = &set.rays()[1][0];
        assert_eq!(*pivot, ExactScalar::one());
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(matches!(
            parse_vector_set("not json"),
            Err(CatalogError::Malformed(_))
        ));
        assert!(matches!(
            parse_vector_set(r#"{"dimension": 3, "rays": []}"#),
            Err(CatalogError::Malformed(_))
        ));
        let bad_coord = r#"{"name":"x","dimension":2,"rays":[[[1,1,0,1],[1,1,0,1,0,1,0,1]]]}"#;
        assert!(matches!(
            parse_vector_set(bad_coord),
            Err(CatalogError::InvalidCoordinate { ray: 0, coord: 0, .. })
        ));
        let zero_den =
            r#"{"name":"x","dimension":2,"rays":[[[1,0,0,1,0,1,0,1],[1,1,0,1,0,1,0,1]]]}"#;
        assert!(matches!(
            parse_vector_set(zero_den),
            Err(CatalogError::InvalidCoordinate { .. })
        ));
        let float =
            r#"{"name":"x","dimension":2,"rays":[[[1.5,1,0,1,0,1,0,1],[1,1,0,1,0,1,0,1]]]}"#;
        assert!(matches!(
            parse_vector_set(float),
            Err(CatalogError::InvalidCoordinate { .. })
        ));
        let low_dim = r#"{"name":"x","dimension":1,"rays":[[[1,1,0,1,0,1,0,1]]]}"#;
        assert!(matches!(
            parse_vector_set(low_dim),
            Err(CatalogError::DimensionTooSmall(1))
        ));
    }

    #[test]
    fn huge_integers_survive_the_round_trip() {
        let big = "9".repeat(40);
        let text = format!(
            r#"{{"name":"big","dimension":2,"rays":[[[{big},1, 0,1, 0,1, 0,1],[0,1, 0,1, {big},3, 0,1]]]}}"#
        );
        let set = parse_vector_set(&text).unwrap();
        let back = parse_vector_set(&serialize_vector_set(&set)).unwrap();
        assert_eq!(set, back);
    }
}
