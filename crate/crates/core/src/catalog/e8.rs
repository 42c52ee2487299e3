//! Generation of the 120 projective rays of the E8 root system.
//!
//! The 240 roots split into 112 integer roots (all permutations of
//! `(+-1, +-1, 0^6)`) and 128 half-integer roots (`(+-1/2)^8` with an even
//! number of minus signs). Roots come in antipodal pairs, and
//! canonicalization collapses each pair to a single ray, leaving 120.

use super::{lex_cmp_rays, CatalogError, Ray, VectorSet};
use crate::scalar::ExactScalar;
use num_bigint::BigInt;
use num_rational::BigRational;

fn rational(n: i64, d: i64) -> ExactScalar {
    ExactScalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// All 240 roots with squared norm 2, in a fixed deterministic order.
fn raw_roots() -> Vec<Ray> {
    let mut roots = Vec::with_capacity(240);
    // Integer roots: +-e_i +- e_j for i < j.
    for i in 0..8 {
        for j in i + 1..8 {
            for si in [1i64, -1] {
                for sj in [1i64, -1] {
                    let mut v = vec![ExactScalar::zero(); 8];
                    v[i] = ExactScalar::from_int(si);
                    v[j] = ExactScalar::from_int(sj);
                    roots.push(v);
                }
            }
        }
    }
    // Half-integer roots: all entries +-1/2, even number of minus signs.
    for mask in 0u32..256 {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let v: Ray = (0..8)
            .map(|k| rational(if mask >> k & 1 == 1 { -1 } else { 1 }, 2))
            .collect();
        roots.push(v);
    }
    roots
}

/// Generates the 120 projective E8 rays in dimension 8, sorted
/// lexicographically. After canonicalization every coordinate is an
/// integer in `{0, +-1}`.
pub fn generate_e8_rays() -> Result<VectorSet, CatalogError> {
    let roots = raw_roots();
    assert_eq!(roots.len(), 240, "E8 has 240 roots");
    let mut rays: Vec<Ray> = Vec::with_capacity(120);
    for root in roots {
        let ray = super::canonicalize_ray(root).expect("roots are nonzero");
        if !rays.contains(&ray) {
            rays.push(ray);
        }
    }
    rays.sort_by(lex_cmp_rays);
    VectorSet::new("e8", 8, rays)
}
