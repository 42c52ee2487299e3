//! Closed-form quantum upper bounds on the contextual fraction of outcomes.
//!
//! The rank-1 bound is Theorem-1 shaped: a Haar-random state lands in the
//! annulus `t1 <= |<psi|phi>|^2 <= t2` around a fixed state with proportion
//! `p(t1,t2) = (1-t1)^{d-1} - (1-t2)^{d-1}`, and the choices `t1 = 1/d`,
//! `t2 = 1/2` give the bound `(1-1/d)^{d-1} - 2^{1-d}`, maximal at `d = 9`
//! and approaching `1/e` from below. For rank-r projectors the overlap is
//! Beta(r, d-r) distributed and the same construction yields
//! `I_{1/2}(r, d-r) - I_{r/d}(r, d-r)`.
//!
//! Integer parameters are evaluated in exact rational arithmetic (the
//! regularized incomplete beta reduces to a binomial sum); the continued
//! fraction path exists for real parameters and as an independent
//! cross-check of the exact one.

use crate::scalar::ratio_to_f64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("rank must satisfy 1 <= r < d, got r = {r}, d = {d}")]
    RankOutOfRange { d: usize, r: usize },
    #[error("thresholds must satisfy 0 <= t1 <= t2 <= 1")]
    BadThresholds,
    #[error("argument {name} = {value} is outside its domain")]
    BadDomain { name: &'static str, value: f64 },
    #[error("scan requires d_max >= {min}, got {got}")]
    ScanTooShort { min: usize, got: usize },
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact Theorem-1 bound `(1 - 1/d)^{d-1} - 2^{1-d}`.
///
/// # Errors
/// Rejects d < 2.
pub fn theorem1_bound(d: usize) -> Result<BigRational, BoundsError> {
    if d < 2 {
        return Err(BoundsError::DimensionTooSmall(d));
    }
    let e = (d - 1) as i32;
    let first = ratio((d - 1) as i64, d as i64).pow(e);
    let second = ratio(1, 2).pow(e);
    Ok(first - second)
}

/// Result of scanning `theorem1_bound` over dimensions.
#[derive(Clone, Debug)]
pub struct ArgmaxReport {
    pub d_star: usize,
    pub value: BigRational,
    /// The d -> infinity limit 1/e, for convergence checks.
    pub limit: f64,
}

/// Maximizes `theorem1_bound(d)` over 2 <= d <= d_max.
///
/// # Errors
/// Rejects d_max < 9 (the scan must reach the known maximizer).
pub fn argmax_over_d(d_max: usize) -> Result<ArgmaxReport, BoundsError> {
    if d_max < 9 {
        return Err(BoundsError::ScanTooShort {
            min: 9,
            got: d_max,
        });
    }
    let mut d_star = 2;
    let mut value = theorem1_bound(2)?;
    for d in 3..=d_max {
        let candidate = theorem1_bound(d)?;
        if candidate > value {
            value = candidate;
            d_star = d;
        }
    }
    Ok(ArgmaxReport {
        d_star,
        value,
        limit: std::f64::consts::E.recip(),
    })
}

/// Annulus parameters: dimension, projector rank and overlap thresholds.
#[derive(Clone, Debug)]
pub struct BoundParams {
    pub d: usize,
    pub r: usize,
    pub t1: BigRational,
    pub t2: BigRational,
}

impl BoundParams {
    /// Validated parameters.
    ///
    /// # Errors
    /// Rejects d < 2, ranks outside 1 <= r < d, and thresholds outside
    /// 0 <= t1 <= t2 <= 1.
    pub fn new(
        d: usize,
        r: usize,
        t1: BigRational,
        t2: BigRational,
    ) -> Result<BoundParams, BoundsError> {
        if d < 2 {
            return Err(BoundsError::DimensionTooSmall(d));
        }
        if r < 1 || r >= d {
            return Err(BoundsError::RankOutOfRange { d, r });
        }
        if t1.is_negative() || t1 > t2 || t2 > BigRational::one() {
            return Err(BoundsError::BadThresholds);
        }
        Ok(BoundParams { d, r, t1, t2 })
    }

    /// The construction's choices `t1 = r/d`, `t2 = 1/2`.
    ///
    /// # Errors
    /// Rejects d < 2, ranks outside 1 <= r < d, and r/d > 1/2 (where the
    /// default annulus would be empty-ordered).
    pub fn defaults(d: usize, r: usize) -> Result<BoundParams, BoundsError> {
        BoundParams::new(d, r, ratio(r as i64, d as i64), ratio(1, 2))
    }
}

/// Exact proportion of Haar measure in the overlap annulus `[t1, t2]`.
/// Rank 1 uses the closed form `(1-t1)^{d-1} - (1-t2)^{d-1}`; higher ranks
/// difference the Beta(r, d-r) CDF. Both paths are exact rationals.
pub fn annulus_proportion(params: &BoundParams) -> BigRational {
    let BoundParams { d, r, t1, t2 } = params;
    if *r == 1 {
        let e = (*d - 1) as i32;
        let one = BigRational::one();
        (one.clone() - t1).pow(e) - (one - t2).pow(e)
    } else {
        let (a, b) = (*r as u64, (*d - *r) as u64);
        reg_inc_beta_exact(t2, a, b) - reg_inc_beta_exact(t1, a, b)
    }
}

/// Exact regularized incomplete beta for integer shapes: the binomial sum
/// `I_x(a,b) = sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^{a+b-1-j}`.
///
/// # Panics
/// Requires `0 <= x <= 1` and `a, b >= 1`.
pub fn reg_inc_beta_exact(x: &BigRational, a: u64, b: u64) -> BigRational {
    assert!(
        !x.is_negative() && *x <= BigRational::one(),
        "x must lie in [0, 1]"
    );
    assert!(a >= 1 && b >= 1, "shapes must be positive integers");
    let n = (a + b - 1) as usize;
    let complement = BigRational::one() - x;
    let mut x_pow = vec![BigRational::one(); n + 1];
    let mut c_pow = vec![BigRational::one(); n + 1];
    for j in 1..=n {
        x_pow[j] = &x_pow[j - 1] * x;
        c_pow[j] = &c_pow[j - 1] * &complement;
    }
    // Walk C(n, j) incrementally; the running division is always exact.
    let mut binom = BigInt::one();
    for j in 1..a {
        binom = binom * BigInt::from(n as u64 - j + 1) / BigInt::from(j);
    }
    let mut sum = BigRational::zero();
    for j in a..=n as u64 {
        binom = binom * BigInt::from(n as u64 - j + 1) / BigInt::from(j);
        sum += BigRational::from(binom.clone()) * &x_pow[j as usize] * &c_pow[n - j as usize];
    }
    sum
}

/// Regularized incomplete beta `I_x(a, b)` for real shapes, by modified
/// Lentz continued fraction with the reflection `I_x(a,b) = 1 - I_{1-x}(b,a)`
/// applied when x is past the distribution's bulk. Relative accuracy 1e-12.
///
/// # Errors
/// Rejects x outside [0, 1] and nonpositive shapes.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&x) || !x.is_finite() {
        return Err(BoundsError::BadDomain { name: "x", value: x });
    }
    if a <= 0.0 || !a.is_finite() {
        return Err(BoundsError::BadDomain { name: "a", value: a });
    }
    if b <= 0.0 || !b.is_finite() {
        return Err(BoundsError::BadDomain { name: "b", value: b });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    // ln(1 - x) as ln_1p(-x) keeps precision for small x.
    let front =
        (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (-x).ln_1p()).exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok(front * beta_cf(x, a, b) / a)
    } else {
        Ok(1.0 - front * beta_cf(1.0 - x, b, a) / b)
    }
}

/// Continued fraction for the incomplete beta (modified Lentz).
fn beta_cf(x: f64, a: f64, b: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-15;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=300 {
        let m = f64::from(m);
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Lanczos `ln Gamma`, g = 7, 9 coefficients; about 1e-14 relative error
/// for positive arguments, which is all this module needs.
fn ln_gamma(z: f64) -> f64 {
    // Published table; kept digit-for-digit even past f64 precision.
    #[allow(clippy::excessive_precision)]
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    debug_assert!(z > 0.0);
    let z = z - 1.0;
    let mut sum = COEFFS[0];
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}

/// Exact rank-r bound `I_{1/2}(r, d-r) - I_{r/d}(r, d-r)`. Negative when
/// r > d/2 (the construction is only useful for r <= d/2, but the formula
/// is defined for every valid rank).
///
/// # Errors
/// Rejects d < 2 and ranks outside 1 <= r < d.
pub fn rank_bound(d: usize, r: usize) -> Result<BigRational, BoundsError> {
    if d < 2 {
        return Err(BoundsError::DimensionTooSmall(d));
    }
    if r < 1 || r >= d {
        return Err(BoundsError::RankOutOfRange { d, r });
    }
    let (a, b) = (r as u64, (d - r) as u64);
    let half = ratio(1, 2);
    let mean = ratio(r as i64, d as i64);
    Ok(reg_inc_beta_exact(&half, a, b) - reg_inc_beta_exact(&mean, a, b))
}

/// Continued-fraction twin of [`rank_bound`], used as an independent
/// cross-check of the exact path.
///
/// # Errors
/// Rejects d < 2 and ranks outside 1 <= r < d.
pub fn rank_bound_f64(d: usize, r: usize) -> Result<f64, BoundsError> {
    if d < 2 {
        return Err(BoundsError::DimensionTooSmall(d));
    }
    if r < 1 || r >= d {
        return Err(BoundsError::RankOutOfRange { d, r });
    }
    let (a, b) = (r as f64, (d - r) as f64);
    Ok(reg_inc_beta(0.5, a, b)? - reg_inc_beta(r as f64 / d as f64, a, b)?)
}

/// Outcome of the grid scan behind the `< 1/2` corollary.
#[derive(Clone, Debug)]
pub struct HalfCorollaryReport {
    /// True when every scanned bound is strictly below 1/2 and every
    /// median inequality holds.
    pub holds: bool,
    pub worst_value: BigRational,
    pub worst_d: usize,
    pub worst_r: usize,
    /// Largest median - mean over the grid; nonpositive (within the
    /// bisection tolerance) when the mean-median-mode inequality holds.
    pub worst_median_gap: f64,
}

/// Checks `rank_bound(d, r) < 1/2` for all 2 <= d <= d_max, 1 <= r <= d/2,
/// and the median inequality `median(Beta(r, d-r)) <= r/d` by bisecting
/// the CDF to 1e-10.
///
/// # Errors
/// Rejects d_max < 4.
pub fn verify_half_corollary(d_max: usize) -> Result<HalfCorollaryReport, BoundsError> {
    if d_max < 4 {
        return Err(BoundsError::ScanTooShort {
            min: 4,
            got: d_max,
        });
    }
    let half = ratio(1, 2);
    let mut holds = true;
    let mut worst_value = BigRational::zero();
    let (mut worst_d, mut worst_r) = (2, 1);
    let mut worst_median_gap = f64::NEG_INFINITY;
    for d in 2..=d_max {
        for r in 1..=d / 2 {
            let value = rank_bound(d, r)?;
            if value >= half {
                holds = false;
            }
            if value > worst_value {
                worst_value = value;
                worst_d = d;
                worst_r = r;
            }
            let median = beta_median(r as f64, (d - r) as f64)?;
            let gap = median - r as f64 / d as f64;
            worst_median_gap = worst_median_gap.max(gap);
            if gap > 1e-8 {
                holds = false;
            }
        }
    }
    Ok(HalfCorollaryReport {
        holds,
        worst_value,
        worst_d,
        worst_r,
        worst_median_gap,
    })
}

/// Median of Beta(a, b) by bisection on the CDF, absolute tolerance 1e-10.
///
/// # Errors
/// Propagates CDF domain errors (none for valid shapes).
pub fn beta_median(a: f64, b: f64) -> Result<f64, BoundsError> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if reg_inc_beta(mid, a, b)? < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Convenience float image of an exact rational bound.
pub fn bound_to_f64(value: &BigRational) -> f64 {
    ratio_to_f64(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    #[test]
    fn theorem1_pinned_values() {
        assert_eq!(theorem1_bound(2).unwrap(), big(0, 1));
        assert_eq!(theorem1_bound(3).unwrap(), big(7, 36));
        assert_eq!(
            theorem1_bound(9).unwrap(),
            big(4_251_920_575, 11_019_960_576)
        );
        assert_eq!(
            theorem1_bound(1),
            Err(BoundsError::DimensionTooSmall(1))
        );
    }

    #[test]
    fn argmax_lands_on_nine() {
        let report = argmax_over_d(50).unwrap();
        assert_eq!(report.d_star, 9);
        assert_eq!(report.value, big(4_251_920_575, 11_019_960_576));
        assert_eq!(argmax_over_d(9).unwrap().d_star, 9);
        assert!(matches!(
            argmax_over_d(8),
            Err(BoundsError::ScanTooShort { min: 9, got: 8 })
        ));
        // The maximizer is stable for every scan length past 9.
        for d_max in 10..=60 {
            assert_eq!(argmax_over_d(d_max).unwrap().d_star, 9);
        }
    }

    #[test]
    fn theorem1_approaches_inverse_e() {
        // (1 - 1/d)^{d-1} decreases to 1/e from above while the 2^{1-d}
        // term vanishes much faster, so the limit is approached from above.
        let limit = std::f64::consts::E.recip();
        let at_large_d = bound_to_f64(&theorem1_bound(10_000).unwrap());
        assert!((at_large_d - limit).abs() < 1e-3);
        assert!(at_large_d > limit);
        // Monotone decrease past the maximum.
        let mut prev = theorem1_bound(9).unwrap();
        for d in 10..=40 {
            let next = theorem1_bound(d).unwrap();
            assert!(next < prev, "d = {d}");
            prev = next;
        }
    }

    #[test]
    fn annulus_closed_form() {
        let p = BoundParams::new(3, 1, big(1, 3), big(1, 2)).unwrap();
        assert_eq!(annulus_proportion(&p), big(7, 36));
        assert_eq!(annulus_proportion(&p), theorem1_bound(3).unwrap());

        let empty = BoundParams::new(5, 1, big(1, 3), big(1, 3)).unwrap();
        assert_eq!(annulus_proportion(&empty), big(0, 1));

        let whole = BoundParams::new(5, 2, big(0, 1), big(1, 1)).unwrap();
        assert_eq!(annulus_proportion(&whole), big(1, 1));

        assert!(matches!(
            BoundParams::new(5, 1, big(2, 3), big(1, 3)),
            Err(BoundsError::BadThresholds)
        ));
        assert!(matches!(
            BoundParams::new(5, 5, big(0, 1), big(1, 2)),
            Err(BoundsError::RankOutOfRange { d: 5, r: 5 })
        ));
    }

    #[test]
    fn annulus_defaults_equal_rank_bound() {
        for d in 2..=12 {
            for r in 1..=(d - 1).min(d / 2) {
                let p = BoundParams::defaults(d, r).unwrap();
                assert_eq!(
                    annulus_proportion(&p),
                    rank_bound(d, r).unwrap(),
                    "d = {d}, r = {r}"
                );
            }
        }
    }

    #[test]
    fn exact_beta_pinned_values() {
        assert_eq!(reg_inc_beta_exact(&big(1, 2), 1, 3), big(7, 8));
        assert_eq!(reg_inc_beta_exact(&big(1, 2), 2, 6), big(15, 16));
        assert_eq!(reg_inc_beta_exact(&big(1, 4), 2, 6), big(4547, 8192));
        assert_eq!(reg_inc_beta_exact(&big(0, 1), 3, 4), big(0, 1));
        assert_eq!(reg_inc_beta_exact(&big(1, 1), 3, 4), big(1, 1));
    }

    #[test]
    fn rank_bound_pinned_values() {
        assert_eq!(rank_bound(4, 2).unwrap(), big(0, 1));
        assert_eq!(rank_bound(8, 2).unwrap(), big(3133, 8192));
        // Rank 1 reduces to the Theorem-1 closed form, exactly.
        for d in 2..=24 {
            assert_eq!(rank_bound(d, 1).unwrap(), theorem1_bound(d).unwrap());
        }
        assert!(matches!(
            rank_bound(4, 0),
            Err(BoundsError::RankOutOfRange { d: 4, r: 0 })
        ));
        assert!(matches!(
            rank_bound(4, 4),
            Err(BoundsError::RankOutOfRange { d: 4, r: 4 })
        ));
    }

    #[test]
    fn continued_fraction_matches_exact_path() {
        // Every integer shape pair with a + b <= 64, at an interior grid.
        for a in 1u64..=63 {
            for b in 1..=(64 - a) {
                for num in [1i64, 5, 9] {
                    let x = big(num, 10);
                    let exact = bound_to_f64(&reg_inc_beta_exact(&x, a, b));
                    let cf = reg_inc_beta(num as f64 / 10.0, a as f64, b as f64).unwrap();
                    assert!(
                        (exact - cf).abs() <= 1e-12 * exact.max(1e-3),
                        "a={a} b={b} x={num}/10: exact {exact}, cf {cf}"
                    );
                }
            }
        }
    }

    #[test]
    fn continued_fraction_edges_and_errors() {
        assert_eq!(reg_inc_beta(0.0, 2.5, 3.5).unwrap(), 0.0);
        assert_eq!(reg_inc_beta(1.0, 2.5, 3.5).unwrap(), 1.0);
        assert!(reg_inc_beta(-0.1, 2.0, 2.0).is_err());
        assert!(reg_inc_beta(1.1, 2.0, 2.0).is_err());
        assert!(reg_inc_beta(0.5, 0.0, 2.0).is_err());
        assert!(reg_inc_beta(0.5, 2.0, -1.0).is_err());
        // Monotone nondecreasing in x.
        for (a, b) in [(1.0, 3.0), (2.0, 6.0), (7.5, 2.5), (9.0, 1.0)] {
            let mut prev = 0.0;
            for i in 0..=50 {
                let x = i as f64 / 50.0;
                let v = reg_inc_beta(x, a, b).unwrap();
                assert!(v >= prev - 1e-14, "a={a} b={b} x={x}");
                prev = v;
            }
        }
    }

    #[test]
    fn lanczos_against_factorials() {
        // Gamma(n) = (n-1)! and the half-integer ladder from sqrt(pi).
        let mut factorial = 1.0f64;
        for n in 1..=20u32 {
            let expected = factorial.ln();
            let got = ln_gamma(n as f64);
            assert!((got - expected).abs() <= 1e-12 * expected.abs().max(1.0), "n = {n}");
            factorial *= n as f64;
        }
        let half = ln_gamma(0.5);
        assert!((half - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-13);
    }

    #[test]
    fn rank_bound_float_twin_agrees() {
        for d in 2..=128 {
            for r in [1, 2, d / 2] {
                if r < 1 || r >= d {
                    continue;
                }
                let exact = bound_to_f64(&rank_bound(d, r).unwrap());
                let float = rank_bound_f64(d, r).unwrap();
                assert!(
                    (exact - float).abs() <= 1e-12,
                    "d={d} r={r}: exact {exact}, float {float}"
                );
            }
        }
    }

    #[test]
    fn beta_density_integrates_to_one_and_cdf_matches() {
        // Composite Simpson on the (polynomial) Beta density. The density
        // is reconstructed from the exact binomial-sum CDF's parameters.
        for (a, b) in [(1u64, 3u64), (2, 6), (2, 2), (5, 4)] {
            let n = a + b - 1;
            // ln of 1/B(a,b) via factorials: B(a,b) = (a-1)!(b-1)!/(a+b-1)!.
            let norm = {
                let mut v = 1.0f64;
                for k in 1..=n {
                    v *= k as f64;
                }
                let mut da = 1.0f64;
                for k in 1..a {
                    da *= k as f64;
                }
                let mut db = 1.0f64;
                for k in 1..b {
                    db *= k as f64;
                }
                v / (da * db)
            };
            let density =
                |t: f64| norm * t.powi(a as i32 - 1) * (1.0 - t).powi(b as i32 - 1);
            let steps = 1 << 16;
            let simpson = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64| {
                let h = (hi - lo) / steps as f64;
                let mut acc = f(lo) + f(hi);
                for i in 1..steps {
                    let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                    acc += w * f(lo + i as f64 * h);
                }
                acc * h / 3.0
            };
            let total = simpson(&density, 0.0, 1.0);
            assert!((total - 1.0).abs() < 1e-10, "a={a} b={b}: total {total}");
            for num in [1i64, 3, 7] {
                let x = num as f64 / 8.0;
                let by_quadrature = simpson(&density, 0.0, x);
                let by_cdf = bound_to_f64(&reg_inc_beta_exact(&big(num, 8), a, b));
                assert!(
                    (by_quadrature - by_cdf).abs() < 1e-10,
                    "a={a} b={b} x={x}"
                );
            }
        }
    }

    #[test]
    fn half_corollary_scan() {
        let report = verify_half_corollary(16).unwrap();
        assert!(report.holds);
        assert!(report.worst_value < big(1, 2));
        assert!(report.worst_median_gap <= 1e-8);
        // The d=4, r=2 entry collapses to zero.
        assert_eq!(rank_bound(4, 2).unwrap(), big(0, 1));
        assert!(matches!(
            verify_half_corollary(3),
            Err(BoundsError::ScanTooShort { min: 4, got: 3 })
        ));
    }

    #[test]
    fn chebyshev_tail_grows_toward_one() {
        // Qualitative check of the I_{1/2}(r, d-r) -> 1 claim at fixed r.
        let mut prev = 0.0;
        for d in [4usize, 8, 16, 32, 64] {
            let v = bound_to_f64(&reg_inc_beta_exact(&big(1, 2), 2, (d - 2) as u64));
            assert!(v > prev, "d = {d}");
            prev = v;
        }
        assert!(prev > 1.0 - 1e-9);
    }

    proptest! {
        #[test]
        fn reflection_identity_exact(num in 0i64..=64, a in 1u64..=9, b in 1u64..=9) {
            let x = big(num, 64);
            let lhs = reg_inc_beta_exact(&x, a, b)
                + reg_inc_beta_exact(&(BigRational::one() - big(num, 64)), b, a);
            prop_assert_eq!(lhs, BigRational::one());
        }

        #[test]
        fn reflection_identity_float(x in 0.0f64..=1.0, a in 0.5f64..12.0, b in 0.5f64..12.0) {
            let lhs = reg_inc_beta(x, a, b).unwrap() + reg_inc_beta(1.0 - x, b, a).unwrap();
            prop_assert!((lhs - 1.0).abs() < 1e-11);
        }
    }
}
