//! Exact arithmetic in the number field Q(i, sqrt2).
//!
//! Every scalar is stored as `(a + b*sqrt2) + i*(c + e*sqrt2)` with the four
//! coefficients held as arbitrary-precision rationals. Since 1, sqrt2, i and
//! i*sqrt2 are linearly independent over Q, a value is zero exactly when all
//! four coefficients are zero, and equality of representations is equality
//! of values. The field is closed under division, so projective
//! canonicalization (dividing a ray by its first nonzero coordinate) never
//! leaves the ring.
//!
//! This covers every catalog construction: real sets with entries in
//! `{0, +-1, +-sqrt2}`, stabilizer states with entries in `{0, +-1, +-i}`,
//! and the rational E8 root coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// An element `rational + sqrt2 * coeff` of the real quadratic field Q(sqrt2).
///
/// Used both as the real / imaginary part of [`ExactScalar`] and as the exact
/// value of real quantities such as squared norms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sqrt2Ext {
    pub rational: BigRational,
    pub sqrt2: BigRational,
}

impl Sqrt2Ext {
    pub fn new(rational: BigRational, sqrt2: BigRational) -> Self {
        Sqrt2Ext { rational, sqrt2 }
    }

    pub fn zero() -> Self {
        Sqrt2Ext::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Sqrt2Ext::new(BigRational::one(), BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Sqrt2Ext::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.sqrt2.is_zero()
    }

    /// Exact sign of the real number `rational + sqrt2 * coeff`.
    ///
    /// When the two terms have opposite signs the comparison reduces to
    /// `rational^2` versus `2 * coeff^2`, which is a rational comparison.
    pub fn signum(&self) -> i8 {
        let (a, b) = (&self.rational, &self.sqrt2);
        if b.is_zero() {
            return sign_of(a);
        }
        if a.is_zero() {
            return sign_of(b);
        }
        match (a.is_positive(), b.is_positive()) {
            (true, true) => 1,
            (false, false) => -1,
            (true, false) | (false, true) => {
                // a + b*sqrt2 > 0  <=>  sign(a) * (a^2 - 2 b^2) > 0
                let diff = a * a - BigRational::from_integer(BigInt::from(2)) * b * b;
                sign_of(a) * sign_of(&diff)
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    fn mul(&self, other: &Sqrt2Ext) -> Sqrt2Ext {
        let two = BigRational::from_integer(BigInt::from(2));
        Sqrt2Ext::new(
            &self.rational * &other.rational + &two * &self.sqrt2 * &other.sqrt2,
            &self.rational * &other.sqrt2 + &self.sqrt2 * &other.rational,
        )
    }

    fn add(&self, other: &Sqrt2Ext) -> Sqrt2Ext {
        Sqrt2Ext::new(
            &self.rational + &other.rational,
            &self.sqrt2 + &other.sqrt2,
        )
    }

    fn sub(&self, other: &Sqrt2Ext) -> Sqrt2Ext {
        Sqrt2Ext::new(
            &self.rational - &other.rational,
            &self.sqrt2 - &other.sqrt2,
        )
    }

    fn neg(&self) -> Sqrt2Ext {
        Sqrt2Ext::new(-self.rational.clone(), -self.sqrt2.clone())
    }

    /// Multiplicative inverse. The norm `a^2 - 2 b^2` vanishes only at zero
    /// because sqrt2 is irrational.
    ///
    /// # Panics
    /// Panics when `self` is zero.
    pub fn inverse(&self) -> Sqrt2Ext {
        assert!(!self.is_zero(), "inverse of zero in Q(sqrt2)");
        let two = BigRational::from_integer(BigInt::from(2));
        let norm = &self.rational * &self.rational - two * &self.sqrt2 * &self.sqrt2;
        Sqrt2Ext::new(&self.rational / &norm, -(&self.sqrt2 / &norm))
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.rational) + SQRT_2 * ratio_to_f64(&self.sqrt2)
    }
}

#[inline]
fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for Sqrt2Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.rational.is_zero() {
            write!(f, "{}", self.rational)?;
            first = false;
        }
        if !self.sqrt2.is_zero() {
            if !first && self.sqrt2.is_positive() {
                write!(f, "+")?;
            }
            if self.sqrt2 == -BigRational::one() {
                write!(f, "-")?;
            } else if self.sqrt2 != BigRational::one() {
                write!(f, "{}*", self.sqrt2)?;
            }
            write!(f, "\u{221a}2")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sqrt2Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of Q(i, sqrt2): `re + i * im` with both parts in Q(sqrt2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    pub re: Sqrt2Ext,
    pub im: Sqrt2Ext,
}

impl ExactScalar {
    pub fn new(re: Sqrt2Ext, im: Sqrt2Ext) -> Self {
        ExactScalar { re, im }
    }

    /// Builds a scalar from the four rational coefficients
    /// `(a + b*sqrt2) + i*(c + e*sqrt2)`.
    pub fn from_parts(a: BigRational, b: BigRational, c: BigRational, e: BigRational) -> Self {
        ExactScalar::new(Sqrt2Ext::new(a, b), Sqrt2Ext::new(c, e))
    }

    pub fn zero() -> Self {
        ExactScalar::new(Sqrt2Ext::zero(), Sqrt2Ext::zero())
    }

    pub fn one() -> Self {
        ExactScalar::new(Sqrt2Ext::one(), Sqrt2Ext::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::new(Sqrt2Ext::from_int(n), Sqrt2Ext::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar::new(Sqrt2Ext::new(r, BigRational::zero()), Sqrt2Ext::zero())
    }

    /// The element sqrt2.
    pub fn sqrt2() -> Self {
        ExactScalar::new(
            Sqrt2Ext::new(BigRational::zero(), BigRational::one()),
            Sqrt2Ext::zero(),
        )
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ExactScalar::new(Sqrt2Ext::zero(), Sqrt2Ext::one())
    }

    /// `n * i` for convenience in catalog tables.
    pub fn int_i(n: i64) -> Self {
        ExactScalar::new(Sqrt2Ext::zero(), Sqrt2Ext::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True when the value is real (imaginary part exactly zero).
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> ExactScalar {
        ExactScalar::new(self.re.clone(), self.im.neg())
    }

    /// `|self|^2 = re^2 + im^2`, an exact element of Q(sqrt2).
    pub fn norm_sq(&self) -> Sqrt2Ext {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Multiplicative inverse `conj(self) / |self|^2`.
    ///
    /// # Panics
    /// Panics when `self` is zero.
    pub fn inverse(&self) -> ExactScalar {
        assert!(!self.is_zero(), "inverse of zero in Q(i, sqrt2)");
        let inv_norm = self.norm_sq().inverse();
        ExactScalar::new(self.re.mul(&inv_norm), self.im.neg().mul(&inv_norm))
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    // Division in the field is multiplication by the inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.inverse()
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(self.re.neg(), self.im.neg())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                $trait::$method(&self, &rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_str = format!("{}", self.im);
        let needs_parens = im_str.contains('+') || im_str.contains('-') || im_str.contains('/');
        let wrapped = if im_str == "1" {
            "i".to_string()
        } else if needs_parens {
            format!("({im_str})i")
        } else {
            format!("{im_str}i")
        };
        if self.re.is_zero() {
            write!(f, "{wrapped}")
        } else {
            write!(f, "{}+{}", self.re, wrapped)
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Hermitian inner product `sum_k conj(u[k]) * v[k]`, conjugate-linear in the
/// first argument.
///
/// # Panics
/// Panics when the vectors have different lengths.
pub fn inner_product(u: &[ExactScalar], v: &[ExactScalar]) -> ExactScalar {
    assert_eq!(u.len(), v.len(), "inner product of mismatched dimensions");
    let mut acc = ExactScalar::zero();
    for (x, y) in u.iter().zip(v) {
        acc = &acc + &(&x.conj() * y);
    }
    acc
}

/// Exact squared norm of a vector, a strictly positive element of Q(sqrt2)
/// for any nonzero vector.
pub fn norm_sq(u: &[ExactScalar]) -> Sqrt2Ext {
    let mut acc = Sqrt2Ext::zero();
    for x in u {
        acc = acc.add(&x.norm_sq());
    }
    acc
}

/// Converts a big rational to `f64` without overflowing on huge numerators
/// or denominators: the quotient is computed to 96 fractional bits as a big
/// integer and scaled back by an exact power of two.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer();
    let den = r.denom();
    let shift: i64 = den.bits() as i64 - num.bits() as i64 + 96;
    let scaled = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let q = scaled.to_f64().unwrap_or(f64::NAN);
    q * 2f64.powi(-shift as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = ExactScalar::sqrt2();
        assert_eq!(&s * &s, int(2));
    }

    #[test]
    fn i_squares_to_minus_one() {
        let i = ExactScalar::i();
        assert_eq!(&i * &i, int(-1));
    }

    #[test]
    fn conjugation_example() {
        // conj(1 + i*sqrt2) = 1 - i*sqrt2, and x * conj(x) = 1 + 2 = 3.
        let x = ExactScalar::from_parts(rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 1));
        let c = x.conj();
        assert_eq!(c.im, Sqrt2Ext::new(rat(0, 1), rat(-1, 1)));
        assert_eq!(&x * &c, int(3));
        assert_eq!(x.norm_sq(), Sqrt2Ext::from_int(3));
    }

    #[test]
    fn inner_product_of_peres_style_ray_with_itself() {
        // (0, 1, sqrt2) . (0, 1, sqrt2) = 0 + 1 + 2 = 3
        let u = vec![int(0), int(1), ExactScalar::sqrt2()];
        assert_eq!(inner_product(&u, &u), int(3));
        assert_eq!(norm_sq(&u), Sqrt2Ext::from_int(3));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        // 1 / (1 + sqrt2) = sqrt2 - 1
        let x = &int(1) + &ExactScalar::sqrt2();
        let inv = x.inverse();
        assert_eq!(inv, &ExactScalar::sqrt2() - &int(1));
        assert_eq!(&x * &inv, int(1));
    }

    #[test]
    fn inverse_of_i_is_minus_i() {
        assert_eq!(ExactScalar::i().inverse(), -&ExactScalar::i());
    }

    #[test]
    fn zero_iff_all_components_zero() {
        let x = ExactScalar::from_parts(rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 7));
        assert!(!x.is_zero());
        assert!(ExactScalar::zero().is_zero());
    }

    #[test]
    fn exact_signs_near_sqrt2() {
        // 3 - 2*sqrt2 = 0.1715... > 0, 7 - 5*sqrt2 = -0.071... < 0
        assert_eq!(Sqrt2Ext::new(rat(3, 1), rat(-2, 1)).signum(), 1);
        assert_eq!(Sqrt2Ext::new(rat(7, 1), rat(-5, 1)).signum(), -1);
        assert_eq!(Sqrt2Ext::new(rat(-1, 1), rat(1, 1)).signum(), 1);
        assert_eq!(Sqrt2Ext::new(rat(-3, 2), rat(1, 1)).signum(), -1);
        assert_eq!(Sqrt2Ext::zero().signum(), 0);
    }

    #[test]
    fn ratio_to_f64_handles_huge_components() {
        // (8/9)^8 - 1/256 = 4251920575 / 11019960576 = 0.38583809...
        let v = rat(8, 9).pow(8) - rat(1, 256);
        assert_eq!(v, rat(4251920575, 11019960576));
        let direct = 4251920575.0f64 / 11019960576.0;
        assert!((ratio_to_f64(&v) - direct).abs() < 1e-15);
        // Astronomical components still convert: 10^300 / (3 * 10^300) = 1/3.
        let big = BigInt::from(10).pow(300u32);
        let r = BigRational::new(big.clone(), big * 3);
        assert!((ratio_to_f64(&r) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn display_forms() {
        assert_eq!(int(0).to_string(), "0");
        assert_eq!(int(-3).to_string(), "-3");
        assert_eq!(ExactScalar::sqrt2().to_string(), "\u{221a}2");
        assert_eq!(ExactScalar::i().to_string(), "i");
        assert_eq!(ExactScalar::int_i(-1).to_string(), "(-1)i");
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-8i64..=8, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    fn small_scalar() -> impl Strategy<Value = ExactScalar> {
        (small_rational(), small_rational(), small_rational(), small_rational())
            .prop_map(|(a, b, c, e)| ExactScalar::from_parts(a, b, c, e))
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_associates(
            x in small_scalar(), y in small_scalar(), z in small_scalar()
        ) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        }

        #[test]
        fn distributivity(x in small_scalar(), y in small_scalar(), z in small_scalar()) {
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn conjugation_is_a_ring_involution(x in small_scalar(), y in small_scalar()) {
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        }

        #[test]
        fn nonzero_scalars_invert(x in small_scalar()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inverse(), ExactScalar::one());
        }

        #[test]
        fn norm_sq_is_nonnegative_and_faithful(x in small_scalar()) {
            let n = x.norm_sq();
            if x.is_zero() {
                prop_assert!(n.is_zero());
            } else {
                prop_assert_eq!(n.signum(), 1);
            }
        }

        #[test]
        fn inner_product_is_sesquilinear(
            a in small_scalar(),
            u in prop::collection::vec(small_scalar(), 3),
            v in prop::collection::vec(small_scalar(), 3),
        ) {
            let au: Vec<ExactScalar> = u.iter().map(|x| &a * x).collect();
            let av: Vec<ExactScalar> = v.iter().map(|x| &a * x).collect();
            prop_assert_eq!(inner_product(&au, &v), &a.conj() * &inner_product(&u, &v));
            prop_assert_eq!(inner_product(&u, &av), &a * &inner_product(&u, &v));
            // Hermitian symmetry.
            prop_assert_eq!(inner_product(&u, &v).conj(), inner_product(&v, &u));
        }

        #[test]
        fn signum_matches_float_sign(a in small_rational(), b in small_rational()) {
            let x = Sqrt2Ext::new(a, b);
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum() as f64, f.signum());
            }
        }
    }
}
