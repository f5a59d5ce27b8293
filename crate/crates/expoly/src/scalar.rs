//! Exact arithmetic in the field Q(i)[sqrt(r)] for a square-free radicand r.
//!
//! Every value is `(a_re + a_im*i) + (b_re + b_im*i)*sqrt(r)` with rational
//! components. For r = 1 the sqrt part is folded into the rational part on
//! construction, so the default field is the Gaussian rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shared configuration for a computation: the quadratic radicand and the
/// tolerance used by numeric spot checks.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarContext {
    radicand: u64,
    pub float_tolerance: f64,
}

impl Default for ScalarContext {
    fn default() -> Self {
        ScalarContext { radicand: 1, float_tolerance: 1e-9 }
    }
}

impl ScalarContext {
    pub fn new(radicand: u64) -> Result<Self> {
        if radicand == 0 || !is_square_free(radicand) {
            return Err(Error::InvalidParameter(format!(
                "radicand must be a square-free positive integer, got {radicand}"
            )));
        }
        Ok(ScalarContext { radicand, float_tolerance: 1e-9 })
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.float_tolerance = tol;
        self
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }
}

fn is_square_free(n: u64) -> bool {
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        while n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// An exact element of Q(i)[sqrt(r)].
///
/// The derived ordering is structural (component-wise), used only for
/// canonical container keys; it is not the ordering of real parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QScalar {
    pub a_re: Rational,
    pub a_im: Rational,
    pub b_re: Rational,
    pub b_im: Rational,
    radicand: u64,
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QScalar({} + {}i + ({} + {}i)*sqrt({}))",
            self.a_re, self.a_im, self.b_re, self.b_im, self.radicand
        )
    }
}

impl QScalar {
    pub fn new(a_re: Rational, a_im: Rational, b_re: Rational, b_im: Rational, radicand: u64) -> Self {
        let mut s = QScalar { a_re, a_im, b_re, b_im, radicand };
        if radicand == 1 {
            // sqrt(1) folds into the rational part
            s.a_re += std::mem::take(&mut s.b_re);
            s.a_im += std::mem::take(&mut s.b_im);
        }
        s
    }

    pub fn zero(radicand: u64) -> Self {
        QScalar::new(Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero(), radicand)
    }

    pub fn one(radicand: u64) -> Self {
        QScalar::from_int(1, radicand)
    }

    pub fn from_int(n: i64, radicand: u64) -> Self {
        QScalar::new(Rational::from_integer(BigInt::from(n)), Rational::zero(), Rational::zero(), Rational::zero(), radicand)
    }

    pub fn from_ratio(num: i64, den: i64, radicand: u64) -> Self {
        QScalar::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            radicand,
        )
    }

    pub fn from_rational(q: Rational, radicand: u64) -> Self {
        QScalar::new(q, Rational::zero(), Rational::zero(), Rational::zero(), radicand)
    }

    /// The imaginary unit.
    pub fn i(radicand: u64) -> Self {
        QScalar::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero(), radicand)
    }

    /// sqrt(r) itself (sqrt(1) = 1).
    pub fn sqrt_radicand(radicand: u64) -> Self {
        QScalar::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero(), radicand)
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.a_re.is_zero() && self.a_im.is_zero() && self.b_re.is_zero() && self.b_im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a_re.is_one() && self.a_im.is_zero() && self.b_re.is_zero() && self.b_im.is_zero()
    }

    /// True iff the value lies in Q (no imaginary and no sqrt component).
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.a_im.is_zero() && self.b_re.is_zero() && self.b_im.is_zero() {
            Some(&self.a_re)
        } else {
            None
        }
    }

    /// True iff the value is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn is_real(&self) -> bool {
        self.a_im.is_zero() && self.b_im.is_zero()
    }

    /// Exact sign test for real values: true iff both imaginary components
    /// vanish and a_re + b_re*sqrt(r) > 0.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && real_sign(&self.a_re, &self.b_re, self.radicand) == Ordering::Greater
    }

    pub fn conj(&self) -> QScalar {
        QScalar {
            a_re: self.a_re.clone(),
            a_im: -self.a_im.clone(),
            b_re: self.b_re.clone(),
            b_im: -self.b_im.clone(),
            radicand: self.radicand,
        }
    }

    pub fn inv(&self) -> Result<QScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(a + b*sqrt(r)) = (a - b*sqrt(r)) / (a^2 - b^2 r), with a, b Gaussian.
        // The denominator is a nonzero Gaussian rational since sqrt(r) is
        // irrational for square-free r >= 2 (r = 1 has b = 0).
        let r = gauss_int(self.radicand);
        let a = (self.a_re.clone(), self.a_im.clone());
        let b = (self.b_re.clone(), self.b_im.clone());
        let d = gauss_sub(gauss_mul(a.clone(), a.clone()), gauss_scale(gauss_mul(b.clone(), b.clone()), &r));
        debug_assert!(!(d.0.is_zero() && d.1.is_zero()));
        let dinv = gauss_inv(d);
        let na = gauss_mul(a, dinv.clone());
        let nb = gauss_mul((-b.0, -b.1), dinv);
        Ok(QScalar::new(na.0, na.1, nb.0, nb.1, self.radicand))
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<QScalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut n: u32) -> QScalar {
        let mut acc = QScalar::one(self.radicand);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Numeric embedding with sqrt(r) evaluated in double precision.
    pub fn to_complex_float(&self) -> Complex64 {
        let s = (self.radicand as f64).sqrt();
        let re = ratio_f64(&self.a_re) + ratio_f64(&self.b_re) * s;
        let im = ratio_f64(&self.a_im) + ratio_f64(&self.b_im) * s;
        Complex64::new(re, im)
    }
}

fn ratio_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// Exact sign of a + b*sqrt(r) for rational a, b.
fn real_sign(a: &Rational, b: &Rational, r: u64) -> Ordering {
    let sa = rational_sign(a);
    let sb = rational_sign(b);
    match (sa, sb) {
        (Ordering::Equal, s) => s,
        (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        // mixed signs: compare a^2 against b^2 r
        (Ordering::Greater, Ordering::Less) => cmp_sq(a, b, r),
        (Ordering::Less, Ordering::Greater) => cmp_sq(a, b, r).reverse(),
    }
}

fn cmp_sq(a: &Rational, b: &Rational, r: u64) -> Ordering {
    (a * a).cmp(&(b * b * Rational::from_integer(BigInt::from(r))))
}

fn rational_sign(q: &Rational) -> Ordering {
    if q.is_zero() {
        Ordering::Equal
    } else if q.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

type Gauss = (Rational, Rational);

fn gauss_int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn gauss_mul(x: Gauss, y: Gauss) -> Gauss {
    (&x.0 * &y.0 - &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
}

fn gauss_sub(x: Gauss, y: Gauss) -> Gauss {
    (x.0 - y.0, x.1 - y.1)
}

fn gauss_scale(x: Gauss, c: &Rational) -> Gauss {
    (x.0 * c, x.1 * c)
}

fn gauss_inv(x: Gauss) -> Gauss {
    let n = &x.0 * &x.0 + &x.1 * &x.1;
    (&x.0 / &n, -&x.1 / &n)
}

fn check_ctx(a: &QScalar, b: &QScalar) {
    assert_eq!(a.radicand, b.radicand, "QScalar values from different scalar contexts");
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        check_ctx(self, rhs);
        QScalar {
            a_re: &self.a_re + &rhs.a_re,
            a_im: &self.a_im + &rhs.a_im,
            b_re: &self.b_re + &rhs.b_re,
            b_im: &self.b_im + &rhs.b_im,
            radicand: self.radicand,
        }
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            a_re: -self.a_re.clone(),
            a_im: -self.a_im.clone(),
            b_re: -self.b_re.clone(),
            b_im: -self.b_im.clone(),
            radicand: self.radicand,
        }
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        check_ctx(self, rhs);
        let r = gauss_int(self.radicand);
        let a1 = (self.a_re.clone(), self.a_im.clone());
        let b1 = (self.b_re.clone(), self.b_im.clone());
        let a2 = (rhs.a_re.clone(), rhs.a_im.clone());
        let b2 = (rhs.b_re.clone(), rhs.b_im.clone());
        // (a1 + b1 s)(a2 + b2 s) = (a1 a2 + b1 b2 r) + (a1 b2 + a2 b1) s
        let na = {
            let p = gauss_mul(a1.clone(), a2.clone());
            let q = gauss_scale(gauss_mul(b1.clone(), b2.clone()), &r);
            (p.0 + q.0, p.1 + q.1)
        };
        let nb = {
            let p = gauss_mul(a1, b2);
            let q = gauss_mul(a2, b1);
            (p.0 + q.0, p.1 + q.1)
        };
        QScalar::new(na.0, na.1, nb.0, nb.1, self.radicand)
    }
}

/// Panics on division by zero; use `checked_div` where the divisor may vanish.
impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($t:ident :: $m:ident),*) => {$(
        impl $t for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> QScalar {
        QScalar::from_ratio(n, d, 1)
    }

    #[test]
    fn sqrt_six_i_squared() {
        // (sqrt(6)*i)^2 = -6
        let x = &QScalar::sqrt_radicand(6) * &QScalar::i(6);
        assert_eq!(&x * &x, QScalar::from_int(-6, 6));
    }

    #[test]
    fn gaussian_inverse() {
        // (1+i)^-1 = (1-i)/2
        let x = &QScalar::one(1) + &QScalar::i(1);
        let want = QScalar::new(
            Rational::new(BigInt::from(1), BigInt::from(2)),
            Rational::new(BigInt::from(-1), BigInt::from(2)),
            Rational::zero(),
            Rational::zero(),
            1,
        );
        assert_eq!(x.inv().unwrap(), want);
    }

    #[test]
    fn conjugate_surd_product() {
        // (2+sqrt 6)(2-sqrt 6) = -2
        let two = QScalar::from_int(2, 6);
        let s = QScalar::sqrt_radicand(6);
        assert_eq!(&(&two + &s) * &(&two - &s), QScalar::from_int(-2, 6));
    }

    #[test]
    fn positive_real_tests() {
        let two_minus_sqrt6 = &QScalar::from_int(2, 6) - &QScalar::sqrt_radicand(6);
        assert!(!two_minus_sqrt6.is_positive_real());
        assert!((&QScalar::sqrt_radicand(6) - &QScalar::from_int(2, 6)).is_positive_real());
        assert!(q(3, 2).is_positive_real());
        assert!(!QScalar::i(1).is_positive_real());
        assert!(!QScalar::zero(1).is_positive_real());
        assert!(!q(-3, 2).is_positive_real());
    }

    #[test]
    fn float_embedding() {
        let x = &QScalar::one(1) + &QScalar::i(1);
        assert_eq!(x.to_complex_float(), Complex64::new(1.0, 1.0));
        let y = &QScalar::sqrt_radicand(6) * &QScalar::i(6);
        let v = y.to_complex_float();
        assert_eq!(v.re, 0.0);
        assert!((v.im - 2.449489742783178).abs() < 1e-15);
        assert_eq!(q(-3, 4).to_complex_float(), Complex64::new(-0.75, 0.0));
    }

    #[test]
    fn radicand_one_folds() {
        let x = QScalar::sqrt_radicand(1);
        assert!(x.is_one());
        assert!(x.b_re.is_zero() && x.b_im.is_zero());
    }

    #[test]
    fn zero_inverse_fails() {
        assert!(matches!(QScalar::zero(1).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn square_free_check() {
        assert!(ScalarContext::new(1).is_ok());
        assert!(ScalarContext::new(6).is_ok());
        assert!(ScalarContext::new(4).is_err());
        assert!(ScalarContext::new(12).is_err());
        assert!(ScalarContext::new(0).is_err());
    }
}
