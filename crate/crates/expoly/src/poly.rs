//! Dense univariate polynomials over `QScalar`, indexed by degree.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::scalar::QScalar;

/// Polynomial with exact coefficients. No trailing zero coefficients; the
/// zero polynomial is the empty list and its degree is `None`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<QScalar>,
    radicand: u64,
}

impl Poly {
    pub fn new(mut coeffs: Vec<QScalar>, radicand: u64) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, radicand }
    }

    pub fn zero(radicand: u64) -> Self {
        Poly { coeffs: Vec::new(), radicand }
    }

    pub fn constant(c: QScalar) -> Self {
        let r = c.radicand();
        Poly::new(vec![c], r)
    }

    pub fn from_int(n: i64, radicand: u64) -> Self {
        Poly::constant(QScalar::from_int(n, radicand))
    }

    /// c * z^deg
    pub fn monomial(c: QScalar, deg: usize) -> Self {
        let r = c.radicand();
        let mut coeffs = vec![QScalar::zero(r); deg];
        coeffs.push(c);
        Poly::new(coeffs, r)
    }

    /// The variable z.
    pub fn var(radicand: u64) -> Self {
        Poly::monomial(QScalar::one(radicand), 1)
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> QScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| QScalar::zero(self.radicand))
    }

    pub fn coeffs(&self) -> &[QScalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&QScalar> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> QScalar {
        self.coeff(0)
    }

    pub fn as_constant(&self) -> Option<QScalar> {
        match self.coeffs.len() {
            0 => Some(QScalar::zero(self.radicand)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &QScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.radicand);
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect(), self.radicand)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.radicand);
        }
        let r = self.radicand;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &QScalar::from_int(k as i64, r))
            .collect();
        Poly::new(coeffs, r)
    }

    /// Drop the top-degree coefficient (used to split an exponent polynomial
    /// into its frequency part and its residual).
    pub fn without_leading(&self) -> Poly {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        c.pop();
        Poly::new(c, self.radicand)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_complex_float();
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let r = self.radicand;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::new(coeffs, r)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect(), self.radicand)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let r = self.radicand;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(r);
        }
        let mut coeffs = vec![QScalar::zero(r); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (ia, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (ib, b) in rhs.coeffs.iter().enumerate() {
                coeffs[ia + ib] = &coeffs[ia + ib] + &(a * b);
            }
        }
        Poly::new(coeffs, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| QScalar::from_int(c, 1)).collect(), 1)
    }

    #[test]
    fn degree_and_trim() {
        assert_eq!(p(&[1, 0, 3, 0]).degree(), Some(2));
        assert_eq!(p(&[0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 2]); // 1 + 2z
        let b = p(&[-1, 2]); // -1 + 2z
        assert_eq!(&a * &b, p(&[-1, 0, 4]));
        assert_eq!(&a + &b, p(&[0, 4]));
        assert_eq!(&a - &a, Poly::zero(1));
    }

    #[test]
    fn derivative_rule() {
        // d/dz (3 + z + 5z^3) = 1 + 15z^2
        assert_eq!(p(&[3, 1, 0, 5]).derivative(), p(&[1, 0, 15]));
        assert!(p(&[7]).derivative().is_zero());
    }

    #[test]
    fn complex_eval() {
        let q = p(&[1, 0, 1]); // 1 + z^2
        let v = q.eval_complex(Complex64::new(0.0, 1.0));
        assert!((v - Complex64::new(0.0, 0.0)).norm() < 1e-15);
    }
}
