//! Canonical exponential polynomials: finite sums of `P(z) * exp(Q(z))` with
//! polynomial multipliers and exponents, closed under ring operations and
//! differentiation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{QScalar, Rational};

/// Sum of terms keyed by the exponent polynomial. Exponents have zero
/// constant term (exp of a nonzero exact constant is not representable in
/// the scalar field, so such exponents are rejected at construction).
/// Multipliers are nonzero; the zero function is the empty term set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPoly {
    terms: BTreeMap<Poly, Poly>,
    radicand: u64,
}

impl ExpPoly {
    pub fn zero(radicand: u64) -> Self {
        ExpPoly { terms: BTreeMap::new(), radicand }
    }

    pub fn one(radicand: u64) -> Self {
        ExpPoly::from_poly(Poly::from_int(1, radicand))
    }

    pub fn from_poly(p: Poly) -> Self {
        let r = p.radicand();
        let mut f = ExpPoly::zero(r);
        f.accumulate(Poly::zero(r), p);
        f
    }

    pub fn from_scalar(c: QScalar) -> Self {
        ExpPoly::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64, radicand: u64) -> Self {
        ExpPoly::from_poly(Poly::from_int(n, radicand))
    }

    /// `multiplier * exp(exponent)`. The exponent must have zero constant term.
    pub fn exp_term(multiplier: Poly, exponent: Poly) -> Result<Self> {
        if !exponent.constant_term().is_zero() {
            return Err(Error::InvalidParameter(
                "exponent polynomial must have zero constant term".into(),
            ));
        }
        let r = multiplier.radicand();
        let mut f = ExpPoly::zero(r);
        f.accumulate(exponent, multiplier);
        Ok(f)
    }

    /// `exp(w * z^q)`
    pub fn exp_monomial(w: QScalar, q: usize) -> Self {
        let r = w.radicand();
        ExpPoly::exp_term(Poly::from_int(1, r), Poly::monomial(w, q)).unwrap()
    }

    fn accumulate(&mut self, exponent: Poly, multiplier: Poly) {
        if multiplier.is_zero() {
            return;
        }
        assert!(exponent.constant_term().is_zero(), "exponent with nonzero constant term");
        match self.terms.remove(&exponent) {
            Some(old) => {
                let sum = &old + &multiplier;
                if !sum.is_zero() {
                    self.terms.insert(exponent, sum);
                }
            }
            None => {
                self.terms.insert(exponent, multiplier);
            }
        }
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// (exponent, multiplier) pairs in canonical key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Poly, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Max degree of the exponent polynomials; 0 for polynomials and zero.
    pub fn order(&self) -> usize {
        self.terms.keys().filter_map(|q| q.degree()).max().map_or(0, |d| d)
    }

    pub fn is_transcendental(&self) -> bool {
        self.terms.keys().any(|q| !q.is_zero())
    }

    /// The whole function as a plain polynomial, when it is one.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.is_transcendental() {
            return None;
        }
        Some(
            self.terms
                .get(&Poly::zero(self.radicand))
                .cloned()
                .unwrap_or_else(|| Poly::zero(self.radicand)),
        )
    }

    pub fn as_constant(&self) -> Option<QScalar> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    pub fn add(&self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (q, p) in rhs.terms() {
            out.accumulate(q.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly {
            terms: self.terms.iter().map(|(q, p)| (q.clone(), -p)).collect(),
            radicand: self.radicand,
        }
    }

    pub fn sub(&self, rhs: &ExpPoly) -> ExpPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero(self.radicand);
        for (qa, pa) in self.terms() {
            for (qb, pb) in rhs.terms() {
                out.accumulate(qa + qb, pa * pb);
            }
        }
        out
    }

    pub fn scale(&self, c: &QScalar) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero(self.radicand);
        }
        ExpPoly {
            terms: self.terms.iter().map(|(q, p)| (q.clone(), p.scale(c))).collect(),
            radicand: self.radicand,
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> ExpPoly {
        self.mul(&ExpPoly::from_poly(p.clone()))
    }

    pub fn pow(&self, n: u32) -> ExpPoly {
        let mut acc = ExpPoly::one(self.radicand);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Term-wise rule (P e^Q)' = (P' + P Q') e^Q.
    pub fn differentiate(&self) -> ExpPoly {
        let mut out = ExpPoly::zero(self.radicand);
        for (q, p) in self.terms() {
            let m = &p.derivative() + &(p * &q.derivative());
            out.accumulate(q.clone(), m);
        }
        out
    }

    pub fn derivative_n(&self, n: usize) -> ExpPoly {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.differentiate();
        }
        f
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (q, p) in self.terms() {
            acc += p.eval_complex(z) * q.eval_complex(z).exp();
        }
        acc
    }

    /// Exact antiderivative for order <= 1 inputs, integration constant 0.
    /// Terms `z^n e^{wz}` with w != 0 use the closed formula
    /// `(z^n/w + sum_{v<n} (-1)^{n-v} n!/(w^{n-v+1} v!) z^v) e^{wz}`.
    pub fn antiderivative_exp1(&self) -> Result<ExpPoly> {
        let r = self.radicand;
        let mut out = ExpPoly::zero(r);
        for (q, p) in self.terms() {
            if let Some(d) = q.degree() {
                if d >= 2 {
                    return Err(Error::OrderTooHigh(d));
                }
            }
            let w = q.coeff(1);
            if w.is_zero() {
                // plain polynomial term
                let mut coeffs = vec![QScalar::zero(r)];
                for (k, c) in p.coeffs().iter().enumerate() {
                    coeffs.push(c.checked_div(&QScalar::from_int(k as i64 + 1, r))?);
                }
                out.accumulate(Poly::zero(r), Poly::new(coeffs, r));
            } else {
                let winv = w.inv()?;
                let mut m = Poly::zero(r);
                for (n, c) in p.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut part = Poly::monomial(&winv * c, n);
                    for v in 0..n {
                        // (-1)^{n-v} n! / (w^{n-v+1} v!)
                        let sign = if (n - v) % 2 == 0 { 1 } else { -1 };
                        let fac = Rational::new(factorial(n) * BigInt::from(sign), factorial(v));
                        let coef = &QScalar::from_rational(fac, r)
                            .checked_div(&w.pow((n - v + 1) as u32))?
                            * c;
                        part = &part + &Poly::monomial(coef, v);
                    }
                    m = &m + &part;
                }
                out.accumulate(q.clone(), m);
            }
        }
        Ok(out)
    }

    /// Decompose into the normalized form `F0 + sum F_j e^{w_j z^q}`.
    pub fn normalize(&self) -> Result<NormalizedView> {
        let q = self.order();
        if q == 0 {
            return Err(Error::NotTranscendental);
        }
        let r = self.radicand;
        let mut f0 = ExpPoly::zero(r);
        let mut bands: BTreeMap<QScalar, ExpPoly> = BTreeMap::new();
        for (exp, mult) in self.terms() {
            let w = exp.coeff(q);
            let residual = if exp.degree() == Some(q) { exp.without_leading() } else { exp.clone() };
            let term = ExpPoly::exp_term(mult.clone(), residual).unwrap();
            if w.is_zero() {
                f0 = f0.add(&term);
            } else {
                let slot = bands.entry(w).or_insert_with(|| ExpPoly::zero(r));
                *slot = slot.add(&term);
            }
        }
        let mut bands: Vec<(QScalar, ExpPoly)> =
            bands.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        sort_frequencies(&mut bands);
        Ok(NormalizedView { q, f0, bands, radicand: r })
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Deterministic band order: exact positive reals first in increasing value,
/// then the rest by numeric modulus and angle, with the structural ordering
/// as the final tiebreak.
fn sort_frequencies<T>(bands: &mut [(QScalar, T)]) {
    bands.sort_by(|(a, _), (b, _)| {
        let pa = a.is_positive_real();
        let pb = b.is_positive_real();
        pb.cmp(&pa)
            .then_with(|| {
                let fa = a.to_complex_float();
                let fb = b.to_complex_float();
                fa.norm()
                    .partial_cmp(&fb.norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(fa.arg().partial_cmp(&fb.arg()).unwrap_or(std::cmp::Ordering::Equal))
            })
            .then_with(|| a.cmp(b))
    });
}

/// The normalized form of a transcendental exponential polynomial:
/// order q, the slow part F0 of order <= q-1, and the bands (w_j, F_j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedView {
    q: usize,
    f0: ExpPoly,
    bands: Vec<(QScalar, ExpPoly)>,
    radicand: u64,
}

impl NormalizedView {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn f0(&self) -> &ExpPoly {
        &self.f0
    }

    pub fn bands(&self) -> &[(QScalar, ExpPoly)] {
        &self.bands
    }

    pub fn frequencies(&self) -> Vec<QScalar> {
        self.bands.iter().map(|(w, _)| w.clone()).collect()
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// Exact inverse of `normalize`.
    pub fn reconstruct(&self) -> ExpPoly {
        let mut f = self.f0.clone();
        for (w, fj) in &self.bands {
            f = f.add(&fj.mul(&ExpPoly::exp_monomial(w.clone(), self.q)));
        }
        f
    }

    /// Per band j: G_j = F_j' + q w_j z^{q-1} F_j and H_j = G_j' + q w_j z^{q-1} G_j,
    /// the multipliers of e^{w_j z^q} in f' and f''.
    pub fn derivative_multipliers(&self) -> Vec<(ExpPoly, ExpPoly)> {
        self.bands
            .iter()
            .map(|(w, fj)| {
                let g = band_derivative(fj, w, self.q);
                let h = band_derivative(&g, w, self.q);
                (g, h)
            })
            .collect()
    }
}

fn band_derivative(fj: &ExpPoly, w: &QScalar, q: usize) -> ExpPoly {
    let r = fj.radicand();
    let factor = Poly::monomial(&QScalar::from_int(q as i64, r) * w, q - 1);
    fj.differentiate().add(&fj.mul_poly(&factor))
}
