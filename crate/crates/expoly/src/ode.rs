//! Linear differential equations with exponential polynomial coefficients:
//! residuals, solution verification, and exact solution search over a
//! frequency lattice.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::poly::Poly;
use crate::scalar::QScalar;
use crate::symcore::ExpPoly;

/// Seed for the reproducible numeric spot check in `is_solution`.
const SPOT_CHECK_SEED: u64 = 0x4558504f4c59;
const SPOT_CHECK_POINTS: usize = 5;
const SPOT_CHECK_TOLERANCE: f64 = 1e-9;

/// a_n f^(n) + ... + a_1 f' + a_0 f = 0, stored with a_k at index k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearODE {
    coeffs: Vec<ExpPoly>,
    radicand: u64,
}

impl LinearODE {
    /// `coeffs[k]` multiplies the k-th derivative; the leading coefficient
    /// must be nonzero and the order at least 1.
    pub fn new(coeffs: Vec<ExpPoly>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidParameter("equation order must be at least 1".into()));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::InvalidParameter("leading coefficient must be nonzero".into()));
        }
        let radicand = coeffs[0].radicand();
        Ok(LinearODE { coeffs, radicand })
    }

    /// f'' + A f' + B f = 0
    pub fn second_order(a: ExpPoly, b: ExpPoly) -> Self {
        let r = a.radicand();
        LinearODE::new(vec![b, a, ExpPoly::one(r)]).unwrap()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// a_k, ascending derivative order.
    pub fn coefficients(&self) -> &[ExpPoly] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> &ExpPoly {
        &self.coeffs[k]
    }

    /// Sum a_k f^(k); f solves the equation iff this is identically zero.
    pub fn residual(&self, f: &ExpPoly) -> ExpPoly {
        let mut acc = ExpPoly::zero(self.radicand);
        let mut fk = f.clone();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                fk = fk.differentiate();
            }
            acc = acc.add(&a.mul(&fk));
        }
        acc
    }

    /// Exact residual test, cross-checked numerically: the canonical
    /// residual and the term-by-term sum are evaluated at seeded random
    /// points of the annulus 0.5 <= |z| <= 1.5 and must agree.
    pub fn is_solution(&self, f: &ExpPoly) -> Result<bool> {
        let residual = self.residual(f);
        let exact_zero = residual.is_zero();

        let mut derivatives = vec![f.clone()];
        for _ in 0..self.order() {
            derivatives.push(derivatives.last().unwrap().differentiate());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SPOT_CHECK_SEED);
        for _ in 0..SPOT_CHECK_POINTS {
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let radius: f64 = rng.gen_range(0.5..1.5);
            let z = Complex64::from_polar(radius, theta);
            let mut termwise = Complex64::new(0.0, 0.0);
            let mut scale = 1.0f64;
            for (a, fk) in self.coeffs.iter().zip(&derivatives) {
                let t = a.evaluate(z) * fk.evaluate(z);
                termwise += t;
                scale += t.norm();
            }
            let canonical = residual.evaluate(z);
            if (canonical - termwise).norm() > SPOT_CHECK_TOLERANCE * scale {
                return Err(Error::InternalInconsistency(format!(
                    "residual routes disagree at z = {z}: {canonical} vs {termwise}"
                )));
            }
            if exact_zero && canonical.norm() > SPOT_CHECK_TOLERANCE * scale {
                return Err(Error::InternalInconsistency(format!(
                    "exact zero residual evaluates to {canonical} at z = {z}"
                )));
            }
        }
        Ok(exact_zero)
    }

    /// Substitutes f = e^E symbolically: with u_0 = 1 and
    /// u_{k+1} = u_k' + u_k E', every f^(k) equals u_k e^E, so f solves the
    /// equation iff sum a_k u_k vanishes.
    pub fn verify_exp_solution(&self, e_exponent: &ExpPoly) -> bool {
        let de = e_exponent.differentiate();
        let mut u = ExpPoly::one(self.radicand);
        let mut acc = ExpPoly::zero(self.radicand);
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                u = u.differentiate().add(&u.mul(&de));
            }
            acc = acc.add(&a.mul(&u));
        }
        acc.is_zero()
    }
}

/// Ansatz box for `search_solutions`: candidate solutions are
/// sum_{j=j_min}^{j_max} F_j(z) e^{j w z^q} with deg F_j <= deg_bound.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpec {
    pub w: QScalar,
    pub q: usize,
    pub j_min: i64,
    pub j_max: i64,
    pub deg_bound: usize,
}

impl SearchSpec {
    pub fn new(w: QScalar, q: usize, j_min: i64, j_max: i64, deg_bound: usize) -> Result<Self> {
        if w.is_zero() || q == 0 {
            return Err(Error::InvalidParameter("lattice generator w*z^q must be nonzero".into()));
        }
        if j_min > j_max {
            return Err(Error::InvalidParameter("empty band range".into()));
        }
        Ok(SearchSpec { w, q, j_min, j_max, deg_bound })
    }
}

/// Lattice index of an exponent polynomial: the integer n with
/// exponent = n * w * z^q.
fn lattice_index(exponent: &Poly, w: &QScalar, q: usize, what: &str) -> Result<BigInt> {
    if exponent.is_zero() {
        return Ok(BigInt::from(0));
    }
    if exponent.degree() != Some(q) {
        return Err(Error::LatticeViolation(format!(
            "{what} has an exponent of degree {:?}, lattice degree is {q}",
            exponent.degree()
        )));
    }
    if !exponent.without_leading().is_zero() {
        return Err(Error::MultiplierNotPolynomial(format!(
            "{what} has an exponent with lower order terms; its lattice band multiplier is not a plain polynomial"
        )));
    }
    let ratio = exponent.coeff(q).checked_div(w)?;
    ratio.as_integer().ok_or_else(|| {
        Error::LatticeViolation(format!("{what} frequency is not an integer multiple of w"))
    })
}

/// Exact kernel search for exponential polynomial solutions on the lattice
/// {z^d e^{j w z^q}}. Coefficient matching is exact; every returned value
/// has identically zero residual.
pub fn search_solutions(eq: &LinearODE, spec: &SearchSpec) -> Result<Vec<ExpPoly>> {
    let r = eq.radicand();
    for (k, a) in eq.coefficients().iter().enumerate() {
        for (exponent, _) in a.terms() {
            lattice_index(exponent, &spec.w, spec.q, &format!("coefficient a_{k}"))?;
        }
    }

    // basis functions z^d e^{j w z^q}, one column each
    let mut basis: Vec<ExpPoly> = Vec::new();
    for j in spec.j_min..=spec.j_max {
        let jw = &QScalar::from_int(j, r) * &spec.w;
        for d in 0..=spec.deg_bound {
            let mult = Poly::monomial(QScalar::one(r), d);
            let f = if jw.is_zero() {
                ExpPoly::from_poly(mult)
            } else {
                ExpPoly::exp_term(mult, Poly::monomial(jw.clone(), spec.q))?
            };
            basis.push(f);
        }
    }

    // residual coordinates: (lattice index, monomial degree) -> row
    let mut columns: Vec<BTreeMap<(BigInt, usize), QScalar>> = Vec::with_capacity(basis.len());
    let mut rows: BTreeMap<(BigInt, usize), usize> = BTreeMap::new();
    for f in &basis {
        let res = eq.residual(f);
        let mut col = BTreeMap::new();
        for (exponent, mult) in res.terms() {
            let n = lattice_index(exponent, &spec.w, spec.q, "residual")?;
            for (d, c) in mult.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let key = (n.clone(), d);
                let next = rows.len();
                rows.entry(key.clone()).or_insert(next);
                col.insert(key, c.clone());
            }
        }
        columns.push(col);
    }

    let mut m = Matrix::zero(rows.len(), basis.len(), r);
    for (c, col) in columns.iter().enumerate() {
        for (key, v) in col {
            *m.at_mut(rows[key], c) = v.clone();
        }
    }

    let mut out = Vec::new();
    for v in m.kernel_basis() {
        let mut f = ExpPoly::zero(r);
        for (c, fj) in v.iter().zip(&basis) {
            f = f.add(&fj.scale(c));
        }
        if f.is_zero() {
            continue;
        }
        debug_assert!(eq.residual(&f).is_zero());
        out.push(f);
    }
    Ok(out)
}
