//! Generators for the named equation families. Every generator verifies its
//! own (equation, solution) pair exactly before returning it.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::ode::LinearODE;
use crate::poly::Poly;
use crate::scalar::{QScalar, Rational};
use crate::symcore::ExpPoly;

/// f'' + e^{-z} f' - m^2 f = 0 with its exponential polynomial solution
/// 1 + C_1 e^z + ... + C_m e^{mz}.
#[derive(Clone, Debug)]
pub struct FreiFamily {
    pub m: u32,
    pub alpha: QScalar,
    /// C_1 .. C_m, all nonzero
    pub coefficients: Vec<QScalar>,
    pub equation: LinearODE,
    pub solution: ExpPoly,
}

pub fn frei(m: u32) -> Result<FreiFamily> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let r = 1;
    let m2 = Rational::from_integer(BigInt::from(m) * BigInt::from(m));
    // C_1 = m^2, (m^2 - j^2) C_j = (j+1) C_{j+1}
    let mut cs: Vec<Rational> = vec![m2.clone()];
    for j in 1..m as usize {
        let jj = Rational::from_integer(BigInt::from(j * j));
        let next = (&m2 - jj) * cs.last().unwrap() / Rational::from_integer(BigInt::from(j + 1));
        cs.push(next);
    }
    // closed form C_j = (1/j!) prod_{k<j} (m^2 - k^2)
    for (idx, c) in cs.iter().enumerate() {
        let j = idx + 1;
        let mut prod = Rational::from_integer(BigInt::from(1));
        for k in 0..j {
            prod *= &m2 - Rational::from_integer(BigInt::from(k * k));
        }
        for k in 1..=j {
            prod /= Rational::from_integer(BigInt::from(k));
        }
        if c != &prod || c.numer() == &BigInt::from(0) {
            return Err(Error::InternalInconsistency(format!(
                "coefficient recursion and closed form disagree at j = {j}"
            )));
        }
    }
    let coefficients: Vec<QScalar> = cs.into_iter().map(|c| QScalar::from_rational(c, r)).collect();
    let mut solution = ExpPoly::one(r);
    for (idx, c) in coefficients.iter().enumerate() {
        let j = (idx + 1) as i64;
        solution = solution.add(&ExpPoly::exp_monomial(QScalar::from_int(j, r), 1).scale(c));
    }
    let alpha = -&QScalar::from_rational(m2, r);
    let equation = LinearODE::second_order(
        ExpPoly::exp_monomial(QScalar::from_int(-1, r), 1),
        ExpPoly::from_scalar(alpha.clone()),
    );
    if !equation.is_solution(&solution)? {
        return Err(Error::InternalInconsistency("generated pair fails verification".into()));
    }
    Ok(FreiFamily { m, alpha, coefficients, equation, solution })
}

/// A = (b/c) P - w + P e^{-wz}, B = -(w b / c) P, solved by f = c + b e^{wz}.
pub fn one_term_family(
    c: &QScalar,
    b: &QScalar,
    w: &QScalar,
    p: &Poly,
) -> Result<(LinearODE, ExpPoly)> {
    if c.is_zero() || b.is_zero() || w.is_zero() || p.is_zero() {
        return Err(Error::InvalidParameter("c, b, w and P must be nonzero".into()));
    }
    let r = c.radicand();
    let b_over_c = b.checked_div(c)?;
    let a = ExpPoly::from_poly(&p.scale(&b_over_c) - &Poly::constant(w.clone()))
        .add(&ExpPoly::exp_term(p.clone(), Poly::monomial(-w, 1))?);
    let bb = ExpPoly::from_poly(p.scale(&-&(w * &b_over_c)));
    let f = ExpPoly::from_scalar(c.clone())
        .add(&ExpPoly::exp_monomial(w.clone(), 1).scale(b));
    let eq = LinearODE::second_order(a, bb);
    if !eq.is_solution(&f)? {
        return Err(Error::InternalInconsistency("generated pair fails verification".into()));
    }
    let _ = r;
    Ok((eq, f))
}

/// f'' + (P_1 + P_2 e^{-wz}) f' - P f = 0 with P_1 = P/w - w and
/// P_2 = P/(bw), solved by f = 1 + b e^{wz}.
pub fn intro_one_term_family(b: &QScalar, w: &QScalar, p: &Poly) -> Result<LinearODE> {
    if b.is_zero() || w.is_zero() || p.is_zero() {
        return Err(Error::InvalidParameter("b, w and P must be nonzero".into()));
    }
    let r = b.radicand();
    let p1 = &p.scale(&w.inv()?) - &Poly::constant(w.clone());
    let p2 = p.scale(&(b * w).inv()?);
    let a = ExpPoly::from_poly(p1).add(&ExpPoly::exp_term(p2, Poly::monomial(-w, 1))?);
    let eq = LinearODE::second_order(a, ExpPoly::from_poly(-p));
    let f = ExpPoly::one(r).add(&ExpPoly::exp_monomial(w.clone(), 1).scale(b));
    if !eq.is_solution(&f)? {
        return Err(Error::InternalInconsistency("generated pair fails verification".into()));
    }
    Ok(eq)
}

/// The recursion tables behind the higher order families built on
/// f = e^{z^q} + 1: (1 + e^{-z^q}) f^(j+1) = sum_k P_{j,k} f^(k) and
/// f^(q+1) = sum_l Q_l f^(l).
#[derive(Clone, Debug)]
pub struct LadderTables {
    pub q: usize,
    /// p[j][k] for 0 <= k <= j <= q
    pub p: Vec<Vec<Poly>>,
    /// Q_1 .. Q_q
    pub q_list: Vec<Poly>,
    /// (j, k) positions where P_{j,k} is identically zero; retained in the
    /// table so its shape is the full triangle
    pub zero_entries: Vec<(usize, usize)>,
}

pub fn ladder_tables(q: usize) -> Result<LadderTables> {
    if q < 1 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let r = 1;
    let lead = Poly::monomial(QScalar::from_int(q as i64, r), q - 1);
    // P_{0,0} = q z^{q-1}; P_{j+1,j+1} = P_{j,j} - qz^{q-1};
    // P_{j+1,k} = P_{j,k}' + qz^{q-1} P_{j,k} + P_{j,k-1}; P_{j+1,0} drops
    // the P_{j,-1} term.
    let mut p: Vec<Vec<Poly>> = vec![vec![lead.clone()]];
    for j in 0..q {
        let prev = &p[j];
        let mut row = Vec::with_capacity(j + 2);
        for k in 0..=j {
            let mut e = &prev[k].derivative() + &(&prev[k] * &lead);
            if k >= 1 {
                e = &e + &prev[k - 1];
            }
            row.push(e);
        }
        row.push(&prev[j] - &lead);
        p.push(row);
    }

    // Q_l = -binom(q, l-1) (e^{-z^q})^(q-l+1) e^{z^q}
    let neg = ExpPoly::exp_monomial(QScalar::from_int(-1, r), q);
    let pos = ExpPoly::exp_monomial(QScalar::one(r), q);
    let mut q_list = Vec::with_capacity(q);
    for l in 1..=q {
        let d = neg.derivative_n(q - l + 1).mul(&pos);
        let poly = d.as_poly().ok_or_else(|| {
            Error::InternalInconsistency("derivative quotient is not a polynomial".into())
        })?;
        let c = QScalar::from_rational(
            Rational::from_integer(-binomial(BigInt::from(q), BigInt::from(l - 1))),
            r,
        );
        q_list.push(poly.scale(&c));
    }

    // verify both identities against f = e^{z^q} + 1 before returning
    let f = pos.add(&ExpPoly::one(r));
    let factor = ExpPoly::one(r).add(&neg);
    for (j, row) in p.iter().enumerate() {
        let lhs = factor.mul(&f.derivative_n(j + 1));
        let mut rhs = ExpPoly::zero(r);
        for (k, pjk) in row.iter().enumerate() {
            rhs = rhs.add(&f.derivative_n(k).mul_poly(pjk));
        }
        if lhs != rhs {
            return Err(Error::InternalInconsistency(format!(
                "table row {j} fails its defining identity"
            )));
        }
    }
    let mut rhs = ExpPoly::zero(r);
    for (idx, ql) in q_list.iter().enumerate() {
        rhs = rhs.add(&f.derivative_n(idx + 1).mul_poly(ql));
    }
    if f.derivative_n(q + 1) != rhs {
        return Err(Error::InternalInconsistency("derivative identity fails".into()));
    }

    let zero_entries = p
        .iter()
        .enumerate()
        .flat_map(|(j, row)| {
            row.iter().enumerate().filter(|(_, e)| e.is_zero()).map(move |(k, _)| (j, k))
        })
        .collect();
    Ok(LadderTables { q, p, q_list, zero_entries })
}

/// Order q+1 equation combining both table identities with an arbitrary
/// exponential polynomial weight H: f = e^{z^q} + 1 solves
/// f^(q+1) - sum_{l>j} Q_l f^(l) - ((1+e^{-z^q}) H + Q_j) f^(j)
///   + sum_{0<l<j} (P_{j-1,l} H - Q_l) f^(l) + P_{j-1,0} H f = 0.
pub fn ladder_equation(q: usize, j: usize, h: &ExpPoly) -> Result<LinearODE> {
    if q < 1 || j < 1 || j > q {
        return Err(Error::InvalidParameter("need 1 <= j <= q".into()));
    }
    if h.is_zero() {
        return Err(Error::InvalidParameter("H must be nonzero".into()));
    }
    let r = h.radicand();
    let t = ladder_tables(q)?;
    let neg = ExpPoly::exp_monomial(QScalar::from_int(-1, r), q);
    let mut coeffs = vec![ExpPoly::zero(r); q + 2];
    coeffs[q + 1] = ExpPoly::one(r);
    for l in (j + 1)..=q {
        coeffs[l] = ExpPoly::from_poly(t.q_list[l - 1].clone()).neg();
    }
    coeffs[j] = ExpPoly::one(r)
        .add(&neg)
        .mul(h)
        .add(&ExpPoly::from_poly(t.q_list[j - 1].clone()))
        .neg();
    for l in 1..j {
        coeffs[l] = h
            .mul_poly(&t.p[j - 1][l])
            .sub(&ExpPoly::from_poly(t.q_list[l - 1].clone()));
    }
    coeffs[0] = h.mul_poly(&t.p[j - 1][0]);
    let eq = LinearODE::new(coeffs)?;
    let f = ExpPoly::exp_monomial(QScalar::one(r), q).add(&ExpPoly::one(r));
    if !eq.is_solution(&f)? {
        return Err(Error::InternalInconsistency("generated pair fails verification".into()));
    }
    Ok(eq)
}

/// f'' + (H - qz^{q-1}) f' - (q(q-1)z^{q-2} + qz^{q-1} H) f = 0, solved by
/// the single band f = e^{z^q}.
pub fn single_band_family(q: usize, h: &ExpPoly) -> Result<(LinearODE, ExpPoly)> {
    if q < 1 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let r = h.radicand();
    let lead = Poly::monomial(QScalar::from_int(q as i64, r), q - 1);
    let a = h.sub(&ExpPoly::from_poly(lead.clone()));
    let mut b = h.mul_poly(&lead);
    if q >= 2 {
        let c = QScalar::from_int((q * (q - 1)) as i64, r);
        b = b.add(&ExpPoly::from_poly(Poly::monomial(c, q - 2)));
    }
    let eq = LinearODE::second_order(a, b.neg());
    let f = ExpPoly::exp_monomial(QScalar::one(r), q);
    if !eq.is_solution(&f)? {
        return Err(Error::InternalInconsistency("generated pair fails verification".into()));
    }
    Ok((eq, f))
}

/// f'' + (H e^z + H e^{-z} - 2qz^{q-1}) f'
///   - ((qz^{q-1}+1) H e^z + (qz^{q-1}-1) H e^{-z}
///      - q^2 z^{2(q-1)} + q(q-1)z^{q-2} + 1) f = 0,
/// solved by f = (e^z + e^{-z}) e^{z^q}; at q = 1 this is the equation for
/// f = e^{2z} + 1.
pub fn cosh_band_family(q: usize, h: &ExpPoly) -> Result<(LinearODE, ExpPoly)> {
    if q < 1 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let r = h.radicand();
    let qi = QScalar::from_int(q as i64, r);
    let lead = Poly::monomial(qi.clone(), q - 1);
    let ez = ExpPoly::exp_monomial(QScalar::one(r), 1);
    let emz = ExpPoly::exp_monomial(QScalar::from_int(-1, r), 1);
    let a = h
        .mul(&ez.add(&emz))
        .sub(&ExpPoly::from_poly(lead.scale(&QScalar::from_int(2, r))));
    let plus_one = &lead + &Poly::from_int(1, r);
    let minus_one = &lead - &Poly::from_int(1, r);
    let mut b = h.mul(&ez).mul_poly(&plus_one).add(&h.mul(&emz).mul_poly(&minus_one));
    b = b.sub(&ExpPoly::from_poly(Poly::monomial(&qi * &qi, 2 * (q - 1))));
    if q >= 2 {
        b = b.add(&ExpPoly::from_poly(Poly::monomial(
            QScalar::from_int((q * (q - 1)) as i64, r),
            q - 2,
        )));
    }
    b = b.add(&ExpPoly::one(r));
    let eq = LinearODE::second_order(a, b.neg());
    let zq_plus_z = &Poly::monomial(QScalar::one(r), q) + &Poly::var(r);
    let zq_minus_z = &Poly::monomial(QScalar::one(r), q) - &Poly::var(r);
    let f = ExpPoly::exp_term(Poly::from_int(1, r), zq_plus_z)?
        .add(&ExpPoly::exp_term(Poly::from_int(1, r), zq_minus_z)?);
    if !eq.is_solution(&f)? {
        return Err(Error::InternalInconsistency("generated pair fails verification".into()));
    }
    Ok((eq, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarContext;
    use crate::textio::parse_expoly;

    fn p(s: &str) -> ExpPoly {
        parse_expoly(s, &ScalarContext::default()).unwrap()
    }

    fn pp(s: &str) -> Poly {
        crate::textio::parse_poly(s, &ScalarContext::default()).unwrap()
    }

    #[test]
    fn frei_small_cases() {
        let f1 = frei(1).unwrap();
        assert_eq!(f1.solution, p("1 + exp(z)"));
        assert_eq!(f1.alpha, QScalar::from_int(-1, 1));

        let f2 = frei(2).unwrap();
        assert_eq!(f2.solution, p("1 + 4*exp(z) + 6*exp(2*z)"));
        assert_eq!(f2.coefficients, vec![QScalar::from_int(4, 1), QScalar::from_int(6, 1)]);

        assert!(frei(0).is_err());

        for m in 3..=6 {
            let fam = frei(m).unwrap();
            assert!(fam.coefficients.iter().all(|c| !c.is_zero()));
            assert!(fam.equation.residual(&fam.solution).is_zero());
        }
    }

    #[test]
    fn one_term_cases() {
        let one = QScalar::one(1);
        let (eq, f) = one_term_family(&one, &one, &one, &pp("1")).unwrap();
        assert_eq!(eq.coefficient(1), &p("exp(-z)"));
        assert_eq!(eq.coefficient(0), &p("-1"));
        assert_eq!(f, p("1 + exp(z)"));

        let (eq, f) = one_term_family(&one, &one, &one, &pp("z")).unwrap();
        assert_eq!(eq.coefficient(1), &p("z - 1 + z*exp(-z)"));
        assert_eq!(eq.coefficient(0), &p("-z"));
        assert_eq!(f, p("exp(z) + 1"));

        assert!(one_term_family(&one, &QScalar::zero(1), &one, &pp("1")).is_err());
    }

    #[test]
    fn intro_one_term_cases() {
        let one = QScalar::one(1);
        // P = H matches the generic pair with P1 = H - 1, P2 = H
        let eq = intro_one_term_family(&one, &one, &pp("z")).unwrap();
        assert_eq!(eq.coefficient(1), &p("z - 1 + z*exp(-z)"));
        assert_eq!(eq.coefficient(0), &p("-z"));

        let eq = intro_one_term_family(&one, &one, &pp("1")).unwrap();
        assert_eq!(eq.coefficient(1), &p("exp(-z)"));
        assert!(eq.residual(&p("1 + exp(z)")).is_zero());

        assert!(intro_one_term_family(&one, &QScalar::zero(1), &pp("1")).is_err());
    }

    #[test]
    fn tables_q2_hand_values() {
        let t = ladder_tables(2).unwrap();
        assert_eq!(t.p[0][0], pp("2*z"));
        assert_eq!(t.p[1][0], pp("2 + 4*z^2"));
        assert!(t.p[1][1].is_zero());
        assert_eq!(t.q_list[0], pp("2 - 4*z^2"));
        assert_eq!(t.q_list[1], pp("4*z"));
        assert!(t.zero_entries.contains(&(1, 1)));
    }

    #[test]
    fn tables_q1() {
        let t = ladder_tables(1).unwrap();
        assert_eq!(t.q_list, vec![pp("1")]);
        assert_eq!(t.p[0][0], pp("1"));
    }

    #[test]
    fn tables_identity_first_row() {
        // (1 + e^{-z^2}) f' = 2z f for f = e^{z^2} + 1
        let f = p("exp(z^2) + 1");
        let lhs = p("1 + exp(-z^2)").mul(&f.differentiate());
        assert_eq!(lhs, f.mul_poly(&pp("2*z")));
    }

    #[test]
    fn combined_equations_verify() {
        for (q, j) in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)] {
            for h in [p("1"), p("z"), p("exp(z)")] {
                let eq = ladder_equation(q, j, &h).unwrap();
                assert_eq!(eq.order(), q + 1);
            }
        }
        assert!(ladder_equation(2, 3, &p("1")).is_err());
        assert!(ladder_equation(2, 1, &p("0")).is_err());
    }

    #[test]
    fn single_band_cases() {
        let (eq, f) = single_band_family(1, &p("0")).unwrap();
        assert_eq!(f, p("exp(z)"));
        assert_eq!(eq.coefficient(1), &p("-1"));
        assert!(eq.coefficient(0).is_zero());

        let (eq, _) = single_band_family(2, &p("1")).unwrap();
        assert_eq!(eq.coefficient(1), &p("1 - 2*z"));
        assert_eq!(eq.coefficient(0), &p("-2 - 2*z"));

        let (eq, f) = single_band_family(3, &p("z")).unwrap();
        assert!(eq.residual(&f).is_zero());
    }

    #[test]
    fn cosh_band_cases() {
        let (eq, f) = cosh_band_family(1, &p("1")).unwrap();
        assert_eq!(f, p("exp(2*z) + 1"));
        assert_eq!(eq.coefficient(1), &p("exp(z) + exp(-z) - 2"));
        assert_eq!(eq.coefficient(0), &p("-2*exp(z)"));

        let (eq, f) = cosh_band_family(2, &p("0")).unwrap();
        assert!(eq.residual(&f).is_zero());

        let (eq, f) = cosh_band_family(1, &p("exp(i*z)")).unwrap();
        assert!(eq.residual(&f).is_zero());
    }

    #[test]
    fn search_recovers_generated_solutions() {
        use crate::ode::{search_solutions, SearchSpec};
        for m in 1..=3u32 {
            let fam = frei(m).unwrap();
            let spec = SearchSpec::new(QScalar::one(1), 1, 0, m as i64 + 1, 1).unwrap();
            let sols = search_solutions(&fam.equation, &spec).unwrap();
            assert_eq!(sols.len(), 1);
            let c0 = sols[0].terms().next().unwrap().1.as_constant().unwrap();
            assert_eq!(sols[0], fam.solution.scale(&c0));
        }
    }

    #[test]
    fn one_term_report_all_true() {
        use crate::duality::duality_structure_report;
        let one = QScalar::one(1);
        let two = QScalar::from_int(2, 1);
        for (c, b, w, poly) in [
            (one.clone(), one.clone(), one.clone(), pp("1")),
            (two.clone(), one.clone(), one.clone(), pp("z")),
            (one.clone(), two.clone(), two.clone(), pp("1 + z^2")),
        ] {
            let (eq, f) = one_term_family(&c, &b, &w, &poly).unwrap();
            let rep =
                duality_structure_report(eq.coefficient(1), eq.coefficient(0), &f).unwrap();
            assert!(rep.all_ok(), "{rep:?}");
        }
    }
}
