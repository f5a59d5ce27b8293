//! Duality predicates for exponential polynomials: simple, commensurable,
//! dual, strongly dual, plus the structural report for second order
//! equations f'' + A f' + B f = 0 whose dominant coefficient is dual to the
//! solution.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{QScalar, Rational};
use crate::symcore::ExpPoly;

/// Witness for "all frequencies on one ray": an exact frequency on the ray
/// plus an advisory floating angle in [0, 2 pi).
#[derive(Clone, Debug, PartialEq)]
pub struct RayInfo {
    pub direction: QScalar,
    pub theta_float: f64,
}

/// Ray comparison is exact field arithmetic throughout; `theta_float` is
/// output only.
pub fn is_simple(f: &ExpPoly) -> Result<Option<RayInfo>> {
    let view = f.normalize()?;
    let freqs = view.frequencies();
    let witness = freqs[0].clone();
    for w in &freqs[1..] {
        if !w.checked_div(&witness)?.is_positive_real() {
            return Ok(None);
        }
    }
    let mut theta = witness.to_complex_float().arg();
    if theta < 0.0 {
        theta += TAU;
    }
    Ok(Some(RayInfo { direction: witness, theta_float: theta }))
}

/// Canonical (largest) common factor w such that every frequency is a
/// positive integer multiple of w; `None` when the exact frequency ratios
/// are not all rational.
pub fn common_factor(f: &ExpPoly) -> Result<Option<QScalar>> {
    let Some(ray) = is_simple(f)? else {
        return Err(Error::NotSimple);
    };
    let freqs = f.normalize()?.frequencies();
    let mut ratios: Vec<Rational> = Vec::with_capacity(freqs.len());
    for w in &freqs {
        let r = w.checked_div(&ray.direction)?;
        match r.as_rational() {
            Some(q) => ratios.push(q.clone()),
            None => return Ok(None), // irrational ratio, e.g. {1, sqrt 2}
        }
    }
    // w = w_1 * gcd(p_j) / lcm(q_j) over the reduced ratios p_j / q_j
    let mut g = BigInt::from(0);
    let mut l = BigInt::from(1);
    for r in &ratios {
        g = g.gcd(r.numer());
        l = l.lcm(r.denom());
    }
    let factor = QScalar::from_rational(Rational::new(g, l), f.radicand());
    Ok(Some(&ray.direction * &factor))
}

/// True iff f and g are simple of the same order with opposite rays.
pub fn are_dual(f: &ExpPoly, g: &ExpPoly) -> Result<bool> {
    let (Some(rf), Some(rg)) = (is_simple(f)?, is_simple(g)?) else {
        return Ok(false);
    };
    if f.order() != g.order() {
        return Ok(false);
    }
    Ok((-&rg.direction).checked_div(&rf.direction)?.is_positive_real())
}

/// Strong duality: dual, commensurable with a shared common factor of
/// opposite signs, and all pairwise frequency sums on one closed ray
/// through the origin.
pub fn are_strongly_dual(f: &ExpPoly, g: &ExpPoly) -> Result<bool> {
    if !are_dual(f, g)? {
        return Ok(false);
    }
    let (Some(cf), Some(cg)) = (common_factor(f)?, common_factor(g)?) else {
        return Ok(false);
    };
    // Largest w with w a common factor of f and -w a common factor of g:
    // with -cg/cf = p/q reduced, w = cf / q.
    let rho = (-&cg).checked_div(&cf)?;
    let Some(rho) = rho.as_rational().cloned() else {
        return Ok(false);
    };
    let w = cf.checked_div(&QScalar::from_rational(Rational::from_integer(rho.denom().clone()), f.radicand()))?;
    let a: Vec<BigInt> = f
        .normalize()?
        .frequencies()
        .iter()
        .map(|wj| wj.checked_div(&w).unwrap().as_integer().expect("multiple of shared factor"))
        .collect();
    let b: Vec<BigInt> = g
        .normalize()?
        .frequencies()
        .iter()
        .map(|li| (-li).checked_div(&w).unwrap().as_integer().expect("multiple of shared factor"))
        .collect();
    let (amin, amax) = (a.iter().min().unwrap(), a.iter().max().unwrap());
    let (bmin, bmax) = (b.iter().min().unwrap(), b.iter().max().unwrap());
    Ok(amin >= bmax || amax <= bmin)
}

/// Borel classification of a product frequency w_j - lambda_i in the
/// substitution identity: either it lands on a solution frequency
/// (w_0 = 0 included) or it matches another product frequency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BorelCase {
    /// w_j - lambda_i = w_l with l in {0, ..., m-1} (w_0 = 0)
    CaseI { l: usize },
    /// w_j - lambda_i = w_s - lambda_t with s != j, t != i
    CaseII { s: usize, t: usize },
    Unclassified,
}

/// Structural report for a verified solution of f'' + A f' + B f = 0.
/// All four booleans hold for every corpus-accepted instance.
#[derive(Clone, Debug)]
pub struct DualityReport {
    pub q: usize,
    /// frequencies of f, ordered increasingly along the common ray
    pub w_list: Vec<QScalar>,
    /// ray-aligned frequencies of A (the lambda_i), ordered increasingly
    pub lambda_list: Vec<QScalar>,
    /// the constant term F0 of f
    pub c: QScalar,
    pub ordering_ok: bool,
    pub b_relation_ok: bool,
    pub top_identity_ok: bool,
    pub fm_equation_ok: bool,
    /// one entry per product pair ((j, i), case), 1-based indices
    pub borel_classification: Vec<((usize, usize), BorelCase)>,
}

impl DualityReport {
    pub fn all_ok(&self) -> bool {
        self.ordering_ok && self.b_relation_ok && self.top_identity_ok && self.fm_equation_ok
    }
}

/// Exact positive-real magnitudes t = w / direction, sorted increasingly.
/// Returns None when some frequency leaves the ray.
fn aligned_magnitudes(freqs: &[QScalar], direction: &QScalar) -> Option<Vec<(QScalar, QScalar)>> {
    let mut out: Vec<(QScalar, QScalar)> = Vec::with_capacity(freqs.len());
    for w in freqs {
        let t = w.checked_div(direction).ok()?;
        if !t.is_positive_real() {
            return None;
        }
        out.push((t, w.clone()));
    }
    out.sort_by(|(a, _), (b, _)| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if (b - a).is_positive_real() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    Some(out)
}

pub fn duality_structure_report(a: &ExpPoly, b: &ExpPoly, f: &ExpPoly) -> Result<DualityReport> {
    if !f.is_transcendental() || !a.is_transcendental() {
        return Err(Error::NotTranscendental);
    }
    // residual of f'' + A f' + B f must vanish exactly
    let residual = f.derivative_n(2).add(&a.mul(&f.differentiate())).add(&b.mul(f));
    if !residual.is_zero() {
        return Err(Error::NotASolution);
    }
    let fview = f.normalize()?;
    let q = fview.q();
    let c = match fview.f0().as_constant() {
        Some(c) if !c.is_zero() => c,
        _ => return Err(Error::ConstantTermMissing),
    };

    let aview = a.normalize()?;
    let mut report = DualityReport {
        q,
        w_list: Vec::new(),
        lambda_list: Vec::new(),
        c,
        ordering_ok: false,
        b_relation_ok: false,
        top_identity_ok: false,
        fm_equation_ok: false,
        borel_classification: Vec::new(),
    };

    // Ray alignment by exact division with the witness direction. A's
    // frequencies must sit on the opposite ray.
    let direction = fview.frequencies()[0].clone();
    let Some(w_sorted) = aligned_magnitudes(&fview.frequencies(), &direction) else {
        return Ok(report);
    };
    let neg_dir = -&direction;
    let Some(lambda_sorted) = aligned_magnitudes(&aview.frequencies(), &neg_dir) else {
        return Ok(report);
    };
    // lambda_i is the reflection -mu_i of an A frequency onto the f ray
    report.w_list = w_sorted.iter().map(|(_, w)| w.clone()).collect();
    report.lambda_list = lambda_sorted.iter().map(|(_, mu)| -mu).collect();

    // ordering: 0 < lambda_1 < ... < lambda_k = w_1 < ... < w_m
    report.ordering_ok = report.lambda_list.last().unwrap() == &report.w_list[0] && q == a.order();

    // per-band G_j, H_j keyed by actual frequency
    let mut gh: BTreeMap<QScalar, (ExpPoly, ExpPoly, ExpPoly)> = BTreeMap::new();
    let multipliers = fview.derivative_multipliers();
    for ((w, fj), (g, h)) in fview.bands().iter().zip(multipliers) {
        gh.insert(w.clone(), (fj.clone(), g, h));
    }

    // B relation: -A_k G_1 = c B, where A_k is the multiplier of A at
    // the frequency matching -w_1.
    let w1_actual = &w_sorted[0].1;
    let a_k = aview
        .bands()
        .iter()
        .find(|(mu, _)| mu == &-w1_actual)
        .map(|(_, m)| m.clone());
    if let Some(a_k) = a_k {
        let g1 = &gh[w1_actual].1;
        report.b_relation_ok = a_k.mul(g1).neg() == b.scale(&report.c);
    }

    // top identity: A_0 G_m + B F_m + H_m = 0
    let wm_actual = w_sorted.last().unwrap().1.clone();
    let (fm, gm, hm) = gh[&wm_actual].clone();
    let a0 = aview.f0().clone();
    report.top_identity_ok = a0.mul(&gm).add(&b.mul(&fm)).add(&hm).is_zero();

    // F_m equation: F_m'' + P F_m' + Q F_m = 0 with the coefficients of
    // the reduced band equation (an independent route to the same identity).
    let r = f.radicand();
    let qi = QScalar::from_int(q as i64, r);
    let wmq_z = Poly::monomial(&wm_actual * &qi, q - 1);
    let p_coeff = ExpPoly::from_poly(&wmq_z.scale(&QScalar::from_int(2, r)) + &Poly::zero(r)).add(&a0);
    let mut q_coeff = a0.mul_poly(&wmq_z).add(b);
    q_coeff = q_coeff.add(&ExpPoly::from_poly(Poly::monomial(
        &(&wm_actual * &wm_actual) * &(&qi * &qi),
        2 * (q - 1),
    )));
    if q >= 2 {
        let qq1 = QScalar::from_int((q * (q - 1)) as i64, r);
        q_coeff = q_coeff.add(&ExpPoly::from_poly(Poly::monomial(&wm_actual * &qq1, q - 2)));
    }
    report.fm_equation_ok = fm
        .derivative_n(2)
        .add(&p_coeff.mul(&fm.differentiate()))
        .add(&q_coeff.mul(&fm))
        .is_zero();

    // Borel alternatives for every product frequency w_j - lambda_i, with
    // exact arithmetic on the common ray
    let w_mag: Vec<QScalar> = report.w_list.clone();
    let l_mag: Vec<QScalar> = report.lambda_list.clone();
    let m = w_mag.len();
    let k = l_mag.len();
    for j in 0..m {
        for i in 0..k {
            let v = &w_mag[j] - &l_mag[i];
            let mut case = BorelCase::Unclassified;
            if v.is_zero() {
                case = BorelCase::CaseI { l: 0 };
            } else {
                for l in 0..m - 1 {
                    if v == w_mag[l] {
                        case = BorelCase::CaseI { l: l + 1 };
                        break;
                    }
                }
                if case == BorelCase::Unclassified {
                    'outer: for s in 0..m {
                        for t in 0..k {
                            if s != j && t != i && v == &w_mag[s] - &l_mag[t] {
                                case = BorelCase::CaseII { s: s + 1, t: t + 1 };
                                break 'outer;
                            }
                        }
                    }
                }
            }
            report.borel_classification.push(((j + 1, i + 1), case));
        }
    }
    Ok(report)
}
