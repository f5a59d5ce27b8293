//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Tolerances are pinned here.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use expoly::duality;
use expoly::growth;
use expoly::ode::{search_solutions, SearchSpec};
use expoly::textio::{parse_expoly, parse_poly, parse_scalar};
use expoly::{construct, corpus, ExpPoly, Poly, QScalar, ScalarContext};

const GROWTH_TOLERANCE: f64 = 1e-9;
const ROTATION_TOLERANCE: f64 = 1e-12;
const EVALUATE_TOLERANCE: f64 = 1e-9;
const PROPERTY_INSTANCES: usize = 200;
const ACCEPTANCE_SEED: u64 = 0x414343455054;

fn report(n: usize, desc: &str, ok: bool) {
    println!("[acceptance] criterion {n} ({desc}): {}", if ok { "pass" } else { "FAIL" });
    assert!(ok, "criterion {n} ({desc}) failed");
}

fn ctx1() -> ScalarContext {
    ScalarContext::new(1).unwrap()
}

fn ep(s: &str) -> ExpPoly {
    parse_expoly(s, &ctx1()).unwrap()
}

/// sols is exactly the span of f.
fn spans(sols: &[ExpPoly], f: &ExpPoly) -> bool {
    if sols.len() != 1 {
        return false;
    }
    let s = &sols[0];
    let ((qs, ps), (qf, pf)) = match (s.terms().next(), f.terms().next()) {
        (Some(a), Some(b)) => (a, b),
        _ => return false,
    };
    if qs != qf {
        return false;
    }
    let (Some(ls), Some(lf)) = (ps.leading(), pf.leading()) else {
        return false;
    };
    match lf.checked_div(ls) {
        Ok(c) => s.scale(&c) == *f,
        Err(_) => false,
    }
}

#[test]
fn criterion_01_frei_reproduction() {
    let start = Instant::now();
    let mut ok = true;
    for m in 1..=8 {
        let fam = construct::frei(m).unwrap();
        // frei() verifies the residual and the closed product form; spot
        // check the endpoints here as well
        ok &= fam.coefficients.len() == m as usize;
        ok &= fam.coefficients[0] == QScalar::from_int((m * m) as i64, 1);
        ok &= fam.equation.is_solution(&fam.solution).unwrap();
    }
    ok &= start.elapsed() < Duration::from_secs(1);
    report(1, "Frei family m = 1..8, exact, under 1 s", ok);
}

#[test]
fn criterion_02_frei_nonexistence() {
    let start = Instant::now();
    let ctx = ctx1();
    let mut ok = true;
    for a in [2i64, 3, 5, 7] {
        let eq = expoly::ode::LinearODE::second_order(
            ep("exp(-z)"),
            ExpPoly::from_scalar(QScalar::from_int(-a, 1)),
        );
        let spec = SearchSpec::new(parse_scalar("1", &ctx).unwrap(), 1, 0, 6, 3).unwrap();
        ok &= search_solutions(&eq, &spec).unwrap().is_empty();
    }
    ok &= start.elapsed() < Duration::from_secs(5);
    report(2, "no lattice solutions for non-square alpha, under 5 s", ok);
}

#[test]
fn criterion_03_full_corpus() {
    let start = Instant::now();
    let rep = corpus::run_corpus(None).unwrap();
    let mut ok = rep.all_passed() && rep.cases.len() >= 40;
    ok &= start.elapsed() < Duration::from_secs(30);
    if !ok {
        for case in &rep.cases {
            for check in &case.checks {
                if !check.passed {
                    println!("  {} / {}: {}", case.id, check.kind, check.detail);
                }
            }
        }
    }
    report(3, "full corpus green, under 30 s", ok);
}

#[test]
fn criterion_04_growth_numbers() {
    use std::f64::consts::PI;
    let cases = [
        ("exp(z) + exp(2*z)", 2.0),
        ("exp(-4*z)", 4.0),
        ("(exp(z) + exp(2*z))*exp(-4*z)", 3.0),
        ("(exp(z) + exp(2*z))*exp(-z)", 1.0),
    ];
    let mut ok = true;
    for (expr, mult) in cases {
        let g = growth::characteristic_asymptotic(&ep(expr));
        ok &= g.degenerate_log.is_none() && (g.leading - mult / PI).abs() <= GROWTH_TOLERANCE;
    }
    report(4, "characteristic leading coefficients", ok);
}

#[test]
fn criterion_05_duality_classification() {
    let f = ep("1 + z*exp(z) + 2*exp(3*z)");
    let g = ep("1 - exp(-z)");
    let h = ep("1 - exp(-z) + 2*z^2*exp(-2*z)");
    let mut ok = duality::are_strongly_dual(&f, &g).unwrap();
    ok &= !duality::are_strongly_dual(&f, &h).unwrap();
    let df = ep("z^2*exp(-i*z) + z*exp(z^2) + exp(2*z^2 + (1-i)*z)");
    let dg = ep("2*exp(-z^2 + (1+i)*z) + z^2*exp(-4*z^2 + i*z)");
    ok &= duality::are_dual(&df, &dg).unwrap();
    let cf = duality::common_factor(&ep("exp(4*i*z) + exp(6*i*z)")).unwrap();
    let two_i = &QScalar::from_int(2, 1) * &QScalar::i(1);
    ok &= cf == Some(two_i);
    report(5, "duality classification and canonical common factor", ok);
}

#[test]
fn criterion_06_structure_report_property() {
    let mut ok = true;
    let mut seen = 0;
    for (id, eq, f) in corpus::second_order_cases().unwrap() {
        let a = eq.coefficient(1);
        let b = eq.coefficient(0);
        if b.order() >= a.order() {
            continue;
        }
        seen += 1;
        let rep = duality::duality_structure_report(a, b, &f).unwrap();
        let mut case_ok = rep.all_ok();
        if duality::common_factor(&f).unwrap().is_some() {
            case_ok &= duality::are_strongly_dual(&f, a).unwrap();
        }
        if !case_ok {
            println!("  structure report failed for {id}");
        }
        ok &= case_ok;
    }
    ok &= seen >= 10;
    report(6, "structure report true on every qualifying corpus case", ok);
}

#[test]
fn criterion_07_ladder_identities() {
    let ctx = ctx1();
    let mut ok = true;
    for q in 1..=4 {
        // the builder checks both defining identities exactly
        ok &= construct::ladder_tables(q).is_ok();
    }
    let t = construct::ladder_tables(2).unwrap();
    let pp = |s: &str| parse_poly(s, &ctx).unwrap();
    ok &= t.p[0][0] == pp("2*z");
    ok &= t.p[1][0] == pp("2 + 4*z^2");
    ok &= t.q_list[0] == pp("2 - 4*z^2");
    ok &= t.q_list[1] == pp("4*z");
    report(7, "recursion tables exact with pinned hand values", ok);
}

#[test]
fn criterion_08_search_recovery() {
    let ctx = ctx1();
    let one = parse_scalar("1", &ctx).unwrap();
    let mut ok = true;

    for m in 1..=4u32 {
        let fam = construct::frei(m).unwrap();
        let spec = SearchSpec::new(one.clone(), 1, 0, m as i64 + 1, 1).unwrap();
        let sols = search_solutions(&fam.equation, &spec).unwrap();
        ok &= spans(&sols, &fam.solution);
    }

    // the two-band family for n in {-1, 0, 1, 2}
    let two_band = [
        ("-2/3 + 2/3*exp(-z)", "-8/3", "1 + 4*exp(z) + 7*exp(2*z)"),
        ("-5/3 + 2/3*exp(-z)", "-2/3", "1 + exp(z) + exp(2*z)"),
        ("-8/3 + 2/3*exp(-z)", "4/3", "1 - 2*exp(z) - 1/2*exp(2*z)"),
        ("-11/3 + 2/3*exp(-z)", "10/3", "1 - 5*exp(z) + 5/2*exp(2*z)"),
    ];
    for (a, b, f) in two_band {
        let eq = expoly::ode::LinearODE::second_order(ep(a), ep(b));
        let spec = SearchSpec::new(one.clone(), 1, 0, 3, 1).unwrap();
        ok &= spans(&search_solutions(&eq, &spec).unwrap(), &ep(f));
    }

    // random one-band instances
    let mut rng = ChaCha8Rng::seed_from_u64(ACCEPTANCE_SEED);
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let n = rng.gen_range(-4i64..=4);
        if n != 0 {
            break n;
        }
    };
    for _ in 0..50 {
        let c = QScalar::from_int(nonzero(&mut rng), 1);
        let b = QScalar::from_int(nonzero(&mut rng), 1);
        let w = QScalar::from_int(nonzero(&mut rng), 1);
        let deg = rng.gen_range(0usize..=2);
        let mut coeffs = Vec::new();
        for d in 0..=deg {
            let c = if d == deg { nonzero(&mut rng) } else { rng.gen_range(-3i64..=3) };
            coeffs.push(QScalar::from_int(c, 1));
        }
        let p = Poly::new(coeffs, 1);
        let (eq, f) = construct::one_term_family(&c, &b, &w, &p).unwrap();
        let spec = SearchSpec::new(w.clone(), 1, 0, 1, 1).unwrap();
        ok &= spans(&search_solutions(&eq, &spec).unwrap(), &f);
    }
    report(8, "search recovers the known one-dimensional spans", ok);
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<QScalar> =
        (0..=deg).map(|_| QScalar::from_int(rng.gen_range(-3i64..=3), 1)).collect();
    Poly::new(coeffs, 1)
}

fn random_exponent(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    // zero constant term, degree at least 1 unless everything is zero
    let deg = rng.gen_range(1..=max_deg);
    let mut coeffs = vec![QScalar::from_int(0, 1)];
    for _ in 1..=deg {
        coeffs.push(QScalar::from_int(rng.gen_range(-2i64..=2), 1));
    }
    Poly::new(coeffs, 1)
}

fn random_expoly(rng: &mut ChaCha8Rng) -> ExpPoly {
    let mut f = ExpPoly::zero(1);
    for _ in 0..rng.gen_range(1..=3) {
        let mult = random_poly(rng, 2);
        let expo = random_exponent(rng, 2);
        if expo.is_zero() {
            f = f.add(&ExpPoly::from_poly(mult));
        } else {
            f = f.add(&ExpPoly::exp_term(mult, expo).unwrap());
        }
    }
    f
}

#[test]
fn criterion_09_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(ACCEPTANCE_SEED ^ 9);
    let mut ok = true;

    // ring axioms
    for _ in 0..PROPERTY_INSTANCES {
        let a = random_expoly(&mut rng);
        let b = random_expoly(&mut rng);
        let c = random_expoly(&mut rng);
        ok &= a.add(&b).add(&c) == a.add(&b.add(&c));
        ok &= a.mul(&b) == b.mul(&a);
        ok &= a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c));
        ok &= a.add(&ExpPoly::zero(1)) == a;
        ok &= a.mul(&ExpPoly::one(1)) == a;
        ok &= a.sub(&a).is_zero();
    }

    // differentiate after antiderivative on the order <= 1 ring
    for _ in 0..PROPERTY_INSTANCES {
        let mut f = ExpPoly::zero(1);
        for _ in 0..rng.gen_range(1..=3) {
            let mult = random_poly(&mut rng, 2);
            let w = rng.gen_range(-3i64..=3);
            if w == 0 {
                f = f.add(&ExpPoly::from_poly(mult));
            } else {
                f = f.add(
                    &ExpPoly::exp_term(mult, Poly::monomial(QScalar::from_int(w, 1), 1)).unwrap(),
                );
            }
        }
        ok &= f.antiderivative_exp1().unwrap().differentiate() == f;
    }

    // normalization round trip
    for _ in 0..PROPERTY_INSTANCES {
        let f = random_expoly(&mut rng);
        if !f.is_transcendental() {
            continue;
        }
        let view = f.normalize().unwrap();
        ok &= view.reconstruct() == f;
    }

    // residual linearity
    for _ in 0..PROPERTY_INSTANCES {
        let eq = expoly::ode::LinearODE::second_order(
            random_expoly(&mut rng),
            random_expoly(&mut rng),
        );
        let f = random_expoly(&mut rng);
        let g = random_expoly(&mut rng);
        let al = QScalar::from_int(rng.gen_range(-3i64..=3), 1);
        let be = QScalar::from_int(rng.gen_range(-3i64..=3), 1);
        let lhs = eq.residual(&f.scale(&al).add(&g.scale(&be)));
        let rhs = eq.residual(&f).scale(&al).add(&eq.residual(&g).scale(&be));
        ok &= lhs == rhs;
    }

    // rotating every frequency by i preserves the hull circumference
    for _ in 0..PROPERTY_INSTANCES {
        let mut f = ExpPoly::zero(1);
        let mut rot = ExpPoly::zero(1);
        let i = QScalar::i(1);
        for _ in 0..rng.gen_range(1..=4) {
            let w = QScalar::from_int(rng.gen_range(-3i64..=3), 1);
            let mult = random_poly(&mut rng, 1);
            if w.is_zero() {
                f = f.add(&ExpPoly::from_poly(mult.clone()));
                rot = rot.add(&ExpPoly::from_poly(mult));
            } else {
                f = f.add(&ExpPoly::exp_term(mult.clone(), Poly::monomial(w.clone(), 1)).unwrap());
                rot = rot.add(&ExpPoly::exp_term(mult, Poly::monomial(&w * &i, 1)).unwrap());
            }
        }
        if !f.is_transcendental() {
            continue;
        }
        let a = growth::characteristic_asymptotic(&f).leading;
        let b = growth::characteristic_asymptotic(&rot).leading;
        ok &= (a - b).abs() <= ROTATION_TOLERANCE;
    }

    // evaluation is a ring homomorphism
    for _ in 0..PROPERTY_INSTANCES {
        let f = random_expoly(&mut rng);
        let g = random_expoly(&mut rng);
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        let radius = rng.gen_range(0.3..1.2);
        let z = Complex64::from_polar(radius, angle);
        let scale_mul = 1.0 + f.evaluate(z).norm() * g.evaluate(z).norm();
        ok &= (f.mul(&g).evaluate(z) - f.evaluate(z) * g.evaluate(z)).norm()
            <= EVALUATE_TOLERANCE * scale_mul;
        let scale_add = 1.0 + f.evaluate(z).norm() + g.evaluate(z).norm();
        ok &= (f.add(&g).evaluate(z) - (f.evaluate(z) + g.evaluate(z))).norm()
            <= EVALUATE_TOLERANCE * scale_add;
    }

    report(9, "randomized property suites, 200 instances each", ok);
}

#[test]
fn criterion_10_wall_clock() {
    // representative heavy path: the full corpus plus the family generators
    let start = Instant::now();
    let rep = corpus::run_corpus(None).unwrap();
    let mut ok = rep.all_passed();
    for m in 1..=8 {
        ok &= construct::frei(m).is_ok();
    }
    for q in 1..=4 {
        ok &= construct::ladder_tables(q).is_ok();
    }
    ok &= start.elapsed() < Duration::from_secs(60);
    report(10, "timed workload well inside the budget", ok);
}
