//! Embedded registry of worked equations and identities, with a runner that
//! executes every declared check. Cases live in structured text files under
//! `corpus/`, one file per thematic group, using the textio grammar for all
//! expressions.

use serde::{Deserialize, Serialize};

use crate::construct;
use crate::duality;
use crate::error::{Error, Result};
use crate::growth;
use crate::ode::{search_solutions, LinearODE, SearchSpec};
use crate::scalar::{QScalar, ScalarContext};
use crate::symcore::ExpPoly;
use crate::textio::{parse_expoly, parse_scalar};

const GROWTH_TOLERANCE: f64 = 1e-9;

const FILES: &[(&str, &str)] = &[
    ("intro", include_str!("../corpus/intro.toml")),
    ("preliminaries", include_str!("../corpus/preliminaries.toml")),
    ("main", include_str!("../corpus/main.toml")),
    ("higher_order", include_str!("../corpus/higher_order.toml")),
    ("multiple_duality", include_str!("../corpus/multiple_duality.toml")),
];

#[derive(Debug, Deserialize)]
struct CorpusFile {
    #[serde(default)]
    case: Vec<CaseSpec>,
}

#[derive(Debug, Deserialize)]
struct CaseSpec {
    id: String,
    #[serde(default = "default_radicand")]
    radicand: u64,
    #[serde(default)]
    annotations: Vec<String>,
    equation: Option<EquationSpec>,
    solution: Option<String>,
    exp_solution_log: Option<String>,
    checks: Vec<CheckSpec>,
}

fn default_radicand() -> u64 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum EquationSpec {
    SecondOrder { a: String, b: String },
    General { coeffs: Vec<String> },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum CheckSpec {
    ResidualZero,
    Riccati,
    DualityReport,
    GrowthLeading {
        expr: String,
        measure: String,
        #[serde(default)]
        denom: Option<String>,
        pi_multiple: String,
    },
    Simple { f: String, expected: bool },
    Dual { f: String, g: String, expected: bool },
    StrongDuality { f: String, g: String, expected: bool },
    CommonFactor { f: String, expected: Option<String> },
    SearchRecovery { w: String, q: usize, j_min: i64, j_max: i64, deg: usize, expect: String },
    Antiderivative { f: String, expected: String },
    Identity { lhs: String, rhs: String },
    LadderTables { q: usize },
    LadderInstance { q: usize, j: usize, h: String },
    SingleBandInstance { q: usize, h: String },
    CoshBandInstance { q: usize, h: String },
    OutOfScope,
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub kind: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub annotations: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Serialize)]
pub struct CorpusReport {
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub failed: usize,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

struct CaseContext {
    ctx: ScalarContext,
    equation: Option<LinearODE>,
    solution: Option<ExpPoly>,
    exp_solution_log: Option<ExpPoly>,
}

fn parse_case(spec: &CaseSpec) -> Result<CaseContext> {
    let ctx = ScalarContext::new(spec.radicand)
        .map_err(|e| Error::CorpusFormat(format!("{}: {e}", spec.id)))?;
    let equation = match &spec.equation {
        None => None,
        Some(EquationSpec::SecondOrder { a, b }) => Some(LinearODE::second_order(
            parse_expoly(a, &ctx)?,
            parse_expoly(b, &ctx)?,
        )),
        Some(EquationSpec::General { coeffs }) => {
            let cs: Result<Vec<ExpPoly>> = coeffs.iter().map(|c| parse_expoly(c, &ctx)).collect();
            Some(LinearODE::new(cs?)?)
        }
    };
    let solution = spec.solution.as_deref().map(|s| parse_expoly(s, &ctx)).transpose()?;
    let exp_solution_log =
        spec.exp_solution_log.as_deref().map(|s| parse_expoly(s, &ctx)).transpose()?;
    Ok(CaseContext { ctx, equation, solution, exp_solution_log })
}

fn need<'a, T>(v: &'a Option<T>, what: &str, id: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::CorpusFormat(format!("{id}: check needs {what}")))
}

/// True iff a and b span the same one-dimensional space.
fn same_span(a: &ExpPoly, b: &ExpPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let ((qa, pa), (qb, pb)) = match (a.terms().next(), b.terms().next()) {
        (Some(x), Some(y)) => (x, y),
        _ => return false,
    };
    if qa != qb {
        return false;
    }
    // ratio of the leading coefficients of the first terms
    let (Some(la), Some(lb)) = (pa.leading(), pb.leading()) else {
        return false;
    };
    let Ok(c) = lb.checked_div(la) else {
        return false;
    };
    a.scale(&c) == *b
}

fn leading_matches(g: &growth::GrowthAsymptotic, pi_multiple: &QScalar) -> (bool, String) {
    let want = pi_multiple.to_complex_float().re / std::f64::consts::PI;
    let ok = g.degenerate_log.is_none() && (g.leading - want).abs() <= GROWTH_TOLERANCE;
    (ok, format!("leading {} vs expected {}", g.leading, want))
}

fn run_check(spec: &CaseSpec, cc: &CaseContext, check: &CheckSpec) -> Result<(bool, String)> {
    let id = &spec.id;
    match check {
        CheckSpec::ResidualZero => {
            let eq = need(&cc.equation, "an equation", id)?;
            let f = need(&cc.solution, "a solution", id)?;
            let ok = eq.is_solution(f)?;
            Ok((ok, if ok { "residual identically zero".into() } else { "nonzero residual".into() }))
        }
        CheckSpec::Riccati => {
            let eq = need(&cc.equation, "an equation", id)?;
            let e = need(&cc.exp_solution_log, "exp_solution_log", id)?;
            let ok = eq.verify_exp_solution(e);
            Ok((ok, "logarithmic substitution".into()))
        }
        CheckSpec::DualityReport => {
            let eq = need(&cc.equation, "an equation", id)?;
            let f = need(&cc.solution, "a solution", id)?;
            if eq.order() != 2 {
                return Err(Error::CorpusFormat(format!("{id}: report needs a second order equation")));
            }
            let a = eq.coefficient(1);
            let rep = duality::duality_structure_report(a, eq.coefficient(0), f)?;
            let mut ok = rep.all_ok();
            let mut detail = format!(
                "ordering={} b_relation={} top={} fm={}",
                rep.ordering_ok, rep.b_relation_ok, rep.top_identity_ok, rep.fm_equation_ok
            );
            if duality::common_factor(f)?.is_some() {
                let sd = duality::are_strongly_dual(f, a)?;
                ok = ok && sd;
                detail.push_str(&format!(" strongly_dual={sd}"));
            }
            Ok((ok, detail))
        }
        CheckSpec::GrowthLeading { expr, measure, denom, pi_multiple } => {
            let f = parse_expoly(expr, &cc.ctx)?;
            let want = parse_scalar(pi_multiple, &cc.ctx)?;
            let g = match measure.as_str() {
                "T" => growth::characteristic_asymptotic(&f),
                "N" => growth::zero_counting_asymptotic(&f)?,
                "m" => {
                    let d = need(denom, "a denominator", id)?;
                    growth::proximity_quotient_asymptotic(&f, &parse_expoly(d, &cc.ctx)?)?
                }
                other => {
                    return Err(Error::CorpusFormat(format!("{id}: unknown measure {other}")))
                }
            };
            Ok(leading_matches(&g, &want))
        }
        CheckSpec::Simple { f, expected } => {
            let got = duality::is_simple(&parse_expoly(f, &cc.ctx)?)?.is_some();
            Ok((got == *expected, format!("simple={got}")))
        }
        CheckSpec::Dual { f, g, expected } => {
            let got = duality::are_dual(&parse_expoly(f, &cc.ctx)?, &parse_expoly(g, &cc.ctx)?)?;
            Ok((got == *expected, format!("dual={got}")))
        }
        CheckSpec::StrongDuality { f, g, expected } => {
            let got =
                duality::are_strongly_dual(&parse_expoly(f, &cc.ctx)?, &parse_expoly(g, &cc.ctx)?)?;
            Ok((got == *expected, format!("strongly_dual={got}")))
        }
        CheckSpec::CommonFactor { f, expected } => {
            let got = duality::common_factor(&parse_expoly(f, &cc.ctx)?)?;
            let want = expected.as_deref().map(|e| parse_scalar(e, &cc.ctx)).transpose()?;
            Ok((got == want, format!("common_factor={got:?}")))
        }
        CheckSpec::SearchRecovery { w, q, j_min, j_max, deg, expect } => {
            let eq = need(&cc.equation, "an equation", id)?;
            let sp = SearchSpec::new(parse_scalar(w, &cc.ctx)?, *q, *j_min, *j_max, *deg)?;
            let sols = search_solutions(eq, &sp)?;
            match expect.as_str() {
                "empty" => Ok((sols.is_empty(), format!("{} solutions", sols.len()))),
                "solution" => {
                    let f = need(&cc.solution, "a solution", id)?;
                    let ok = sols.len() == 1 && same_span(&sols[0], f);
                    Ok((ok, format!("{} solutions", sols.len())))
                }
                other => Err(Error::CorpusFormat(format!("{id}: unknown expect {other}"))),
            }
        }
        CheckSpec::Antiderivative { f, expected } => {
            let got = parse_expoly(f, &cc.ctx)?.antiderivative_exp1()?;
            let want = parse_expoly(expected, &cc.ctx)?;
            Ok((got == want, "closed-form primitive".into()))
        }
        CheckSpec::Identity { lhs, rhs } => {
            let l = parse_expoly(lhs, &cc.ctx)?;
            let r = parse_expoly(rhs, &cc.ctx)?;
            Ok((l == r, "exact identity".into()))
        }
        CheckSpec::LadderTables { q } => {
            // the builder verifies both defining identities before returning
            let t = construct::ladder_tables(*q)?;
            Ok((true, format!("tables verified, {} zero entries", t.zero_entries.len())))
        }
        CheckSpec::LadderInstance { q, j, h } => {
            let h = parse_expoly(h, &cc.ctx)?;
            let eq = construct::ladder_equation(*q, *j, &h)?;
            Ok((true, format!("order {} equation verified", eq.order())))
        }
        CheckSpec::SingleBandInstance { q, h } => {
            let h = parse_expoly(h, &cc.ctx)?;
            construct::single_band_family(*q, &h)?;
            Ok((true, "generated pair verified".into()))
        }
        CheckSpec::CoshBandInstance { q, h } => {
            let h = parse_expoly(h, &cc.ctx)?;
            construct::cosh_band_family(*q, &h)?;
            Ok((true, "generated pair verified".into()))
        }
        CheckSpec::OutOfScope => Ok((true, "recorded as out of scope".into())),
    }
}

fn check_kind(check: &CheckSpec) -> &'static str {
    match check {
        CheckSpec::ResidualZero => "residual-zero",
        CheckSpec::Riccati => "riccati",
        CheckSpec::DualityReport => "duality-report",
        CheckSpec::GrowthLeading { .. } => "growth-leading",
        CheckSpec::Simple { .. } => "simple",
        CheckSpec::Dual { .. } => "dual",
        CheckSpec::StrongDuality { .. } => "strong-duality",
        CheckSpec::CommonFactor { .. } => "common-factor",
        CheckSpec::SearchRecovery { .. } => "search-recovery",
        CheckSpec::Antiderivative { .. } => "antiderivative",
        CheckSpec::Identity { .. } => "identity",
        CheckSpec::LadderTables { .. } => "ladder-tables",
        CheckSpec::LadderInstance { .. } => "ladder-instance",
        CheckSpec::SingleBandInstance { .. } => "single-band-instance",
        CheckSpec::CoshBandInstance { .. } => "cosh-band-instance",
        CheckSpec::OutOfScope => "out-of-scope",
    }
}

fn load_cases() -> Result<Vec<CaseSpec>> {
    let mut cases = Vec::new();
    for (name, text) in FILES {
        let file: CorpusFile = toml::from_str(text)
            .map_err(|e| Error::CorpusFormat(format!("{name}: {e}")))?;
        cases.extend(file.case);
    }
    for c in &cases {
        if c.checks.is_empty() {
            return Err(Error::CorpusFormat(format!("{}: case has no checks", c.id)));
        }
    }
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(cases)
}

/// Run every check of every case whose id starts with the filter.
pub fn run_corpus(filter: Option<&str>) -> Result<CorpusReport> {
    let cases = load_cases()?;
    let mut results = Vec::new();
    for spec in &cases {
        if let Some(prefix) = filter {
            if !spec.id.starts_with(prefix) {
                continue;
            }
        }
        let mut checks = Vec::new();
        match parse_case(spec) {
            Ok(cc) => {
                for check in &spec.checks {
                    let (passed, detail) = match run_check(spec, &cc, check) {
                        Ok(r) => r,
                        Err(e) => (false, format!("error: {e}")),
                    };
                    checks.push(CheckResult { kind: check_kind(check).into(), passed, detail });
                }
            }
            Err(e) => {
                checks.push(CheckResult {
                    kind: "parse".into(),
                    passed: false,
                    detail: format!("error: {e}"),
                });
            }
        }
        results.push(CaseResult {
            id: spec.id.clone(),
            annotations: spec.annotations.clone(),
            checks,
        });
    }
    let passed = results.iter().filter(|c| c.passed()).count();
    let failed = results.len() - passed;
    Ok(CorpusReport { cases: results, passed, failed })
}

/// All case ids, sorted.
pub fn case_ids() -> Result<Vec<String>> {
    Ok(load_cases()?.iter().map(|c| c.id.clone()).collect())
}

/// Every case carrying a monic second order equation and a solution.
pub fn second_order_cases() -> Result<Vec<(String, LinearODE, ExpPoly)>> {
    let mut out = Vec::new();
    for spec in load_cases()? {
        let cc = parse_case(&spec)?;
        if let (Some(eq), Some(f)) = (cc.equation, cc.solution) {
            if eq.order() == 2 && eq.coefficient(2).as_constant().map_or(false, |c| c.is_one()) {
                out.push((spec.id.clone(), eq, f));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_loads_and_passes() {
        let report = run_corpus(None).unwrap();
        assert!(report.cases.len() >= 40, "only {} cases", report.cases.len());
        for case in &report.cases {
            for check in &case.checks {
                assert!(check.passed, "{} / {}: {}", case.id, check.kind, check.detail);
            }
        }
        assert!(report.all_passed());
    }

    #[test]
    fn filter_selects_prefix() {
        let report = run_corpus(Some("eq-f1")).unwrap();
        assert!(!report.cases.is_empty());
        assert!(report.cases.iter().all(|c| c.id.starts_with("eq-f1")));
        assert!(report.all_passed());
    }

    #[test]
    fn unknown_prefix_is_empty() {
        let report = run_corpus(Some("no-such-prefix")).unwrap();
        assert!(report.cases.is_empty());
    }
}
