//! Command line front end: normalization, growth asymptotics, duality
//! predicates, equation verification, solution search, family generators
//! and the embedded corpus.
//!
//! Exit status: 0 on success, 1 when a requested check fails, 2 on usage
//! or syntax errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use expoly::duality::{self, BorelCase};
use expoly::growth::{self, GrowthAsymptotic};
use expoly::ode::{search_solutions, LinearODE, SearchSpec};
use expoly::textio::{parse_expoly, parse_poly, parse_scalar, print_expoly, print_scalar};
use expoly::{construct, corpus, Error, ExpPoly, ScalarContext};

#[derive(Parser)]
#[command(name = "expoly", version, about = "exact arithmetic on exponential polynomials")]
struct Cli {
    /// square-free radicand of the scalar field Q(i)[sqrt r]
    #[arg(long, global = true, default_value_t = 1)]
    radicand: u64,
    /// absolute tolerance attached to numeric output
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normalized form of an expression
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Leading coefficient of the characteristic T(r, f)
    Char {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Leading coefficient of the proximity m(r, num/den)
    Mq {
        #[arg(allow_hyphen_values = true)]
        num: String,
        #[arg(allow_hyphen_values = true)]
        den: String,
    },
    /// Leading coefficient of the zero counting N(r, 0, f)
    Zeros {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide whether two expressions are dual (or strongly dual)
    Duality {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        strong: bool,
    },
    /// Check that f solves the equation, with an exact residual
    Verify {
        /// second order coefficients A and B of f'' + A f' + B f = 0
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        eq: Option<Vec<String>>,
        /// general equation as coefficients of f, f', ..., f^(n);
        /// values may start with '-', so pass --coeffs last
        #[arg(long, num_args = 2.., value_name = "COEFF", allow_hyphen_values = true)]
        coeffs: Option<Vec<String>>,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Check a solution of the form exp(E) through its logarithm E
    Riccati {
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        eq: Option<Vec<String>>,
        #[arg(long, num_args = 2.., value_name = "COEFF", allow_hyphen_values = true)]
        coeffs: Option<Vec<String>>,
        #[arg(long, allow_hyphen_values = true)]
        logf: String,
    },
    /// Duality structure report for a second order equation and solution
    Report {
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true, allow_hyphen_values = true)]
        eq: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Search for exponential polynomial solutions on a frequency lattice
    Search {
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        eq: Option<Vec<String>>,
        #[arg(long, num_args = 2.., value_name = "COEFF", allow_hyphen_values = true)]
        coeffs: Option<Vec<String>>,
        /// base frequency of the lattice
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// exponent degree q of the ansatz bands e^{j w z^q}
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        jmin: i64,
        #[arg(long)]
        jmax: i64,
        /// multiplier degree bound
        #[arg(long)]
        deg: usize,
    },
    /// Generate one of the named equation families
    Construct {
        #[command(subcommand)]
        family: ConstructCmd,
    },
    /// Run the embedded corpus, optionally filtered by id prefix
    Corpus { prefix: Option<String> },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// f'' + e^{-z} f' - m^2 f = 0 and its solution
    Frei { m: u32 },
    /// one-band family from c, b, w and a polynomial P
    Oneterm {
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        w: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// order q+1 equation from the recursion tables, with entire H
    Ladder {
        q: usize,
        j: usize,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// second order equation solved by exp(z^q)
    Band {
        q: usize,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// second order equation solved by exp(z^q + z) + exp(z^q - z)
    Cosh {
        q: usize,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
}

fn equation_text(eq: &LinearODE) -> String {
    let mut parts = Vec::new();
    for (k, c) in eq.coefficients().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let df = match k {
            0 => "f".to_string(),
            1 => "f'".to_string(),
            2 => "f''".to_string(),
            k => format!("f^({k})"),
        };
        parts.push(format!("({})*{}", print_expoly(c), df));
    }
    format!("{} = 0", parts.join(" + "))
}

fn equation_json(eq: &LinearODE) -> serde_json::Value {
    json!({ "coeffs": eq.coefficients().iter().map(print_expoly).collect::<Vec<_>>() })
}

fn parse_equation(
    eq: &Option<Vec<String>>,
    coeffs: &Option<Vec<String>>,
    ctx: &ScalarContext,
) -> Result<LinearODE, Error> {
    match (eq, coeffs) {
        (Some(ab), None) => Ok(LinearODE::second_order(
            parse_expoly(&ab[0], ctx)?,
            parse_expoly(&ab[1], ctx)?,
        )),
        (None, Some(cs)) => {
            let parsed: Result<Vec<ExpPoly>, Error> =
                cs.iter().map(|c| parse_expoly(c, ctx)).collect();
            LinearODE::new(parsed?)
        }
        _ => Err(Error::InvalidParameter("pass exactly one of --eq or --coeffs".into())),
    }
}

fn growth_text(label: &str, g: &GrowthAsymptotic) -> String {
    match g.degenerate_log {
        Some(d) => format!("{label} ~ {d} log r"),
        None => format!(
            "{label} ~ {:.9} * r^{} (pi multiple {:.9})",
            g.leading,
            g.q,
            g.leading * std::f64::consts::PI
        ),
    }
}

fn growth_json(g: &GrowthAsymptotic) -> serde_json::Value {
    json!({
        "q": g.q,
        "leading": g.leading,
        "pi_multiple": g.leading * std::f64::consts::PI,
        "degenerate_log": g.degenerate_log,
    })
}

fn borel_text(case: &BorelCase) -> String {
    match case {
        BorelCase::CaseI { l } => format!("I(l={l})"),
        BorelCase::CaseII { s, t } => format!("II(s={s},t={t})"),
        BorelCase::Unclassified => "unclassified".into(),
    }
}

struct Output {
    format: Format,
}

impl Output {
    fn emit(&self, text: String, value: serde_json::Value) {
        match self.format {
            Format::Text => println!("{text}"),
            Format::Structured => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let ctx = ScalarContext::new(cli.radicand)?;
    let out = Output { format: cli.format };
    match &cli.command {
        Command::Normalize { expr } => {
            let f = parse_expoly(expr, &ctx)?;
            let view = f.normalize()?;
            let bands: Vec<(String, String)> = view
                .bands()
                .iter()
                .map(|(w, m)| (print_scalar(w), print_expoly(m)))
                .collect();
            let text = format!(
                "{}\n  order q = {}\n  slow part F0 = {}\n{}",
                print_expoly(&f),
                view.q(),
                print_expoly(view.f0()),
                bands
                    .iter()
                    .map(|(w, m)| format!("  band w = {w}: {m}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            );
            out.emit(
                text,
                json!({
                    "canonical": print_expoly(&f),
                    "q": view.q(),
                    "f0": print_expoly(view.f0()),
                    "bands": bands.iter().map(|(w, m)| json!({"w": w, "multiplier": m})).collect::<Vec<_>>(),
                }),
            );
            Ok(true)
        }
        Command::Char { expr } => {
            let f = parse_expoly(expr, &ctx)?;
            let g = growth::characteristic_asymptotic(&f);
            out.emit(growth_text("T(r,f)", &g), growth_json(&g));
            Ok(true)
        }
        Command::Mq { num, den } => {
            let f = parse_expoly(num, &ctx)?;
            let d = parse_expoly(den, &ctx)?;
            let g = growth::proximity_quotient_asymptotic(&f, &d)?;
            out.emit(growth_text("m(r,f/g)", &g), growth_json(&g));
            Ok(true)
        }
        Command::Zeros { expr } => {
            let f = parse_expoly(expr, &ctx)?;
            let g = growth::zero_counting_asymptotic(&f)?;
            out.emit(growth_text("N(r,0,f)", &g), growth_json(&g));
            Ok(true)
        }
        Command::Duality { f, g, strong } => {
            let fp = parse_expoly(f, &ctx)?;
            let gp = parse_expoly(g, &ctx)?;
            let (label, got) = if *strong {
                ("strongly dual", duality::are_strongly_dual(&fp, &gp)?)
            } else {
                ("dual", duality::are_dual(&fp, &gp)?)
            };
            out.emit(format!("{label}: {got}"), json!({ "predicate": label, "result": got }));
            Ok(got)
        }
        Command::Verify { eq, coeffs, f } => {
            let equation = parse_equation(eq, coeffs, &ctx)?;
            let fp = parse_expoly(f, &ctx)?;
            let ok = equation.is_solution(&fp)?;
            out.emit(
                format!(
                    "{}\n{}",
                    equation_text(&equation),
                    if ok { "solution verified: exact residual 0" } else { "not a solution" }
                ),
                json!({ "equation": equation_json(&equation), "solution": ok }),
            );
            Ok(ok)
        }
        Command::Riccati { eq, coeffs, logf } => {
            let equation = parse_equation(eq, coeffs, &ctx)?;
            let e = parse_expoly(logf, &ctx)?;
            let ok = equation.verify_exp_solution(&e);
            out.emit(
                format!(
                    "f = exp({}): {}",
                    print_expoly(&e),
                    if ok { "solution verified via logarithmic substitution" } else { "not a solution" }
                ),
                json!({ "equation": equation_json(&equation), "solution": ok }),
            );
            Ok(ok)
        }
        Command::Report { eq, f } => {
            let a = parse_expoly(&eq[0], &ctx)?;
            let b = parse_expoly(&eq[1], &ctx)?;
            let fp = parse_expoly(f, &ctx)?;
            let rep = duality::duality_structure_report(&a, &b, &fp)?;
            let borel: Vec<serde_json::Value> = rep
                .borel_classification
                .iter()
                .map(|((j, i), case)| json!({ "j": j, "i": i, "case": borel_text(case) }))
                .collect();
            let text = format!(
                "q = {}\nfrequencies w = [{}]\nreflected frequencies lambda = [{}]\nc = {}\nordering_ok = {}\nb_relation_ok = {}\ntop_identity_ok = {}\nfm_equation_ok = {}\nborel pairs: {}",
                rep.q,
                rep.w_list.iter().map(print_scalar).collect::<Vec<_>>().join(", "),
                rep.lambda_list.iter().map(print_scalar).collect::<Vec<_>>().join(", "),
                print_scalar(&rep.c),
                rep.ordering_ok,
                rep.b_relation_ok,
                rep.top_identity_ok,
                rep.fm_equation_ok,
                rep.borel_classification
                    .iter()
                    .map(|((j, i), case)| format!("(j={j},i={i}): {}", borel_text(case)))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            out.emit(
                text,
                json!({
                    "q": rep.q,
                    "w_list": rep.w_list.iter().map(print_scalar).collect::<Vec<_>>(),
                    "lambda_list": rep.lambda_list.iter().map(print_scalar).collect::<Vec<_>>(),
                    "c": print_scalar(&rep.c),
                    "ordering_ok": rep.ordering_ok,
                    "b_relation_ok": rep.b_relation_ok,
                    "top_identity_ok": rep.top_identity_ok,
                    "fm_equation_ok": rep.fm_equation_ok,
                    "borel": borel,
                }),
            );
            Ok(rep.all_ok())
        }
        Command::Search { eq, coeffs, w, q, jmin, jmax, deg } => {
            let equation = parse_equation(eq, coeffs, &ctx)?;
            let spec = SearchSpec::new(parse_scalar(w, &ctx)?, *q, *jmin, *jmax, *deg)?;
            let sols = search_solutions(&equation, &spec)?;
            let printed: Vec<String> = sols.iter().map(print_expoly).collect();
            let text = if printed.is_empty() {
                "no solutions".to_string()
            } else {
                printed
                    .iter()
                    .enumerate()
                    .map(|(i, s)| format!("basis solution {}: {}", i + 1, s))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            out.emit(text, json!({ "solutions": printed }));
            Ok(true)
        }
        Command::Construct { family } => {
            let (eq, sol) = match family {
                ConstructCmd::Frei { m } => {
                    let fam = construct::frei(*m)?;
                    (fam.equation, Some(fam.solution))
                }
                ConstructCmd::Oneterm { c, b, w, p } => {
                    let (eq, f) = construct::one_term_family(
                        &parse_scalar(c, &ctx)?,
                        &parse_scalar(b, &ctx)?,
                        &parse_scalar(w, &ctx)?,
                        &parse_poly(p, &ctx)?,
                    )?;
                    (eq, Some(f))
                }
                ConstructCmd::Ladder { q, j, h } => {
                    (construct::ladder_equation(*q, *j, &parse_expoly(h, &ctx)?)?, None)
                }
                ConstructCmd::Band { q, h } => {
                    let (eq, f) = construct::single_band_family(*q, &parse_expoly(h, &ctx)?)?;
                    (eq, Some(f))
                }
                ConstructCmd::Cosh { q, h } => {
                    let (eq, f) = construct::cosh_band_family(*q, &parse_expoly(h, &ctx)?)?;
                    (eq, Some(f))
                }
            };
            let text = match &sol {
                Some(f) => format!("{}\nsolution: {}", equation_text(&eq), print_expoly(f)),
                None => equation_text(&eq),
            };
            out.emit(
                text,
                json!({
                    "equation": equation_json(&eq),
                    "solution": sol.as_ref().map(print_expoly),
                }),
            );
            Ok(true)
        }
        Command::Corpus { prefix } => {
            let report = corpus::run_corpus(prefix.as_deref())?;
            let mut lines = Vec::new();
            for case in &report.cases {
                lines.push(format!(
                    "{:<30} {} ({} checks)",
                    case.id,
                    if case.passed() { "pass" } else { "FAIL" },
                    case.checks.len()
                ));
                for check in &case.checks {
                    if !check.passed {
                        lines.push(format!("    {}: {}", check.kind, check.detail));
                    }
                }
            }
            lines.push(format!("{} passed, {} failed", report.passed, report.failed));
            out.emit(lines.join("\n"), serde_json::to_value(&report).unwrap());
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Syntax { .. } | Error::InvalidParameter(_) | Error::RadicandMismatch { .. } => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
