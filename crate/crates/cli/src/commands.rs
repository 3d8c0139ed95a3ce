use std::fmt::Write as _;

use num_rational::BigRational;
use serde_json::{json, Value};

use dtl_core::chern::{self, GradedClass};
use dtl_core::cycles::{reduced_tensor, tensor_cycles, Cycle, Hyperplane};
use dtl_core::fuzz::{run_suite, RunConfig, Suite, SuiteReport};
use dtl_core::json::{CycleJson, PolynomialJson};
use dtl_core::parse::{parse_cycle, parse_polynomial};
use dtl_core::poly::{Polynomial, VariableSpace};
use dtl_core::psi::{psi as psi_expand, tensor_divisor, tensor_fast, PsiInput};
use dtl_core::Error;

use crate::{Format, SuiteArg, VerifyArgs};

pub const EXIT_FALSE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_INTERNAL: u8 = 70;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure {
            code: EXIT_USAGE,
            message,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) => EXIT_PARSE,
            Error::Bounds { .. } | Error::Shape(_) | Error::Domain(_) => EXIT_DOMAIN,
            Error::Resource { .. } | Error::Overflow(_) => EXIT_RESOURCE,
            Error::Invariant(_) => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn labelled(label: &str, e: Error) -> Failure {
    let mut f = Failure::from(e);
    if f.code == EXIT_PARSE {
        f.message = format!("cannot parse {label}: {}", f.message);
    }
    f
}

fn poly(label: &str, src: &str) -> Result<Polynomial, Failure> {
    parse_polynomial(src).map_err(|e| labelled(label, e.into()))
}

fn cycle(label: &str, src: &str) -> Result<Cycle, Failure> {
    parse_cycle(src).map_err(|e| labelled(label, e))
}

/// Parses slots independently and moves them into the largest of their
/// inferred spaces.
fn slots(label: &str, srcs: &[String]) -> Result<Vec<Polynomial>, Failure> {
    let parsed = srcs
        .iter()
        .enumerate()
        .map(|(k, s)| poly(&format!("{label} slot {k}"), s))
        .collect::<Result<Vec<_>, _>>()?;
    let bound = parsed.iter().map(|p| p.space().bound()).max().unwrap_or(1);
    parsed
        .iter()
        .map(|p| {
            let space = VariableSpace::new(p.space().family(), bound, 1)?;
            Ok(p.rehouse(space)?)
        })
        .collect()
}

fn polynomial_output(p: &Polynomial, fmt: Format) -> Output {
    match fmt {
        Format::Text => Output::ok(format!("{p}\n")),
        Format::Json => Output::ok(format!(
            "{}\n",
            serde_json::to_string(&PolynomialJson::from(p)).expect("plain data")
        )),
    }
}

pub fn tensor(f: &str, g: &str, naive: bool, cap: usize, fmt: Format) -> Result<Output, Failure> {
    let f = poly("f", f)?;
    let g = poly("g", g)?;
    let out = if naive {
        tensor_divisor(&f, &g, cap)?
    } else {
        tensor_fast(&f, &g, cap)?
    };
    Ok(polynomial_output(&out, fmt))
}

pub fn psi(xs: &[String], ys: &[String], cap: usize, fmt: Format) -> Result<Output, Failure> {
    let input = PsiInput::new(slots("x", xs)?, slots("y", ys)?)?;
    Ok(polynomial_output(&psi_expand(&input, cap)?, fmt))
}

fn basepoint(label: &str, src: Option<&str>, c: &Cycle) -> Result<(Cycle, Hyperplane), Failure> {
    let Some(src) = src else {
        return Ok((c.clone(), Hyperplane::first_coordinate(c.space())));
    };
    let p = poly(label, src)?;
    if p.space().family() != c.space().family() {
        return Err(Error::Domain(format!("{label} lives in {}, the cycle in {}", p.space(), c.space())).into());
    }
    let bound = p.space().bound().max(c.space().bound());
    let c = c.stabilize(bound)?;
    let h = Hyperplane::new(p.rehouse(c.space())?)?;
    Ok((c, h))
}

pub fn cycle_tensor(
    eta: &str,
    xi: &str,
    reduced: bool,
    eta0: Option<&str>,
    xi0: Option<&str>,
    cap: usize,
    fmt: Format,
) -> Result<Output, Failure> {
    let eta = cycle("eta", eta)?;
    let xi = cycle("xi", xi)?;
    let (eta, xi, out) = if reduced {
        let (eta, h0) = basepoint("eta0", eta0, &eta)?;
        let (xi, k0) = basepoint("xi0", xi0, &xi)?;
        let out = reduced_tensor(&eta, &xi, &h0, &k0, cap)?;
        (eta, xi, out)
    } else {
        let out = tensor_cycles(&eta, &xi, cap)?;
        (eta, xi, out)
    };
    let text = match fmt {
        Format::Text => format!(
            "{out}\ndegrees: left {}, right {}, output {}\n",
            eta.degree(),
            xi.degree(),
            out.degree()
        ),
        Format::Json => {
            let v = json!({
                "reduced": reduced,
                "left_degree": eta.degree(),
                "right_degree": xi.degree(),
                "cycle": CycleJson::from(&out),
            });
            format!("{v}\n")
        }
    };
    Ok(Output::ok(text))
}

fn suites(arg: SuiteArg) -> Vec<Suite> {
    match arg {
        SuiteArg::BiadditivityLeft => vec![Suite::BiadditivityLeft],
        SuiteArg::BiadditivityRight => vec![Suite::BiadditivityRight],
        SuiteArg::LinearLemma => vec![Suite::LinearLemma],
        SuiteArg::Fastpath => vec![Suite::Fastpath],
        SuiteArg::Stabilization => vec![Suite::Stabilization],
        SuiteArg::Degree => vec![Suite::Degree],
        SuiteArg::Chern => vec![Suite::Chern],
        SuiteArg::All => Suite::ALL.to_vec(),
    }
}

pub fn verify(args: &VerifyArgs, cap: usize, fmt: Format) -> Result<Output, Failure> {
    let cfg = RunConfig {
        seed: args.seed,
        trials: args.trials,
        max_degree: args.max_degree,
        max_vars: args.max_vars,
        max_terms: args.max_terms,
        coefficient_bound: args.coefficient_bound,
        term_cap: cap,
    };
    cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;
    let reports = suites(args.suite)
        .into_iter()
        .map(|s| run_suite(s, &cfg))
        .collect::<Result<Vec<SuiteReport>, _>>()?;
    let ok = reports.iter().all(SuiteReport::ok);
    let text = match fmt {
        Format::Text => {
            let mut t = format!(
                "seed {}, {} trials, degree <= {}, vars <= {}, terms <= {}, |coeff| <= {}\n",
                cfg.seed, cfg.trials, cfg.max_degree, cfg.max_vars, cfg.max_terms, cfg.coefficient_bound
            );
            for r in &reports {
                writeln!(t, "{r}").unwrap();
            }
            t
        }
        Format::Json => format!("{}\n", json!({ "config": cfg, "reports": reports, "ok": ok })),
    };
    Ok(Output {
        text,
        code: if ok { 0 } else { EXIT_FALSE },
    })
}

fn class_json(c: &GradedClass) -> Value {
    json!({
        "class": c.to_string(),
        "terms": c.sorted_terms().into_iter().map(|(e, k)| json!({
            "monomial": c.render_monomial(e),
            "coeff": k.to_string(),
        })).collect::<Vec<_>>(),
    })
}

pub fn chern(rank: usize, index: usize, fmt: Format) -> Result<Output, Failure> {
    let c = chern::chern_tensor_formula(rank, index)?;
    Ok(Output::ok(match fmt {
        Format::Text => format!("{c}\n"),
        Format::Json => {
            let mut v = class_json(&c);
            v["rank"] = json!(rank);
            v["index"] = json!(index);
            format!("{v}\n")
        }
    }))
}

pub fn chern_verify(max_rank: usize, fmt: Format) -> Result<Output, Failure> {
    let mut rows = Vec::new();
    for r in 1..=max_rank {
        for i in 1..=r {
            let formula = chern::chern_tensor_formula(r, i)?;
            let oracle = chern::chern_tensor_oracle(r, i)?;
            let pullback = chern::pullback_matches_formula(r, i)?;
            rows.push((r, i, formula.clone(), formula == oracle, pullback));
        }
    }
    let agree = rows.iter().filter(|row| row.3 && row.4).count();
    let ok = agree == rows.len();
    let text = match fmt {
        Format::Text => {
            let mut t = String::new();
            for (r, i, c, o, p) in &rows {
                let verdict = |b: bool| if b { "equal" } else { "DIFFERENT" };
                writeln!(t, "r={r} i={i}: {c}  [roots {}, pullback {}]", verdict(*o), verdict(*p)).unwrap();
            }
            writeln!(t, "{agree}/{} cases agree", rows.len()).unwrap();
            t
        }
        Format::Json => {
            let cases: Vec<Value> = rows
                .iter()
                .map(|(r, i, c, o, p)| {
                    json!({"rank": r, "index": i, "class": c.to_string(), "roots_agree": o, "pullback_agrees": p})
                })
                .collect();
            format!("{}\n", json!({ "cases": cases, "ok": ok }))
        }
    };
    Ok(Output {
        text,
        code: if ok { 0 } else { EXIT_FALSE },
    })
}

fn rational(label: &str, s: &str) -> Result<BigRational, Failure> {
    s.parse()
        .map_err(|_| Failure::usage(format!("{label} must be a rational number like 1 or -2/3, got {s:?}")))
}

pub fn obstruction(ab: Option<&[String]>, n: usize, fmt: Format) -> Result<Output, Failure> {
    let s = chern::obstruction_solve()?;
    let (a, b) = match ab {
        Some([a, b]) => (rational("A", a)?, rational("B", b)?),
        Some(_) => return Err(Failure::usage("--ab takes exactly two values".into())),
        None => (s.a.clone(), s.b.clone()),
    };
    let m = chern::obstruction_membership(n, &a, &b)?;
    let code = if m.is_member { EXIT_FALSE } else { 0 };
    let text = match fmt {
        Format::Text => {
            let mut t = String::new();
            writeln!(t, "side one: {}", s.side_one).unwrap();
            writeln!(
                t,
                "side two: {} + a*({}) + b*({})",
                s.side_two_fixed, s.side_two_a, s.side_two_b
            )
            .unwrap();
            writeln!(t, "coefficient equations:").unwrap();
            for e in &s.equations {
                writeln!(t, "  {e}").unwrap();
            }
            writeln!(t, "rank {}, unique solution a = {}, b = {}", s.rank, s.a, s.b).unwrap();
            let basis: Vec<String> = m.image_basis.iter().map(ToString::to_string).collect();
            writeln!(t, "image of the projection pullback in weight 2 (n = {n}): {}", basis.join(", ")).unwrap();
            writeln!(t, "target (a = {a}, b = {b}): {}", m.target).unwrap();
            writeln!(t, "ranks: image {}, with target {}", m.image_rank, m.augmented_rank).unwrap();
            if m.is_member {
                writeln!(t, "target is in the image: no obstruction").unwrap();
            } else {
                writeln!(t, "target is not in the image; witness {}", m.residue).unwrap();
                writeln!(t, "obstruction confirmed").unwrap();
            }
            t
        }
        Format::Json => {
            let v = json!({
                "side_one": s.side_one.to_string(),
                "side_two": {
                    "fixed": s.side_two_fixed.to_string(),
                    "a": s.side_two_a.to_string(),
                    "b": s.side_two_b.to_string(),
                },
                "equations": s.equations.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "rank": s.rank,
                "solution": {"a": s.a.to_string(), "b": s.b.to_string()},
                "n": n,
                "tested": {"a": a.to_string(), "b": b.to_string()},
                "image_basis": m.image_basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "target": m.target.to_string(),
                "image_rank": m.image_rank,
                "augmented_rank": m.augmented_rank,
                "member": m.is_member,
                "witness": (!m.is_member).then(|| m.residue.to_string()),
            });
            format!("{v}\n")
        }
    };
    Ok(Output { text, code })
}
