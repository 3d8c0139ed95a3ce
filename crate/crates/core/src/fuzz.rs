//! Seeded random polynomials and cycles, and the property suites run over
//! them.
//!
//! Trial `t` of a run draws from a ChaCha8 stream keyed by `(seed, t)`, so a
//! report depends only on the configuration, never on scheduling.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chern::{chern_tensor_formula, chern_tensor_oracle, pullback_matches_formula};
use crate::cycles::{tensor_cycles, Cycle};
use crate::error::{Error, Result};
use crate::poly::{Family, Polynomial, Var, VariableSpace, DEFAULT_TERM_CAP};
use crate::psi::{suspend_linear, tensor_divisor, tensor_fast};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: u32,
    pub max_degree: u32,
    pub max_vars: u32,
    pub max_terms: u32,
    pub coefficient_bound: u32,
    pub term_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            trials: 200,
            max_degree: 3,
            max_vars: 4,
            max_terms: 4,
            coefficient_bound: 9,
            term_cap: DEFAULT_TERM_CAP,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bounds = [
            ("trials", self.trials as usize),
            ("max-degree", self.max_degree as usize),
            ("max-vars", self.max_vars as usize),
            ("max-terms", self.max_terms as usize),
            ("coefficient-bound", self.coefficient_bound as usize),
            ("term-cap", self.term_cap),
        ];
        match bounds.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(Error::Domain(format!("{name} must be positive"))),
            None => Ok(()),
        }
    }

    pub fn rng(&self, trial: u32) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

fn coefficient(rng: &mut ChaCha8Rng, bound: u32) -> i64 {
    let b = bound as i64;
    loop {
        let c = rng.gen_range(-b..=b);
        if c != 0 {
            return c;
        }
    }
}

/// A nonzero homogeneous polynomial of the given degree in `vars` variables
/// of `family`, with at most `cfg.max_terms` terms.
pub fn random_polynomial(rng: &mut ChaCha8Rng, cfg: &RunConfig, family: Family, vars: u32, degree: u32) -> Polynomial {
    let space = VariableSpace::new(family, vars, 1).expect("positive bound");
    let count = rng.gen_range(1..=cfg.max_terms);
    // A repeated monomial is dropped rather than merged, which keeps every
    // coefficient inside the bound.
    let mut terms: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for _ in 0..count {
        let mut m: Vec<u32> = (0..degree).map(|_| rng.gen_range(0..vars)).collect();
        m.sort_unstable();
        let c = coefficient(rng, cfg.coefficient_bound);
        terms.entry(m).or_insert(c);
    }
    Polynomial::from_terms(
        space,
        degree,
        terms.into_iter().map(|(m, c)| (m.into_iter().map(Var::plain), c)),
    )
    .expect("indices within bounds")
}

/// A polynomial in a randomly sized space with a random degree.
pub fn random_divisor(rng: &mut ChaCha8Rng, cfg: &RunConfig, family: Family) -> Polynomial {
    let vars = rng.gen_range(1..=cfg.max_vars);
    let degree = rng.gen_range(1..=cfg.max_degree);
    random_polynomial(rng, cfg, family, vars, degree)
}

/// Up to three components with multiplicities in `[-3, 3]`, all in one
/// space.
pub fn random_cycle(rng: &mut ChaCha8Rng, cfg: &RunConfig, family: Family) -> Cycle {
    let vars = rng.gen_range(1..=cfg.max_vars);
    let space = VariableSpace::new(family, vars, 1).expect("positive bound");
    let count = rng.gen_range(1..=3);
    let comps: Vec<(Polynomial, i64)> = (0..count)
        .map(|_| {
            let degree = rng.gen_range(1..=cfg.max_degree);
            (random_polynomial(rng, cfg, family, vars, degree), coefficient(rng, 3))
        })
        .collect();
    Cycle::from_components(space, comps).expect("components are nonzero and share a space")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    BiadditivityLeft,
    BiadditivityRight,
    LinearLemma,
    Fastpath,
    Stabilization,
    Degree,
    Chern,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::BiadditivityLeft,
        Suite::BiadditivityRight,
        Suite::LinearLemma,
        Suite::Fastpath,
        Suite::Stabilization,
        Suite::Degree,
        Suite::Chern,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BiadditivityLeft => "biadditivity-left",
            Suite::BiadditivityRight => "biadditivity-right",
            Suite::LinearLemma => "linear-lemma",
            Suite::Fastpath => "fastpath",
            Suite::Stabilization => "stabilization",
            Suite::Degree => "degree",
            Suite::Chern => "chern",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inputs and outcome of the first failing case, as `(label, value)` lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: u32,
    pub lines: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: u32,
    pub passed: u32,
    pub failed: u32,
    pub first_failure: Option<Counterexample>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} passed, {} failed",
            self.suite, self.passed, self.cases, self.failed
        )?;
        if let Some(c) = &self.first_failure {
            write!(f, "\n  first counterexample (trial {}):", c.trial)?;
            for (label, value) in &c.lines {
                write!(f, "\n    {label} = {value}")?;
            }
        }
        Ok(())
    }
}

type Case = Option<Vec<(String, String)>>;

fn line(label: &str, value: impl fmt::Display) -> (String, String) {
    (label.to_string(), value.to_string())
}

fn compare(inputs: Vec<(String, String)>, lhs: &Polynomial, rhs: &Polynomial) -> Result<Case> {
    if lhs == rhs {
        return Ok(None);
    }
    let mut lines = inputs;
    lines.push(line("lhs - rhs", lhs.try_sub(rhs)?));
    Ok(Some(lines))
}

fn biadditivity_left(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Result<Case> {
    let n = rng.gen_range(1..=cfg.max_vars);
    let (d1, d2) = (rng.gen_range(1..=cfg.max_degree), rng.gen_range(1..=cfg.max_degree));
    let f1 = random_polynomial(rng, cfg, Family::X, n, d1);
    let f2 = random_polynomial(rng, cfg, Family::X, n, d2);
    let g = random_divisor(rng, cfg, Family::Y);
    let cap = cfg.term_cap;
    let lhs = tensor_fast(&f1.mul_capped(&f2, cap)?, &g, cap)?;
    let rhs = tensor_fast(&f1, &g, cap)?.mul_capped(&tensor_fast(&f2, &g, cap)?, cap)?;
    compare(vec![line("f1", &f1), line("f2", &f2), line("g", &g)], &lhs, &rhs)
}

fn biadditivity_right(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Result<Case> {
    let f = random_divisor(rng, cfg, Family::X);
    let m = rng.gen_range(1..=cfg.max_vars);
    let (e1, e2) = (rng.gen_range(1..=cfg.max_degree), rng.gen_range(1..=cfg.max_degree));
    let g1 = random_polynomial(rng, cfg, Family::Y, m, e1);
    let g2 = random_polynomial(rng, cfg, Family::Y, m, e2);
    let cap = cfg.term_cap;
    let lhs = tensor_fast(&f, &g1.mul_capped(&g2, cap)?, cap)?;
    let rhs = tensor_fast(&f, &g1, cap)?.mul_capped(&tensor_fast(&f, &g2, cap)?, cap)?;
    compare(vec![line("f", &f), line("g1", &g1), line("g2", &g2)], &lhs, &rhs)
}

fn linear_lemma(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Result<Case> {
    let n = rng.gen_range(1..=cfg.max_vars);
    let f = random_polynomial(rng, cfg, Family::X, n, 1);
    let g = random_divisor(rng, cfg, Family::Y);
    let lhs = suspend_linear(&f, &g, cfg.term_cap)?;
    let rhs = tensor_divisor(&f, &g, cfg.term_cap)?;
    compare(vec![line("f", &f), line("g", &g)], &lhs, &rhs)
}

fn fastpath(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Result<Case> {
    let f = random_divisor(rng, cfg, Family::X);
    let g = random_divisor(rng, cfg, Family::Y);
    let lhs = tensor_fast(&f, &g, cfg.term_cap)?;
    let rhs = tensor_divisor(&f, &g, cfg.term_cap)?;
    compare(vec![line("f", &f), line("g", &g)], &lhs, &rhs)
}

fn stabilization(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Result<Case> {
    let f = random_divisor(rng, cfg, Family::X);
    let g = random_divisor(rng, cfg, Family::Y);
    let n = f.space().bound() + rng.gen_range(1..=3);
    let m = g.space().bound() + rng.gen_range(1..=3);
    let small = tensor_divisor(&f, &g, cfg.term_cap)?;
    let big = tensor_divisor(
        &f.rehouse(VariableSpace::x(n)?)?,
        &g.rehouse(VariableSpace::y(m)?)?,
        cfg.term_cap,
    )?;
    if small.term_table() == big.term_table() && big.space() == VariableSpace::z(n, m)? {
        return Ok(None);
    }
    Ok(Some(vec![
        line("f", &f),
        line("g", &g),
        line("embedding", format!("X({n}) x Y({m})")),
        line("small", &small),
        line("embedded", &big),
    ]))
}

fn degree(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Result<Case> {
    let eta = random_cycle(rng, cfg, Family::X);
    let xi = random_cycle(rng, cfg, Family::Y);
    let out = tensor_cycles(&eta, &xi, cfg.term_cap)?;
    let expected = BigInt::from(eta.degree()) * BigInt::from(xi.degree());
    if BigInt::from(out.degree()) == expected {
        return Ok(None);
    }
    Ok(Some(vec![
        line("eta", &eta),
        line("xi", &xi),
        line("deg(eta) * deg(xi)", expected),
        line("deg(eta (x) xi)", out.degree()),
    ]))
}

/// Largest rank checked by the `chern` suite.
pub const CHERN_MAX_RANK: usize = 5;

fn chern_cases(max_rank: usize) -> Result<Vec<(String, Case)>> {
    let mut out = Vec::new();
    for r in 1..=max_rank {
        for i in 1..=r {
            let formula = chern_tensor_formula(r, i)?;
            let oracle = chern_tensor_oracle(r, i)?;
            let pullback = pullback_matches_formula(r, i)?;
            let case = if formula == oracle && pullback {
                None
            } else {
                Some(vec![
                    line("rank, index", format!("{r}, {i}")),
                    line("formula", &formula),
                    line("roots", &oracle),
                    line("pairing pullback agrees", pullback),
                ])
            };
            out.push((format!("r={r} i={i}"), case));
        }
    }
    Ok(out)
}

/// Runs one suite. Every suite but `chern` runs `cfg.trials` random cases;
/// `chern` checks each `1 <= i <= r <= 5` once.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let outcomes: Vec<Case> = match suite {
        Suite::Chern => chern_cases(CHERN_MAX_RANK)?.into_iter().map(|(_, c)| c).collect(),
        _ => {
            let case: fn(&mut ChaCha8Rng, &RunConfig) -> Result<Case> = match suite {
                Suite::BiadditivityLeft => biadditivity_left,
                Suite::BiadditivityRight => biadditivity_right,
                Suite::LinearLemma => linear_lemma,
                Suite::Fastpath => fastpath,
                Suite::Stabilization => stabilization,
                Suite::Degree => degree,
                Suite::Chern => unreachable!(),
            };
            (0..cfg.trials)
                .map(|t| case(&mut cfg.rng(t), cfg))
                .collect::<Result<_>>()?
        }
    };
    let mut report = SuiteReport {
        suite,
        cases: outcomes.len() as u32,
        passed: 0,
        failed: 0,
        first_failure: None,
    };
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            None => report.passed += 1,
            Some(lines) => {
                report.failed += 1;
                report.first_failure.get_or_insert(Counterexample {
                    trial: trial as u32,
                    lines,
                });
            }
        }
    }
    Ok(report)
}

/// The polynomials a run draws, together with their tensor products: the
/// inputs and outputs of every rendering the suites can print.
pub fn corpus(cfg: &RunConfig) -> Result<Vec<Polynomial>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for t in 0..cfg.trials {
        let mut rng = cfg.rng(t);
        let f = random_divisor(&mut rng, cfg, Family::X);
        let g = random_divisor(&mut rng, cfg, Family::Y);
        let fg = tensor_fast(&f, &g, cfg.term_cap)?;
        out.extend([f, g, fg]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig {
            trials: 10,
            ..RunConfig::default()
        }
    }

    #[test]
    fn same_seed_same_polynomials() {
        let cfg = small();
        let a = random_divisor(&mut cfg.rng(3), &cfg, Family::X);
        let b = random_divisor(&mut cfg.rng(3), &cfg, Family::X);
        assert_eq!(a, b);
    }

    #[test]
    fn envelope_is_respected() {
        let cfg = small();
        for t in 0..50 {
            let p = random_divisor(&mut cfg.rng(t), &cfg, Family::Y);
            assert!((1..=3).contains(&p.degree()));
            assert!(p.space().bound() <= 4);
            assert!(p.len() <= 4);
            assert!(p.terms().all(|(_, c)| c.magnitude() <= &9u32.into()));
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn zero_bounds_rejected() {
        let cfg = RunConfig {
            max_terms: 0,
            ..RunConfig::default()
        };
        assert!(matches!(run_suite(Suite::Fastpath, &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn chern_suite_has_fifteen_cases() {
        let r = run_suite(Suite::Chern, &small()).unwrap();
        assert_eq!((r.cases, r.passed), (15, 15));
    }
}
