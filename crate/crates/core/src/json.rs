//! Machine-readable form of polynomials and cycles.
//!
//! ```json
//! {"space": {"family": "z", "rows": 3, "cols": 8}, "degree": 4,
//!  "terms": [{"coeff": "-3", "vars": [[0, 5, 2], [1, 7, 1], [2, 7, 1]]}]}
//! ```
//!
//! Coefficients are decimal strings so that big integers survive any JSON
//! reader. A variable is `[i, exp]` for `x`/`y` and `[i, j, exp]` for `z`.
//! Terms appear in the same order as the text rendering.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cycles::Cycle;
use crate::error::{Error, ParseError, Result};
use crate::poly::{Family, Polynomial, Var, VariableSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub family: String,
    pub rows: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub vars: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub space: SpaceJson,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub multiplicity: i64,
    pub polynomial: PolynomialJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleJson {
    pub space: SpaceJson,
    pub degree: i64,
    pub components: Vec<ComponentJson>,
}

fn space_json(space: VariableSpace) -> SpaceJson {
    let (family, cols) = match space.family() {
        Family::X => ("x", None),
        Family::Y => ("y", None),
        Family::Z => ("z", Some(space.col_bound())),
    };
    SpaceJson {
        family: family.into(),
        rows: space.bound(),
        cols,
    }
}

fn space_from(s: &SpaceJson) -> Result<VariableSpace> {
    match (s.family.as_str(), s.cols) {
        ("x", None) => VariableSpace::x(s.rows),
        ("y", None) => VariableSpace::y(s.rows),
        ("z", Some(m)) => VariableSpace::z(s.rows, m),
        ("z", None) => Err(Error::Shape("a z space needs \"cols\"".into())),
        ("x" | "y", Some(_)) => Err(Error::Shape(format!("an {} space has no \"cols\"", s.family))),
        (other, _) => Err(Error::Domain(format!("unknown variable family {other:?}"))),
    }
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        let z = p.space().family() == Family::Z;
        let terms: Vec<TermJson> = p
            .terms()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                vars: m
                    .exponents()
                    .into_iter()
                    .map(|(v, e)| {
                        if z {
                            let (i, j) = v.pair();
                            vec![i, j, e]
                        } else {
                            vec![v.index(), e]
                        }
                    })
                    .collect(),
            })
            .collect();
        PolynomialJson {
            space: space_json(p.space()),
            degree: p.degree(),
            terms,
        }
    }
}

impl PolynomialJson {
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let space = space_from(&self.space)?;
        let z = space.family() == Family::Z;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let coeff: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Domain(format!("coefficient {:?} is not an integer", t.coeff)))?;
            let mut vars = Vec::new();
            for v in &t.vars {
                let (var, exp) = match (z, v.as_slice()) {
                    (true, &[i, j, e]) => (Var::z(i, j), e),
                    (false, &[i, e]) => (Var::plain(i), e),
                    _ => return Err(Error::Shape(format!("malformed variable entry {v:?}"))),
                };
                vars.extend(std::iter::repeat_n(var, exp as usize));
            }
            terms.push((vars, coeff));
        }
        Polynomial::from_terms(space, self.degree, terms)
    }
}

impl From<&Cycle> for CycleJson {
    fn from(c: &Cycle) -> Self {
        CycleJson {
            space: space_json(c.space()),
            degree: c.degree(),
            components: c
                .components()
                .map(|(p, m)| ComponentJson {
                    multiplicity: m,
                    polynomial: p.into(),
                })
                .collect(),
        }
    }
}

impl CycleJson {
    pub fn to_cycle(&self) -> Result<Cycle> {
        let space = space_from(&self.space)?;
        let comps = self
            .components
            .iter()
            .map(|c| Ok((c.polynomial.to_polynomial()?, c.multiplicity)))
            .collect::<Result<Vec<_>>>()?;
        Cycle::from_components(space, comps)
    }
}

fn syntax(src: &str, e: serde_json::Error) -> Error {
    Error::Parse(ParseError {
        line: e.line().max(1),
        column: e.column().max(1),
        message: e.to_string(),
        source_line: src.lines().nth(e.line().saturating_sub(1)).unwrap_or("").to_string(),
    })
}

pub fn polynomial_to_json(p: &Polynomial) -> String {
    serde_json::to_string(&PolynomialJson::from(p)).expect("plain data serializes")
}

pub fn polynomial_from_json(src: &str) -> Result<Polynomial> {
    serde_json::from_str::<PolynomialJson>(src)
        .map_err(|e| syntax(src, e))?
        .to_polynomial()
}

pub fn cycle_to_json(c: &Cycle) -> String {
    serde_json::to_string(&CycleJson::from(c)).expect("plain data serializes")
}

pub fn cycle_from_json(src: &str) -> Result<Cycle> {
    serde_json::from_str::<CycleJson>(src).map_err(|e| syntax(src, e))?.to_cycle()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_cycle, parse_polynomial};

    #[test]
    fn z_terms() {
        let p = parse_polynomial("z[0,5]^2*z[1,7] - 3*z[2,7]^3").unwrap();
        assert_eq!(
            polynomial_to_json(&p),
            r#"{"space":{"family":"z","rows":3,"cols":8},"degree":3,"terms":[{"coeff":"1","vars":[[0,5,2],[1,7,1]]},{"coeff":"-3","vars":[[2,7,3]]}]}"#
        );
    }

    #[test]
    fn round_trips() {
        for src in ["x0^2 - 3*x1*x2", "y5*y7", "123456789012345678901234567890*x0", "0", "7"] {
            let p = parse_polynomial(src).unwrap();
            assert_eq!(polynomial_from_json(&polynomial_to_json(&p)).unwrap(), p, "{src}");
        }
        let c = parse_cycle("2*[x0] + -1*[x1^2 - x0*x1]").unwrap();
        assert_eq!(cycle_from_json(&cycle_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(polynomial_from_json("{\"space\":"), Err(Error::Parse(_))));
        let bad_family = r#"{"space":{"family":"w","rows":1},"degree":1,"terms":[]}"#;
        assert!(matches!(polynomial_from_json(bad_family), Err(Error::Domain(_))));
        let out_of_bounds = r#"{"space":{"family":"x","rows":1},"degree":1,"terms":[{"coeff":"1","vars":[[3,1]]}]}"#;
        assert!(matches!(polynomial_from_json(out_of_bounds), Err(Error::Bounds { .. })));
        let wrong_degree = r#"{"space":{"family":"x","rows":2},"degree":2,"terms":[{"coeff":"1","vars":[[0,1]]}]}"#;
        assert!(matches!(polynomial_from_json(wrong_degree), Err(Error::Shape(_))));
    }
}
