//! Codimension-1 cycles as integer combinations of homogeneous polynomials.
//!
//! Components are kept exactly as given; no factorization into irreducibles
//! is attempted. Two cycles are equal when their merged component tables
//! are equal, so `[f*g]` and `[f] + [g]` are different values even though
//! they pair identically whenever the product law holds.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Family, Polynomial, Var, VariableSpace};
use crate::psi::tensor_divisor;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    space: VariableSpace,
    components: BTreeMap<Polynomial, i64>,
}

impl Cycle {
    pub fn empty(space: VariableSpace) -> Self {
        Cycle {
            space,
            components: BTreeMap::new(),
        }
    }

    /// `1*[p]`.
    pub fn single(p: Polynomial) -> Result<Self> {
        let space = p.space();
        Self::from_components(space, [(p, 1)])
    }

    pub fn from_components(
        space: VariableSpace,
        components: impl IntoIterator<Item = (Polynomial, i64)>,
    ) -> Result<Self> {
        let mut out = Cycle::empty(space);
        for (p, mult) in components {
            if p.space() != space {
                return Err(Error::Shape(format!(
                    "component {p} lives in {}, cycle in {space}",
                    p.space()
                )));
            }
            if p.is_zero() || p.degree() == 0 {
                return Err(Error::Domain(format!(
                    "cycle components must be nonzero of degree at least 1, got {p}"
                )));
            }
            out.insert(p, mult)?;
        }
        Ok(out)
    }

    fn insert(&mut self, p: Polynomial, mult: i64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let entry = self.components.entry(p).or_insert(0);
        *entry = entry
            .checked_add(mult)
            .ok_or(Error::Overflow("cycle multiplicity"))?;
        self.components.retain(|_, m| *m != 0);
        Ok(())
    }

    pub fn space(&self) -> VariableSpace {
        self.space
    }

    pub fn components(&self) -> impl Iterator<Item = (&Polynomial, i64)> {
        self.components.iter().map(|(p, &m)| (p, m))
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `sum multiplicity * degree`.
    pub fn degree(&self) -> i64 {
        self.components
            .iter()
            .map(|(p, &m)| m * i64::from(p.degree()))
            .sum()
    }

    /// All multiplicities positive. The empty cycle counts as effective.
    pub fn is_effective(&self) -> bool {
        self.components.values().all(|&m| m > 0)
    }

    pub fn add(&self, other: &Cycle) -> Result<Cycle> {
        if self.space != other.space {
            return Err(Error::Shape(format!(
                "cannot add cycles in {} and {}",
                self.space, other.space
            )));
        }
        let mut out = self.clone();
        for (p, &m) in &other.components {
            out.insert(p.clone(), m)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Cycle {
        Cycle {
            space: self.space,
            components: self.components.iter().map(|(p, &m)| (p.clone(), -m)).collect(),
        }
    }

    /// The same components in a space with larger bounds.
    pub fn stabilize(&self, bound: u32) -> Result<Cycle> {
        if bound < self.space.bound() {
            return Err(Error::Shape(format!(
                "cannot stabilize {} down to {bound} variables",
                self.space
            )));
        }
        let space = VariableSpace::new(self.space.family(), bound, self.space.col_bound())?;
        let mut out = Cycle::empty(space);
        for (p, &m) in &self.components {
            out.insert(p.rehouse(space)?, m)?;
        }
        Ok(out)
    }
}

impl fmt::Display for Cycle {
    /// `2*[x0^2 - 3*x1*x2] + -1*[x0]`; `0` for the empty cycle.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        for (k, (p, m)) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}*[{p}]")?;
        }
        Ok(())
    }
}

/// A linear form used as a fixed basepoint of the reduced pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane(Polynomial);

impl Hyperplane {
    pub fn new(p: Polynomial) -> Result<Self> {
        if p.degree() != 1 || p.is_zero() {
            return Err(Error::Domain(format!("a hyperplane needs a nonzero linear form, got {p}")));
        }
        Ok(Hyperplane(p))
    }

    /// The first coordinate hyperplane `x0` (or `y0`) of `space`.
    pub fn first_coordinate(space: VariableSpace) -> Self {
        Hyperplane(Polynomial::var(space, Var::plain(0)).expect("index 0 is always in bounds"))
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.0
    }

    pub fn as_cycle(&self) -> Cycle {
        Cycle::single(self.0.clone()).expect("hyperplanes are valid components")
    }
}

/// Biadditive extension: `sum_i sum_j a_i b_j [f_i (x) g_j]`.
pub fn tensor_cycles(eta: &Cycle, xi: &Cycle, cap: usize) -> Result<Cycle> {
    if eta.space.family() != Family::X || xi.space.family() != Family::Y {
        return Err(Error::Domain(format!(
            "cycle tensor needs an x cycle and a y cycle, got {} and {}",
            eta.space, xi.space
        )));
    }
    let space = VariableSpace::z(eta.space.bound(), xi.space.bound())?;
    let mut out = Cycle::empty(space);
    for (f, &a) in &eta.components {
        for (g, &b) in &xi.components {
            let mult = a.checked_mul(b).ok_or(Error::Overflow("cycle multiplicity"))?;
            out.insert(tensor_divisor(f, g, cap)?, mult)?;
        }
    }
    Ok(out)
}

/// `eta (x) xi + eta (x) xi0 + eta0 (x) xi`.
pub fn reduced_tensor(
    eta: &Cycle,
    xi: &Cycle,
    eta0: &Hyperplane,
    xi0: &Hyperplane,
    cap: usize,
) -> Result<Cycle> {
    let eta0 = eta0.as_cycle();
    let xi0 = xi0.as_cycle();
    if eta0.space != eta.space || xi0.space != xi.space {
        return Err(Error::Shape(format!(
            "basepoints live in {} and {}, cycles in {} and {}",
            eta0.space, xi0.space, eta.space, xi.space
        )));
    }
    tensor_cycles(eta, xi, cap)?
        .add(&tensor_cycles(eta, &xi0, cap)?)?
        .add(&tensor_cycles(&eta0, xi, cap)?)
}

/// Whether `[f1] + [f2]` and `[f1*f2]` pair the same way with `[g]`:
/// `(f1 f2) (x) g == (f1 (x) g)(f2 (x) g)`.
pub fn well_definedness_check(
    f1: &Polynomial,
    f2: &Polynomial,
    g: &Polynomial,
    cap: usize,
) -> Result<bool> {
    let lhs = tensor_divisor(&f1.mul_capped(f2, cap)?, g, cap)?;
    let rhs = tensor_divisor(f1, g, cap)?.mul_capped(&tensor_divisor(f2, g, cap)?, cap)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_cycle_in, parse_polynomial_in};
    use crate::poly::DEFAULT_TERM_CAP;

    fn xs(n: u32) -> VariableSpace {
        VariableSpace::x(n).unwrap()
    }

    fn ys(m: u32) -> VariableSpace {
        VariableSpace::y(m).unwrap()
    }

    fn cx(n: u32, s: &str) -> Cycle {
        parse_cycle_in(s, xs(n)).unwrap()
    }

    fn cy(m: u32, s: &str) -> Cycle {
        parse_cycle_in(s, ys(m)).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(cx(2, "2*[x0] + 1*[x1]").degree(), 3);
        assert_eq!(cx(2, "[x0] - [x1]").degree(), 0);
        assert_eq!(cx(3, "1*[x0^2 - 3*x1*x2]").degree(), 2);
        assert_eq!(Cycle::empty(xs(1)).degree(), 0);
    }

    #[test]
    fn addition_merges_and_cancels() {
        let a = cx(1, "[x0]");
        assert_eq!(a.add(&a).unwrap().to_string(), "2*[x0]");
        assert!(a.add(&a.neg()).unwrap().is_empty());
        let f2 = cx(3, "2*[x0^2 - 3*x1*x2]");
        let f3 = cx(3, "-3*[x0^2 - 3*x1*x2]");
        assert_eq!(f2.add(&f3).unwrap().to_string(), "-1*[x0^2 - 3*x1*x2]");
        assert!(a.add(&cy(1, "[y0]")).is_err());
    }

    #[test]
    fn effectivity() {
        assert!(cx(2, "2*[x0] + [x1]").is_effective());
        assert!(!cx(2, "[x0] - [x1]").is_effective());
        assert!(Cycle::empty(xs(1)).is_effective());
    }

    #[test]
    fn components_are_validated() {
        let p = parse_polynomial_in("x0", xs(2)).unwrap();
        assert!(Cycle::from_components(xs(3), [(p.clone(), 1)]).is_err());
        let c = Polynomial::constant(xs(2), 5);
        assert!(matches!(Cycle::from_components(xs(2), [(c, 1)]), Err(Error::Domain(_))));
        assert!(Cycle::from_components(xs(2), [(p, 0)]).unwrap().is_empty());
    }

    #[test]
    fn tensor_of_hyperplanes() {
        let out = tensor_cycles(&cx(1, "2*[x0]"), &cy(2, "3*[y1]"), DEFAULT_TERM_CAP).unwrap();
        assert_eq!(out.to_string(), "6*[z[0,1]]");
        assert_eq!(out.degree(), 6);
    }

    #[test]
    fn tensor_is_componentwise() {
        let eta = cx(2, "[x0] + [x0*x1]");
        let g = parse_polynomial_in("y0^2 + y1^2", ys(2)).unwrap();
        let out = tensor_cycles(&eta, &Cycle::single(g.clone()).unwrap(), DEFAULT_TERM_CAP).unwrap();
        let expected = Cycle::from_components(
            out.space(),
            [
                (
                    tensor_divisor(&parse_polynomial_in("x0", xs(2)).unwrap(), &g, DEFAULT_TERM_CAP)
                        .unwrap(),
                    1,
                ),
                (
                    tensor_divisor(&parse_polynomial_in("x0*x1", xs(2)).unwrap(), &g, DEFAULT_TERM_CAP)
                        .unwrap(),
                    1,
                ),
            ],
        )
        .unwrap();
        assert_eq!(out, expected);
        let deg = tensor_cycles(&cx(2, "2*[x0] + [x1]"), &cy(2, "[y0*y1]"), DEFAULT_TERM_CAP)
            .unwrap()
            .degree();
        assert_eq!(deg, 6);
    }

    #[test]
    fn reduced_pairing_of_degree_zero_cycles() {
        // Hand expansion by bilinearity on hyperplanes:
        //   eta (x) xi  = [z00] - [z01] - [z10] + [z11]
        //   eta (x) xi0 = [z00] - [z10]
        //   eta0 (x) xi = [z00] - [z01]
        let eta = cx(2, "[x0] - [x1]");
        let xi = cy(2, "[y0] - [y1]");
        let out = reduced_tensor(
            &eta,
            &xi,
            &Hyperplane::first_coordinate(xs(2)),
            &Hyperplane::first_coordinate(ys(2)),
            DEFAULT_TERM_CAP,
        )
        .unwrap();
        assert_eq!(
            out.to_string(),
            "3*[z[0,0]] + -2*[z[0,1]] + -2*[z[1,0]] + 1*[z[1,1]]"
        );
        assert_eq!(out.degree(), 0);

        let empty = reduced_tensor(
            &Cycle::empty(xs(2)),
            &Cycle::empty(ys(2)),
            &Hyperplane::first_coordinate(xs(2)),
            &Hyperplane::first_coordinate(ys(2)),
            DEFAULT_TERM_CAP,
        )
        .unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn reduced_pairing_degree_formula() {
        let eta = cx(3, "2*[x0^2 - x1*x2] + [x1]");
        let xi = cy(2, "[y0*y1] + 3*[y1]");
        let (d, e) = (eta.degree(), xi.degree());
        let out = reduced_tensor(
            &eta,
            &xi,
            &Hyperplane::first_coordinate(xs(3)),
            &Hyperplane::first_coordinate(ys(2)),
            DEFAULT_TERM_CAP,
        )
        .unwrap();
        assert_eq!(out.degree(), d * e + d + e);
    }

    #[test]
    fn hyperplane_must_be_linear() {
        let q = parse_polynomial_in("x0^2", xs(1)).unwrap();
        assert!(Hyperplane::new(q).is_err());
        assert!(Hyperplane::new(parse_polynomial_in("x0 - x1", xs(2)).unwrap()).is_ok());
    }

    #[test]
    fn stabilize_keeps_tensor_terms() {
        let eta = cx(2, "[x0]");
        let big = eta.stabilize(5).unwrap();
        assert_eq!(big.space(), xs(5));
        assert_eq!(big.degree(), eta.degree());
        let xi = cy(1, "[y0]");
        let small_t = tensor_cycles(&eta, &xi, DEFAULT_TERM_CAP).unwrap();
        let big_t = tensor_cycles(&big, &xi, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(small_t.to_string(), "1*[z[0,0]]");
        assert_eq!(big_t.to_string(), small_t.to_string());
        assert!(eta.stabilize(1).is_err());
    }

    #[test]
    fn product_law_examples() {
        let p = |s: &str, n| parse_polynomial_in(s, xs(n)).unwrap();
        let q = |s: &str, m| parse_polynomial_in(s, ys(m)).unwrap();
        assert!(well_definedness_check(&p("x0", 2), &p("x1", 2), &q("y0*y1", 2), DEFAULT_TERM_CAP).unwrap());
        assert!(well_definedness_check(&p("x0 + x1", 2), &p("x0 + x1", 2), &q("y0^2", 1), DEFAULT_TERM_CAP).unwrap());
        assert!(well_definedness_check(&p("x0^2 - 3*x1*x2", 3), &p("x0", 3), &q("y5*y7", 8), DEFAULT_TERM_CAP).unwrap());
    }

    #[test]
    fn product_law_fails_when_sorted_rows_reorder_columns() {
        // f = x0 + x1 squared picks rows (0,1) from mixed choices (x0*x1 and
        // x1*x0), whose columns differ from the columns of the separate
        // factors. With a two-monomial g the difference survives:
        // (f^2) (x) g - (f (x) g)^2 = 2*(z00*z11 - z01*z10)^2.
        let f = parse_polynomial_in("x0 + x1", xs(2)).unwrap();
        let g = parse_polynomial_in("y0^2 + y1^2", ys(2)).unwrap();
        assert!(!well_definedness_check(&f, &f, &g, DEFAULT_TERM_CAP).unwrap());
        let lhs = tensor_divisor(&f.try_mul(&f).unwrap(), &g, DEFAULT_TERM_CAP).unwrap();
        let rhs = tensor_divisor(&f, &g, DEFAULT_TERM_CAP).unwrap();
        let diff = lhs.try_sub(&rhs.try_mul(&rhs).unwrap()).unwrap();
        assert_eq!(
            diff.to_string(),
            "2*z[0,0]^2*z[1,1]^2 - 4*z[0,0]*z[0,1]*z[1,0]*z[1,1] + 2*z[0,1]^2*z[1,0]^2"
        );
    }
}
