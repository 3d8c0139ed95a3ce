use std::cmp::Ordering;

use super::space::{Var, VariableSpace};
use crate::error::{Error, Result};

/// A monomial stored as its non-decreasing sequence of variable indices.
///
/// `x0*x2^2` is `[0, 2, 2]`. The length is the degree; the empty sequence is
/// the constant monomial. Comparing two monomials of the same degree
/// compares the sorted sequences lexicographically, which is the order of
/// the ordered monomial basis the pairing is defined on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Var>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Sorts `vars` into canonical form after checking each against `space`.
    pub fn canonicalize(space: &VariableSpace, vars: impl IntoIterator<Item = Var>) -> Result<Self> {
        let vars: Vec<Var> = vars.into_iter().collect();
        for &v in &vars {
            space.check(v)?;
        }
        Ok(Self::from_vars(vars))
    }

    /// Canonicalizes without bounds checking.
    pub(crate) fn from_vars(mut vars: Vec<Var>) -> Self {
        vars.sort_unstable();
        Monomial(vars)
    }

    pub fn degree(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    /// Exponent-vector view: distinct variables in increasing order with
    /// their multiplicities.
    pub fn exponents(&self) -> Vec<(Var, u32)> {
        let mut out: Vec<(Var, u32)> = Vec::new();
        for &v in &self.0 {
            match out.last_mut() {
                Some((last, e)) if *last == v => *e += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    /// Product of two monomials; merges the sorted index sequences.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn in_space(&self, space: &VariableSpace) -> bool {
        self.0.iter().all(|&v| space.contains(v))
    }

    /// Renders as `x0^2*x1`, or `1` for the constant monomial.
    pub fn render(&self, space: &VariableSpace) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.exponents()
            .into_iter()
            .map(|(v, e)| {
                let name = space.var_name(v);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Lexicographic comparison of two monomials of the same degree.
pub fn lex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.degree() != b.degree() {
        return Err(Error::Shape(format!(
            "cannot compare monomials of degree {} and {}",
            a.degree(),
            b.degree()
        )));
    }
    Ok(a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x3() -> VariableSpace {
        VariableSpace::x(3).unwrap()
    }

    fn xs(idx: &[u32]) -> Vec<Var> {
        idx.iter().map(|&i| Var::plain(i)).collect()
    }

    #[test]
    fn canonicalize_sorts() {
        let m = Monomial::canonicalize(&x3(), xs(&[2, 0, 2])).unwrap();
        assert_eq!(m.vars(), &xs(&[0, 2, 2])[..]);
        assert_eq!(m.render(&x3()), "x0*x2^2");
        let single = Monomial::canonicalize(&x3(), xs(&[1])).unwrap();
        assert_eq!(single.render(&x3()), "x1");
    }

    #[test]
    fn canonicalize_z_pairs_row_major() {
        let z = VariableSpace::z(2, 2).unwrap();
        let m = Monomial::canonicalize(&z, [Var::z(1, 0), Var::z(0, 1)]).unwrap();
        assert_eq!(m.vars(), &[Var::z(0, 1), Var::z(1, 0)]);
        assert_eq!(m.render(&z), "z[0,1]*z[1,0]");
    }

    #[test]
    fn canonicalize_rejects_out_of_bounds() {
        let err = Monomial::canonicalize(&x3(), xs(&[0, 3])).unwrap_err();
        match err {
            Error::Bounds { space, index } => {
                assert_eq!(space, x3());
                assert_eq!(index, "x3");
            }
            other => panic!("unexpected {other:?}"),
        }
        let z = VariableSpace::z(2, 3).unwrap();
        assert!(Monomial::canonicalize(&z, [Var::z(0, 3)]).is_err());
        assert!(Monomial::canonicalize(&z, [Var::z(1, 2)]).is_ok());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let m = Monomial::canonicalize(&x3(), xs(&[2, 1, 0, 1])).unwrap();
        let again = Monomial::canonicalize(&x3(), m.vars().iter().copied()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn lex_order() {
        let s = x3();
        let m = |idx: &[u32]| Monomial::canonicalize(&s, xs(idx)).unwrap();
        assert_eq!(lex_compare(&m(&[0, 1]), &m(&[0, 2])).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&m(&[0, 0]), &m(&[0, 1])).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&m(&[1, 2]), &m(&[2, 1])).unwrap(), Ordering::Equal);
        assert!(lex_compare(&m(&[0]), &m(&[0, 1])).is_err());

        let z = VariableSpace::z(2, 2).unwrap();
        let a = Monomial::canonicalize(&z, [Var::z(0, 1)]).unwrap();
        let b = Monomial::canonicalize(&z, [Var::z(1, 0)]).unwrap();
        assert_eq!(lex_compare(&a, &b).unwrap(), Ordering::Less);
    }

    #[test]
    fn exponent_view_and_merge() {
        let s = x3();
        let a = Monomial::canonicalize(&s, xs(&[0, 2, 2])).unwrap();
        let b = Monomial::canonicalize(&s, xs(&[1, 2])).unwrap();
        assert_eq!(a.exponents(), vec![(Var::plain(0), 1), (Var::plain(2), 2)]);
        assert_eq!(a.mul(&b).vars(), &xs(&[0, 1, 2, 2, 2])[..]);
        assert_eq!(Monomial::one().mul(&b), b);
        assert_eq!(Monomial::one().render(&s), "1");
    }
}
