use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::space::{Var, VariableSpace};
use crate::error::{Error, Result};

/// Default bound on the number of distinct terms any single operation may
/// hold while expanding.
pub const DEFAULT_TERM_CAP: usize = 1_000_000;

/// A homogeneous polynomial with exact integer coefficients.
///
/// Terms are kept in a sorted table keyed by canonical monomials with no
/// zero coefficients, so two polynomials are equal exactly when their term
/// tables (and spaces and degrees) are. The zero polynomial still carries a
/// degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    space: VariableSpace,
    degree: u32,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(space: VariableSpace, degree: u32) -> Self {
        Polynomial {
            space,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: VariableSpace, c: impl Into<BigInt>) -> Self {
        Self::monomial(space, Monomial::one(), c)
    }

    pub fn var(space: VariableSpace, var: Var) -> Result<Self> {
        space.check(var)?;
        Ok(Self::monomial(space, Monomial::from_vars(vec![var]), 1))
    }

    pub(crate) fn monomial(space: VariableSpace, m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Polynomial::zero(space, m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial of the given degree from `(indices, coefficient)`
    /// pairs. Indices are canonicalized and like terms are combined.
    pub fn from_terms<I, V, C>(space: VariableSpace, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, C)>,
        V: IntoIterator<Item = Var>,
        C: Into<BigInt>,
    {
        let mut p = Polynomial::zero(space, degree);
        for (vars, c) in terms {
            let m = Monomial::canonicalize(&space, vars)?;
            if m.degree() != degree {
                return Err(Error::Shape(format!(
                    "term of degree {} in a polynomial of degree {degree}",
                    m.degree()
                )));
            }
            p.add_term(m, c.into());
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        add_into(&mut self.terms, m, c);
    }

    pub fn space(&self) -> VariableSpace {
        self.space
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing order of index sequence, i.e. leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_table(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn check_same_space(&self, other: &Polynomial, op: &str) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Shape(format!(
                "cannot {op} polynomials in {} and {}",
                self.space, other.space
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_space(other, "add")?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Shape(format!(
                "cannot add polynomials of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&-other)
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.space, self.degree);
        }
        Polynomial {
            space: self.space,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.mul_capped(other, DEFAULT_TERM_CAP)
    }

    pub fn mul_capped(&self, other: &Polynomial, cap: usize) -> Result<Polynomial> {
        self.check_same_space(other, "multiply")?;
        let mut acc = TermAccumulator::new(cap, "polynomial product");
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add(ma.mul(mb), ca * cb)?;
            }
        }
        Ok(acc.finish(self.space, self.degree + other.degree))
    }

    pub fn pow(&self, k: u32, cap: usize) -> Result<Polynomial> {
        let mut out = Polynomial::constant(self.space, 1);
        for _ in 0..k {
            out = out.mul_capped(self, cap)?;
        }
        Ok(out)
    }

    /// Replaces the `j`-th variable by `images[j]` and expands.
    ///
    /// `self` must live in an `X` or `Y` space with exactly `images.len()`
    /// variables; all images must share one space and one degree `k`. The
    /// result has degree `self.degree() * k`.
    pub fn substitute(&self, images: &[Polynomial], cap: usize) -> Result<Polynomial> {
        if self.space.family() == super::space::Family::Z {
            return Err(Error::Shape("substitution source must be an x or y space".into()));
        }
        if images.len() != self.space.bound() as usize {
            return Err(Error::Shape(format!(
                "substitution into {} needs {} images, got {}",
                self.space,
                self.space.bound(),
                images.len()
            )));
        }
        let Some(first) = images.first() else {
            return Err(Error::Shape("substitution needs at least one image".into()));
        };
        let (target, k) = (first.space, first.degree);
        for (j, im) in images.iter().enumerate() {
            if im.space != target || im.degree != k {
                return Err(Error::Shape(format!(
                    "image {j} lives in {} with degree {}, expected {target} with degree {k}",
                    im.space, im.degree
                )));
            }
        }
        let mut powers: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut acc = TermAccumulator::new(cap, "substitution");
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(target, c.clone());
            for (v, e) in m.exponents() {
                let factor = match powers.get(&(v, e)) {
                    Some(p) => p,
                    None => {
                        let p = images[v.index() as usize].pow(e, cap)?;
                        powers.entry((v, e)).or_insert(p)
                    }
                };
                prod = prod.mul_capped(factor, cap)?;
            }
            for (mm, cc) in prod.terms {
                acc.add(mm, cc)?;
            }
        }
        Ok(acc.finish(target, self.degree * k))
    }

    /// The same terms viewed in a space with larger (or equal) bounds.
    pub fn rehouse(&self, space: VariableSpace) -> Result<Polynomial> {
        if self.space.family() != space.family() {
            return Err(Error::Shape(format!(
                "cannot move a polynomial from {} to {space}",
                self.space
            )));
        }
        for m in self.terms.keys() {
            for &v in m.vars() {
                space.check(v)?;
            }
        }
        Ok(Polynomial {
            space,
            degree: self.degree,
            terms: self.terms.clone(),
        })
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            space: self.space,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical rendering: leading term first, `*` between factors, `^`
    /// for powers, unit coefficients omitted. `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&m.render(&self.space))?;
            } else {
                write!(f, "{abs}*{}", m.render(&self.space))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn add_into<K: Ord>(terms: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Hash-map term collector that enforces the term cap while expanding.
pub(crate) struct TermAccumulator {
    terms: HashMap<Monomial, BigInt>,
    cap: usize,
    context: &'static str,
}

impl TermAccumulator {
    pub(crate) fn new(cap: usize, context: &'static str) -> Self {
        TermAccumulator {
            terms: HashMap::new(),
            cap,
            context,
        }
    }

    pub(crate) fn add(&mut self, m: Monomial, c: BigInt) -> Result<()> {
        use std::collections::hash_map::Entry;
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
                if self.terms.len() > self.cap {
                    return Err(Error::Resource {
                        cap: self.cap,
                        context: self.context,
                    });
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
        Ok(())
    }

    pub(crate) fn finish(self, space: VariableSpace, degree: u32) -> Polynomial {
        Polynomial {
            space,
            degree,
            terms: self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}
