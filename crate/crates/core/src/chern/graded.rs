use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A named generator of a graded ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
    /// Tensor factor the generator belongs to (0 for single-factor rings).
    pub factor: usize,
}

/// Polynomial ring over the rationals on weighted generators, optionally
/// truncated above a top weight. A ring may be a tensor product of several
/// factors; that only changes ordering and rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    gens: Vec<Generator>,
    factors: usize,
    top: Option<u32>,
}

pub type Exponents = Vec<u32>;

impl GradedRing {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, u32)>, top: Option<u32>) -> Result<Arc<Self>> {
        Self::tensor([gens.into_iter().map(|(n, w)| (n.into(), w)).collect::<Vec<_>>()], top)
    }

    /// Tensor product of the given generator lists, in factor order.
    pub fn tensor<const N: usize>(factors: [Vec<(String, u32)>; N], top: Option<u32>) -> Result<Arc<Self>> {
        let mut gens: Vec<Generator> = Vec::new();
        for (factor, list) in factors.into_iter().enumerate() {
            for (name, weight) in list {
                if weight == 0 {
                    return Err(Error::Domain(format!("generator {name} has weight 0")));
                }
                if gens.iter().any(|g| g.name == name) {
                    return Err(Error::Domain(format!("duplicate generator {name}")));
                }
                gens.push(Generator { name, weight, factor });
            }
        }
        Ok(Arc::new(GradedRing { gens, factors: N, top }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn top_weight(&self) -> Option<u32> {
        self.top
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::Domain(format!("no generator named {name}")))
    }

    pub fn weight(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.gens).map(|(e, g)| e * g.weight).sum()
    }

    fn factor_weights(&self, exps: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.factors];
        for (e, g) in exps.iter().zip(&self.gens) {
            out[g.factor] += e * g.weight;
        }
        out
    }

    /// Sort key for rendering, largest first: total weight, then weights of
    /// the tensor factors in order, then within each factor the exponents
    /// read from the last generator to the first.
    fn order_key(&self, exps: &[u32]) -> (u32, Vec<u32>, Vec<u32>) {
        let mut tail = Vec::with_capacity(exps.len());
        for f in 0..self.factors {
            let idx: Vec<usize> = (0..self.gens.len()).filter(|&k| self.gens[k].factor == f).collect();
            tail.extend(idx.iter().rev().map(|&k| exps[k]));
        }
        (self.weight(exps), self.factor_weights(exps), tail)
    }

    /// All exponent vectors of total weight `w`.
    pub fn monomials_of_weight(&self, w: u32) -> Vec<Exponents> {
        fn go(gens: &[Generator], k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
            if k == gens.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let wk = gens[k].weight;
            for e in 0..=left / wk {
                cur.push(e);
                go(gens, k + 1, left - e * wk, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(&self.gens, 0, w, &mut Vec::new(), &mut out);
        out
    }

    fn render_monomial(&self, exps: &[u32]) -> String {
        let factor = |f: usize| -> String {
            let parts: Vec<String> = exps
                .iter()
                .zip(&self.gens)
                .filter(|(&e, g)| e > 0 && g.factor == f)
                .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        (0..self.factors).map(factor).collect::<Vec<_>>().join("(x)")
    }
}

/// An element of a [`GradedRing`] with exact rational coefficients.
#[derive(Clone, Debug)]
pub struct GradedClass {
    ring: Arc<GradedRing>,
    terms: BTreeMap<Exponents, BigRational>,
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for GradedClass {}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GradedClass {
    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        GradedClass {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<GradedRing>) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<GradedRing>, c: BigRational) -> Self {
        let mut out = Self::zero(ring);
        out.add_term(vec![0; ring.gens.len()], c);
        out
    }

    pub fn generator(ring: &Arc<GradedRing>, name: &str) -> Result<Self> {
        Self::monomial(ring, &[(name, 1)], BigRational::one())
    }

    /// `c * prod name^exp`; checked against the top weight.
    pub fn monomial(ring: &Arc<GradedRing>, factors: &[(&str, u32)], c: BigRational) -> Result<Self> {
        let mut exps = vec![0; ring.gens.len()];
        for &(name, e) in factors {
            exps[ring.index_of(name)?] += e;
        }
        let mut out = Self::zero(ring);
        out.check_weight(&exps)?;
        out.add_term(exps, c);
        Ok(out)
    }

    /// Builds a class from raw exponent vectors (one entry per generator).
    pub fn from_terms(
        ring: &Arc<GradedRing>,
        terms: impl IntoIterator<Item = (Exponents, BigRational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ring);
        for (exps, c) in terms {
            if exps.len() != ring.gens.len() {
                return Err(Error::Shape(format!(
                    "exponent vector of length {} for a ring with {} generators",
                    exps.len(),
                    ring.gens.len()
                )));
            }
            out.check_weight(&exps)?;
            out.add_term(exps, c);
        }
        Ok(out)
    }

    fn check_weight(&self, exps: &[u32]) -> Result<()> {
        if let Some(top) = self.ring.top {
            let w = self.ring.weight(exps);
            if w > top {
                return Err(Error::Domain(format!(
                    "class {} of weight {w} lies above the truncation weight {top}",
                    self.ring.render_monomial(exps)
                )));
            }
        }
        Ok(())
    }

    fn add_term(&mut self, exps: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `prod name^exp`.
    pub fn coefficient(&self, factors: &[(&str, u32)]) -> Result<BigRational> {
        let mut exps = vec![0; self.ring.gens.len()];
        for &(name, e) in factors {
            exps[self.ring.index_of(name)?] += e;
        }
        Ok(self.coefficient_of(&exps))
    }

    fn same_ring(&self, other: &GradedClass) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Shape("graded classes live in different rings".into()))
        }
    }

    pub fn add(&self, other: &GradedClass) -> Result<GradedClass> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedClass) -> Result<GradedClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedClass {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, k: &BigRational) -> GradedClass {
        let mut out = Self::zero(&self.ring);
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        }
        out
    }

    /// Product; fails if a nonzero term lands above the truncation weight.
    pub fn mul(&self, other: &GradedClass) -> Result<GradedClass> {
        self.same_ring(other)?;
        let mut acc: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        let mut out = Self::zero(&self.ring);
        for (e, c) in acc {
            if !c.is_zero() {
                out.check_weight(&e)?;
                out.terms.insert(e, c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<GradedClass> {
        let mut out = Self::one(&self.ring);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// The homogeneous component of weight `w`.
    pub fn weight_part(&self, w: u32) -> GradedClass {
        GradedClass {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| self.ring.weight(e) == w)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous_of(&self, w: u32) -> bool {
        self.terms.keys().all(|e| self.ring.weight(e) == w)
    }

    /// Terms in rendering order, leading term first.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &BigRational)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by_cached_key(|(e, _)| Reverse(self.ring.order_key(e)));
        out
    }

    pub fn render_monomial(&self, exps: &[u32]) -> String {
        self.ring.render_monomial(exps)
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let constant = e.iter().all(|&x| x == 0);
            let mono = self.ring.render_monomial(e);
            if constant && self.ring.factors == 1 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Ring homomorphism given by images of generators, extended
/// multiplicatively. Every image must be homogeneous of its generator's
/// weight.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    images: Vec<GradedClass>,
}

impl RingMap {
    pub fn new(
        source: &Arc<GradedRing>,
        target: &Arc<GradedRing>,
        assignments: Vec<(&str, GradedClass)>,
    ) -> Result<Self> {
        let mut images: Vec<Option<GradedClass>> = vec![None; source.gens.len()];
        for (name, image) in assignments {
            let k = source.index_of(name)?;
            if !(Arc::ptr_eq(image.ring(), target) || **image.ring() == **target) {
                return Err(Error::Shape(format!("image of {name} is not in the target ring")));
            }
            let w = source.gens[k].weight;
            if !image.is_homogeneous_of(w) {
                return Err(Error::Domain(format!(
                    "image of {name} ({image}) is not homogeneous of weight {w}"
                )));
            }
            images[k] = Some(image);
        }
        let images = images
            .into_iter()
            .zip(&source.gens)
            .map(|(im, g)| im.ok_or_else(|| Error::Domain(format!("no image given for {}", g.name))))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
        })
    }

    pub fn apply(&self, class: &GradedClass) -> Result<GradedClass> {
        if !(Arc::ptr_eq(class.ring(), &self.source) || **class.ring() == *self.source) {
            return Err(Error::Shape("class is not in the source ring of the map".into()));
        }
        let mut powers: HashMap<(usize, u32), GradedClass> = HashMap::new();
        let mut out = GradedClass::zero(&self.target);
        for (exps, c) in &class.terms {
            let mut term = GradedClass::constant(&self.target, c.clone());
            for (k, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let power = match powers.entry((k, e)) {
                    std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::hash_map::Entry::Vacant(v) => v.insert(self.images[k].pow(e)?),
                };
                term = term.mul(power)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chern2() -> Arc<GradedRing> {
        GradedRing::new([("c1(E)", 1), ("c2(E)", 2), ("c1(L)", 1)], None).unwrap()
    }

    #[test]
    fn render_order_puts_line_powers_first() {
        let r = chern2();
        let l = GradedClass::generator(&r, "c1(L)").unwrap();
        let e1 = GradedClass::generator(&r, "c1(E)").unwrap();
        let e2 = GradedClass::generator(&r, "c2(E)").unwrap();
        let sum = e2.add(&e1.mul(&l).unwrap()).unwrap().add(&l.pow(2).unwrap()).unwrap();
        assert_eq!(sum.to_string(), "c1(L)^2 + c1(E)*c1(L) + c2(E)");
        let scaled = sum.scale(&BigRational::new(BigInt::from(-3), BigInt::from(2)));
        assert_eq!(scaled.to_string(), "-3/2*c1(L)^2 - 3/2*c1(E)*c1(L) - 3/2*c2(E)");
    }

    #[test]
    fn tensor_rendering() {
        let r = GradedRing::tensor(
            [
                vec![("i2".into(), 1), ("i4".into(), 2)],
                vec![("i2~".into(), 1), ("i4~".into(), 2)],
            ],
            None,
        )
        .unwrap();
        let t = GradedClass::monomial(&r, &[("i4", 1)], rational(1))
            .unwrap()
            .add(&GradedClass::monomial(&r, &[("i2", 1), ("i2~", 1)], rational(1)).unwrap())
            .unwrap()
            .add(&GradedClass::monomial(&r, &[("i4~", 1)], rational(1)).unwrap())
            .unwrap()
            .add(&GradedClass::monomial(&r, &[("i2", 2)], rational(2)).unwrap())
            .unwrap();
        assert_eq!(t.to_string(), "i4(x)1 + 2*i2^2(x)1 + i2(x)i2~ + 1(x)i4~");
        assert_eq!(GradedClass::one(&r).to_string(), "1(x)1");
    }

    #[test]
    fn truncation_is_reported() {
        let r = GradedRing::new([("w", 1)], Some(2)).unwrap();
        let w = GradedClass::generator(&r, "w").unwrap();
        assert!(w.pow(2).is_ok());
        assert!(matches!(w.pow(3), Err(Error::Domain(_))));
    }

    #[test]
    fn weight_enumeration() {
        let r = GradedRing::new([("a", 1), ("b", 2)], None).unwrap();
        assert_eq!(r.monomials_of_weight(2), vec![vec![0, 1], vec![2, 0]]);
        assert_eq!(r.monomials_of_weight(0), vec![vec![0, 0]]);
    }

    #[test]
    fn ring_map_is_multiplicative() {
        let src = GradedRing::new([("s", 1), ("q", 2)], None).unwrap();
        let dst = GradedRing::new([("u", 1), ("v", 1)], None).unwrap();
        let u = GradedClass::generator(&dst, "u").unwrap();
        let v = GradedClass::generator(&dst, "v").unwrap();
        let map = RingMap::new(
            &src,
            &dst,
            vec![("s", u.add(&v).unwrap()), ("q", u.mul(&v).unwrap())],
        )
        .unwrap();
        let s = GradedClass::generator(&src, "s").unwrap();
        let q = GradedClass::generator(&src, "q").unwrap();
        let x = s.pow(2).unwrap().sub(&q.scale(&rational(2))).unwrap();
        let expected = u.pow(2).unwrap().add(&v.pow(2).unwrap()).unwrap();
        assert_eq!(map.apply(&x).unwrap(), expected);
    }

    #[test]
    fn ring_map_rejects_weight_change_and_missing_images() {
        let src = GradedRing::new([("s", 1), ("q", 2)], None).unwrap();
        let dst = GradedRing::new([("u", 1)], None).unwrap();
        let u = GradedClass::generator(&dst, "u").unwrap();
        assert!(RingMap::new(&src, &dst, vec![("s", u.clone()), ("q", u.clone())]).is_err());
        assert!(RingMap::new(&src, &dst, vec![("s", u)]).is_err());
    }
}
