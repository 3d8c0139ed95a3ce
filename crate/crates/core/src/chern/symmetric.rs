//! Rewriting symmetric polynomials in the elementary symmetric polynomials.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use super::graded::{Exponents, GradedClass, GradedRing, RingMap};
use crate::error::{Error, Result};

/// `t1, ..., tr`, all of weight 1, untruncated.
pub fn root_ring(r: usize) -> Arc<GradedRing> {
    GradedRing::new((1..=r).map(|k| (format!("t{k}"), 1)), None).expect("distinct names")
}

/// `e1, ..., er` with `weight(ej) = j`.
pub fn elementary_ring(r: usize) -> Arc<GradedRing> {
    GradedRing::new((1..=r).map(|j| (format!("e{j}"), j as u32)), None).expect("distinct names")
}

/// `e_j(t1, ..., tr)` as a class in `ring`, whose generators are the roots.
pub fn elementary(ring: &Arc<GradedRing>, j: usize) -> GradedClass {
    let r = ring.generators().len();
    let mut terms = Vec::new();
    let mut pick = vec![0u32; r];
    fn subsets(k: usize, left: usize, pick: &mut Vec<u32>, out: &mut Vec<(Exponents, BigRational)>) {
        if left == 0 {
            out.push((pick.clone(), BigRational::one()));
            return;
        }
        if k == pick.len() || pick.len() - k < left {
            return;
        }
        pick[k] = 1;
        subsets(k + 1, left - 1, pick, out);
        pick[k] = 0;
        subsets(k + 1, left, pick, out);
    }
    subsets(0, j, &mut pick, &mut terms);
    GradedClass::from_terms(ring, terms).expect("root ring is untruncated")
}

fn is_symmetric(p: &GradedClass, r: usize) -> bool {
    (0..r.saturating_sub(1)).all(|k| {
        let swapped = GradedClass::from_terms(
            p.ring(),
            p.terms().map(|(e, c)| {
                let mut e = e.clone();
                e.swap(k, k + 1);
                (e, c.clone())
            }),
        )
        .expect("swapping exponents keeps weights");
        &swapped == p
    })
}

/// Substitutes `e_j -> e_j(t)` back into a polynomial in the elementary
/// generators.
pub fn expand_elementary(q: &GradedClass, roots: &Arc<GradedRing>) -> Result<GradedClass> {
    let r = roots.generators().len();
    let names: Vec<String> = (1..=r).map(|j| format!("e{j}")).collect();
    let map = RingMap::new(
        q.ring(),
        roots,
        names
            .iter()
            .enumerate()
            .map(|(k, n)| (n.as_str(), elementary(roots, k + 1)))
            .collect(),
    )?;
    map.apply(q)
}

/// Writes a symmetric polynomial in `t1..tr` as a polynomial in `e1..er`.
///
/// Repeatedly takes the graded-lex leading term `c * t^a` (with
/// `a1 >= a2 >= ... >= ar` for symmetric input) and subtracts
/// `c * e1^(a1-a2) * e2^(a2-a3) * ... * er^ar`, which has the same leading
/// term.
pub fn reduce_to_elementary(p: &GradedClass) -> Result<GradedClass> {
    let roots = p.ring();
    let r = roots.generators().len();
    if roots.generators().iter().any(|g| g.weight != 1) {
        return Err(Error::Domain("symmetric reduction needs weight-1 roots".into()));
    }
    if !is_symmetric(p, r) {
        return Err(Error::Domain(format!("{p} is not symmetric in its variables")));
    }
    let e_ring = elementary_ring(r);
    let e_classes: Vec<GradedClass> = (1..=r).map(|j| elementary(roots, j)).collect();
    let mut rest = p.clone();
    let mut out = GradedClass::zero(&e_ring);
    while let Some((lead, c)) = rest
        .terms()
        .max_by(|(a, _), (b, _)| (roots.weight(a), *a).cmp(&(roots.weight(b), *b)))
        .map(|(e, c)| (e.clone(), c.clone()))
    {
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invariant(format!(
                "leading exponent {lead:?} of a symmetric residue is not a partition"
            )));
        }
        let steps: Vec<u32> = (0..r)
            .map(|k| lead[k] - lead.get(k + 1).copied().unwrap_or(0))
            .collect();
        out = out.add(&GradedClass::from_terms(&e_ring, [(steps.clone(), c.clone())])?)?;
        let mut sub = GradedClass::constant(roots, c);
        for (k, &s) in steps.iter().enumerate() {
            if s > 0 {
                sub = sub.mul(&e_classes[k].pow(s)?)?;
            }
        }
        rest = rest.sub(&sub)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::graded::rational;

    fn t(ring: &Arc<GradedRing>, k: usize, e: u32) -> GradedClass {
        GradedClass::monomial(ring, &[(&format!("t{k}"), e)], rational(1)).unwrap()
    }

    #[test]
    fn sum_of_roots() {
        let r = root_ring(2);
        let p = t(&r, 1, 1).add(&t(&r, 2, 1)).unwrap();
        assert_eq!(reduce_to_elementary(&p).unwrap().to_string(), "e1");
    }

    #[test]
    fn power_sum_two() {
        let r = root_ring(2);
        let p = t(&r, 1, 2).add(&t(&r, 2, 2)).unwrap();
        let q = reduce_to_elementary(&p).unwrap();
        let e = elementary_ring(2);
        let expected = GradedClass::monomial(&e, &[("e1", 2)], rational(1))
            .unwrap()
            .sub(&GradedClass::monomial(&e, &[("e2", 1)], rational(2)).unwrap())
            .unwrap();
        assert_eq!(q, expected);
        assert_eq!(expand_elementary(&q, &r).unwrap(), p);
    }

    #[test]
    fn product_of_three_roots() {
        let r = root_ring(3);
        let p = t(&r, 1, 1).mul(&t(&r, 2, 1)).unwrap().mul(&t(&r, 3, 1)).unwrap();
        assert_eq!(reduce_to_elementary(&p).unwrap().to_string(), "e3");
    }

    #[test]
    fn constants_and_zero() {
        let r = root_ring(2);
        let c = GradedClass::constant(&r, rational(5));
        assert_eq!(reduce_to_elementary(&c).unwrap().to_string(), "5");
        assert!(reduce_to_elementary(&GradedClass::zero(&r)).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_symmetric() {
        let r = root_ring(2);
        let p = t(&r, 1, 2).add(&t(&r, 2, 1)).unwrap();
        assert!(matches!(reduce_to_elementary(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn elementary_counts() {
        let r = root_ring(4);
        assert_eq!(elementary(&r, 2).terms().count(), 6);
        assert_eq!(elementary(&r, 4).terms().count(), 1);
        assert_eq!(elementary(&r, 0).terms().count(), 1);
    }
}
