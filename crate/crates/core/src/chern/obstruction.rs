//! Why the pairing does not extend past codimension one.
//!
//! Any extension to codimension-2 cycles would pull `i4` back to
//! `i4(x)1*a + i2^2(x)1*b + i2(x)i2~ + 1(x)i4~` with `a + b = 1`. Testing it on
//! pairs of lines `(L1, L2)` against a rank-2 bundle `E` forces `a = 1`,
//! `b = 0`, and that class is not in the image of the projection pullback.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::formula::{bigraded_ring, ce, chern_ring, chern_tensor_formula, hurewicz_pullback, left_gen, projective_ring, right_gen, C1L};
use super::graded::{rational, Exponents, GradedClass, GradedRing, RingMap};
use super::linalg;
use crate::error::{Error, Result};

/// `l1 = c1(L1)`, `l2 = c1(L2)`, `e1 = c1(E)`, `e2 = c2(E)`.
pub fn test_ring() -> Arc<GradedRing> {
    GradedRing::new([("l1", 1), ("l2", 1), ("e1", 1), ("e2", 2)], None).expect("distinct names")
}

/// One coefficient comparison: `lhs = constant + a*coef_a + b*coef_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub monomial: String,
    pub lhs: BigRational,
    pub constant: BigRational,
    pub coef_a: BigRational,
    pub coef_b: BigRational,
}

fn fmt_rhs(e: &Equation) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    if !e.constant.is_zero() {
        parts.push((e.constant.is_negative(), e.constant.abs().to_string()));
    }
    for (c, name) in [(&e.coef_a, "a"), (&e.coef_b, "b")] {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let s = if mag.is_one() { name.to_string() } else { format!("{mag}{name}") };
        parts.push((c.is_negative(), s));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (neg, s)) in parts.into_iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&s);
    }
    out
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: lhs {} = rhs {}", self.monomial, self.lhs, fmt_rhs(self))
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Pullback of `i4` through the tensor maps and `c + c`.
    pub side_one: GradedClass,
    /// The part of the other composition not involving `a` or `b`.
    pub side_two_fixed: GradedClass,
    /// What multiplies `a` (the image of `i4(x)1`).
    pub side_two_a: GradedClass,
    /// What multiplies `b` (the image of `i2^2(x)1`).
    pub side_two_b: GradedClass,
    pub equations: Vec<Equation>,
    pub rank: usize,
    pub a: BigRational,
    pub b: BigRational,
}

/// Sends `c_j(E) -> e_j` and `c1(L) -> line`.
fn bundle_map(target: &Arc<GradedRing>, line: &str) -> Result<RingMap> {
    RingMap::new(
        &chern_ring(2),
        target,
        vec![
            (&ce(1), GradedClass::generator(target, "e1")?),
            (&ce(2), GradedClass::generator(target, "e2")?),
            (C1L, GradedClass::generator(target, line)?),
        ],
    )
}

/// `phi*(i_{2k}) = w^k(x)1 + 1(x)w^k`, read in the test ring with the two
/// projective factors sent to `l1` and `l2`.
fn phi_pullback(target: &Arc<GradedRing>, k: u32) -> Result<GradedClass> {
    let w = hurewicz_pullback(k, 2)?;
    let mut out = GradedClass::zero(target);
    for line in ["l1", "l2"] {
        let h = RingMap::new(&projective_ring(2), target, vec![("w", GradedClass::generator(target, line)?)])?;
        out = out.add(&h.apply(&w)?)?;
    }
    Ok(out)
}

/// Equates both compositions coefficient by coefficient and solves for
/// `(a, b)`. An inconsistent or underdetermined system is an invariant
/// violation.
pub fn obstruction_solve() -> Result<Solution> {
    let ring = test_ring();
    let c2 = chern_tensor_formula(2, 2)?;
    let side_one = bundle_map(&ring, "l1")?.apply(&c2)?.add(&bundle_map(&ring, "l2")?.apply(&c2)?)?;

    let source = bigraded_ring(2, 2);
    let rho_prime = RingMap::new(
        &source,
        &ring,
        vec![
            (&left_gen(1), phi_pullback(&ring, 1)?),
            (&left_gen(2), phi_pullback(&ring, 2)?),
            (&right_gen(1), GradedClass::generator(&ring, "e1")?),
            (&right_gen(2), GradedClass::generator(&ring, "e2")?),
        ],
    )?;
    let one = rational(1);
    let i2 = left_gen(1);
    let i4 = left_gen(2);
    let j2 = right_gen(1);
    let j4 = right_gen(2);
    // `tau` adds a second `1(x)i4~` next to the one already in the ansatz.
    let fixed = GradedClass::monomial(&source, &[(&i2, 1), (&j2, 1)], one.clone())?
        .add(&GradedClass::monomial(&source, &[(&j4, 1)], rational(2))?)?;
    let side_two_fixed = rho_prime.apply(&fixed)?;
    let side_two_a = rho_prime.apply(&GradedClass::monomial(&source, &[(&i4, 1)], one.clone())?)?;
    let side_two_b = rho_prime.apply(&GradedClass::monomial(&source, &[(&i2, 2)], one)?)?;

    let all = GradedClass::from_terms(&ring, ring.monomials_of_weight(2).into_iter().map(|e| (e, rational(1))))?;
    let mut equations = Vec::new();
    for (exps, _) in all.sorted_terms() {
        let exps = exps.clone();
        let eq = Equation {
            monomial: ring_monomial(&ring, &exps),
            lhs: side_one.coefficient_of(&exps),
            constant: side_two_fixed.coefficient_of(&exps),
            coef_a: side_two_a.coefficient_of(&exps),
            coef_b: side_two_b.coefficient_of(&exps),
        };
        if [&eq.lhs, &eq.constant, &eq.coef_a, &eq.coef_b].iter().any(|c| !c.is_zero()) {
            equations.push(eq);
        }
    }
    let rows = equations
        .iter()
        .map(|e| vec![e.coef_a.clone(), e.coef_b.clone(), &e.lhs - &e.constant])
        .collect::<Vec<_>>();
    let rank = linalg::rank(rows.iter().map(|r| r[..2].to_vec()).collect());
    let (reduced, pivots) = linalg::rref(rows, 3);
    if pivots.contains(&2) {
        return Err(Error::Invariant("the coefficient equations are inconsistent".into()));
    }
    if rank != 2 {
        return Err(Error::Invariant(format!("the coefficient equations have rank {rank}, not 2")));
    }
    Ok(Solution {
        side_one,
        side_two_fixed,
        side_two_a,
        side_two_b,
        equations,
        rank,
        a: reduced[0][2].clone(),
        b: reduced[1][2].clone(),
    })
}

fn ring_monomial(ring: &Arc<GradedRing>, exps: &[u32]) -> String {
    GradedClass::from_terms(ring, [(exps.to_vec(), rational(1))])
        .expect("weight within range")
        .to_string()
}

#[derive(Clone, Debug)]
pub struct Membership {
    /// Weight-2 basis of the image of the projection pullback.
    pub image_basis: Vec<GradedClass>,
    pub target: GradedClass,
    pub image_rank: usize,
    pub augmented_rank: usize,
    pub is_member: bool,
    /// The target minus its best approximation from the image; zero exactly
    /// for members.
    pub residue: GradedClass,
}

/// Tests `a*i4(x)1 + b*i2^2(x)1 + i2(x)i2~ + 1(x)i4~` for membership in the
/// image of `(pi1 x id)*`, where `pi1` projects `prod_{k<=n} K(Z,2k)` onto
/// `K(Z,2)`.
pub fn obstruction_membership(n: usize, a: &BigRational, b: &BigRational) -> Result<Membership> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least two left generators, got {n}")));
    }
    let ring = bigraded_ring(n, 2);
    let source = bigraded_ring(1, 2);
    let names = [left_gen(1), right_gen(1), right_gen(2)];
    let proj = RingMap::new(
        &source,
        &ring,
        names.iter().map(|g| Ok((g.as_str(), GradedClass::generator(&ring, g)?))).collect::<Result<_>>()?,
    )?;
    let image_basis = source
        .monomials_of_weight(2)
        .into_iter()
        .map(|e| proj.apply(&GradedClass::from_terms(&source, [(e, rational(1))])?))
        .collect::<Result<Vec<_>>>()?;

    let i2 = left_gen(1);
    let target = GradedClass::monomial(&ring, &[(&left_gen(2), 1)], a.clone())?
        .add(&GradedClass::monomial(&ring, &[(&i2, 2)], b.clone())?)?
        .add(&GradedClass::monomial(&ring, &[(&i2, 1), (&right_gen(1), 1)], rational(1))?)?
        .add(&GradedClass::monomial(&ring, &[(&right_gen(2), 1)], rational(1))?)?;

    let basis: Vec<Exponents> = ring.monomials_of_weight(2);
    let coords = |c: &GradedClass| basis.iter().map(|e| c.coefficient_of(e)).collect::<Vec<_>>();
    let rows: Vec<Vec<BigRational>> = image_basis.iter().map(coords).collect();
    let width = basis.len();
    let (reduced, pivots) = linalg::rref(rows.clone(), width);
    let image_rank = pivots.len();
    let mut augmented = rows;
    augmented.push(coords(&target));
    let augmented_rank = linalg::rank(augmented);
    let left = linalg::residue(&reduced, &pivots, &coords(&target));
    let residue = GradedClass::from_terms(&ring, basis.into_iter().zip(left))?;
    let is_member = augmented_rank == image_rank;
    if is_member != residue.is_zero() {
        return Err(Error::Invariant("rank test and residue disagree".into()));
    }
    Ok(Membership {
        image_basis,
        target,
        image_rank,
        augmented_rank,
        is_member,
        residue,
    })
}
