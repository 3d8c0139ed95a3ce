//! Chern classes of `E (x) L` for a rank-`r` bundle `E` and a line bundle
//! `L`, and the induced map on the cohomology generators.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::graded::{rational, GradedClass, GradedRing, RingMap};
use super::symmetric::{elementary_ring, expand_elementary, reduce_to_elementary, root_ring};
use crate::error::{Error, Result};

fn binom(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

pub fn ce(j: usize) -> String {
    format!("c{j}(E)")
}

pub const C1L: &str = "c1(L)";

/// `c1(E), ..., cr(E), c1(L)`.
pub fn chern_ring(r: usize) -> Arc<GradedRing> {
    let mut gens: Vec<(String, u32)> = (1..=r).map(|j| (ce(j), j as u32)).collect();
    gens.push((C1L.to_string(), 1));
    GradedRing::new(gens, None).expect("distinct names")
}

fn check_index(r: usize, i: usize) -> Result<()> {
    if i == 0 || i > r {
        return Err(Error::Domain(format!("index {i} outside 1..={r}")));
    }
    Ok(())
}

/// `c_i(E (x) L) = sum_{j=0}^{i} C(r-j, i-j) c_j(E) c1(L)^(i-j)`.
pub fn chern_tensor_formula(r: usize, i: usize) -> Result<GradedClass> {
    check_index(r, i)?;
    let ring = chern_ring(r);
    let mut out = GradedClass::zero(&ring);
    for j in 0..=i {
        let c = binom(r - j, i - j);
        let cj = if j == 0 { Vec::new() } else { vec![(ce(j), 1)] };
        let mut factors: Vec<(&str, u32)> = cj.iter().map(|(n, e)| (n.as_str(), *e)).collect();
        if i > j {
            factors.push((C1L, (i - j) as u32));
        }
        out = out.add(&GradedClass::monomial(&ring, &factors, c)?)?;
    }
    Ok(out)
}

/// The same class computed from Chern roots: expand `prod_k (1 + t_k + u)`,
/// keep weight `i`, reduce each `u`-power coefficient to elementary
/// symmetric polynomials and rename `e_j -> c_j(E)`, `u -> c1(L)`.
pub fn chern_tensor_oracle(r: usize, i: usize) -> Result<GradedClass> {
    check_index(r, i)?;
    let mut gens: Vec<(String, u32)> = (1..=r).map(|k| (format!("t{k}"), 1)).collect();
    gens.push(("u".to_string(), 1));
    let full = GradedRing::new(gens, None)?;
    let one = GradedClass::one(&full);
    let u = GradedClass::generator(&full, "u")?;
    let mut total = one.clone();
    for k in 1..=r {
        let factor = one.add(&GradedClass::generator(&full, &format!("t{k}"))?)?.add(&u)?;
        total = total.mul(&factor)?;
    }
    let part = total.weight_part(i as u32);

    let roots = root_ring(r);
    let target = chern_ring(r);
    let e_names: Vec<String> = (1..=r).map(|j| format!("e{j}")).collect();
    let mut renames = Vec::with_capacity(r);
    for (j, name) in e_names.iter().enumerate() {
        renames.push((name.as_str(), GradedClass::generator(&target, &ce(j + 1))?));
    }
    let rename = RingMap::new(&elementary_ring(r), &target, renames)?;
    let line = GradedClass::generator(&target, C1L)?;

    let mut out = GradedClass::zero(&target);
    for l in 0..=i {
        let coeff = GradedClass::from_terms(
            &roots,
            part.terms()
                .filter(|(e, _)| e[r] as usize == l)
                .map(|(e, c)| (e[..r].to_vec(), c.clone())),
        )?;
        if coeff.is_zero() {
            continue;
        }
        let reduced = reduce_to_elementary(&coeff)?;
        if expand_elementary(&reduced, &roots)? != coeff {
            return Err(Error::Invariant(format!(
                "elementary rewrite of {coeff} does not expand back"
            )));
        }
        out = out.add(&rename.apply(&reduced)?.mul(&line.pow(l as u32)?)?)?;
    }
    Ok(out)
}

pub fn left_gen(j: usize) -> String {
    format!("i{}", 2 * j)
}

pub fn right_gen(l: usize) -> String {
    format!("i{}~", 2 * l)
}

/// `Q[i2, ..., i_{2p}] (x) Q[i2~, ..., i_{2k}~]`.
pub fn bigraded_ring(p: usize, k: usize) -> Arc<GradedRing> {
    GradedRing::tensor(
        [
            (1..=p).map(|j| (left_gen(j), j as u32)).collect(),
            (1..=k).map(|l| (right_gen(l), l as u32)).collect(),
        ],
        None,
    )
    .expect("distinct names")
}

/// Pullback of `i_{2k}` along the pairing in codimension `p`:
/// `sum_{j=0}^{k} C(p-j, k-j) i_{2j} (x) i~_{2(k-j)}`, with `i_0 = 1`.
pub fn pairing_pullback(p: usize, k: usize) -> Result<GradedClass> {
    check_index(p, k)?;
    let ring = bigraded_ring(p, k);
    let mut out = GradedClass::zero(&ring);
    for j in 0..=k {
        let mut factors = Vec::new();
        if j > 0 {
            factors.push((left_gen(j), 1));
        }
        if k > j {
            factors.push((right_gen(k - j), 1));
        }
        let factors: Vec<(&str, u32)> = factors.iter().map(|(n, e)| (n.as_str(), *e)).collect();
        out = out.add(&GradedClass::monomial(&ring, &factors, binom(p - j, k - j))?)?;
    }
    Ok(out)
}

/// Sends `i_{2j} -> c_j(E)` and `i~_{2l} -> c1(L)^l`, and checks that the
/// pullback class becomes the Chern class formula.
pub fn pullback_matches_formula(p: usize, k: usize) -> Result<bool> {
    let pullback = pairing_pullback(p, k)?;
    let target = chern_ring(p);
    let line = GradedClass::generator(&target, C1L)?;
    let mut images: Vec<(String, GradedClass)> = Vec::new();
    for j in 1..=p {
        images.push((left_gen(j), GradedClass::generator(&target, &ce(j))?));
    }
    for l in 1..=k {
        images.push((right_gen(l), line.pow(l as u32)?));
    }
    let map = RingMap::new(
        pullback.ring(),
        &target,
        images.iter().map(|(n, c)| (n.as_str(), c.clone())).collect(),
    )?;
    Ok(map.apply(&pullback)? == chern_tensor_formula(p, k)?)
}

/// `Q[w]` truncated above weight `n`: the rational cohomology of
/// projective `n`-space.
pub fn projective_ring(n: u32) -> Arc<GradedRing> {
    GradedRing::new([("w", 1)], Some(n)).expect("single generator")
}

/// The pullback of `i_{2k}` to projective `n`-space: `w^k`.
pub fn hurewicz_pullback(k: u32, n: u32) -> Result<GradedClass> {
    if k > n {
        return Err(Error::Domain(format!(
            "w^{k} vanishes in the cohomology of projective {n}-space"
        )));
    }
    GradedClass::monomial(&projective_ring(n), &[("w", k)], rational(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_index_two() {
        let f = chern_tensor_formula(2, 2).unwrap();
        assert_eq!(f.to_string(), "c1(L)^2 + c1(E)*c1(L) + c2(E)");
        assert_eq!(chern_tensor_oracle(2, 2).unwrap(), f);
    }

    #[test]
    fn rank_one() {
        let f = chern_tensor_formula(1, 1).unwrap();
        let ring = chern_ring(1);
        let expected = GradedClass::generator(&ring, "c1(E)")
            .unwrap()
            .add(&GradedClass::generator(&ring, C1L).unwrap())
            .unwrap();
        assert_eq!(f, expected);
        assert_eq!(chern_tensor_oracle(1, 1).unwrap(), f);
    }

    #[test]
    fn rank_three_index_two() {
        let f = chern_tensor_formula(3, 2).unwrap();
        assert_eq!(f.to_string(), "3*c1(L)^2 + 2*c1(E)*c1(L) + c2(E)");
        assert_eq!(chern_tensor_oracle(3, 2).unwrap(), f);
    }

    #[test]
    fn rank_four_index_three_coefficients() {
        let o = chern_tensor_oracle(4, 3).unwrap();
        let c = |f: &[(&str, u32)]| o.coefficient(f).unwrap();
        assert_eq!(c(&[(C1L, 3)]), rational(4));
        assert_eq!(c(&[("c1(E)", 1), (C1L, 2)]), rational(3));
        assert_eq!(c(&[("c2(E)", 1), (C1L, 1)]), rational(2));
        assert_eq!(c(&[("c3(E)", 1)]), rational(1));
        assert_eq!(o, chern_tensor_formula(4, 3).unwrap());
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(chern_tensor_formula(2, 3), Err(Error::Domain(_))));
        assert!(matches!(chern_tensor_formula(2, 0), Err(Error::Domain(_))));
        assert!(chern_tensor_oracle(1, 2).is_err());
        assert!(pairing_pullback(2, 3).is_err());
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(pairing_pullback(2, 2).unwrap().to_string(), "i4(x)1 + i2(x)i2~ + 1(x)i4~");
        assert_eq!(pairing_pullback(1, 1).unwrap().to_string(), "i2(x)1 + 1(x)i2~");
        assert_eq!(
            pairing_pullback(3, 2).unwrap().to_string(),
            "i4(x)1 + 2*i2(x)i2~ + 3*1(x)i4~"
        );
        assert!(pullback_matches_formula(3, 2).unwrap());
    }

    #[test]
    fn projective_classes() {
        assert_eq!(hurewicz_pullback(0, 3).unwrap().to_string(), "1");
        assert_eq!(hurewicz_pullback(1, 3).unwrap().to_string(), "w");
        assert_eq!(hurewicz_pullback(2, 2).unwrap().to_string(), "w^2");
        assert!(matches!(hurewicz_pullback(3, 2), Err(Error::Domain(_))));
    }
}
