//! The multilinear pairing on monomial bases and the divisor tensor product
//! built from it.
//!
//! The pairing takes `e` forms of degree `d` in the `x` variables and `d`
//! forms of degree `e` in the `y` variables and returns one form of degree
//! `d*e` in `z[i,j]`. On basis monomials it is the grid rule: write the
//! sorted index sequence of the `a`-th x-monomial as row `a` of an `e x d`
//! array and the `b`-th y-monomial as row `b` of a `d x e` array; position
//! `b` of x-row `a` is paired with position `a` of y-row `b`. Everything
//! else follows by multilinearity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Family, Monomial, Polynomial, TermAccumulator, Var, VariableSpace};

/// Index rows of the basis monomials fed to one evaluation of the grid rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialGrid {
    x_rows: Vec<Vec<u32>>,
    y_rows: Vec<Vec<u32>>,
}

impl MonomialGrid {
    /// `x_rows` must be `e` rows of length `d`, `y_rows` `d` rows of length
    /// `e`, each row non-decreasing.
    pub fn new(x_rows: Vec<Vec<u32>>, y_rows: Vec<Vec<u32>>) -> Result<Self> {
        let (e, d) = (x_rows.len(), y_rows.len());
        if e == 0 || d == 0 {
            return Err(Error::Shape("grid needs at least one x row and one y row".into()));
        }
        for (a, row) in x_rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::Shape(format!(
                    "x row {a} has length {}, expected {d} (one per y row)",
                    row.len()
                )));
            }
        }
        for (b, row) in y_rows.iter().enumerate() {
            if row.len() != e {
                return Err(Error::Shape(format!(
                    "y row {b} has length {}, expected {e} (one per x row)",
                    row.len()
                )));
            }
        }
        for row in x_rows.iter().chain(&y_rows) {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Shape(format!("grid row {row:?} is not sorted")));
            }
        }
        Ok(MonomialGrid { x_rows, y_rows })
    }

    pub fn x_rows(&self) -> &[Vec<u32>] {
        &self.x_rows
    }

    pub fn y_rows(&self) -> &[Vec<u32>] {
        &self.y_rows
    }
}

/// The grid rule: `prod_a prod_b z[x_rows[a][b], y_rows[b][a]]`.
pub fn psi_monomial(grid: &MonomialGrid) -> Monomial {
    let mut vars = Vec::with_capacity(grid.x_rows.len() * grid.y_rows.len());
    for (a, xr) in grid.x_rows.iter().enumerate() {
        for (b, &xi) in xr.iter().enumerate() {
            vars.push(Var::z(xi, grid.y_rows[b][a]));
        }
    }
    Monomial::from_vars(vars)
}

/// Arguments of one pairing evaluation: `e` x-forms of degree `d` followed
/// by `d` y-forms of degree `e`.
#[derive(Clone, Debug)]
pub struct PsiInput {
    xs: Vec<Polynomial>,
    ys: Vec<Polynomial>,
}

impl PsiInput {
    pub fn new(xs: Vec<Polynomial>, ys: Vec<Polynomial>) -> Result<Self> {
        let (e, d) = (xs.len(), ys.len());
        if e == 0 || d == 0 {
            return Err(Error::Shape("pairing needs at least one x slot and one y slot".into()));
        }
        check_slots(&xs, Family::X, d, "x")?;
        check_slots(&ys, Family::Y, e, "y")?;
        Ok(PsiInput { xs, ys })
    }

    pub fn xs(&self) -> &[Polynomial] {
        &self.xs
    }

    pub fn ys(&self) -> &[Polynomial] {
        &self.ys
    }

    pub fn output_space(&self) -> VariableSpace {
        z_space(&self.xs[0], &self.ys[0])
    }

    pub fn output_degree(&self) -> u32 {
        (self.xs.len() * self.ys.len()) as u32
    }
}

fn check_slots(slots: &[Polynomial], family: Family, degree: usize, name: &str) -> Result<()> {
    let space = slots[0].space();
    for (k, p) in slots.iter().enumerate() {
        if p.space().family() != family {
            return Err(Error::Shape(format!(
                "{name} slot {k} lives in {}, expected {name} variables",
                p.space()
            )));
        }
        if p.space() != space {
            return Err(Error::Shape(format!(
                "{name} slot {k} lives in {}, slot 0 in {space}",
                p.space()
            )));
        }
        if p.degree() as usize != degree {
            return Err(Error::Shape(format!(
                "{name} slot {k} has degree {}, expected {degree}",
                p.degree()
            )));
        }
    }
    Ok(())
}

fn z_space(x: &Polynomial, y: &Polynomial) -> VariableSpace {
    VariableSpace::z(x.space().bound(), y.space().bound()).expect("bounds are positive")
}

/// Terms of a polynomial as `(index row, coefficient)`.
fn rows(p: &Polynomial) -> Vec<(Vec<u32>, &BigInt)> {
    p.terms()
        .map(|(m, c)| (m.vars().iter().map(|v| v.index()).collect(), c))
        .collect()
}

/// Advances a mixed-radix counter; returns false after the last state.
fn advance(counter: &mut [usize], radix: &[usize]) -> bool {
    for (digit, &r) in counter.iter_mut().zip(radix) {
        *digit += 1;
        if *digit < r {
            return true;
        }
        *digit = 0;
    }
    false
}

/// Full multilinear expansion: one basis monomial per slot, grid rule,
/// product of the chosen coefficients. This is the reference evaluation.
pub fn psi(input: &PsiInput, cap: usize) -> Result<Polynomial> {
    let space = input.output_space();
    let degree = input.output_degree();
    let x_slots: Vec<_> = input.xs.iter().map(rows).collect();
    let y_slots: Vec<_> = input.ys.iter().map(rows).collect();
    if x_slots.iter().chain(&y_slots).any(Vec::is_empty) {
        return Ok(Polynomial::zero(space, degree));
    }
    let (e, d) = (x_slots.len(), y_slots.len());
    let x_radix: Vec<usize> = x_slots.iter().map(Vec::len).collect();
    let y_radix: Vec<usize> = y_slots.iter().map(Vec::len).collect();

    let mut acc = TermAccumulator::new(cap, "pairing expansion");
    let mut xc = vec![0usize; e];
    let mut vars = Vec::with_capacity(d * e);
    loop {
        let mut x_coeff = BigInt::one();
        for (slot, &k) in x_slots.iter().zip(&xc) {
            x_coeff *= slot[k].1;
        }
        let mut yc = vec![0usize; d];
        loop {
            let mut coeff = x_coeff.clone();
            for (slot, &k) in y_slots.iter().zip(&yc) {
                coeff *= slot[k].1;
            }
            vars.clear();
            for a in 0..e {
                let x_row = &x_slots[a][xc[a]].0;
                for b in 0..d {
                    vars.push(Var::z(x_row[b], y_slots[b][yc[b]].0[a]));
                }
            }
            acc.add(Monomial::from_vars(vars.clone()), coeff)?;
            if !advance(&mut yc, &y_radix) {
                break;
            }
        }
        if !advance(&mut xc, &x_radix) {
            break;
        }
    }
    Ok(acc.finish(space, degree))
}

fn check_divisors(f: &Polynomial, g: &Polynomial) -> Result<()> {
    if f.space().family() != Family::X || g.space().family() != Family::Y {
        return Err(Error::Domain(format!(
            "tensor product needs an x polynomial and a y polynomial, got {} and {}",
            f.space(),
            g.space()
        )));
    }
    for (p, side) in [(f, "left"), (g, "right")] {
        if p.is_zero() {
            return Err(Error::Domain(format!("{side} factor is the zero polynomial")));
        }
        if p.degree() == 0 {
            return Err(Error::Domain(format!("{side} factor is a constant")));
        }
    }
    Ok(())
}

/// `f (x) g`: the pairing applied to `deg g` copies of `f` and `deg f`
/// copies of `g`, evaluated by full expansion.
pub fn tensor_divisor(f: &Polynomial, g: &Polynomial, cap: usize) -> Result<Polynomial> {
    check_divisors(f, g)?;
    let input = PsiInput::new(
        vec![f.clone(); g.degree() as usize],
        vec![g.clone(); f.degree() as usize],
    )?;
    psi(&input, cap)
}

/// Same value as [`tensor_divisor`], computed by factoring.
///
/// Once a monomial of `f` is fixed in every x-slot, the y-slots decouple:
/// slot `b` only sees column `b` of the x grid, so the sum over y choices is
/// a product of `deg f` polynomials `G(column)`, where `G(c)` is `g` with the
/// `t`-th variable `y_k` of each monomial replaced by `z[c[t], k]`.
pub fn tensor_fast(f: &Polynomial, g: &Polynomial, cap: usize) -> Result<Polynomial> {
    check_divisors(f, g)?;
    let space = z_space(f, g);
    let (d, e) = (f.degree() as usize, g.degree() as usize);
    let f_rows = rows(f);
    let g_rows = rows(g);

    let column_form = |col: &[u32]| -> Polynomial {
        let mut out = Polynomial::zero(space, e as u32);
        for (k, c) in &g_rows {
            let vars = col.iter().zip(k).map(|(&i, &j)| Var::z(i, j)).collect();
            let term = Polynomial::monomial(space, Monomial::from_vars(vars), (*c).clone());
            out = out.try_add(&term).expect("same space and degree");
        }
        out
    };

    let mut forms: HashMap<Vec<u32>, Polynomial> = HashMap::new();
    let mut products: HashMap<Vec<Vec<u32>>, Polynomial> = HashMap::new();
    let mut acc = TermAccumulator::new(cap, "factored pairing expansion");
    let radix = vec![f_rows.len(); e];
    let mut choice = vec![0usize; e];
    loop {
        let mut coeff = BigInt::one();
        for &k in &choice {
            coeff *= f_rows[k].1;
        }
        let mut columns: Vec<Vec<u32>> = (0..d)
            .map(|b| choice.iter().map(|&k| f_rows[k].0[b]).collect())
            .collect();
        columns.sort_unstable();
        if !products.contains_key(&columns) {
            let mut prod = Polynomial::constant(space, 1);
            for col in &columns {
                let form = forms.entry(col.clone()).or_insert_with(|| column_form(col));
                prod = prod.mul_capped(form, cap)?;
            }
            products.insert(columns.clone(), prod);
        }
        for (m, c) in products[&columns].terms() {
            acc.add(m.clone(), c * &coeff)?;
        }
        if !advance(&mut choice, &radix) {
            break;
        }
    }
    Ok(acc.finish(space, (d * e) as u32))
}

/// For linear `f = sum a_i x_i`: substitute `y_j -> f(z[0,j], ..., z[n-1,j])`
/// into `g`. Agrees with `f (x) g`.
pub fn suspend_linear(f: &Polynomial, g: &Polynomial, cap: usize) -> Result<Polynomial> {
    check_divisors(f, g)?;
    if f.degree() != 1 {
        return Err(Error::Domain(format!(
            "linear suspension needs a linear form, got degree {}",
            f.degree()
        )));
    }
    let space = z_space(f, g);
    let images: Vec<Polynomial> = (0..g.space().bound())
        .map(|j| {
            let mut image = Polynomial::zero(space, 1);
            for (m, c) in f.terms() {
                let i = m.vars()[0].index();
                let term = Polynomial::monomial(space, Monomial::from_vars(vec![Var::z(i, j)]), c.clone());
                image = image.try_add(&term).expect("same space and degree");
            }
            image
        })
        .collect();
    g.substitute(&images, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial_in;
    use crate::poly::DEFAULT_TERM_CAP;

    fn x(n: u32, s: &str) -> Polynomial {
        parse_polynomial_in(s, VariableSpace::x(n).unwrap()).unwrap()
    }

    fn y(m: u32, s: &str) -> Polynomial {
        parse_polynomial_in(s, VariableSpace::y(m).unwrap()).unwrap()
    }

    fn grid(x: &[&[u32]], y: &[&[u32]]) -> MonomialGrid {
        MonomialGrid::new(
            x.iter().map(|r| r.to_vec()).collect(),
            y.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    fn render_z(m: &Monomial, n: u32, mm: u32) -> String {
        m.render(&VariableSpace::z(n, mm).unwrap())
    }

    #[test]
    fn grid_rule_matches_worked_example_terms() {
        let m = psi_monomial(&grid(&[&[0, 0], &[0, 0]], &[&[5, 7], &[5, 7]]));
        assert_eq!(render_z(&m, 3, 8), "z[0,5]^2*z[0,7]^2");
        let m = psi_monomial(&grid(&[&[0, 0], &[1, 2]], &[&[5, 7], &[5, 7]]));
        assert_eq!(render_z(&m, 3, 8), "z[0,5]^2*z[1,7]*z[2,7]");
        let m = psi_monomial(&grid(&[&[1, 2], &[0, 0]], &[&[5, 7], &[5, 7]]));
        assert_eq!(render_z(&m, 3, 8), "z[0,7]^2*z[1,5]*z[2,5]");
        let m = psi_monomial(&grid(&[&[2]], &[&[4]]));
        assert_eq!(m.vars(), &[Var::z(2, 4)]);
    }

    #[test]
    fn grid_shape_errors() {
        assert!(MonomialGrid::new(vec![vec![0, 0]], vec![vec![0]]).is_err());
        assert!(MonomialGrid::new(vec![vec![0]], vec![vec![0, 1]]).is_err());
        assert!(MonomialGrid::new(vec![vec![1, 0]], vec![vec![0], vec![0]]).is_err());
        assert!(MonomialGrid::new(vec![], vec![vec![0]]).is_err());
    }

    #[test]
    fn worked_example() {
        let f = x(3, "x0^2 - 3*x1*x2");
        let g = y(8, "y5*y7");
        let expected = "z[0,5]^2*z[0,7]^2 - 3*z[0,5]^2*z[1,7]*z[2,7] \
                        - 3*z[0,7]^2*z[1,5]*z[2,5] + 9*z[1,5]*z[1,7]*z[2,5]*z[2,7]";
        let naive = tensor_divisor(&f, &g, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(naive.to_string(), expected);
        assert_eq!(naive.degree(), 4);
        assert_eq!(naive.space(), VariableSpace::z(3, 8).unwrap());
        assert_eq!(tensor_fast(&f, &g, DEFAULT_TERM_CAP).unwrap(), naive);
        let explicit = psi(
            &PsiInput::new(vec![f.clone(), f], vec![g.clone(), g]).unwrap(),
            DEFAULT_TERM_CAP,
        )
        .unwrap();
        assert_eq!(explicit, naive);
    }

    #[test]
    fn linear_slots_pair_positionally() {
        let input = PsiInput::new(vec![x(3, "x1"), x(3, "x2")], vec![y(2, "y0*y1")]).unwrap();
        let out = psi(&input, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(out.to_string(), "z[1,0]*z[2,1]");
        assert_eq!(out.degree(), 2);
    }

    #[test]
    fn psi_is_linear_in_a_slot() {
        let p = x(3, "x0 - 2*x2");
        let q = x(3, "5*x1");
        let other = x(3, "x0 + x1");
        let g = y(2, "y0^2 - y0*y1 + 3*y1^2");
        let run = |first: Polynomial| {
            psi(
                &PsiInput::new(vec![first, other.clone()], vec![g.clone()]).unwrap(),
                DEFAULT_TERM_CAP,
            )
            .unwrap()
        };
        let sum = run(p.try_add(&q).unwrap());
        assert_eq!(sum, run(p).try_add(&run(q)).unwrap());
    }

    #[test]
    fn psi_input_shape_errors() {
        assert!(PsiInput::new(vec![x(2, "x0^2")], vec![y(2, "y0")]).is_err());
        assert!(PsiInput::new(vec![x(2, "x0"), x(3, "x0")], vec![y(2, "y0*y1")]).is_err());
        assert!(PsiInput::new(vec![y(2, "y0")], vec![y(2, "y0")]).is_err());
        assert!(PsiInput::new(vec![], vec![y(2, "y0")]).is_err());
        // one x slot of degree 1 needs one y slot of degree 1
        assert!(PsiInput::new(vec![x(2, "x0")], vec![y(2, "y0")]).is_ok());
    }

    #[test]
    fn hyperplanes_give_segre_form() {
        let out = tensor_divisor(&x(3, "x1"), &y(2, "y0"), DEFAULT_TERM_CAP).unwrap();
        assert_eq!(out.to_string(), "z[1,0]");
        let out = tensor_divisor(&x(2, "2*x0 - x1"), &y(2, "y0 + 3*y1"), DEFAULT_TERM_CAP).unwrap();
        assert_eq!(out.to_string(), "2*z[0,0] + 6*z[0,1] - z[1,0] - 3*z[1,1]");
    }

    #[test]
    fn product_monomials() {
        let out = tensor_divisor(&x(2, "x0*x1"), &y(2, "y0*y1"), DEFAULT_TERM_CAP).unwrap();
        assert_eq!(out.to_string(), "z[0,0]*z[0,1]*z[1,0]*z[1,1]");
        assert_eq!(tensor_fast(&x(2, "x0*x1"), &y(2, "y0*y1"), DEFAULT_TERM_CAP).unwrap(), out);
    }

    #[test]
    fn fast_path_on_monomial_f_is_one_product() {
        let f = x(3, "x0*x2^2");
        let g = y(2, "y0 - 4*y1");
        let fast = tensor_fast(&f, &g, DEFAULT_TERM_CAP).unwrap();
        let z = VariableSpace::z(3, 2).unwrap();
        let expected = parse_polynomial_in("z[0,0] - 4*z[0,1]", z)
            .unwrap()
            .try_mul(&parse_polynomial_in("z[2,0] - 4*z[2,1]", z).unwrap())
            .unwrap()
            .try_mul(&parse_polynomial_in("z[2,0] - 4*z[2,1]", z).unwrap())
            .unwrap();
        assert_eq!(fast, expected);
        assert_eq!(tensor_divisor(&f, &g, DEFAULT_TERM_CAP).unwrap(), expected);
    }

    #[test]
    fn suspension_examples() {
        let out = suspend_linear(&x(1, "x0"), &y(2, "y0*y1"), DEFAULT_TERM_CAP).unwrap();
        assert_eq!(out.to_string(), "z[0,0]*z[0,1]");
        let f = x(2, "x0 + x1");
        let g = y(1, "y0^2");
        let out = suspend_linear(&f, &g, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(out.to_string(), "z[0,0]^2 + 2*z[0,0]*z[1,0] + z[1,0]^2");
        assert_eq!(out, tensor_divisor(&f, &g, DEFAULT_TERM_CAP).unwrap());
        assert!(matches!(
            suspend_linear(&x(2, "x0*x1"), &g, DEFAULT_TERM_CAP),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn degenerate_factors_rejected() {
        let g = y(2, "y0");
        let c = Polynomial::constant(VariableSpace::x(2).unwrap(), 3);
        assert!(matches!(tensor_divisor(&c, &g, DEFAULT_TERM_CAP), Err(Error::Domain(_))));
        let zero = Polynomial::zero(VariableSpace::x(2).unwrap(), 2);
        assert!(matches!(tensor_divisor(&zero, &g, DEFAULT_TERM_CAP), Err(Error::Domain(_))));
        assert!(matches!(tensor_fast(&g, &g, DEFAULT_TERM_CAP), Err(Error::Domain(_))));
    }

    #[test]
    fn term_cap_is_enforced() {
        let f = x(3, "x0 + x1 + x2");
        let g = y(3, "y0*y1*y2 + y0^3 + y1^2*y2");
        let full = tensor_divisor(&f, &g, DEFAULT_TERM_CAP).unwrap();
        let cap = full.len() - 1;
        assert!(matches!(tensor_divisor(&f, &g, cap), Err(Error::Resource { .. })));
        assert!(matches!(tensor_fast(&f, &g, cap), Err(Error::Resource { .. })));
    }
}
