//! Exact row reduction over the rationals.

use num_rational::BigRational;
use num_traits::Zero;

/// Reduced row echelon form of `rows`, restricted to pivots in the first
/// `pivot_cols` columns. Returns the reduced rows (zero rows dropped) and
/// the pivot column of each.
pub fn rref(mut rows: Vec<Vec<BigRational>>, pivot_cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = &*v / &lead;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][col].is_zero() {
                let f = rows[k][col].clone();
                let pivot_row = rows[r].clone();
                for (v, p) in rows[k].iter_mut().zip(&pivot_row) {
                    *v = &*v - &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<BigRational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    rref(rows, width).1.len()
}

/// Subtracts multiples of the reduced rows from `v` so that every pivot
/// coordinate vanishes. What is left is zero exactly when `v` lies in the
/// row span.
pub fn residue(reduced: &[Vec<BigRational>], pivots: &[usize], v: &[BigRational]) -> Vec<BigRational> {
    let mut out = v.to_vec();
    for (row, &col) in reduced.iter().zip(pivots) {
        let f = out[col].clone();
        if f.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o = &*o - &f * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::graded::rational;

    fn row(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(vec![row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank(vec![row(&[1, 2]), row(&[0, 3])]), 2);
        assert_eq!(rank(vec![row(&[0, 0])]), 0);
    }

    #[test]
    fn solves_augmented_system() {
        // a + b = 1, 2b = 0
        let (rows, pivots) = rref(vec![row(&[1, 1, 1]), row(&[0, 2, 0])], 2);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rows[0][2], rational(1));
        assert_eq!(rows[1][2], rational(0));
    }

    #[test]
    fn residue_outside_span() {
        let (rows, pivots) = rref(vec![row(&[0, 1, 0]), row(&[0, 0, 1])], 3);
        assert_eq!(residue(&rows, &pivots, &row(&[1, 5, 7])), row(&[1, 0, 0]));
        assert_eq!(residue(&rows, &pivots, &row(&[0, 5, 7])), row(&[0, 0, 0]));
    }
}
