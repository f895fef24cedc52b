//! Dense linear algebra over a finite field by Gaussian elimination.

use crate::galois::{Elem, FiniteField};

/// Row-major matrix of field elements.
pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row echelon form of `m` and its pivot columns.
pub fn row_reduce(field: &FiniteField, m: &[Vec<Elem>]) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(a[r][c]).expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            let factor = row[c];
            if i == r || factor.is_zero() {
                continue;
            }
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(field: &FiniteField, m: &[Vec<Elem>]) -> usize {
    row_reduce(field, m).1.len()
}

/// Basis of `{h : m * h^T = 0}`, one vector per free column.
pub fn null_space(field: &FiniteField, m: &[Vec<Elem>], cols: usize) -> Matrix {
    let (rref, pivots) = row_reduce(field, m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut h = vec![Elem::ZERO; cols];
            h[free] = Elem::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                h[pc] = field.neg(rref[row][free]);
            }
            h
        })
        .collect()
}

/// `v * m` for a row vector `v`.
pub fn vec_mat(field: &FiniteField, v: &[Elem], m: &[Vec<Elem>]) -> Vec<Elem> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Elem::ZERO; cols];
    for (&c, row) in v.iter().zip(m) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    out
}
