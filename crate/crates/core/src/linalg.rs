//! Exact dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::poly::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::one();
    }
    m
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] += x * &b[k][j];
            }
        }
    }
    out
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(a: &mut Matrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &Matrix) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coefficients `x` with `Σ x_i rows[i] = target`, if the target is in the
/// row span. Rows must be linearly independent.
pub fn solve_in_span(rows: &Matrix, target: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = rows.len();
    let n = target.len();
    // columns: one per basis row, plus the target
    let mut m = zeros(n, k + 1);
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            m[j][i] = row[j].clone();
        }
    }
    for j in 0..n {
        m[j][k] = target[j].clone();
    }
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Scalar::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][k].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn inverse_round_trip() {
        let a = mat(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(4));
        assert!(inverse(&mat(&[&[0, 1, 2], &[-1, 0, 3], &[-2, -3, 0]])).is_none());
    }

    #[test]
    fn span_solutions() {
        let rows = mat(&[&[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(solve_in_span(&rows, &[int(2), int(3), int(2)]), Some(vec![int(2), int(3)]));
        assert_eq!(solve_in_span(&rows, &[int(0), int(0), int(1)]), None);
        assert_eq!(rank(&rows), 2);
    }
}
