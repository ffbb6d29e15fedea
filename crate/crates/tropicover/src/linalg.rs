//! Exact linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![vec![0; cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = 1;
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Parameters(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += a * other.entries[k][j];
                }
            }
        }
        Ok(out)
    }

    pub fn column_is_zero(&self, j: usize) -> bool {
        self.entries.iter().all(|r| r[j] == 0)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { sign } else { sign * &a[n - 1][n - 1] })
    }
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(a: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Some solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vec<Q>], v: &[Q]) -> bool {
    if vectors.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    let a: Vec<Vec<Q>> = (0..v.len()).map(|i| vectors.iter().map(|c| c[i].clone()).collect()).collect();
    solve(&a, v).is_some()
}

pub fn rank(a: &[Vec<Q>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}
