//! Small dense matrices over the rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::scalar::int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Gauss-Jordan inverse; `Error::Singular` when not invertible.
    pub fn inverse(&self) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let da = &f * &a[(col, j)];
                    a[(r, j)] -= da;
                    let di = &f * &inv[(col, j)];
                    inv[(r, j)] -= di;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form with smallest-index pivots. Returns the
    /// nonzero rows and their pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let pv = a[(row, col)].clone();
            for j in 0..a.cols {
                a[(row, j)] = &a[(row, j)] / &pv;
            }
            for r in 0..a.rows {
                if r == row || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..a.cols {
                    let d = &f * &a[(row, j)];
                    a[(r, j)] -= d;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let kept = QMatrix {
            rows: row,
            cols: a.cols,
            data: a.data[..row * a.cols].to_vec(),
        };
        (kept, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_ints(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn singular_rejected() {
        let m = QMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(Error::Singular));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_pivots_smallest_index() {
        let m = QMatrix::from_ints(&[&[0, 2, 4], &[0, 1, 2]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![1]);
        assert_eq!(r.row(0), &[frac(0, 1), frac(1, 1), frac(2, 1)]);
    }
}
