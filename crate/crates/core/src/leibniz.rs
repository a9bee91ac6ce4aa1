//! Leibniz algebras given by structure constants.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    /// `ad x = [x, -]` is a derivation.
    Left,
    /// `[-, x]` is a derivation.
    Right,
}

impl Chirality {
    pub fn as_str(self) -> &'static str {
        match self {
            Chirality::Left => "left",
            Chirality::Right => "right",
        }
    }
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite-dimensional algebra with bracket `[x_i, x_j] = sum_k C^k_{ij} x_k`.
///
/// Indices are 0-based internally; file formats and printed output use
/// 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    n: usize,
    chirality: Chirality,
    // c[(k * n + i) * n + j] = C^k_{ij}
    c: Vec<Scalar>,
}

/// A violated instance of the Leibniz identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub i: usize,
    pub j: usize,
    pub p: usize,
    pub k: usize,
    pub residual: Scalar,
}

impl LeibnizAlgebra {
    pub fn zero(n: usize, chirality: Chirality) -> Self {
        assert!(n > 0, "dimension must be positive");
        LeibnizAlgebra {
            n,
            chirality,
            c: vec![Scalar::zero(); n * n * n],
        }
    }

    /// Builds an algebra from `(i, j, k, value)` entries meaning `C^k_{ij} = value`
    /// (0-based).
    pub fn from_entries(
        n: usize,
        chirality: Chirality,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut alg = Self::zero(n, chirality);
        for (i, j, k, v) in entries {
            for idx in [i, j, k] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx + 1, n });
                }
            }
            alg.set(k, i, j, v);
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn with_chirality(&self, chirality: Chirality) -> Self {
        LeibnizAlgebra {
            chirality,
            ..self.clone()
        }
    }

    /// `C^k_{ij}`: coefficient of `x_k` in `[x_i, x_j]`.
    #[inline]
    pub fn c(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.c[(k * self.n + i) * self.n + j]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, v: Scalar) {
        let n = self.n;
        self.c[(k * n + i) * n + j] = v;
    }

    /// Coordinates of `[x_i, x_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|k| self.c(k, i, j).clone()).collect()
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.n];
        for (i, ai) in a.iter().enumerate().take(self.n) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(self.n) {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(k, i, j);
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Nonzero structure constants as `(i, j, k, C^k_{ij})`, 0-based, sorted.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    let v = self.c(k, i, j);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// First violation of the chirality-appropriate Leibniz identity, if any.
    ///
    /// Left: `[x_p,[x_i,x_j]] = [[x_p,x_i],x_j] + [x_i,[x_p,x_j]]`.
    /// Right: `[[x_i,x_j],x_p] = [[x_i,x_p],x_j] + [x_i,[x_j,x_p]]`.
    pub fn leibniz_violation(&self) -> Option<LeibnizViolation> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for p in 0..n {
                    for k in 0..n {
                        let mut lhs = Scalar::zero();
                        let mut rhs = Scalar::zero();
                        for s in 0..n {
                            match self.chirality {
                                Chirality::Left => {
                                    lhs += self.c(s, i, j) * self.c(k, p, s);
                                    rhs += self.c(s, p, i) * self.c(k, s, j);
                                    rhs += self.c(s, p, j) * self.c(k, i, s);
                                }
                                Chirality::Right => {
                                    lhs += self.c(s, i, j) * self.c(k, s, p);
                                    rhs += self.c(s, i, p) * self.c(k, s, j);
                                    rhs += self.c(s, j, p) * self.c(k, i, s);
                                }
                            }
                        }
                        if lhs != rhs {
                            return Some(LeibnizViolation {
                                i,
                                j,
                                p,
                                k,
                                residual: lhs - rhs,
                            });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn check_leibniz(&self) -> bool {
        self.leibniz_violation().is_none()
    }

    /// Gate used by every operation that requires a valid Leibniz algebra.
    pub fn require_leibniz(&self) -> Result<()> {
        match self.leibniz_violation() {
            None => Ok(()),
            Some(v) => Err(Error::NotLeibniz {
                chirality: self.chirality.as_str(),
                i: v.i + 1,
                j: v.j + 1,
                p: v.p + 1,
                k: v.k + 1,
            }),
        }
    }

    /// `[x_i, x_i] = 0` and antisymmetry for all basis pairs.
    pub fn is_lie(&self) -> Result<bool> {
        self.require_leibniz()?;
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                if !self.c(k, i, i).is_zero() {
                    return Ok(false);
                }
                for j in 0..n {
                    if *self.c(k, i, j) != -self.c(k, j, i) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Adjoint matrix of `x_k`: entry `(i, j)` is `C^i_{kj}` for left
    /// chirality (matrix of `z -> [x_k, z]`) and `C^i_{jk}` for right
    /// chirality (matrix of `z -> [z, x_k]`).
    pub fn ad_matrix(&self, k: usize) -> Result<QMatrix> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                n: self.n,
            });
        }
        let mut m = QMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = match self.chirality {
                    Chirality::Left => self.c(i, k, j).clone(),
                    Chirality::Right => self.c(i, j, k).clone(),
                };
            }
        }
        Ok(m)
    }

    /// `sum_i C^i_{ij}`, the trace of `z -> [z, x_j]`.
    pub fn right_trace(&self, j: usize) -> Scalar {
        (0..self.n).fold(Scalar::zero(), |acc, i| acc + self.c(i, i, j))
    }

    /// `sum_i C^i_{ji}`, the trace of `z -> [x_j, z]`.
    pub fn left_trace(&self, j: usize) -> Scalar {
        (0..self.n).fold(Scalar::zero(), |acc, i| acc + self.c(i, j, i))
    }

    /// Structure constants in the basis `x'_j = sum_i T^i_j x_i`.
    pub fn transform_basis(&self, t: &BasisChange) -> Result<LeibnizAlgebra> {
        let n = self.n;
        if t.t.rows() != n {
            return Err(Error::Dimension("basis change has wrong size".into()));
        }
        let mut out = Self::zero(n, self.chirality);
        for a in 0..n {
            for b in 0..n {
                let xa = t.t.column(a);
                let xb = t.t.column(b);
                let br = self.bracket(&xa, &xb);
                let coords = t.tinv.mul_vec(&br);
                for (c, v) in coords.into_iter().enumerate() {
                    out.set(c, a, b, v);
                }
            }
        }
        Ok(out)
    }
}

/// An invertible change of basis together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    pub t: QMatrix,
    pub tinv: QMatrix,
}

impl BasisChange {
    pub fn new(t: QMatrix) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::Dimension("basis change must be square".into()));
        }
        let tinv = t.inverse()?;
        Ok(BasisChange { t, tinv })
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange {
            t: self.tinv.clone(),
            tinv: self.t.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn a1() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(2, Chirality::Left, [(0, 1, 1, int(1)), (1, 0, 1, int(-1))]).unwrap()
    }

    fn a2() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(2, Chirality::Left, [(0, 0, 1, int(1))]).unwrap()
    }

    #[test]
    fn leibniz_examples() {
        assert!(a1().check_leibniz());
        assert!(a2().check_leibniz());
        let bad = LeibnizAlgebra::from_entries(1, Chirality::Left, [(0, 0, 0, int(1))]).unwrap();
        let v = bad.leibniz_violation().unwrap();
        // [x,[x,x]] = x while [[x,x],x] + [x,[x,x]] = 2x.
        assert_eq!(v.residual, int(-1));
    }

    #[test]
    fn corrupted_a1_is_rejected() {
        let mut c = a1();
        c.set(1, 1, 0, int(1));
        assert!(!c.check_leibniz());
        assert!(matches!(c.is_lie(), Err(Error::NotLeibniz { .. })));
    }

    #[test]
    fn lie_detection() {
        assert!(a1().is_lie().unwrap());
        assert!(!a2().is_lie().unwrap());
        assert!(LeibnizAlgebra::zero(1, Chirality::Left).is_lie().unwrap());
    }

    #[test]
    fn ad_matrices_of_a1() {
        let alg = a1();
        assert_eq!(alg.ad_matrix(0).unwrap(), QMatrix::from_ints(&[&[0, 0], &[0, 1]]));
        assert_eq!(alg.ad_matrix(1).unwrap(), QMatrix::from_ints(&[&[0, 0], &[-1, 0]]));
        assert!(alg.ad_matrix(2).is_err());
        let ab = LeibnizAlgebra::zero(1, Chirality::Left);
        assert!(ab.ad_matrix(0).unwrap().is_zero());
    }

    #[test]
    fn right_ad_matrix_is_right_multiplication() {
        let alg = a1().with_chirality(Chirality::Right);
        // z -> [z, x_1]: x_2 -> [x_2, x_1] = -x_2.
        assert_eq!(alg.ad_matrix(0).unwrap(), QMatrix::from_ints(&[&[0, 0], &[0, -1]]));
    }

    #[test]
    fn traces_of_a1() {
        let alg = a1();
        assert_eq!(alg.right_trace(0), int(-1));
        assert_eq!(alg.right_trace(1), int(0));
        for j in 0..2 {
            assert_eq!(alg.left_trace(j), alg.ad_matrix(j).unwrap().trace());
            assert_eq!(
                alg.right_trace(j),
                alg.with_chirality(Chirality::Right).ad_matrix(j).unwrap().trace()
            );
        }
    }

    #[test]
    fn basis_change_examples() {
        let alg = a1();
        let id = BasisChange::new(QMatrix::identity(2)).unwrap();
        assert_eq!(alg.transform_basis(&id).unwrap(), alg);
        let d = BasisChange::new(QMatrix::from_ints(&[&[1, 0], &[0, 2]])).unwrap();
        assert_eq!(alg.transform_basis(&d).unwrap(), alg);
        let ab = LeibnizAlgebra::zero(1, Chirality::Left);
        let s = BasisChange::new(QMatrix::from_ints(&[&[2]])).unwrap();
        assert_eq!(ab.transform_basis(&s).unwrap(), ab);
        assert!(BasisChange::new(QMatrix::from_ints(&[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn basis_change_inverts() {
        let alg = a2();
        let t = BasisChange::new(QMatrix::from_ints(&[&[1, 3], &[2, 1]])).unwrap();
        let there = alg.transform_basis(&t).unwrap();
        assert!(there.check_leibniz());
        assert_eq!(there.transform_basis(&t.inverse()).unwrap(), alg);
    }
}
