//! Maximal Lie quotient `h -> h_Lie`.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::leibniz::{Chirality, LeibnizAlgebra};
use crate::matrix::QMatrix;
use crate::scalar::Scalar;

/// `h_Lie = h / I`, where `I` is the two-sided ideal generated by all `[x, x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieQuotient {
    /// Dimension of `h_Lie`.
    pub m: usize,
    /// `m x n` matrix of the quotient map in the chosen bases.
    pub q: QMatrix,
    /// `n x m` section with `q * lift = I_m`.
    pub lift: QMatrix,
    /// Basis of the kernel, as coordinate vectors in `h` (RREF rows).
    pub kernel_basis: Vec<Vec<Scalar>>,
    /// Structure constants of `h_Lie`, in the same chirality-free convention
    /// `[e_a, e_b] = sum_c c_lie[c][a][b] e_c`.
    pub c_lie: LeibnizAlgebra,
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn span_rref(vectors: &[Vec<Scalar>], n: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let m = QMatrix::from_rows(vectors.to_vec()).expect("uniform length");
    let (r, piv) = m.rref();
    ((0..r.rows()).map(|i| r.row(i).to_vec()).collect(), {
        debug_assert!(piv.iter().all(|&p| p < n));
        piv
    })
}

/// Fixed-point closure: start from polarized squares and adjoin brackets
/// with basis vectors on both sides until the span stabilizes.
pub fn lie_quotient(alg: &LeibnizAlgebra) -> Result<LieQuotient> {
    alg.require_leibniz()?;
    let n = alg.dim();
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(alg.bracket_basis(i, i));
        for j in (i + 1)..n {
            let s: Vec<Scalar> = alg
                .bracket_basis(i, j)
                .into_iter()
                .zip(alg.bracket_basis(j, i))
                .map(|(a, b)| a + b)
                .collect();
            gens.push(s);
        }
    }
    let mut basis = span_rref(&gens, n).0;
    let pivots = loop {
        let mut next = basis.clone();
        for v in &basis {
            for i in 0..n {
                let e = unit(n, i);
                next.push(alg.bracket(&e, v));
                next.push(alg.bracket(v, &e));
            }
        }
        let (nb, np) = span_rref(&next, n);
        let done = nb.len() == basis.len();
        basis = nb;
        if done {
            break np;
        }
    };
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let m = free.len();
    let mut q = QMatrix::zeros(m, n);
    for (a, &f) in free.iter().enumerate() {
        q[(a, f)] = Scalar::one();
    }
    // x_p = -sum_f R[r][f] x_f  (mod kernel) for the pivot column p of row r.
    for (r, &p) in pivots.iter().enumerate() {
        for (a, &f) in free.iter().enumerate() {
            q[(a, p)] = -basis[r][f].clone();
        }
    }
    let mut lift = QMatrix::zeros(n, m);
    for (a, &f) in free.iter().enumerate() {
        lift[(f, a)] = Scalar::one();
    }
    let mut c_lie = LeibnizAlgebra::zero(m.max(1), Chirality::Left);
    if m > 0 {
        for a in 0..m {
            for b in 0..m {
                let br = alg.bracket(&lift.column(a), &lift.column(b));
                for (c, v) in q.mul_vec(&br).into_iter().enumerate() {
                    c_lie.set(c, a, b, v);
                }
            }
        }
    }
    Ok(LieQuotient {
        m,
        q,
        lift,
        kernel_basis: basis,
        c_lie,
    })
}

impl LieQuotient {
    /// Image of `x_i` in `h_Lie` coordinates.
    pub fn image(&self, i: usize) -> Vec<Scalar> {
        self.q.column(i)
    }

    /// `q([x, y]) == [q x, q y]` on all basis pairs.
    pub fn bracket_descends(&self, alg: &LeibnizAlgebra) -> bool {
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.q.mul_vec(&alg.bracket_basis(i, j));
                let rhs = if self.m == 0 {
                    Vec::new()
                } else {
                    self.c_lie.bracket(&self.image(i), &self.image(j))
                };
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn a2_quotient_is_one_dimensional() {
        let alg = LeibnizAlgebra::from_entries(2, Chirality::Left, [(0, 0, 1, int(1))]).unwrap();
        let lq = lie_quotient(&alg).unwrap();
        assert_eq!(lq.m, 1);
        assert_eq!(lq.kernel_basis, vec![vec![int(0), int(1)]]);
        assert!(lq.c_lie.nonzero_entries().is_empty());
        assert!(lq.q.mul(&lq.lift).unwrap().is_identity());
        assert!(lq.bracket_descends(&alg));
    }

    #[test]
    fn lie_algebra_is_its_own_quotient() {
        let alg = LeibnizAlgebra::from_entries(2, Chirality::Left, [(0, 1, 1, int(1)), (1, 0, 1, int(-1))]).unwrap();
        let lq = lie_quotient(&alg).unwrap();
        assert_eq!(lq.m, 2);
        assert!(lq.q.is_identity());
        assert_eq!(lq.c_lie, alg);
    }

    #[test]
    fn abelian_line() {
        let alg = LeibnizAlgebra::zero(1, Chirality::Left);
        let lq = lie_quotient(&alg).unwrap();
        assert_eq!(lq.m, 1);
        assert!(lq.q.is_identity());
    }

    #[test]
    fn kernel_of_filiform_leibniz() {
        // [x1,x1] = x2, [x1,x2] = x3: the polarized squares give x2 and x3.
        let alg = LeibnizAlgebra::from_entries(3, Chirality::Left, [(0, 0, 1, int(1)), (0, 1, 2, int(1))]).unwrap();
        assert!(alg.check_leibniz());
        let lq = lie_quotient(&alg).unwrap();
        assert_eq!(lq.m, 1);
        assert_eq!(lq.kernel_basis.len(), 2);
        assert!(lq.bracket_descends(&alg));
    }
}
