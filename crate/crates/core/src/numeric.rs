//! Floating-point check that `G^i_j` differentiates to the structure
//! constants along `exp(t ad x_k)`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::leibniz::LeibnizAlgebra;
use crate::matrix::QMatrix;
use crate::scalar::to_f64;

fn to_dmatrix(m: &QMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| to_f64(&m[(r, c)]))
}

/// Smallest `p` with `a^p = 0`, computed exactly.
pub fn nilpotency_index(a: &QMatrix) -> Option<usize> {
    let n = a.rows();
    let mut pow = QMatrix::identity(n);
    for p in 1..=n {
        pow = pow.mul(a).expect("square");
        if pow.is_zero() {
            return Some(p);
        }
    }
    None
}

/// `exp(t a)`: a finite sum when `a^p = 0`, otherwise nalgebra's Pade
/// scaling-and-squaring.
pub fn exp_scaled(a: &QMatrix, t: f64) -> DMatrix<f64> {
    let n = a.rows();
    let af = to_dmatrix(a);
    match nilpotency_index(a) {
        Some(p) => {
            let mut term = DMatrix::<f64>::identity(n, n);
            let mut sum = term.clone();
            for q in 1..p {
                term = &term * &af * (t / q as f64);
                sum += &term;
            }
            sum
        }
        None => (af * t).exp(),
    }
}

/// `|(G^i_j(exp(h ad x_k)) - G^i_j(exp(-h ad x_k))) / 2h - C^i_{kj}|`, with
/// 0-based indices.
pub fn numeric_differential_check(alg: &LeibnizAlgebra, k: usize, i: usize, j: usize, step: f64) -> Result<f64> {
    let n = alg.dim();
    for idx in [k, i, j] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
    }
    if !alg.is_lie()? {
        return Err(Error::NotLie);
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Parse(format!("step must be positive, got {step}")));
    }
    let ad = alg.ad_matrix(k)?;
    let plus = exp_scaled(&ad, step)[(i, j)];
    let minus = exp_scaled(&ad, -step)[(i, j)];
    let fd = (plus - minus) / (2.0 * step);
    Ok((fd - to_f64(alg.c(i, k, j))).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn heisenberg_entry_is_exact() {
        let a3 = fixtures::a3().algebra;
        assert_eq!(numeric_differential_check(&a3, 0, 2, 1, 1e-4).unwrap(), 0.0);
        assert_eq!(nilpotency_index(&a3.ad_matrix(0).unwrap()), Some(2));
    }

    #[test]
    fn a1_exponential_entry() {
        let a1 = fixtures::a1().algebra;
        assert_eq!(nilpotency_index(&a1.ad_matrix(0).unwrap()), None);
        let r = numeric_differential_check(&a1, 0, 1, 1, 1e-4).unwrap();
        assert!(r <= 1e-6, "{r}");
    }

    #[test]
    fn nilpotent_off_bracket_entries_vanish() {
        let a3 = fixtures::a3().algebra;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(numeric_differential_check(&a3, k, i, j, 1e-3).unwrap(), 0.0);
                }
            }
        }
    }

    #[test]
    fn rejects_non_lie() {
        let a2 = fixtures::a2().algebra;
        assert!(matches!(
            numeric_differential_check(&a2, 0, 0, 0, 1e-4),
            Err(Error::NotLie)
        ));
    }
}
