//! Built-in test algebras with hand-parametrized automorphism families.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::leibniz::{Chirality, LeibnizAlgebra};
use crate::matrix::QMatrix;
use crate::scalar::{frac, int, Scalar};

/// A named algebra with a rational parametrization of (part of) its
/// automorphism group. The family returns `None` on degenerate parameters.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub algebra: LeibnizAlgebra,
    pub params: usize,
    pub family: fn(&[Scalar]) -> Option<QMatrix>,
    pub doc: &'static str,
}

fn entries(n: usize, chirality: Chirality, list: &[(usize, usize, usize, i64)]) -> LeibnizAlgebra {
    LeibnizAlgebra::from_entries(
        n,
        chirality,
        list.iter().map(|&(i, j, k, v)| (i - 1, j - 1, k - 1, int(v))),
    )
    .expect("fixture indices in range")
}

fn rows(r: Vec<Vec<Scalar>>) -> QMatrix {
    QMatrix::from_rows(r).expect("square family")
}

fn nonzero(s: &Scalar) -> Option<()> {
    (!s.is_zero()).then_some(())
}

/// n = 1, abelian.
pub fn a0() -> Fixture {
    Fixture {
        name: "A0",
        algebra: LeibnizAlgebra::zero(1, Chirality::Left),
        params: 1,
        family: |p| {
            nonzero(&p[0])?;
            Some(rows(vec![vec![p[0].clone()]]))
        },
        doc: "one-dimensional abelian; Aut = GL_1",
    }
}

/// `[x1, x2] = x2 = -[x2, x1]`.
pub fn a1() -> Fixture {
    Fixture {
        name: "A1",
        algebra: entries(2, Chirality::Left, &[(1, 2, 2, 1), (2, 1, 2, -1)]),
        params: 2,
        family: |p| {
            nonzero(&p[1])?;
            Some(rows(vec![
                vec![Scalar::one(), Scalar::zero()],
                vec![p[0].clone(), p[1].clone()],
            ]))
        },
        doc: "two-dimensional nonabelian Lie algebra; traces (-1, 0)",
    }
}

fn a2_family(p: &[Scalar]) -> Option<QMatrix> {
    nonzero(&p[0])?;
    Some(rows(vec![
        vec![p[0].clone(), Scalar::zero()],
        vec![p[1].clone(), &p[0] * &p[0]],
    ]))
}

/// `[x1, x1] = x2`, left Leibniz, not Lie.
pub fn a2() -> Fixture {
    Fixture {
        name: "A2",
        algebra: entries(2, Chirality::Left, &[(1, 1, 2, 1)]),
        params: 2,
        family: a2_family,
        doc: "left Leibniz, not Lie; kernel span{x2}, h_Lie one-dimensional; traces (0, 0)",
    }
}

/// Mirror of A2 read with right chirality.
pub fn a2r() -> Fixture {
    Fixture {
        name: "A2r",
        algebra: entries(2, Chirality::Right, &[(1, 1, 2, 1)]),
        params: 2,
        family: a2_family,
        doc: "right Leibniz, not Lie; kernel span{x2}; traces (0, 0)",
    }
}

/// Heisenberg: `[x1, x2] = x3 = -[x2, x1]`.
pub fn a3() -> Fixture {
    Fixture {
        name: "A3",
        algebra: entries(3, Chirality::Left, &[(1, 2, 3, 1), (2, 1, 3, -1)]),
        params: 6,
        family: |p| {
            let det = &p[0] * &p[3] - &p[1] * &p[2];
            nonzero(&det)?;
            let z = Scalar::zero();
            Some(rows(vec![
                vec![p[0].clone(), p[1].clone(), z.clone()],
                vec![p[2].clone(), p[3].clone(), z],
                vec![p[4].clone(), p[5].clone(), det],
            ]))
        },
        doc: "three-dimensional Heisenberg; ad x1, ad x2 nilpotent; traces (0, 0, 0)",
    }
}

/// `[x1, x2] = x2 = -[x2, x1]`, `[x1, x1] = x3`; left and right Leibniz,
/// not Lie, with `h_Lie` the two-dimensional nonabelian Lie algebra.
pub fn a4() -> Fixture {
    Fixture {
        name: "A4",
        algebra: entries(3, Chirality::Left, &[(1, 2, 2, 1), (2, 1, 2, -1), (1, 1, 3, 1)]),
        params: 3,
        family: |p| {
            nonzero(&p[2])?;
            let (o, z) = (Scalar::one(), Scalar::zero());
            Some(rows(vec![
                vec![o.clone(), z.clone(), z.clone()],
                vec![p[0].clone(), p[2].clone(), z.clone()],
                vec![p[1].clone(), z, o],
            ]))
        },
        doc: "non-Lie with kernel span{x3} and nonabelian quotient; traces (-1, 0, 0)",
    }
}

pub fn all() -> Vec<Fixture> {
    vec![a0(), a1(), a2(), a3(), a4(), a2r()]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name.eq_ignore_ascii_case(name))
}

/// A1 with `C^2_{21}` flipped to `+1`; violates the Leibniz identity.
pub fn corrupted_a1() -> LeibnizAlgebra {
    entries(2, Chirality::Left, &[(1, 2, 2, 1), (2, 1, 2, 1)])
}

/// `n = 1`, `[x, x] = x`; violates the Leibniz identity.
pub fn self_bracket_line() -> LeibnizAlgebra {
    entries(1, Chirality::Left, &[(1, 1, 1, 1)])
}

/// Random rational with numerator in `-9..=9` and denominator in `1..=7`.
pub fn random_rational(rng: &mut impl Rng) -> Scalar {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=7))
}

impl Fixture {
    /// The identity followed by `count` random members of the family.
    pub fn sample_automorphisms(&self, count: usize, seed: u64) -> Vec<QMatrix> {
        let n = self.algebra.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = vec![QMatrix::identity(n)];
        while out.len() < count + 1 {
            let p: Vec<Scalar> = (0..self.params).map(|_| random_rational(&mut rng)).collect();
            if let Some(m) = (self.family)(&p) {
                out.push(m);
            }
        }
        out
    }
}

/// Random invertible rational matrix with small entries.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> QMatrix {
    loop {
        let r: Vec<Vec<Scalar>> = (0..n).map(|_| (0..n).map(|_| random_rational(rng)).collect()).collect();
        let m = QMatrix::from_rows(r).expect("square");
        if m.inverse().is_ok() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oaut::is_automorphism;

    #[test]
    fn fixtures_are_leibniz_with_valid_families() {
        for f in all() {
            assert!(f.algebra.check_leibniz(), "{}", f.name);
            for m in f.sample_automorphisms(20, 7) {
                assert!(is_automorphism(&f.algebra, &m), "{} {}", f.name, m);
            }
        }
    }

    #[test]
    fn corrupted_inputs_fail() {
        assert!(!corrupted_a1().check_leibniz());
        assert!(!self_bracket_line().check_leibniz());
    }

    #[test]
    fn a4_properties() {
        let alg = a4().algebra;
        assert!(alg.with_chirality(Chirality::Right).check_leibniz());
        assert!(!alg.is_lie().unwrap());
        assert_eq!(alg.right_trace(0), int(-1));
        assert_eq!(alg.right_trace(1), int(0));
        let lq = crate::quotient::lie_quotient(&alg).unwrap();
        assert_eq!(lq.m, 2);
        assert_eq!(lq.kernel_basis, vec![vec![int(0), int(0), int(1)]]);
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = a3();
        assert_eq!(f.sample_automorphisms(5, 3), f.sample_automorphisms(5, 3));
    }
}
