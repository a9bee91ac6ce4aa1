//! The Hopf algebra `O(Aut(h)) = B_n / I_Aut`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::leibniz::{BasisChange, LeibnizAlgebra};
use crate::matrix::QMatrix;
use crate::poly::{fmt_monomial, GenVar, Monomial, Poly, VarKind};
use crate::scalar::Scalar;

/// Generators of `I_Aut`: the automorphism relations and both inverse
/// relations, with zero polynomials dropped and duplicates removed.
pub fn aut_ideal_generators(alg: &LeibnizAlgebra) -> Vec<Poly> {
    let n = alg.dim();
    let g = |i, j| Poly::g(n, i, j);
    let gb = |i, j| Poly::gbar(n, i, j);
    let mut out: Vec<Poly> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut p = Poly::zero(n);
                for l in 0..n {
                    for m in 0..n {
                        let c = alg.c(k, l, m);
                        if !c.is_zero() {
                            p = p.add(&g(l, i).mul(&g(m, j)).scale(c));
                        }
                    }
                }
                for r in 0..n {
                    let c = alg.c(r, i, j);
                    if !c.is_zero() {
                        p = p.sub(&g(k, r).scale(c));
                    }
                }
                out.push(p);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { Scalar::one() } else { Scalar::zero() };
            let mut a = Poly::constant(n, -delta.clone());
            let mut b = Poly::constant(n, -delta);
            for k in 0..n {
                a = a.add(&g(i, k).mul(&gb(k, j)));
                b = b.add(&gb(i, k).mul(&g(k, j)));
            }
            out.push(a);
            out.push(b);
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.into_iter()
        .filter(|p| !p.is_zero() && seen.insert(p.clone()))
        .collect()
}

/// Residues of the relations that follow from the presentation:
/// `psi [psi^-1 x_k, x_j] = [x_k, psi x_j]` and the automorphism property of
/// the inverse matrix.
pub fn derived_relation_residues(alg: &LeibnizAlgebra) -> Vec<Poly> {
    let n = alg.dim();
    let g = |i, j| Poly::g(n, i, j);
    let gb = |i, j| Poly::gbar(n, i, j);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut p = Poly::zero(n);
                for m in 0..n {
                    for q in 0..n {
                        let c = alg.c(q, m, j);
                        if !c.is_zero() {
                            p = p.add(&g(i, q).mul(&gb(m, k)).scale(c));
                        }
                    }
                    let c = alg.c(i, k, m);
                    if !c.is_zero() {
                        p = p.sub(&g(m, j).scale(c));
                    }
                }
                out.push(p);

                let mut p = Poly::zero(n);
                for l in 0..n {
                    for m in 0..n {
                        let c = alg.c(k, l, m);
                        if !c.is_zero() {
                            p = p.add(&gb(l, i).mul(&gb(m, j)).scale(c));
                        }
                    }
                }
                for r in 0..n {
                    let c = alg.c(r, i, j);
                    if !c.is_zero() {
                        p = p.sub(&gb(k, r).scale(c));
                    }
                }
                out.push(p);
            }
        }
    }
    out
}

/// True iff `m` is invertible and preserves the bracket.
pub fn is_automorphism(alg: &LeibnizAlgebra, m: &QMatrix) -> bool {
    let n = alg.dim();
    if m.rows() != n || !m.is_square() || m.inverse().is_err() {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = m.mul_vec(&alg.bracket_basis(i, j));
            let rhs = alg.bracket(&m.column(i), &m.column(j));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Element of `B_n (x) B_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HTensor {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl HTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(a: &Poly, b: &Poly) -> Self {
        let mut t = Self::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.add_term(ma.clone(), mb.clone(), ca * cb);
            }
        }
        t
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: Scalar) {
        let key = (a, b);
        let v = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &HTensor) -> HTensor {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> HTensor {
        let mut out = HTensor::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &HTensor) -> HTensor {
        let mut out = HTensor::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.mul(a2), b1.mul(b2), c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &Scalar)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    /// Applies `f (x) g` leg-wise and collects the result.
    pub fn map_legs(&self, n: usize, f: impl Fn(&Poly) -> Poly, g: impl Fn(&Poly) -> Poly) -> HTensor {
        let mut out = HTensor::zero();
        for ((a, b), c) in &self.terms {
            let fa = f(&Poly::monomial(n, a.clone(), Scalar::one()));
            let gb = g(&Poly::monomial(n, b.clone(), Scalar::one()));
            out = out.add(&HTensor::pure(&fa, &gb).scale(c));
        }
        out
    }

    /// Contracts with a bilinear form on legs.
    pub fn contract(&self, mut f: impl FnMut(&Monomial, &Monomial) -> Scalar) -> Scalar {
        self.terms
            .iter()
            .fold(Scalar::zero(), |acc, ((a, b), c)| acc + c * f(a, b))
    }

    pub fn display(&self, n: usize) -> String {
        struct D<'a>(&'a HTensor, usize);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let body = |m: &Monomial| {
                    if m.is_one() {
                        "1".to_string()
                    } else {
                        fmt_monomial(m, self.1)
                    }
                };
                crate::poly::fmt_terms(
                    f,
                    self.0
                        .terms
                        .iter()
                        .rev()
                        .map(|((a, b), c)| (format!("{} (x) {}", body(a), body(b)), c)),
                )
            }
        }
        D(self, n).to_string()
    }
}

/// `O(Aut(h))` presented by `B_n` and a Groebner basis of `I_Aut`.
#[derive(Clone, Debug)]
pub struct OAut {
    alg: LeibnizAlgebra,
    gens: Vec<Poly>,
    gb: GroebnerBasis,
}

impl OAut {
    pub fn new(alg: &LeibnizAlgebra, degree_cap: u32) -> Result<Self> {
        alg.require_leibniz()?;
        let gens = aut_ideal_generators(alg);
        let gb = buchberger(&gens, degree_cap)?;
        Ok(OAut {
            alg: alg.clone(),
            gens,
            gb,
        })
    }

    pub fn n(&self) -> usize {
        self.alg.dim()
    }

    pub fn algebra(&self) -> &LeibnizAlgebra {
        &self.alg
    }

    pub fn ideal_generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.gb.normal_form(p)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.gb.contains(p)
    }

    /// Image of `p (x) q` in `O (x) O`, via normal forms on both legs. Zero
    /// exactly when the tensor lies in `I (x) B + B (x) I`.
    pub fn tensor_normal_form(&self, t: &HTensor) -> HTensor {
        let n = self.n();
        t.map_legs(n, |p| self.normal_form(p), |p| self.normal_form(p))
    }

    pub fn coproduct(&self, p: &Poly) -> HTensor {
        coproduct_h(p)
    }

    pub fn counit(&self, p: &Poly) -> Scalar {
        counit_h(p)
    }

    pub fn antipode(&self, p: &Poly) -> Poly {
        antipode_h(p)
    }

    /// `Delta(g)` vanishes in `O (x) O` for every ideal generator.
    pub fn is_hopf_ideal(&self) -> bool {
        self.gens.iter().all(|g| {
            self.tensor_normal_form(&coproduct_h(g)).is_zero() && counit_h(g).is_zero() && self.contains(&antipode_h(g))
        })
    }
}

fn generator_coproduct(n: usize, v: GenVar) -> HTensor {
    let mut t = HTensor::zero();
    let nv = 2 * n * n;
    for k in 0..n {
        let (a, b) = match v.kind {
            VarKind::G => (GenVar::g(v.upper, k), GenVar::g(k, v.lower)),
            VarKind::Gbar => (GenVar::gbar(k, v.lower), GenVar::gbar(v.upper, k)),
        };
        t.add_term(
            Monomial::var(nv, a.index(n)),
            Monomial::var(nv, b.index(n)),
            Scalar::one(),
        );
    }
    t
}

/// Algebra-map extension of `Delta(G^i_j) = sum_k G^i_k (x) G^k_j` and
/// `Delta(Gbar^i_j) = sum_k Gbar^k_j (x) Gbar^i_k`.
pub fn coproduct_h(p: &Poly) -> HTensor {
    let n = p.n();
    let nv = p.nvars();
    let gens: Vec<HTensor> = GenVar::all(n).map(|v| generator_coproduct(n, v)).collect();
    let mut out = HTensor::zero();
    for (m, c) in p.terms() {
        let mut t = HTensor::zero();
        t.add_term(Monomial::one(nv), Monomial::one(nv), c.clone());
        for v in m.factors() {
            t = t.mul(&gens[v]);
        }
        out = out.add(&t);
    }
    out
}

/// Evaluation at the identity matrix.
pub fn counit_h(p: &Poly) -> Scalar {
    let n = p.n();
    let id = QMatrix::identity(n);
    p.evaluate_unchecked(&id, &id)
}

/// Algebra-map extension of `G <-> Gbar`.
pub fn antipode_h(p: &Poly) -> Poly {
    let n = p.n();
    p.substitute(&|v: GenVar| Poly::var(n, v.swapped()))
}

/// Substitution expressing the generators of the changed basis
/// `x'_j = sum_i T^i_j x_i` in terms of the old ones:
/// `G'^i_j -> (T^-1 G T)^i_j`, and likewise for `Gbar`. Indexed by
/// [`GenVar::index`].
pub fn basis_change_generators(t: &BasisChange) -> Vec<Poly> {
    let n = t.t.rows();
    GenVar::all(n)
        .map(|v| {
            let mut p = Poly::zero(n);
            for l in 0..n {
                for m in 0..n {
                    let c = &t.tinv[(v.upper, l)] * &t.t[(m, v.lower)];
                    if !c.is_zero() {
                        let var = GenVar {
                            kind: v.kind,
                            upper: l,
                            lower: m,
                        };
                        p = p.add(&Poly::var(n, var).scale(&c));
                    }
                }
            }
            p
        })
        .collect()
}

/// Applies a substitution table such as [`basis_change_generators`].
pub fn apply_substitution(p: &Poly, table: &[Poly]) -> Poly {
    let n = p.n();
    p.substitute(&|v: GenVar| table[v.index(n)].clone())
}

/// Rejects a malformed substitution table.
pub fn check_substitution(n: usize, table: &[Poly]) -> Result<()> {
    if table.len() != 2 * n * n || table.iter().any(|p| p.n() != n) {
        return Err(Error::Dimension("substitution table has wrong size".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::DEFAULT_DEGREE_CAP;
    use crate::leibniz::Chirality;
    use crate::scalar::int;

    fn a0() -> LeibnizAlgebra {
        LeibnizAlgebra::zero(1, Chirality::Left)
    }

    fn a1() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(2, Chirality::Left, [(0, 1, 1, int(1)), (1, 0, 1, int(-1))]).unwrap()
    }

    fn a2() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(2, Chirality::Left, [(0, 0, 1, int(1))]).unwrap()
    }

    fn p(n: usize, s: &str) -> Poly {
        Poly::parse(n, s).unwrap()
    }

    #[test]
    fn a0_generators() {
        let gens = aut_ideal_generators(&a0());
        assert_eq!(gens, vec![p(1, "G[1,1]*Gbar[1,1] - 1")]);
        let gb = buchberger(&gens, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(gb.gens(), &[p(1, "G[1,1]*Gbar[1,1] - 1")]);
    }

    #[test]
    fn a2_has_linear_generator() {
        let gens = aut_ideal_generators(&a2());
        assert!(gens.contains(&p(2, "-G[1,2]")));
        let h = OAut::new(&a2(), DEFAULT_DEGREE_CAP).unwrap();
        assert!(h.contains(&p(2, "Gbar[1,2]")));
        assert!(h.groebner().is_proper());
    }

    #[test]
    fn a1_bracket_relation_monomials() {
        // k = 2, (i, j) = (1, 2): G^1_1 G^2_2 - G^2_1 G^1_2 - G^2_2.
        let gens = aut_ideal_generators(&a1());
        assert!(gens.contains(&p(2, "G[1,1]*G[2,2] - G[2,1]*G[1,2] - G[2,2]")));
    }

    #[test]
    fn automorphism_examples() {
        let alg = a1();
        assert!(is_automorphism(&alg, &QMatrix::identity(2)));
        assert!(is_automorphism(&alg, &QMatrix::from_ints(&[&[1, 0], &[3, 2]])));
        assert!(!is_automorphism(&alg, &QMatrix::from_ints(&[&[2, 0], &[0, 1]])));
        let m = QMatrix::from_ints(&[&[1, 0], &[3, 2]]);
        let minv = m.inverse().unwrap();
        for g in aut_ideal_generators(&alg) {
            assert!(g.evaluate(&m, &minv).unwrap().is_zero());
        }
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct_h(&Poly::gbar(2, 0, 1));
        let expected = HTensor::pure(&Poly::gbar(2, 0, 1), &Poly::gbar(2, 0, 0))
            .add(&HTensor::pure(&Poly::gbar(2, 1, 1), &Poly::gbar(2, 0, 1)));
        assert_eq!(d, expected);
        assert_eq!(coproduct_h(&Poly::one(1)), HTensor::pure(&Poly::one(1), &Poly::one(1)));
    }

    #[test]
    fn counit_and_antipode() {
        assert_eq!(counit_h(&Poly::g(2, 1, 0)), int(0));
        assert_eq!(counit_h(&p(1, "G[1,1]*Gbar[1,1]")), int(1));
        assert_eq!(antipode_h(&Poly::g(2, 1, 0)), Poly::gbar(2, 1, 0));
        for alg in [a0(), a1(), a2()] {
            let h = OAut::new(&alg, DEFAULT_DEGREE_CAP).unwrap();
            assert!(h.is_hopf_ideal());
            for r in derived_relation_residues(&alg) {
                assert!(h.contains(&r));
            }
        }
    }

    #[test]
    fn basis_change_preserves_ideal() {
        let alg = a1();
        let t = BasisChange::new(QMatrix::from_ints(&[&[1, 0], &[1, 1]])).unwrap();
        let changed = alg.transform_basis(&t).unwrap();
        let table = basis_change_generators(&t);
        let h = OAut::new(&alg, DEFAULT_DEGREE_CAP).unwrap();
        for g in aut_ideal_generators(&changed) {
            assert!(h.contains(&apply_substitution(&g, &table)));
        }
        let id = basis_change_generators(&BasisChange::new(QMatrix::identity(2)).unwrap());
        for v in GenVar::all(2) {
            assert_eq!(id[v.index(2)], Poly::var(2, v));
        }
        let scalar = basis_change_generators(&BasisChange::new(QMatrix::from_ints(&[&[2]])).unwrap());
        assert_eq!(scalar[0], Poly::g(1, 0, 0));
    }
}
