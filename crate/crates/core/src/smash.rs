//! The smash product `O(Aut(h)) # U(h_Lie)` and the coaction `lambda`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::matrix::QMatrix;
use crate::pairing::{CoactionLegs, PairingContext};
use crate::pbw::{PbwElement, PbwMonomial};
use crate::poly::{fmt_monomial, GenVar, Monomial, Poly};
use crate::scalar::Scalar;

/// `sum f_a # u_a` with `f_a` monomials of `B_n` and `u_a` PBW monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashElement {
    n: usize,
    terms: BTreeMap<(Monomial, PbwMonomial), Scalar>,
}

impl SmashElement {
    pub fn zero(n: usize) -> Self {
        SmashElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::pure(&Poly::one(n), &PbwElement::one())
    }

    /// `f # u`.
    pub fn pure(f: &Poly, u: &PbwElement) -> Self {
        let mut s = Self::zero(f.n());
        for (m, c) in f.terms() {
            for (w, d) in u.terms() {
                s.add_term(m.clone(), w.clone(), c * d);
            }
        }
        s
    }

    /// `f # 1`.
    pub fn from_h(f: &Poly) -> Self {
        Self::pure(f, &PbwElement::one())
    }

    /// `1 # u`.
    pub fn from_u(n: usize, u: &PbwElement) -> Self {
        Self::pure(&Poly::one(n), u)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, m: Monomial, w: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (m, w);
        let v = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &PbwMonomial, &Scalar)> {
        self.terms.iter().map(|((m, w), c)| (m, w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SmashElement) -> SmashElement {
        let mut out = self.clone();
        for ((m, w), c) in &other.terms {
            out.add_term(m.clone(), w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SmashElement) -> SmashElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> SmashElement {
        let mut out = SmashElement::zero(self.n);
        for ((m, w), c) in &self.terms {
            out.add_term(m.clone(), w.clone(), c * s);
        }
        out
    }

    /// The `H`-leg polynomial in front of each PBW monomial.
    pub fn h_components(&self) -> BTreeMap<PbwMonomial, Poly> {
        let mut acc: BTreeMap<PbwMonomial, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for ((m, w), c) in &self.terms {
            acc.entry(w.clone()).or_default().push((m.clone(), c.clone()));
        }
        acc.into_iter()
            .map(|(w, ts)| (w, Poly::from_terms(self.n, ts)))
            .collect()
    }

    /// Rebuilds from `H`-leg polynomials.
    pub fn from_components(n: usize, comps: &BTreeMap<PbwMonomial, Poly>) -> Self {
        let mut s = SmashElement::zero(n);
        for (w, p) in comps {
            for (m, c) in p.terms() {
                s.add_term(m.clone(), w.clone(), c.clone());
            }
        }
        s
    }

    /// Evaluates the `H` legs at an automorphism.
    pub fn evaluate(&self, m: &QMatrix, minv: &QMatrix) -> PbwElement {
        let mut out = PbwElement::zero();
        for (w, p) in self.h_components() {
            out.add_term(w, p.evaluate_unchecked(m, minv));
        }
        out
    }

    /// `(epsilon (x) id)`: evaluation of the `H` legs at the identity.
    pub fn counit_h_leg(&self) -> PbwElement {
        let id = QMatrix::identity(self.n);
        self.evaluate(&id, &id)
    }
}

impl fmt::Display for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = |m: &Monomial, w: &PbwMonomial| {
            let h = if m.is_one() {
                "1".to_string()
            } else {
                fmt_monomial(m, self.n)
            };
            let u = if w.is_one() { "1".to_string() } else { w.to_string() };
            format!("{h}#{u}")
        };
        crate::poly::fmt_terms(f, self.terms.iter().map(|((m, w), c)| (body(m, w), c)))
    }
}

/// `sum f # g # u`, the target of `(Delta (x) id) lambda`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmashTensor {
    terms: BTreeMap<(Monomial, Monomial, PbwMonomial), Scalar>,
}

impl SmashTensor {
    pub fn add_term(&mut self, a: Monomial, b: Monomial, w: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b, w);
        let v = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn sub(&self, other: &SmashTensor) -> SmashTensor {
        let mut out = self.clone();
        for ((a, b, w), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), w.clone(), -c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &PbwMonomial, &Scalar)> {
        self.terms.iter().map(|((a, b, w), c)| (a, b, w, c))
    }

    pub fn display(&self, n: usize) -> String {
        let leg = |m: &Monomial| {
            if m.is_one() {
                "1".to_string()
            } else {
                fmt_monomial(m, n)
            }
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b, w), c)| format!("({c}) {} (x) {} # {}", leg(a), leg(b), w))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl PairingContext {
    /// `(h # a)(k # b) = sum h k_(1) # (a <| k_(2)) b`.
    pub fn smash_mul(&self, x: &SmashElement, y: &SmashElement) -> SmashElement {
        let n = self.n();
        let mut out = SmashElement::zero(n);
        let mut cop_cache: BTreeMap<&Monomial, Vec<(Monomial, Monomial, Scalar)>> = BTreeMap::new();
        for (k, _, _) in y.terms() {
            cop_cache.entry(k).or_insert_with(|| {
                self.oaut
                    .coproduct(&Poly::monomial(n, k.clone(), Scalar::one()))
                    .terms()
                    .map(|(a, b, c)| (a.clone(), b.clone(), c.clone()))
                    .collect()
            });
        }
        for (h, a, c1) in x.terms() {
            for (k, b, c2) in y.terms() {
                let c12 = c1 * c2;
                let be = PbwElement::monomial(b.clone(), Scalar::one());
                for (k1, k2, c3) in &cop_cache[k] {
                    let acted = self.act_monomial(a, k2);
                    if acted.is_zero() {
                        continue;
                    }
                    let prod = self.uea.mul(&acted, &be);
                    let hk = h.mul(k1);
                    for (w, c4) in prod.terms() {
                        out.add_term(hk.clone(), w.clone(), &c12 * c3 * c4);
                    }
                }
            }
        }
        out
    }

    pub fn smash_mul_all(&self, factors: &[&SmashElement]) -> SmashElement {
        factors
            .iter()
            .fold(SmashElement::one(self.n()), |acc, f| self.smash_mul(&acc, f))
    }

    /// `lambda(x_j) = sum_i L^i_j # q(x_i)` for `x_j` in `h`, with
    /// `L = Gbar` or `G` according to [`CoactionLegs`].
    pub fn coaction_h_generator(&self, j: usize) -> SmashElement {
        let n = self.n();
        let mut s = SmashElement::zero(n);
        for i in 0..n {
            let var = match self.legs {
                CoactionLegs::Gbar => GenVar::gbar(i, j),
                CoactionLegs::G => GenVar::g(i, j),
            };
            let mut unit = vec![Scalar::zero(); n];
            unit[i] = Scalar::one();
            s = s.add(&SmashElement::pure(&Poly::var(n, var), &self.image(&unit)));
        }
        s
    }

    /// `lambda` on a basis vector of `h_Lie`, through the chosen lift.
    pub fn coaction_generator(&self, a: usize) -> SmashElement {
        let n = self.n();
        let mut s = SmashElement::zero(n);
        for k in 0..n {
            let c = &self.lq.lift[(k, a)];
            if !c.is_zero() {
                s = s.add(&self.coaction_h_generator(k).scale(c));
            }
        }
        s
    }

    /// `lambda(x_{w_1} ... x_{w_r}) = lambda(x_{w_r}) ... lambda(x_{w_1})`.
    pub fn coaction_monomial(&self, w: &PbwMonomial) -> SmashElement {
        if w.is_one() {
            return SmashElement::one(self.n());
        }
        if let Some(hit) = self.lambda_memo.lock().expect("memo").get(w) {
            return hit.clone();
        }
        let letters = w.letters();
        let rest = PbwMonomial::from_sorted(letters[1..].to_vec());
        let out = self.smash_mul(&self.coaction_monomial(&rest), &self.coaction_generator(letters[0]));
        self.lambda_memo.lock().expect("memo").insert(w.clone(), out.clone());
        out
    }

    pub fn coaction(&self, u: &PbwElement) -> SmashElement {
        let mut out = SmashElement::zero(self.n());
        for (w, c) in u.terms() {
            out = out.add(&self.coaction_monomial(w).scale(c));
        }
        out
    }

    /// `a <| (h # b) = (a <| h) b`.
    pub fn extended_act(&self, a: &PbwElement, s: &SmashElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (h, b, c) in s.terms() {
            let mut acted = PbwElement::zero();
            for (w, d) in a.terms() {
                acted = acted.add(&self.act_monomial(w, h).scale(d));
            }
            if acted.is_zero() {
                continue;
            }
            let be = PbwElement::monomial(b.clone(), c.clone());
            out = out.add(&self.uea.mul(&acted, &be));
        }
        out
    }

    /// Normal forms of all `H` legs.
    pub fn smash_normal_form(&self, s: &SmashElement) -> SmashElement {
        let comps: BTreeMap<PbwMonomial, Poly> = s
            .h_components()
            .into_iter()
            .map(|(w, p)| (w, self.oaut.normal_form(&p)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        SmashElement::from_components(self.n(), &comps)
    }

    /// `s` vanishes in `O(Aut(h)) # U(h_Lie)`.
    pub fn smash_is_zero(&self, s: &SmashElement) -> bool {
        s.h_components().values().all(|p| self.oaut.contains(p))
    }

    pub fn smash_eq(&self, a: &SmashElement, b: &SmashElement) -> bool {
        self.smash_is_zero(&a.sub(b))
    }

    /// `(Delta (x) id)(s)`.
    pub fn delta_h_leg(&self, s: &SmashElement) -> SmashTensor {
        let n = self.n();
        let mut out = SmashTensor::default();
        for (h, w, c) in s.terms() {
            for (a, b, d) in self
                .oaut
                .coproduct(&Poly::monomial(n, h.clone(), Scalar::one()))
                .terms()
            {
                out.add_term(a.clone(), b.clone(), w.clone(), c * d);
            }
        }
        out
    }

    /// `(id (x) lambda)(s)`.
    pub fn lambda_u_leg(&self, s: &SmashElement) -> SmashTensor {
        let mut out = SmashTensor::default();
        for (h, w, c) in s.terms() {
            for (k, v, d) in self.coaction_monomial(w).terms() {
                out.add_term(h.clone(), k.clone(), v.clone(), c * d);
            }
        }
        out
    }

    /// Vanishing in `O (x) O (x) U`: normal forms on both `H` legs.
    pub fn smash_tensor_is_zero(&self, t: &SmashTensor) -> bool {
        self.smash_tensor_normal_form(t).is_zero()
    }

    pub fn smash_tensor_normal_form(&self, t: &SmashTensor) -> SmashTensor {
        let n = self.n();
        let mut by_right: BTreeMap<(Monomial, PbwMonomial), Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for (a, b, w, c) in t.terms() {
            by_right
                .entry((b.clone(), w.clone()))
                .or_default()
                .push((a.clone(), c.clone()));
        }
        let mut stage = SmashTensor::default();
        for ((b, w), ts) in by_right {
            let left = self.oaut.normal_form(&Poly::from_terms(n, ts));
            for (a, c) in left.terms() {
                stage.add_term(a.clone(), b.clone(), w.clone(), c.clone());
            }
        }
        let mut by_left: BTreeMap<(Monomial, PbwMonomial), Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for (a, b, w, c) in stage.terms() {
            by_left
                .entry((a.clone(), w.clone()))
                .or_default()
                .push((b.clone(), c.clone()));
        }
        let mut out = SmashTensor::default();
        for ((a, w), ts) in by_left {
            let right = self.oaut.normal_form(&Poly::from_terms(n, ts));
            for (b, c) in right.terms() {
                out.add_term(a.clone(), b.clone(), w.clone(), c.clone());
            }
        }
        out
    }

    /// Evaluates both `H` legs, at `(m1, m2)`.
    pub fn smash_tensor_evaluate(
        &self,
        t: &SmashTensor,
        m1: (&QMatrix, &QMatrix),
        m2: (&QMatrix, &QMatrix),
    ) -> PbwElement {
        let n = self.n();
        let mut out = PbwElement::zero();
        for (a, b, w, c) in t.terms() {
            let va = Poly::monomial(n, a.clone(), Scalar::one()).evaluate_unchecked(m1.0, m1.1);
            if va.is_zero() {
                continue;
            }
            let vb = Poly::monomial(n, b.clone(), Scalar::one()).evaluate_unchecked(m2.0, m2.1);
            out.add_term(w.clone(), c * va * vb);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groebner::DEFAULT_DEGREE_CAP;

    fn ctx(f: &fixtures::Fixture) -> PairingContext {
        PairingContext::new(f.name, &f.algebra, DEFAULT_DEGREE_CAP).unwrap()
    }

    #[test]
    fn trivial_legs() {
        let c = ctx(&fixtures::a1());
        let x1 = SmashElement::from_u(2, &PbwElement::generator(0));
        let x2 = SmashElement::from_u(2, &PbwElement::generator(1));
        let x1x2 = c.uea.mul(&PbwElement::generator(0), &PbwElement::generator(1));
        assert_eq!(c.smash_mul(&x1, &x2), SmashElement::from_u(2, &x1x2));

        let c0 = ctx(&fixtures::a0());
        let g = SmashElement::from_h(&Poly::g(1, 0, 0));
        assert_eq!(c0.smash_mul(&g, &g), SmashElement::from_h(&Poly::g(1, 0, 0).pow(2)));
    }

    #[test]
    fn a1_hand_expansion() {
        // (1 # x1)(G^2_2 # 1) = sum_k G^2_k # (x1 <| G^k_2)
        //   = G^2_1 # <x1, G^1_2> + G^2_2 # (x1 + <x1, G^2_2>)
        //   = G^2_2 # x1 + G^2_2 # 1, since C^1_{12} = 0 and C^2_{12} = 1.
        let c = ctx(&fixtures::a1());
        let lhs = c.smash_mul(
            &SmashElement::from_u(2, &PbwElement::generator(0)),
            &SmashElement::from_h(&Poly::g(2, 1, 1)),
        );
        let g22 = Poly::g(2, 1, 1);
        let rhs = SmashElement::pure(&g22, &PbwElement::generator(0)).add(&SmashElement::from_h(&g22));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coaction_examples() {
        let c = ctx(&fixtures::a1());
        assert_eq!(c.coaction(&PbwElement::one()), SmashElement::one(2));
        let expected = SmashElement::pure(&Poly::gbar(2, 0, 0), &PbwElement::generator(0))
            .add(&SmashElement::pure(&Poly::gbar(2, 1, 0), &PbwElement::generator(1)));
        assert_eq!(c.coaction(&PbwElement::generator(0)), expected);

        // A2: lambda(x_2) = Gbar^1_2 # x1, and Gbar^1_2 lies in the ideal.
        let c2 = ctx(&fixtures::a2());
        let l = c2.coaction_h_generator(1);
        assert_eq!(l, SmashElement::pure(&Poly::gbar(2, 0, 1), &PbwElement::generator(0)));
        assert!(c2.smash_is_zero(&l));
    }

    #[test]
    fn extended_action_examples() {
        let c = ctx(&fixtures::a1());
        let x1 = PbwElement::generator(0);
        let x2 = PbwElement::generator(1);
        assert_eq!(c.extended_act(&x1, &SmashElement::one(2)), x1);
        assert_eq!(c.extended_act(&x2, &c.coaction(&x1)), c.uea.mul(&x1, &x2));
        assert_eq!(c.extended_act(&PbwElement::one(), &c.coaction(&x2)), x2);
    }
}
