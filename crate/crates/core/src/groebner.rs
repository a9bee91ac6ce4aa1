//! Buchberger's algorithm over `B_n` with degrevlex order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;

pub const DEFAULT_DEGREE_CAP: u32 = 12;

/// A reduced Groebner basis: monic, inter-reduced, sorted by decreasing
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    n: usize,
    gens: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Full reduction of `p` modulo `basis`, returning the remainder.
fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    if p.is_zero() || basis.is_empty() {
        return p.clone();
    }
    let n = p.n();
    let mut work: BTreeMap<Monomial, Scalar> = p.terms().iter().cloned().collect();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        let divisor = basis
            .iter()
            .find(|g| g.leading().map(|(lm, _)| lm.divides(&m)).unwrap_or(false));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading().expect("nonzero divisor");
                let q = lm.quotient_of(&m);
                let factor = &c / lc;
                for (t, tc) in &g.terms()[1..] {
                    let key = t.mul(&q);
                    let v = work.entry(key.clone()).or_insert_with(Scalar::zero);
                    *v -= &factor * tc;
                    if v.is_zero() {
                        work.remove(&key);
                    }
                }
            }
            None => rem.push((m, c)),
        }
    }
    Poly::from_sorted(n, rem)
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (lf, cf) = f.leading().expect("nonzero");
    let (lg, cg) = g.leading().expect("nonzero");
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&l), &(Scalar::one() / cf));
    let b = g.mul_term(&lg.quotient_of(&l), &(Scalar::one() / cg));
    a.sub(&b)
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`.
/// Fails with [`Error::DegreeCapExceeded`] if an S-pair of degree above
/// `degree_cap` has to be processed.
pub fn buchberger(gens: &[Poly], degree_cap: u32) -> Result<GroebnerBasis> {
    let n = gens
        .first()
        .map(|g| g.n())
        .ok_or_else(|| Error::Dimension("empty generating set".into()))?;
    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: BTreeSet<Pair> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |p: Poly, basis: &mut Vec<Poly>, pairs: &mut BTreeSet<Pair>| {
        let p = p.monic();
        let k = basis.len();
        let lp = p.leading().expect("nonzero").0.clone();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g.leading().expect("nonzero").0.lcm(&lp);
            pairs.insert(Pair { lcm, i, j: k });
        }
        basis.push(p);
    };

    let mut inputs: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    inputs.sort_by(|a, b| a.leading().unwrap().0.cmp(&b.leading().unwrap().0));
    for g in inputs {
        if g.degree() > degree_cap {
            return Err(Error::DegreeCapExceeded {
                cap: degree_cap,
                degree: g.degree(),
            });
        }
        let r = reduce(&g, &basis);
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs);
        }
    }

    while let Some(pair) = pairs.pop_first() {
        let Pair { lcm, i, j } = pair;
        done.insert((i, j));
        let (li, lj) = (
            basis[i].leading().unwrap().0.clone(),
            basis[j].leading().unwrap().0.clone(),
        );
        if li.coprime(&lj) {
            continue;
        }
        // Chain criterion: some third leading monomial divides the lcm and
        // both companion pairs are already handled.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().unwrap().0.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        if lcm.degree() > degree_cap {
            return Err(Error::DegreeCapExceeded {
                cap: degree_cap,
                degree: lcm.degree(),
            });
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs);
        }
    }

    Ok(GroebnerBasis {
        n,
        gens: interreduce(basis),
    })
}

fn interreduce(basis: Vec<Poly>) -> Vec<Poly> {
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = &g.leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let lh = &h.leading().unwrap().0;
            k != i && lh.divides(lg) && (lh != lg || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<Poly> = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, h)| h.clone())
            .collect();
        let (lm, lc) = g.leading().unwrap();
        let tail = Poly::from_sorted(g.n(), g.terms()[1..].to_vec());
        let head = Poly::monomial(g.n(), lm.clone(), lc.clone());
        out.push(head.add(&reduce(&tail, &others)).monic());
    }
    out.sort_by(|a, b| b.leading().unwrap().0.cmp(&a.leading().unwrap().0));
    out
}

impl GroebnerBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Remainder of multivariate division; zero iff `p` is in the ideal.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        reduce(p, &self.gens)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// True iff the constant 1 is not in the ideal.
    pub fn is_proper(&self) -> bool {
        !self.contains(&Poly::one(self.n))
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_s_pair_criterion(&self) -> bool {
        for i in 0..self.gens.len() {
            for j in (i + 1)..self.gens.len() {
                if !self.contains(&s_polynomial(&self.gens[i], &self.gens[j])) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gens {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Poly {
        Poly::parse(n, s).unwrap()
    }

    #[test]
    fn single_linear_generator() {
        let gb = buchberger(&[p(1, "G[1,1] - 1")], DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(gb.gens(), &[p(1, "G[1,1] - 1")]);
    }

    #[test]
    fn toy_ideal_matches_hand_run() {
        // x = G[1,1], y = Gbar[1,1]; S(x^2, xy) = 0 and S(xy, y^2 - x) = x^2,
        // so the input is already a reduced basis.
        let gens = [p(1, "G[1,1]^2"), p(1, "G[1,1]*Gbar[1,1]"), p(1, "Gbar[1,1]^2 - G[1,1]")];
        let gb = buchberger(&gens, DEFAULT_DEGREE_CAP).unwrap();
        let mut expected = gens.to_vec();
        expected.sort_by(|a, b| b.leading().unwrap().0.cmp(&a.leading().unwrap().0));
        assert_eq!(gb.gens(), &expected[..]);
        assert!(gb.satisfies_s_pair_criterion());
        assert!(gb.contains(&p(1, "Gbar[1,1]^3")));
        assert!(!gb.contains(&p(1, "Gbar[1,1]")));
    }

    #[test]
    fn twisted_cubic_closure() {
        // x = G[1,1], y = G[1,2], z = G[2,1], w = G[2,2] in B_2.
        let gens = [p(2, "G[1,1]*G[2,1] - G[1,2]^2"), p(2, "G[1,2]*G[2,2] - G[2,1]^2")];
        let gb = buchberger(&gens, DEFAULT_DEGREE_CAP).unwrap();
        assert!(gb.satisfies_s_pair_criterion());
        for g in &gens {
            assert!(gb.contains(g));
        }
        for g in gb.gens() {
            assert_eq!(g.leading().unwrap().1, Scalar::one());
        }
    }

    #[test]
    fn degree_cap_is_reported() {
        let gens = [p(1, "G[1,1]^3 - Gbar[1,1]"), p(1, "G[1,1]*Gbar[1,1]^3 - 1")];
        assert!(matches!(
            buchberger(&gens, 3),
            Err(Error::DegreeCapExceeded { cap: 3, .. })
        ));
    }

    #[test]
    fn normal_form_is_idempotent() {
        let gens = [p(1, "G[1,1]*Gbar[1,1] - 1")];
        let gb = buchberger(&gens, DEFAULT_DEGREE_CAP).unwrap();
        let f = p(1, "G[1,1]^2*Gbar[1,1]^3 + 2*G[1,1]");
        let r = gb.normal_form(&f);
        assert_eq!(gb.normal_form(&r), r);
        assert_eq!(r, p(1, "Gbar[1,1] + 2*G[1,1]"));
    }
}
