//! `U(h_Lie)` in the PBW basis of sorted monomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::leibniz::LeibnizAlgebra;
use crate::quotient::LieQuotient;
use crate::scalar::{self, Scalar};

/// Nondecreasing sequence of basis indices (0-based); empty is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PbwMonomial(Vec<usize>);

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial(Vec::new())
    }

    pub fn from_sorted(word: Vec<usize>) -> Self {
        debug_assert!(word.windows(2).all(|w| w[0] <= w[1]));
        PbwMonomial(word)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// All sorted monomials in `m` letters of degree at most `max_degree`.
    pub fn all_up_to(m: usize, max_degree: usize) -> Vec<PbwMonomial> {
        let mut out = vec![PbwMonomial::one()];
        let mut layer = vec![Vec::<usize>::new()];
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for w in &layer {
                let start = w.last().copied().unwrap_or(0);
                for a in start..m {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned().map(PbwMonomial));
            layer = next;
        }
        out
    }

    /// `(sub, complement)` pairs over all subsets of positions; this is the
    /// coproduct of a product of primitive elements.
    pub fn splittings(&self) -> Vec<(PbwMonomial, PbwMonomial)> {
        split_word(&self.0)
            .into_iter()
            .map(|(a, b)| (PbwMonomial(a), PbwMonomial(b)))
            .collect()
    }
}

/// All `(w|S, w|S^c)` over subsets `S` of positions.
pub fn split_word(w: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let r = w.len();
    (0..1u64 << r)
        .map(|mask| {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (p, &x) in w.iter().enumerate() {
                if mask >> p & 1 == 1 {
                    a.push(x);
                } else {
                    b.push(x);
                }
            }
            (a, b)
        })
        .collect()
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_word(&self.0))
    }
}

fn fmt_word(w: &[usize]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut e = 1;
        while i + e < w.len() && w[i + e] == w[i] {
            e += 1;
        }
        parts.push(if e == 1 {
            format!("x{}", w[i] + 1)
        } else {
            format!("x{}^{}", w[i] + 1, e)
        });
        i += e;
    }
    parts.join(" ")
}

/// Finite rational combination of PBW monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PbwElement {
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl PbwElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::monomial(PbwMonomial::one(), c)
    }

    pub fn monomial(m: PbwMonomial, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    /// The degree-one element `x_a`.
    pub fn generator(a: usize) -> Self {
        Self::monomial(PbwMonomial(vec![a]), Scalar::one())
    }

    /// `sum_a v[a] x_a`.
    pub fn linear(v: &[Scalar]) -> Self {
        let mut e = Self::zero();
        for (a, c) in v.iter().enumerate() {
            e.add_term(PbwMonomial(vec![a]), c.clone());
        }
        e
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
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

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> PbwElement {
        let mut out = PbwElement::zero();
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * s);
        }
        out
    }

    /// `epsilon(u)`: the coefficient of the unit.
    pub fn counit(&self) -> Scalar {
        self.coeff(&PbwMonomial::one())
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs} * {m}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Element of the `k`-fold tensor power of `U`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UTensor {
    terms: BTreeMap<Vec<PbwMonomial>, Scalar>,
}

impl UTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, legs: Vec<PbwMonomial>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(legs.clone()).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&legs);
        }
    }

    pub fn pure(legs: &[&PbwElement]) -> Self {
        let mut acc: Vec<(Vec<PbwMonomial>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for leg in legs {
            let mut next = Vec::new();
            for (ms, c) in &acc {
                for (m, d) in leg.terms() {
                    let mut v = ms.clone();
                    v.push(m.clone());
                    next.push((v, c * d));
                }
            }
            acc = next;
        }
        let mut t = UTensor::zero();
        for (ms, c) in acc {
            t.add_term(ms, c);
        }
        t
    }

    pub fn add(&self, other: &UTensor) -> UTensor {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PbwMonomial>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map to leg `pos`.
    pub fn map_leg(&self, pos: usize, f: impl Fn(&PbwMonomial) -> UTensor) -> UTensor {
        let mut out = UTensor::zero();
        for (legs, c) in &self.terms {
            for (img, d) in f(&legs[pos]).terms() {
                let mut v: Vec<PbwMonomial> = legs[..pos].to_vec();
                v.extend(img.iter().cloned());
                v.extend(legs[pos + 1..].iter().cloned());
                out.add_term(v, c * d);
            }
        }
        out
    }
}

/// The enveloping algebra of a Lie algebra given by structure constants.
#[derive(Debug)]
pub struct Uea {
    m: usize,
    lie: LeibnizAlgebra,
    memo: Mutex<HashMap<Vec<usize>, PbwElement>>,
}

impl Clone for Uea {
    fn clone(&self) -> Self {
        Uea {
            m: self.m,
            lie: self.lie.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl Uea {
    pub fn new(lie: LeibnizAlgebra) -> Self {
        Uea {
            m: lie.dim(),
            lie,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_quotient(lq: &LieQuotient) -> Self {
        Uea {
            m: lq.m,
            ..Self::new(lq.c_lie.clone())
        }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn lie(&self) -> &LeibnizAlgebra {
        &self.lie
    }

    /// Normal form of a word in the generators, by rewriting the leftmost
    /// descent `x_b x_a -> x_a x_b + [x_b, x_a]`.
    pub fn normalize_word(&self, w: &[usize]) -> PbwElement {
        if w.windows(2).all(|p| p[0] <= p[1]) {
            return PbwElement::monomial(PbwMonomial(w.to_vec()), Scalar::one());
        }
        if let Some(hit) = self.memo.lock().expect("memo").get(w) {
            return hit.clone();
        }
        let p = w.windows(2).position(|p| p[0] > p[1]).expect("descent");
        let out = self.rewrite_at(w, p, |v| self.normalize_word(v));
        self.memo.lock().expect("memo").insert(w.to_vec(), out.clone());
        out
    }

    fn rewrite_at(&self, w: &[usize], p: usize, mut rec: impl FnMut(&[usize]) -> PbwElement) -> PbwElement {
        let (b, a) = (w[p], w[p + 1]);
        let mut swapped = w.to_vec();
        swapped.swap(p, p + 1);
        let mut out = rec(&swapped);
        for c in 0..self.lie.dim() {
            let k = self.lie.c(c, b, a);
            if k.is_zero() {
                continue;
            }
            let mut v = w[..p].to_vec();
            v.push(c);
            v.extend_from_slice(&w[p + 2..]);
            out = out.add(&rec(&v).scale(k));
        }
        out
    }

    /// Same normal form, rewriting a randomly chosen descent at each step.
    pub fn normalize_word_random(&self, w: &[usize], rng: &mut impl Rng) -> PbwElement {
        let descents: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]).collect();
        if descents.is_empty() {
            return PbwElement::monomial(PbwMonomial(w.to_vec()), Scalar::one());
        }
        let p = descents[rng.gen_range(0..descents.len())];
        let words: Vec<(Vec<usize>, Scalar)> = {
            let (b, a) = (w[p], w[p + 1]);
            let mut swapped = w.to_vec();
            swapped.swap(p, p + 1);
            let mut v = vec![(swapped, Scalar::one())];
            for c in 0..self.lie.dim() {
                let k = self.lie.c(c, b, a);
                if !k.is_zero() {
                    let mut x = w[..p].to_vec();
                    x.push(c);
                    x.extend_from_slice(&w[p + 2..]);
                    v.push((x, k.clone()));
                }
            }
            v
        };
        let mut out = PbwElement::zero();
        for (x, k) in words {
            out = out.add(&self.normalize_word_random(&x, rng).scale(&k));
        }
        out
    }

    /// Normal form of a linear combination of arbitrary words.
    pub fn normalize_words(&self, words: &[(Vec<usize>, Scalar)]) -> PbwElement {
        let mut out = PbwElement::zero();
        for (w, c) in words {
            out = out.add(&self.normalize_word(w).scale(c));
        }
        out
    }

    pub fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut w = ma.0.clone();
                w.extend_from_slice(&mb.0);
                out = out.add(&self.normalize_word(&w).scale(&(ca * cb)));
            }
        }
        out
    }

    pub fn mul_all(&self, factors: &[&PbwElement]) -> PbwElement {
        factors.iter().fold(PbwElement::one(), |acc, f| self.mul(&acc, f))
    }

    /// `Delta(u)`, the algebra map extending `x -> 1 (x) x + x (x) 1`.
    pub fn coproduct(&self, u: &PbwElement) -> UTensor {
        let mut t = UTensor::zero();
        for (m, c) in u.terms() {
            for (a, b) in m.splittings() {
                t.add_term(vec![a, b], c.clone());
            }
        }
        t
    }

    /// Antihomomorphism extending `x -> -x`.
    pub fn antipode(&self, u: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in u.terms() {
            let mut w = m.0.clone();
            w.reverse();
            let sign = if m.degree() % 2 == 0 { c.clone() } else { -c.clone() };
            out = out.add(&self.normalize_word(&w).scale(&sign));
        }
        out
    }

    /// Componentwise product in `U (x) ... (x) U`.
    pub fn tensor_mul(&self, a: &UTensor, b: &UTensor) -> UTensor {
        let mut out = UTensor::zero();
        for (la, ca) in a.terms() {
            for (lb, cb) in b.terms() {
                let legs: Vec<PbwElement> = la
                    .iter()
                    .zip(lb.iter())
                    .map(|(x, y)| {
                        let mut w = x.0.clone();
                        w.extend_from_slice(&y.0);
                        self.normalize_word(&w)
                    })
                    .collect();
                let refs: Vec<&PbwElement> = legs.iter().collect();
                for (k, c) in UTensor::pure(&refs).terms() {
                    out.add_term(k.clone(), c * ca * cb);
                }
            }
        }
        out
    }

    /// Parses `2 * x1 x2 - x2^2 + 1/3`; factors may be separated by spaces
    /// or `*`, and out-of-order words are normalized.
    pub fn parse(&self, s: &str) -> Result<PbwElement> {
        let m = self.m;
        let mut words: Vec<(Vec<usize>, Scalar)> = Vec::new();
        for (sign, term) in split_terms(s)? {
            let mut coeff = sign;
            let mut word = Vec::new();
            for tok in term.split(|ch: char| ch == '*' || ch.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                if let Some(rest) = tok.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (rest, "1"),
                    };
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad generator {tok:?}")))?;
                    let exp: usize = exp.parse().map_err(|_| Error::Parse(format!("bad exponent {tok:?}")))?;
                    if idx == 0 || idx > m {
                        return Err(Error::IndexOutOfRange { index: idx, n: m });
                    }
                    word.extend(std::iter::repeat_n(idx - 1, exp));
                } else {
                    coeff *= scalar::parse(tok)?;
                }
            }
            words.push((word, coeff));
        }
        Ok(self.normalize_words(&words))
    }

    /// Associativity of `mul` on all triples of monomials of total degree at
    /// most `max_total`.
    pub fn check_associativity(&self, max_total: usize) -> bool {
        let ms = PbwMonomial::all_up_to(self.m, max_total);
        for a in &ms {
            for b in &ms {
                for c in &ms {
                    if a.degree() + b.degree() + c.degree() > max_total {
                        continue;
                    }
                    let (ea, eb, ec) = (
                        PbwElement::monomial(a.clone(), Scalar::one()),
                        PbwElement::monomial(b.clone(), Scalar::one()),
                        PbwElement::monomial(c.clone(), Scalar::one()),
                    );
                    let l = self.mul(&self.mul(&ea, &eb), &ec);
                    let r = self.mul(&ea, &self.mul(&eb, &ec));
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn split_terms(s: &str) -> Result<Vec<(Scalar, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut sign = Scalar::one();
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.trim_end().ends_with(['^', '/']) {
            let t = cur.trim();
            if t.is_empty() || t.ends_with('*') {
                if ch == '-' {
                    sign = -sign;
                }
                continue;
            }
            out.push((sign, t.to_string()));
            cur.clear();
            sign = if ch == '-' { -Scalar::one() } else { Scalar::one() };
        } else {
            cur.push(ch);
        }
    }
    let t = cur.trim();
    if t.is_empty() {
        return Err(Error::Parse(format!("incomplete expression {s:?}")));
    }
    out.push((sign, t.to_string()));
    Ok(out)
}

/// Checks that every relator `l_[x_i,x_j] - l_i l_j + l_j l_i` of `T(h)`
/// maps to zero in `U(h_Lie)`, and that kernel vectors map to zero.
pub fn relator_wellformed(alg: &LeibnizAlgebra, lq: &LieQuotient, u: &Uea) -> bool {
    let n = alg.dim();
    let image = |v: &[Scalar]| -> PbwElement {
        if lq.m == 0 {
            return PbwElement::zero();
        }
        PbwElement::linear(&lq.q.mul_vec(v))
    };
    let unit = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    for i in 0..n {
        for j in 0..n {
            let xi = image(&unit(i));
            let xj = image(&unit(j));
            let br = image(&alg.bracket_basis(i, j));
            let r = br.sub(&u.mul(&xi, &xj)).add(&u.mul(&xj, &xi));
            if !r.is_zero() {
                return false;
            }
        }
    }
    lq.kernel_basis.iter().all(|v| image(v).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quotient::lie_quotient;
    use crate::scalar::int;
    use rand::SeedableRng;

    fn uea(f: &fixtures::Fixture) -> (LieQuotient, Uea) {
        let lq = lie_quotient(&f.algebra).unwrap();
        let u = Uea::from_quotient(&lq);
        (lq, u)
    }

    #[test]
    fn a1_reordering() {
        let (_, u) = uea(&fixtures::a1());
        let x1 = PbwElement::generator(0);
        let x2 = PbwElement::generator(1);
        let p = u.mul(&x2, &x1);
        assert_eq!(p, u.parse("x1 x2 - x2").unwrap());
        assert_eq!(p.to_string(), "-x2 + x1 x2");
    }

    #[test]
    fn heisenberg_reordering() {
        let (_, u) = uea(&fixtures::a3());
        let p = u.mul(&PbwElement::generator(1), &PbwElement::generator(0));
        assert_eq!(p, u.parse("x1*x2 - x3").unwrap());
    }

    #[test]
    fn unit_and_associativity() {
        for f in fixtures::all() {
            let (_, u) = uea(&f);
            let x = u.parse("x1 + 2 * x1^2").unwrap();
            assert_eq!(u.mul(&PbwElement::one(), &x), x);
            assert_eq!(u.mul(&x, &PbwElement::one()), x);
            assert!(u.check_associativity(4), "{}", f.name);
        }
    }

    #[test]
    fn coproduct_examples() {
        let (_, u) = uea(&fixtures::a1());
        let x1 = PbwElement::generator(0);
        let one = PbwElement::one();
        let d = u.coproduct(&x1);
        assert_eq!(d, UTensor::pure(&[&one, &x1]).add(&UTensor::pure(&[&x1, &one])));
        assert_eq!(u.coproduct(&one), UTensor::pure(&[&one, &one]));
        let sq = u.mul(&x1, &x1);
        let expected = UTensor::pure(&[&one, &sq])
            .add(&UTensor::pure(&[&x1, &x1]))
            .add(&UTensor::pure(&[&x1, &x1]))
            .add(&UTensor::pure(&[&sq, &one]));
        assert_eq!(u.coproduct(&sq), expected);
    }

    #[test]
    fn relators_vanish() {
        for f in fixtures::all() {
            let (lq, u) = uea(&f);
            assert!(relator_wellformed(&f.algebra, &lq, &u), "{}", f.name);
        }
    }

    #[test]
    fn random_rewriting_is_confluent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for f in [fixtures::a1(), fixtures::a3(), fixtures::a4()] {
            let (_, u) = uea(&f);
            let m = u.dim();
            for _ in 0..40 {
                let len = rng.gen_range(0..6);
                let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..m)).collect();
                assert_eq!(u.normalize_word_random(&w, &mut rng), u.normalize_word(&w));
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let (_, u) = uea(&fixtures::a3());
        let e = u.parse("3/2 * x1^2 x3 - 1 + x2").unwrap();
        assert_eq!(e.to_string(), "-1 + x2 + 3/2 * x1^2 x3");
        assert_eq!(u.parse(&e.to_string()).unwrap(), e);
        assert!(u.parse("x4").is_err());
        assert!(u.parse("x1 +").is_err());
        assert_eq!(e.counit(), int(-1));
    }
}
