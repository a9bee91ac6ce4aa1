//! Sparse commutative polynomials over the rationals in the `2n^2` matrix
//! entry variables `G^i_j`, `Gbar^i_j`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    G,
    Gbar,
}

/// One of the generator variables `G^i_j` or `Gbar^i_j` (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenVar {
    pub kind: VarKind,
    pub upper: usize,
    pub lower: usize,
}

impl GenVar {
    pub fn g(upper: usize, lower: usize) -> Self {
        GenVar {
            kind: VarKind::G,
            upper,
            lower,
        }
    }

    pub fn gbar(upper: usize, lower: usize) -> Self {
        GenVar {
            kind: VarKind::Gbar,
            upper,
            lower,
        }
    }

    /// Position in the variable order: kind-major, then row-major.
    pub fn index(&self, n: usize) -> usize {
        let base = match self.kind {
            VarKind::G => 0,
            VarKind::Gbar => n * n,
        };
        base + self.upper * n + self.lower
    }

    pub fn from_index(idx: usize, n: usize) -> Self {
        let kind = if idx < n * n { VarKind::G } else { VarKind::Gbar };
        let r = idx % (n * n);
        GenVar {
            kind,
            upper: r / n,
            lower: r % n,
        }
    }

    pub fn all(n: usize) -> impl Iterator<Item = GenVar> {
        (0..2 * n * n).map(move |i| GenVar::from_index(i, n))
    }

    /// The generator with the other kind and the same indices.
    pub fn swapped(&self) -> Self {
        GenVar {
            kind: match self.kind {
                VarKind::G => VarKind::Gbar,
                VarKind::Gbar => VarKind::G,
            },
            ..*self
        }
    }
}

impl fmt::Display for GenVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            VarKind::G => "G",
            VarKind::Gbar => "Gbar",
        };
        write!(f, "{}[{},{}]", name, self.upper + 1, self.lower + 1)
    }
}

/// Dense exponent vector. `Ord` is degrevlex with variable 0 largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[idx] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree,
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Self::from_exps(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Factors as a sorted list of variable indices with repetition.
    pub fn factors(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for (i, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                out.push(i);
            }
        }
        out
    }

    /// Iterates `(variable, exponent)` over nonzero exponents.
    pub fn support(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            if a != b {
                // Smaller exponent in the last differing variable is larger.
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `B_n`: terms sorted by decreasing monomial, no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: Vec::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.push((Monomial::one(2 * n * n), c));
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    pub fn var(n: usize, v: GenVar) -> Self {
        Poly {
            n,
            terms: vec![(Monomial::var(2 * n * n, v.index(n)), Scalar::one())],
        }
    }

    pub fn g(n: usize, i: usize, j: usize) -> Self {
        Self::var(n, GenVar::g(i, j))
    }

    pub fn gbar(n: usize, i: usize, j: usize) -> Self {
        Self::var(n, GenVar::gbar(i, j))
    }

    pub fn monomial(n: usize, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Scalar::zero) += c;
        }
        Self::from_map(n, acc)
    }

    pub(crate) fn from_map(n: usize, acc: BTreeMap<Monomial, Scalar>) -> Self {
        Poly {
            n,
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Takes terms already sorted decreasingly with nonzero coefficients.
    pub(crate) fn from_sorted(n: usize, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n * self.n
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &Scalar::one())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &-Scalar::one())
    }

    /// `self + s * other` by a linear merge.
    pub fn add_scaled(&self, other: &Poly, s: &Scalar) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = &b[j].1 * s;
                    if !c.is_zero() {
                        out.push((b[j].0.clone(), c));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1 * s;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { n: self.n, terms: out }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.n);
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Scalar::zero) += ca * cb;
            }
        }
        Self::from_map(self.n, acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.n);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Algebra-map extension of a substitution `var -> image`.
    pub fn substitute(&self, image: &dyn Fn(GenVar) -> Poly) -> Poly {
        let n = self.n;
        let images: Vec<Poly> = GenVar::all(n).map(image).collect();
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(n, c.clone());
            for (v, e) in m.support() {
                t = t.mul(&images[v].pow(e as u32));
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitutes `G^i_j -> M[i][j]`, `Gbar^i_j -> Minv[i][j]`.
    pub fn evaluate(&self, m: &QMatrix, minv: &QMatrix) -> Result<Scalar> {
        let n = self.n;
        if m.rows() != n || !m.is_square() || minv.rows() != n || !minv.is_square() {
            return Err(Error::Dimension("evaluation point has wrong size".into()));
        }
        if !m.mul(minv)?.is_identity() {
            return Err(Error::InconsistentInverse);
        }
        Ok(self.evaluate_unchecked(m, minv))
    }

    pub(crate) fn evaluate_unchecked(&self, m: &QMatrix, minv: &QMatrix) -> Scalar {
        let n = self.n;
        let values: Vec<Scalar> = GenVar::all(n)
            .map(|v| match v.kind {
                VarKind::G => m[(v.upper, v.lower)].clone(),
                VarKind::Gbar => minv[(v.upper, v.lower)].clone(),
            })
            .collect();
        self.evaluate_at(&values)
    }

    /// Evaluates at a point given as one value per variable index.
    pub fn evaluate_at(&self, values: &[Scalar]) -> Scalar {
        let mut total = Scalar::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in mono.support() {
                for _ in 0..e {
                    t *= &values[v];
                }
                if t.is_zero() {
                    break;
                }
            }
            total += t;
        }
        total
    }

    /// Monic rescaling (leading coefficient 1).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&(Scalar::one() / c)),
            None => self.clone(),
        }
    }

    /// Parses the textual form produced by `Display`, e.g.
    /// `G[1,1]*Gbar[1,1] - 1` or `3/2 * G[2,1]^2`. Indices are 1-based.
    pub fn parse(n: usize, s: &str) -> Result<Poly> {
        let mut out = Poly::zero(n);
        for (sign, term) in split_signed_terms(s)? {
            let mut t = Poly::constant(n, sign);
            for factor in term.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {s:?}")));
                }
                t = t.mul(&parse_factor(n, factor)?);
            }
            out = out.add(&t);
        }
        Ok(out)
    }
}

fn split_signed_terms(s: &str) -> Result<Vec<(Scalar, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut sign = Scalar::one();
    let mut depth = 0i32;
    let mut seen_content = false;
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let trimmed = cur.trim();
                if trimmed.is_empty() || trimmed.ends_with('*') || trimmed.ends_with('/') {
                    if trimmed.is_empty() {
                        if ch == '-' {
                            sign = -sign;
                        }
                    } else {
                        // sign inside a factor such as "2*-3"
                        cur.push(ch);
                    }
                    continue;
                }
                out.push((sign.clone(), trimmed.to_string()));
                seen_content = true;
                cur.clear();
                sign = if ch == '-' { -Scalar::one() } else { Scalar::one() };
            }
            _ => cur.push(ch),
        }
    }
    let trimmed = cur.trim();
    if trimmed.is_empty() {
        if !seen_content {
            return Err(Error::Parse(format!("empty expression {s:?}")));
        }
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    out.push((sign, trimmed.to_string()));
    Ok(out)
}

fn parse_factor(n: usize, f: &str) -> Result<Poly> {
    let (base, exp) = match f.rsplit_once('^') {
        Some((b, e)) => (
            b.trim(),
            e.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent in {f:?}")))?,
        ),
        None => (f, 1),
    };
    let kind = if let Some(rest) = base.strip_prefix("Gbar") {
        Some((VarKind::Gbar, rest))
    } else {
        base.strip_prefix('G').map(|rest| (VarKind::G, rest))
    };
    match kind {
        Some((kind, rest)) => {
            let inner = rest
                .trim()
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad variable {f:?}")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad variable {f:?}")))?;
            let i: usize = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in {f:?}")))?;
            let j: usize = b
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in {f:?}")))?;
            for idx in [i, j] {
                if idx == 0 || idx > n {
                    return Err(Error::IndexOutOfRange { index: idx, n });
                }
            }
            Ok(Poly::var(
                n,
                GenVar {
                    kind,
                    upper: i - 1,
                    lower: j - 1,
                },
            )
            .pow(exp))
        }
        None => {
            let c = scalar::parse(base)?;
            Ok(Poly::constant(n, c).pow(exp))
        }
    }
}

pub(crate) fn fmt_monomial(m: &Monomial, n: usize) -> String {
    let mut parts = Vec::new();
    for (v, e) in m.support() {
        let var = GenVar::from_index(v, n);
        if e == 1 {
            parts.push(format!("{var}"));
        } else {
            parts.push(format!("{var}^{e}"));
        }
    }
    parts.join("*")
}

/// Writes `c * m` terms joined by ` + ` / ` - `, omitting unit coefficients.
pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (body, c) in terms {
        let neg = c < &Scalar::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if body.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{body}")?;
        } else {
            write!(f, "{abs}*{body}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().map(|(m, c)| (fmt_monomial(m, self.n), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn degrevlex_order() {
        // x0 > x1 > x2 in degree 1; x0*x2 < x1^2 in degrevlex.
        let x0 = Monomial::var(3, 0);
        let x1 = Monomial::var(3, 1);
        let x2 = Monomial::var(3, 2);
        assert!(x0 > x1 && x1 > x2);
        assert!(x1.mul(&x1) > x0.mul(&x2));
        assert!(x0.mul(&x1) > x1.mul(&x1));
        assert!(Monomial::one(3) < x2);
    }

    #[test]
    fn arithmetic_and_display() {
        let n = 1;
        let g = Poly::g(n, 0, 0);
        let gb = Poly::gbar(n, 0, 0);
        let p = g.mul(&gb).sub(&Poly::one(n));
        assert_eq!(p.to_string(), "G[1,1]*Gbar[1,1] - 1");
        assert_eq!(p.add(&Poly::one(n)).sub(&g.mul(&gb)), Poly::zero(n));
        let q = g.scale(&frac(3, 2)).pow(2);
        assert_eq!(q.to_string(), "9/4*G[1,1]^2");
    }

    #[test]
    fn parse_roundtrip() {
        let n = 2;
        let p = Poly::parse(n, "3/2*G[2,1]^2*Gbar[1,2] - G[1,1] + -2 + 1").unwrap();
        assert_eq!(Poly::parse(n, &p.to_string()).unwrap(), p);
        assert_eq!(p.constant_term(), int(-1));
        assert!(Poly::parse(n, "G[3,1]").is_err());
        assert!(Poly::parse(n, "G[1,1] +").is_err());
        assert_eq!(Poly::parse(n, "-G[1,2]").unwrap(), Poly::g(n, 0, 1).neg());
    }

    #[test]
    fn evaluation_checks_inverse() {
        let n = 2;
        let m = QMatrix::from_ints(&[&[1, 0], &[1, 1]]);
        let minv = QMatrix::from_ints(&[&[1, 0], &[-1, 1]]);
        assert_eq!(Poly::gbar(n, 1, 0).evaluate(&m, &minv).unwrap(), int(-1));
        assert_eq!(
            Poly::g(n, 0, 0)
                .evaluate(&QMatrix::identity(2), &QMatrix::identity(2))
                .unwrap(),
            int(1)
        );
        assert_eq!(Poly::g(n, 0, 0).evaluate(&m, &m), Err(Error::InconsistentInverse));
    }
}
