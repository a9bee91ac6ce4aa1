//! The symmetric Hopf algebroid `O(Aut(h)) # U(h_Lie)` over
//! `U(h_Lie)^op, U(h_Lie)` for a left Leibniz algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::notation::{convention_adapter, trace_toks, Convention, Formula, Sym, Term, Tok};
use crate::oaut::antipode_h;
use crate::pairing::PairingContext;
use crate::pbw::{PbwElement, PbwMonomial};
use crate::poly::{GenVar, Monomial, Poly};
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::smash::SmashElement;
use crate::yd::{verify_yd_suite, Mode, YdOptions};

/// How elements of `U(h_Lie)^op` are written: through `phi: U^op -> U` or
/// through `theta: U -> U^op`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Presentation {
    Phi,
    Theta,
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(Presentation::Phi),
            "theta" => Ok(Presentation::Theta),
            other => Err(Error::Parse(format!("unknown presentation {other:?}"))),
        }
    }
}

/// An element of `U(h_Lie)^op`: `phi^{-1}(body)` or `theta(body)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpElement {
    pub presentation: Presentation,
    pub body: PbwElement,
}

impl OpElement {
    pub fn new(presentation: Presentation, body: PbwElement) -> Self {
        OpElement { presentation, body }
    }
}

impl fmt::Display for OpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.presentation {
            Presentation::Phi => "phi^-1",
            Presentation::Theta => "theta",
        };
        write!(f, "{tag}({})", self.body)
    }
}

/// `sum f_(1) # 1 (x) f_(2) # u`, the shape of every comultiplication value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CanonicalCotensor {
    terms: BTreeMap<(Monomial, Monomial, PbwMonomial), Scalar>,
}

impl CanonicalCotensor {
    pub fn add_term(&mut self, a: Monomial, b: Monomial, u: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b, u);
        let v = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &PbwMonomial, &Scalar)> {
        self.terms.iter().map(|((a, b, u), c)| (a, b, u, c))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Three-leg tensors `f # 1 (x) g # 1 (x) h # u` and their leg-wise normal
/// forms.
type Triple = BTreeMap<(Vec<Monomial>, PbwMonomial), Scalar>;
type LegGroups = BTreeMap<(Vec<Monomial>, PbwMonomial), Vec<(Monomial, Scalar)>>;

fn triple_add(t: &mut Triple, legs: Vec<Monomial>, u: PbwMonomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let key = (legs, u);
    let v = t.entry(key.clone()).or_insert_with(Scalar::zero);
    *v += c;
    if v.is_zero() {
        t.remove(&key);
    }
}

pub struct Algebroid<'a> {
    pub ctx: &'a PairingContext,
}

/// Builds the structure maps after checking the Yetter-Drinfeld identities
/// with PBW degree 2 and `O(Aut(h))` degree 2.
pub fn build_algebroid(ctx: &PairingContext) -> Result<Algebroid<'_>> {
    let opts = YdOptions {
        degcap: 2,
        h_degree: 2,
        mode: Mode::Groebner,
        samples: vec![(QMatrix::identity(ctx.n()), QMatrix::identity(ctx.n()))],
    };
    let rep = verify_yd_suite(ctx, &opts)?;
    if let Some(bad) = rep.failures().next() {
        return Err(Error::VerificationFailed(format!(
            "{} fails on {}: {}",
            bad.id,
            bad.fixture,
            bad.counterexample.clone().unwrap_or_default()
        )));
    }
    Ok(Algebroid { ctx })
}

impl<'a> Algebroid<'a> {
    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    /// `x̃_j`, the image of the basis vector `x_j` of `h`.
    pub fn generator(&self, j: usize) -> PbwElement {
        let mut e = vec![Scalar::zero(); self.n()];
        e[j] = Scalar::one();
        self.ctx.image(&e)
    }

    /// `sum_i C^i_{ij}`.
    pub fn trace(&self, j: usize) -> Scalar {
        self.ctx.alg.right_trace(j)
    }

    fn unit_scaled(&self, c: &Scalar) -> SmashElement {
        SmashElement::one(self.n()).scale(c)
    }

    fn act_s(&self, u: &PbwElement, f: &Poly) -> PbwElement {
        self.ctx.act(u, f)
    }

    pub fn source_r(&self, u: &PbwElement) -> SmashElement {
        SmashElement::from_u(self.n(), u)
    }

    pub fn target_r(&self, u: &PbwElement) -> SmashElement {
        self.ctx.coaction(u)
    }

    pub fn counit_r(&self, s: &SmashElement) -> PbwElement {
        s.counit_h_leg()
    }

    pub fn source_l(&self, x: &OpElement) -> SmashElement {
        match x.presentation {
            Presentation::Phi => self.ctx.coaction(&x.body),
            Presentation::Theta => {
                let n = self.n();
                let mut out = SmashElement::zero(n);
                for (h, a, c) in self.ctx.coaction(&x.body).terms() {
                    let left = SmashElement::from_u(n, &PbwElement::monomial(a.clone(), c.clone()));
                    let right = SmashElement::from_h(&Poly::monomial(n, h.clone(), Scalar::one()));
                    out = out.add(&self.ctx.smash_mul(&left, &right));
                }
                out
            }
        }
    }

    pub fn target_l(&self, x: &OpElement) -> SmashElement {
        match x.presentation {
            Presentation::Phi => SmashElement::from_u(self.n(), &self.phi_to_theta_body(&x.body)),
            Presentation::Theta => SmashElement::from_u(self.n(), &x.body),
        }
    }

    /// `u_[0] <| S(u_[-1])`.
    fn phi_to_theta_body(&self, u: &PbwElement) -> PbwElement {
        let n = self.n();
        let mut out = PbwElement::zero();
        for (h, a, c) in self.ctx.coaction(u).terms() {
            let sh = antipode_h(&Poly::monomial(n, h.clone(), c.clone()));
            out = out.add(&self.act_s(&PbwElement::monomial(a.clone(), Scalar::one()), &sh));
        }
        out
    }

    /// `u_[0] <| u_[-1]`.
    fn theta_to_phi_body(&self, u: &PbwElement) -> PbwElement {
        self.counit_l(&SmashElement::from_u(self.n(), u), Presentation::Phi)
            .body
    }

    pub fn convert(&self, x: &OpElement, to: Presentation) -> OpElement {
        let body = match (x.presentation, to) {
            (a, b) if a == b => x.body.clone(),
            (Presentation::Phi, Presentation::Theta) => self.phi_to_theta_body(&x.body),
            _ => self.theta_to_phi_body(&x.body),
        };
        OpElement::new(to, body)
    }

    /// Product in `U(h_Lie)^op` of two elements in the same presentation.
    pub fn op_mul(&self, x: &OpElement, y: &OpElement) -> OpElement {
        let y = self.convert(y, x.presentation);
        OpElement::new(x.presentation, self.ctx.uea.mul(&y.body, &x.body))
    }

    pub fn counit_l(&self, s: &SmashElement, presentation: Presentation) -> OpElement {
        let n = self.n();
        let mut body = PbwElement::zero();
        for (f, u, c) in s.terms() {
            let sf = antipode_h(&Poly::monomial(n, f.clone(), c.clone()));
            let ue = PbwElement::monomial(u.clone(), Scalar::one());
            match presentation {
                Presentation::Theta => body = body.add(&self.act_s(&ue, &sf)),
                Presentation::Phi => {
                    for (h, a, d) in self.ctx.coaction(&ue).terms() {
                        let hs = Poly::monomial(n, h.clone(), d.clone()).mul(&sf);
                        body = body.add(&self.act_s(&PbwElement::monomial(a.clone(), Scalar::one()), &hs));
                    }
                }
            }
        }
        OpElement::new(presentation, body)
    }

    /// `Delta_R = Delta_L`: `f # u -> f_(1) # 1 (x) f_(2) # u`.
    pub fn coproduct(&self, s: &SmashElement) -> CanonicalCotensor {
        let n = self.n();
        let mut out = CanonicalCotensor::default();
        for (f, u, c) in s.terms() {
            for (a, b, d) in self
                .ctx
                .oaut
                .coproduct(&Poly::monomial(n, f.clone(), Scalar::one()))
                .terms()
            {
                out.add_term(a.clone(), b.clone(), u.clone(), c * d);
            }
        }
        out
    }

    /// `tau(f # u) = u_[0] . S^2(u_[-1]) S f`; `S^2 = id` on the commutative
    /// `O(Aut(h))`.
    pub fn antipode(&self, s: &SmashElement) -> SmashElement {
        let n = self.n();
        let mut out = SmashElement::zero(n);
        for (f, u, c) in s.terms() {
            let sf = antipode_h(&Poly::monomial(n, f.clone(), c.clone()));
            let ue = PbwElement::monomial(u.clone(), Scalar::one());
            for (h, a, d) in self.ctx.coaction(&ue).terms() {
                let left = SmashElement::from_u(n, &PbwElement::monomial(a.clone(), d.clone()));
                let hs = Poly::monomial(n, h.clone(), Scalar::one()).mul(&sf);
                out = out.add(&self.ctx.smash_mul(&left, &SmashElement::from_h(&hs)));
            }
        }
        out
    }

    fn triple_normal_form(&self, t: &Triple) -> Triple {
        let n = self.n();
        let mut cur = t.clone();
        for leg in 0..3 {
            let mut groups = LegGroups::new();
            for ((legs, u), c) in &cur {
                let mut rest = legs.clone();
                let m = rest.remove(leg);
                groups.entry((rest, u.clone())).or_default().push((m, c.clone()));
            }
            let mut next = Triple::new();
            for ((rest, u), ts) in groups {
                let p = self.ctx.oaut.normal_form(&Poly::from_terms(n, ts));
                for (m, c) in p.terms() {
                    let mut legs = rest.clone();
                    legs.insert(leg, m.clone());
                    triple_add(&mut next, legs, u.clone(), c.clone());
                }
            }
            cur = next;
        }
        cur
    }
}

/// Generator maps whose values are printed in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorMap {
    SourceR,
    TargetR,
    SourceLPhi,
    TargetLPhi,
    CounitLPhi,
    SourceLTheta,
    TargetLTheta,
    CounitLTheta,
    Antipode,
    AntipodeSquared,
}

impl GeneratorMap {
    pub const ALL: [GeneratorMap; 10] = [
        GeneratorMap::SourceR,
        GeneratorMap::TargetR,
        GeneratorMap::SourceLPhi,
        GeneratorMap::TargetLPhi,
        GeneratorMap::CounitLPhi,
        GeneratorMap::SourceLTheta,
        GeneratorMap::TargetLTheta,
        GeneratorMap::CounitLTheta,
        GeneratorMap::Antipode,
        GeneratorMap::AntipodeSquared,
    ];

    pub fn presentation(self) -> Option<Presentation> {
        use GeneratorMap::*;
        match self {
            SourceLPhi | TargetLPhi | CounitLPhi => Some(Presentation::Phi),
            SourceLTheta | TargetLTheta | CounitLTheta => Some(Presentation::Theta),
            _ => None,
        }
    }

    fn is_counit_l(self) -> bool {
        matches!(self, GeneratorMap::CounitLPhi | GeneratorMap::CounitLTheta)
    }

    fn lhs(self) -> Vec<Tok> {
        use GeneratorMap::*;
        let xt = Tok::sym(Sym::Xt, "", "j");
        let op = |s: Sym| Tok::sym(s, "", "j");
        let call = |name: &str, arg: Vec<Tok>| {
            let mut v = vec![Tok::text(&format!("{name}("))];
            v.extend(arg);
            v.push(Tok::text(")"));
            v
        };
        let one_h = |t: Tok| vec![Tok::text("1_H♯"), t];
        match self {
            SourceR => call("α_R", vec![xt]),
            TargetR => call("β_R", vec![xt]),
            SourceLPhi => call("α_L", vec![op(Sym::XopPhi)]),
            TargetLPhi => call("β_L", vec![op(Sym::XopPhi)]),
            SourceLTheta => call("α_L", vec![op(Sym::XopTheta)]),
            TargetLTheta => call("β_L", vec![op(Sym::XopTheta)]),
            CounitLPhi | CounitLTheta => call("ε_L", one_h(xt)),
            Antipode => {
                let mut v = vec![Tok::sym(Sym::Tau, "", "")];
                v.extend(call("", one_h(xt)));
                v
            }
            AntipodeSquared => {
                let mut v = vec![Tok::sym(Sym::Tau, "2", "")];
                v.extend(call("", one_h(xt)));
                v
            }
        }
    }
}

/// Closed-form template terms a generator value is expanded against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Atom {
    /// `sum_i Gbar^i_j # x̃_i`
    GbarSum,
    /// `sum_i G^i_j # x̃_i`
    GSum,
    /// `1_H # x̃_j`
    Unit,
    /// `x̃^op_j` in the given presentation
    Op(Presentation),
    /// `sum_i C^i_{ij}`, times `1 # 1` in the smash product
    Trace { smash: bool },
}

impl Atom {
    fn toks(self) -> Vec<Tok> {
        match self {
            Atom::GbarSum | Atom::GSum => {
                let g = if self == Atom::GbarSum { Sym::Gbar } else { Sym::G };
                vec![
                    Tok::text("∑_i "),
                    Tok::sym(g, "i", "j"),
                    Tok::text("♯"),
                    Tok::sym(Sym::Xt, "", "i"),
                ]
            }
            Atom::Unit => vec![Tok::text("1_H♯"), Tok::sym(Sym::Xt, "", "j")],
            Atom::Op(p) => vec![Tok::sym(
                if p == Presentation::Phi {
                    Sym::XopPhi
                } else {
                    Sym::XopTheta
                },
                "",
                "j",
            )],
            Atom::Trace { smash } => {
                let mut t = trace_toks();
                if smash {
                    t.push(Tok::UnitLeg);
                }
                t
            }
        }
    }
}

/// Coordinates of a value in a fixed basis, keyed by strings so that
/// smash-product and `U^op` values share one solver.
type Coords = BTreeMap<String, Scalar>;

fn smash_coords(ctx: &PairingContext, s: &SmashElement) -> Coords {
    let n = ctx.n();
    ctx.smash_normal_form(s)
        .terms()
        .map(|(m, w, c)| {
            (
                format!("{}#{}", Poly::monomial(n, m.clone(), Scalar::one()), w),
                c.clone(),
            )
        })
        .collect()
}

fn pbw_coords(u: &PbwElement) -> Coords {
    u.terms().map(|(w, c)| (format!("{w:?}"), c.clone())).collect()
}

impl Algebroid<'_> {
    fn atoms(&self, map: GeneratorMap) -> Vec<Atom> {
        match map.presentation() {
            Some(p) if map.is_counit_l() => vec![Atom::Op(p), Atom::Trace { smash: false }],
            _ => vec![Atom::GbarSum, Atom::GSum, Atom::Unit, Atom::Trace { smash: true }],
        }
    }

    fn atom_coords(&self, atom: Atom, j: usize) -> Coords {
        let n = self.n();
        let x = self.generator(j);
        match atom {
            Atom::GbarSum | Atom::GSum => {
                let mut s = SmashElement::zero(n);
                for i in 0..n {
                    let v = if atom == Atom::GbarSum {
                        GenVar::gbar(i, j)
                    } else {
                        GenVar::g(i, j)
                    };
                    s = s.add(&SmashElement::pure(&Poly::var(n, v), &self.generator(i)));
                }
                smash_coords(self.ctx, &s)
            }
            Atom::Unit => smash_coords(self.ctx, &SmashElement::from_u(n, &x)),
            Atom::Op(_) => pbw_coords(&x),
            Atom::Trace { smash: true } => smash_coords(self.ctx, &self.unit_scaled(&self.trace(j))),
            Atom::Trace { smash: false } => pbw_coords(&PbwElement::scalar(self.trace(j))),
        }
    }

    /// The value of `map` on the `j`-th generator.
    pub fn generator_value(&self, map: GeneratorMap, j: usize) -> GeneratorValue {
        use GeneratorMap::*;
        let n = self.n();
        let x = self.generator(j);
        let one_x = SmashElement::from_u(n, &x);
        match map {
            SourceR => GeneratorValue::Smash(self.source_r(&x)),
            TargetR => GeneratorValue::Smash(self.target_r(&x)),
            SourceLPhi | SourceLTheta => {
                GeneratorValue::Smash(self.source_l(&OpElement::new(map.presentation().unwrap(), x)))
            }
            TargetLPhi | TargetLTheta => {
                GeneratorValue::Smash(self.target_l(&OpElement::new(map.presentation().unwrap(), x)))
            }
            CounitLPhi | CounitLTheta => GeneratorValue::Op(self.counit_l(&one_x, map.presentation().unwrap())),
            Antipode => GeneratorValue::Smash(self.antipode(&one_x)),
            AntipodeSquared => GeneratorValue::Smash(self.antipode(&self.antipode(&one_x))),
        }
    }

    fn value_coords(&self, v: &GeneratorValue) -> Coords {
        match v {
            GeneratorValue::Smash(s) => smash_coords(self.ctx, s),
            GeneratorValue::Op(o) => pbw_coords(&o.body),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorValue {
    Smash(SmashElement),
    Op(OpElement),
}

impl fmt::Display for GeneratorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorValue::Smash(s) => write!(f, "{s}"),
            GeneratorValue::Op(o) => write!(f, "{o}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittedFormula {
    pub map: GeneratorMap,
    pub formula: Formula,
    /// Every template coefficient is forced by the data.
    pub determined: bool,
}

/// Solves `value_j = sum_a c_a atom_a(j)` (modulo the ideal) for one set of
/// coefficients `c_a` shared by all generators of all given algebroids.
pub fn fit_generator_formula(algebroids: &[Algebroid], map: GeneratorMap) -> Option<FittedFormula> {
    let first = algebroids.first()?;
    let atoms = first.atoms(map);
    let k = atoms.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for alg in algebroids {
        for j in 0..alg.n() {
            let value = alg.value_coords(&alg.generator_value(map, j));
            let atom_coords: Vec<Coords> = atoms.iter().map(|&a| alg.atom_coords(a, j)).collect();
            let keys: BTreeSet<&String> = value.keys().chain(atom_coords.iter().flat_map(|c| c.keys())).collect();
            for key in keys {
                let mut row: Vec<Scalar> = atom_coords
                    .iter()
                    .map(|c| c.get(key).cloned().unwrap_or_else(Scalar::zero))
                    .collect();
                row.push(value.get(key).cloned().unwrap_or_else(Scalar::zero));
                rows.push(row);
            }
        }
    }
    let coeffs = if rows.is_empty() {
        (vec![Scalar::zero(); k], false)
    } else {
        let (r, pivots) = QMatrix::from_rows(rows).ok()?.rref();
        if pivots.contains(&k) {
            return None;
        }
        let mut c = vec![Scalar::zero(); k];
        for (row, &p) in pivots.iter().enumerate() {
            c[p] = r[(row, k)].clone();
        }
        (c, pivots.len() == k)
    };
    let rhs = atoms
        .iter()
        .zip(&coeffs.0)
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| {
            let mut toks = Vec::new();
            if !c.abs().is_one() {
                toks.push(Tok::Text(format!("{}·", c.abs())));
            }
            toks.extend(a.toks());
            Term::new(c.is_negative(), toks)
        })
        .collect();
    Some(FittedFormula {
        map,
        formula: Formula {
            convention: Convention::LeftLeibniz,
            lhs: map.lhs(),
            rhs,
        },
        determined: coeffs.1,
    })
}

/// The phase-space form of a left Leibniz formula.
pub fn phase_space_form(f: &Formula) -> Result<Formula> {
    convention_adapter(f)
}

fn show(w: &PbwMonomial) -> String {
    if w.is_one() {
        "1".into()
    } else {
        w.to_string()
    }
}

/// The displayed identities of the algebroid (ids `algebroid.*`), the
/// bialgebroid axioms in the convention `a.k.b = alpha(a) beta(b) k`
/// (ids `convention.*`), and for Lie algebras the phase-space
/// antipode squares (id `algebroid.phase_space_squares`).
pub fn verify_algebroid(a: &Algebroid, degcap: usize) -> Report {
    let ctx = a.ctx;
    let name = &ctx.name;
    let n = a.n();
    let us = ctx.pbw_monomials(degcap);
    let fs = {
        let mut v = vec![Poly::one(n)];
        v.extend(ctx.test_monomials(2));
        v
    };
    let mono = |w: &PbwMonomial| PbwElement::monomial(w.clone(), Scalar::one());
    let eq = |x: &SmashElement, y: &SmashElement| ctx.smash_eq(x, y);
    let mut rep = Report::new();

    let mut c = Check::new(
        "algebroid.commute_r",
        "alpha_R(u) beta_R(v) = beta_R(v) alpha_R(u)",
        name,
    );
    for u in &us {
        for v in &us {
            let (x, y) = (a.source_r(&mono(u)), a.target_r(&mono(v)));
            let ok = eq(&ctx.smash_mul(&x, &y), &ctx.smash_mul(&y, &x));
            c.record(ok, || format!("u={}, v={}", show(u), show(v)));
        }
    }
    rep.push(c);

    let small = ctx.pbw_monomials(degcap.min(2));
    let mut c = Check::new(
        "algebroid.commute_l",
        "alpha_L(x) beta_L(y) = beta_L(y) alpha_L(x), both presentations",
        name,
    );
    for p in [Presentation::Phi, Presentation::Theta] {
        for u in &small {
            for v in &small {
                let x = a.source_l(&OpElement::new(p, mono(u)));
                let y = a.target_l(&OpElement::new(p, mono(v)));
                let ok = eq(&ctx.smash_mul(&x, &y), &ctx.smash_mul(&y, &x));
                c.record(ok, || format!("{p:?}: x={}, y={}", show(u), show(v)));
            }
        }
    }
    rep.push(c);

    let mut c = Check::new("algebroid.counit_r", "epsilon_R(f # u) = epsilon(f) u", name);
    for f in &fs {
        for u in &small {
            let s = ctx.smash_mul(&SmashElement::from_h(f), &a.source_r(&mono(u)));
            let got = a.counit_r(&s);
            let want = mono(u).scale(&ctx.oaut.counit(f));
            c.record(got == want, || format!("f={f}, u={}: {got}", show(u)));
        }
    }
    rep.push(c);

    let mut c = Check::new(
        "algebroid.counit_l",
        "epsilon_L(f # x_j) = epsilon(f) x^op_{j theta} - <x_j, f> = epsilon(f) x^op_{j phi} - (<x_j, f> + epsilon(f) sum_i C^i_{ij})",
        name,
    );
    for j in 0..n {
        let x = a.generator(j);
        for f in &fs {
            let s = SmashElement::pure(f, &x);
            let eps = ctx.oaut.counit(f);
            let pair = ctx.pair(&x, f);
            let want_t = x.scale(&eps).sub(&PbwElement::scalar(pair.clone()));
            let got_t = a.counit_l(&s, Presentation::Theta).body;
            c.record(got_t == want_t, || format!("theta, j={}, f={f}: {got_t}", j + 1));
            let want_p = x.scale(&eps).sub(&PbwElement::scalar(pair + &eps * a.trace(j)));
            let got_p = a.counit_l(&s, Presentation::Phi).body;
            c.record(got_p == want_p, || format!("phi, j={}, f={f}: {got_p}", j + 1));
        }
    }
    rep.push(c);

    let mut coassoc = Check::new(
        "algebroid.coassociative",
        "(Delta (x) id) Delta = (id (x) Delta) Delta",
        name,
    );
    let mut counital = Check::new(
        "algebroid.counital",
        "k_(1) alpha_R(epsilon_R(k_(2))) = k = beta_R(epsilon_R(k_(1))) k_(2); same for the left maps",
        name,
    );
    for f in &fs {
        for u in &small {
            let s = SmashElement::pure(f, &mono(u));
            let d = a.coproduct(&s);
            let mut lhs = Triple::new();
            let mut rhs = Triple::new();
            for (x, y, w, cf) in d.terms() {
                for (x1, x2, c2) in ctx.oaut.coproduct(&Poly::monomial(n, x.clone(), Scalar::one())).terms() {
                    triple_add(&mut lhs, vec![x1.clone(), x2.clone(), y.clone()], w.clone(), cf * c2);
                }
                for (y1, y2, c2) in ctx.oaut.coproduct(&Poly::monomial(n, y.clone(), Scalar::one())).terms() {
                    triple_add(&mut rhs, vec![x.clone(), y1.clone(), y2.clone()], w.clone(), cf * c2);
                }
            }
            for (k, v) in &rhs {
                triple_add(&mut lhs, k.0.clone(), k.1.clone(), -v.clone());
            }
            let ok = a.triple_normal_form(&lhs).is_empty();
            coassoc.record(ok, || format!("f={f}, u={}", show(u)));

            let mut right1 = SmashElement::zero(n);
            let mut right2 = SmashElement::zero(n);
            let mut left1 = SmashElement::zero(n);
            let mut left2 = SmashElement::zero(n);
            for (x, y, w, cf) in d.terms() {
                let k1 = SmashElement::from_h(&Poly::monomial(n, x.clone(), cf.clone()));
                let k2 = SmashElement::pure(&Poly::monomial(n, y.clone(), Scalar::one()), &mono(w));
                right1 = right1.add(&ctx.smash_mul(&k1, &a.source_r(&a.counit_r(&k2))));
                right2 = right2.add(&ctx.smash_mul(&a.target_r(&a.counit_r(&k1)), &k2));
                for p in [Presentation::Phi, Presentation::Theta] {
                    left1 = left1.add(&ctx.smash_mul(&a.source_l(&a.counit_l(&k1, p)), &k2));
                    left2 = left2.add(&ctx.smash_mul(&a.target_l(&a.counit_l(&k2, p)), &k1));
                }
            }
            let two = s.scale(&Scalar::from_integer(2.into()));
            for (tag, got, want) in [
                ("right 1", &right1, &s),
                ("right 2", &right2, &s),
                ("left 1", &left1, &two),
                ("left 2", &left2, &two),
            ] {
                counital.record(eq(got, want), || format!("{tag}: f={f}, u={}: {got}", show(u)));
            }
        }
    }
    rep.push(coassoc);
    rep.push(counital);

    let mut c = Check::new("algebroid.antipode_target", "tau(beta_R(u)) = alpha_R(u)", name);
    for u in &us {
        let got = a.antipode(&a.target_r(&mono(u)));
        c.record(eq(&got, &a.source_r(&mono(u))), || format!("u={}: {got}", show(u)));
    }
    rep.push(c);

    let mut src = Check::new(
        "algebroid.antipode_source",
        "tau(1_H # x_j) = sum_i Gbar^i_j # x_i - sum_i C^i_{ij} # 1",
        name,
    );
    let mut sq = Check::new(
        "algebroid.antipode_square",
        "tau^2(1_H # x_j) = 1_H # x_j - sum_i C^i_{ij} # 1",
        name,
    );
    let mut shift = Check::new(
        "algebroid.source_shift",
        "alpha_L(x^op_{j theta}) = alpha_L(x^op_{j phi}) - sum_i C^i_{ij} # 1",
        name,
    );
    let mut tl = Check::new(
        "algebroid.target_l",
        "beta_L(x^op_{j phi}) = 1_H # x_j + sum_i C^i_{ij} # 1 and beta_L(x^op_{j theta}) = 1_H # x_j",
        name,
    );
    let mut pt = Check::new(
        "algebroid.phi_theta",
        "epsilon_L(1_H # x_j) is x^op_{j theta} and x^op_{j phi} - sum_i C^i_{ij}",
        name,
    );
    let mut inv = Check::new(
        "algebroid.trace_invariance",
        "sum_{i,k} C^i_{ik} Gbar^k_j = sum_i C^i_{ij} in O(Aut(h))",
        name,
    );
    for j in 0..n {
        let x = a.generator(j);
        let tr = a.trace(j);
        let one_x = SmashElement::from_u(n, &x);
        let lam = ctx.coaction(&x);
        let trs = a.unit_scaled(&tr);
        let t1 = a.antipode(&one_x);
        src.record(eq(&t1, &lam.sub(&trs)), || format!("j={}: {t1}", j + 1));
        let t2 = a.antipode(&t1);
        sq.record(eq(&t2, &one_x.sub(&trs)), || format!("j={}: {t2}", j + 1));
        let th = a.source_l(&OpElement::new(Presentation::Theta, x.clone()));
        let ph = a.source_l(&OpElement::new(Presentation::Phi, x.clone()));
        shift.record(eq(&th, &ph.sub(&trs)), || format!("j={}: {th} vs {ph}", j + 1));
        let bp = a.target_l(&OpElement::new(Presentation::Phi, x.clone()));
        tl.record(eq(&bp, &one_x.add(&trs)), || format!("phi, j={}: {bp}", j + 1));
        let bt = a.target_l(&OpElement::new(Presentation::Theta, x.clone()));
        tl.record(eq(&bt, &one_x), || format!("theta, j={}: {bt}", j + 1));
        let et = a.counit_l(&one_x, Presentation::Theta);
        let ep = a.counit_l(&one_x, Presentation::Phi);
        pt.record(et.body == x, || format!("theta, j={}: {et}", j + 1));
        pt.record(ep.body == x.sub(&PbwElement::scalar(tr.clone())), || {
            format!("phi, j={}: {ep}", j + 1)
        });
        pt.record(a.convert(&et, Presentation::Phi) == ep, || {
            format!("conversion, j={}", j + 1)
        });
        let mut p = Poly::constant(n, -tr.clone());
        for k in 0..n {
            p = p.add(&Poly::gbar(n, k, j).scale(&a.trace(k)));
        }
        inv.record(ctx.oaut.contains(&p), || {
            format!("j={}: residual {}", j + 1, ctx.oaut.normal_form(&p))
        });
    }
    for p in [Presentation::Phi, Presentation::Theta] {
        let other = if p == Presentation::Phi {
            Presentation::Theta
        } else {
            Presentation::Phi
        };
        for u in &us {
            let x = OpElement::new(p, mono(u));
            let back = a.convert(&a.convert(&x, other), p);
            pt.record(back == x, || format!("round trip {p:?}, u={}: {back}", show(u)));
        }
    }
    for r in [src, sq, shift, tl, pt, inv] {
        rep.push(r);
    }

    let mut c = Check::new(
        "algebroid.antipode_general",
        "tau(f # x_j) = sum_i Gbar^i_j S(f_(2)) # (x_i <| S(f_(1))) - sum_i C^i_{ij} Sf # 1",
        name,
    );
    for j in 0..n {
        let x = a.generator(j);
        for f in &fs {
            let got = a.antipode(&SmashElement::pure(f, &x));
            let sf = antipode_h(f);
            let mut want = SmashElement::from_h(&sf.scale(&-a.trace(j)));
            for (f1, f2, cf) in ctx.oaut.coproduct(f).terms() {
                let s1 = antipode_h(&Poly::monomial(n, f1.clone(), cf.clone()));
                let s2 = antipode_h(&Poly::monomial(n, f2.clone(), Scalar::one()));
                for i in 0..n {
                    let acted = ctx.act(&a.generator(i), &s1);
                    want = want.add(&SmashElement::pure(&Poly::gbar(n, i, j).mul(&s2), &acted));
                }
            }
            c.record(eq(&got, &want), || format!("j={}, f={f}: {got}", j + 1));
        }
    }
    rep.push(c);

    let mut c = Check::new(
        "algebroid.antipode_antimultiplicative",
        "tau(k k') = tau(k') tau(k)",
        name,
    );
    let mut gens: Vec<(String, SmashElement)> = (0..ctx.m())
        .map(|b| {
            (
                format!("1#x{}", b + 1),
                SmashElement::from_u(n, &PbwElement::generator(b)),
            )
        })
        .collect();
    for v in GenVar::all(n) {
        gens.push((v.to_string(), SmashElement::from_h(&Poly::var(n, v))));
    }
    for (na, x) in &gens {
        for (nb, y) in &gens {
            let lhs = a.antipode(&ctx.smash_mul(x, y));
            let rhs = ctx.smash_mul(&a.antipode(y), &a.antipode(x));
            c.record(eq(&lhs, &rhs), || format!("{na} * {nb}"));
        }
    }
    rep.push(c);

    let mut mr = Check::new(
        "convention.source_target_r",
        "alpha_R multiplicative, beta_R antimultiplicative",
        name,
    );
    let mut ml = Check::new(
        "convention.source_target_l",
        "alpha_L multiplicative and beta_L antimultiplicative on U(h_Lie)^op, both presentations",
        name,
    );
    for u in &small {
        for v in &small {
            let uv = ctx.uea.mul(&mono(u), &mono(v));
            let ok = eq(
                &a.source_r(&uv),
                &ctx.smash_mul(&a.source_r(&mono(u)), &a.source_r(&mono(v))),
            );
            mr.record(ok, || format!("alpha_R, u={}, v={}", show(u), show(v)));
            let ok = eq(
                &a.target_r(&uv),
                &ctx.smash_mul(&a.target_r(&mono(v)), &a.target_r(&mono(u))),
            );
            mr.record(ok, || format!("beta_R, u={}, v={}", show(u), show(v)));
            for p in [Presentation::Phi, Presentation::Theta] {
                let x = OpElement::new(p, mono(u));
                let y = OpElement::new(p, mono(v));
                let xy = a.op_mul(&x, &y);
                let ok = eq(&a.source_l(&xy), &ctx.smash_mul(&a.source_l(&x), &a.source_l(&y)));
                ml.record(ok, || format!("alpha_L {p:?}, x={}, y={}", show(u), show(v)));
                let ok = eq(&a.target_l(&xy), &ctx.smash_mul(&a.target_l(&y), &a.target_l(&x)));
                ml.record(ok, || format!("beta_L {p:?}, x={}, y={}", show(u), show(v)));
            }
        }
    }
    rep.push(mr);
    rep.push(ml);

    if ctx.alg.is_lie().unwrap_or(false) {
        // Phase-space structure constants are -C; these formulas use
        // the trace C^l_{ml} over the second lower index.
        let mut c = Check::new(
            "algebroid.phase_space_squares",
            "S^2(y_m) = S(x_m) = y_m - C^l_{ml}, S^2(x_m) = x_m - C^l_{ml}, S^-2(x_m) = x_m + C^l_{ml}, S^-2(y_m) = y_m + C^l_{ml}",
            name,
        );
        for j in 0..n {
            let c_ps = -ctx.alg.left_trace(j);
            let x = a.generator(j);
            let y = SmashElement::from_u(n, &x);
            let xh = a.source_l(&OpElement::new(Presentation::Theta, x.clone()));
            let shift = a.unit_scaled(&c_ps);
            let sy = a.antipode(&y);
            let ssy = a.antipode(&sy);
            c.record(eq(&sy, &xh), || format!("S(y_{}) = {sy}", j + 1));
            c.record(eq(&ssy, &y.sub(&shift)), || format!("S^2(y_{}) = {ssy}", j + 1));
            let sx = a.antipode(&xh);
            c.record(eq(&sx, &y.sub(&shift)), || format!("S(x_{}) = {sx}", j + 1));
            let ssx = a.antipode(&sx);
            c.record(eq(&ssx, &xh.sub(&shift)), || format!("S^2(x_{}) = {ssx}", j + 1));
            let back = a.antipode(&a.antipode(&xh.add(&shift)));
            c.record(eq(&back, &xh), || format!("S^2(x_{} + C) = {back}", j + 1));
            let back = a.antipode(&a.antipode(&y.add(&shift)));
            c.record(eq(&back, &y), || format!("S^2(y_{} + C) = {back}", j + 1));
            let z = a.source_l(&OpElement::new(Presentation::Phi, x.clone()));
            c.record(eq(&z, &xh.add(&shift)), || format!("z_{} = x_{} + C", j + 1, j + 1));
        }
        rep.push(c);
    }
    rep
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
    fn a1_generator_values() {
        let c = ctx(&fixtures::a1());
        let a = build_algebroid(&c).unwrap();
        let x1 = a.generator(0);
        let lam = c.coaction(&x1);
        assert_eq!(a.target_r(&x1), lam);
        let tr = a.trace(0);
        let t = a.antipode(&SmashElement::from_u(2, &x1));
        assert!(c.smash_eq(&t, &lam.sub(&SmashElement::one(2).scale(&tr))));
        let f = Poly::gbar(2, 0, 1);
        assert_eq!(
            a.antipode(&SmashElement::from_h(&f)),
            SmashElement::from_h(&antipode_h(&f))
        );
    }

    #[test]
    fn verify_passes_on_small_fixtures() {
        for f in [fixtures::a0(), fixtures::a1(), fixtures::a2()] {
            let c = ctx(&f);
            let a = build_algebroid(&c).unwrap();
            let rep = verify_algebroid(&a, 2);
            assert!(rep.passed(), "{}: {:?}", f.name, rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn refuses_broken_coaction() {
        let alg = fixtures::a1().algebra.with_chirality(crate::leibniz::Chirality::Right);
        let c = PairingContext::with_legs("A1r", &alg, DEFAULT_DEGREE_CAP, crate::pairing::CoactionLegs::G).unwrap();
        assert!(matches!(build_algebroid(&c), Err(Error::VerificationFailed(_))));
    }

    #[test]
    fn fitted_antipode_formula() {
        let cs = [ctx(&fixtures::a1()), ctx(&fixtures::a4())];
        let algs: Vec<Algebroid> = cs.iter().map(|c| build_algebroid(c).unwrap()).collect();
        let f = fit_generator_formula(&algs, GeneratorMap::Antipode).unwrap();
        assert!(f.determined);
        assert_eq!(f.formula.to_string(), "τ(1_H♯x̃_j) = ∑_i Ḡ^i_j♯x̃_i − ∑_i C^i_{ij}♯1");
        assert_eq!(
            phase_space_form(&f.formula).unwrap().to_string(),
            "𝒮(1_H♯ŷ_j) = ∑_i O^i_j♯ŷ_i + ∑_i C^i_{ij}"
        );
    }
}

#[cfg(test)]
mod golden {
    use super::*;
    use crate::fixtures;
    use crate::groebner::DEFAULT_DEGREE_CAP;

    #[test]
    fn generator_formulas_over_all_left_fixtures() {
        let cs: Vec<PairingContext> = fixtures::all()
            .iter()
            .filter(|f| f.algebra.chirality() == crate::leibniz::Chirality::Left)
            .map(|f| PairingContext::new(f.name, &f.algebra, DEFAULT_DEGREE_CAP).unwrap())
            .collect();
        let algs: Vec<Algebroid> = cs.iter().map(|c| build_algebroid(c).unwrap()).collect();
        let expected = [
            (GeneratorMap::SourceR, "α_R(x̃_j) = 1_H♯x̃_j"),
            (GeneratorMap::TargetR, "β_R(x̃_j) = ∑_i Ḡ^i_j♯x̃_i"),
            (GeneratorMap::SourceLPhi, "α_L(x̃^op_{jφ}) = ∑_i Ḡ^i_j♯x̃_i"),
            (GeneratorMap::TargetLPhi, "β_L(x̃^op_{jφ}) = 1_H♯x̃_j + ∑_i C^i_{ij}♯1"),
            (GeneratorMap::CounitLPhi, "ε_L(1_H♯x̃_j) = x̃^op_{jφ} − ∑_i C^i_{ij}"),
            (
                GeneratorMap::SourceLTheta,
                "α_L(x̃^op_{jθ}) = ∑_i Ḡ^i_j♯x̃_i − ∑_i C^i_{ij}♯1",
            ),
            (GeneratorMap::TargetLTheta, "β_L(x̃^op_{jθ}) = 1_H♯x̃_j"),
            (GeneratorMap::CounitLTheta, "ε_L(1_H♯x̃_j) = x̃^op_{jθ}"),
            (GeneratorMap::Antipode, "τ(1_H♯x̃_j) = ∑_i Ḡ^i_j♯x̃_i − ∑_i C^i_{ij}♯1"),
            (GeneratorMap::AntipodeSquared, "τ^2(1_H♯x̃_j) = 1_H♯x̃_j − ∑_i C^i_{ij}♯1"),
        ];
        for (map, want) in expected {
            let f = fit_generator_formula(&algs, map).unwrap();
            assert_eq!(f.formula.to_string(), want);
        }
        let phase = [
            (GeneratorMap::TargetR, "β_R(ŷ_j) = ∑_i O^i_j♯ŷ_i"),
            (GeneratorMap::TargetLTheta, "β_L(x̂_j) = 1_H♯ŷ_j"),
            (GeneratorMap::AntipodeSquared, "𝒮^2(1_H♯ŷ_j) = 1_H♯ŷ_j + ∑_i C^i_{ij}"),
        ];
        for (map, want) in phase {
            let f = fit_generator_formula(&algs, map).unwrap();
            assert_eq!(phase_space_form(&f.formula).unwrap().to_string(), want);
        }
    }
}
