//! Yetter-Drinfeld module algebra and braided commutativity checks.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fixtures::{self, random_rational};
use crate::leibniz::{BasisChange, LeibnizAlgebra};
use crate::matrix::QMatrix;
use crate::oaut::{apply_substitution, basis_change_generators};
use crate::pairing::{Alphabet, PairingContext};
use crate::pbw::{PbwElement, PbwMonomial};
use crate::poly::Poly;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::smash::{SmashElement, SmashTensor};

const MAX_DETAIL: usize = 600;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Groebner,
    Eval,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "groebner" => Ok(Mode::Groebner),
            "eval" => Ok(Mode::Eval),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Groebner => "groebner",
            Mode::Eval => "eval",
        })
    }
}

#[derive(Clone, Debug)]
pub struct YdOptions {
    /// Maximal PBW degree of the `U(h_Lie)` arguments.
    pub degcap: usize,
    /// Maximal degree of the `O(Aut(h))` test monomials.
    pub h_degree: u32,
    pub mode: Mode,
    /// Automorphisms `(M, M^{-1})` used by eval mode and the soundness record.
    pub samples: Vec<(QMatrix, QMatrix)>,
}

impl YdOptions {
    pub fn new(mode: Mode, samples: Vec<(QMatrix, QMatrix)>) -> Self {
        YdOptions {
            degcap: 3,
            h_degree: 2,
            mode,
            samples,
        }
    }
}

/// `count` random automorphisms (plus the identity) from the stored family of
/// the built-in fixture equal to `alg`, or just the identity if there is none.
pub fn sample_automorphisms(alg: &LeibnizAlgebra, count: usize, seed: u64) -> Vec<(QMatrix, QMatrix)> {
    let ms = match fixtures::all().into_iter().find(|f| &f.algebra == alg) {
        Some(f) => f.sample_automorphisms(count, seed),
        None => vec![QMatrix::identity(alg.dim())],
    };
    ms.into_iter()
        .map(|m| {
            let inv = m.inverse().expect("automorphisms are invertible");
            (m, inv)
        })
        .collect()
}

/// Whether a built-in automorphism family is known for `alg`.
pub fn has_sample_family(alg: &LeibnizAlgebra) -> bool {
    fixtures::all().iter().any(|f| &f.algebra == alg)
}

fn clip(s: String) -> String {
    if s.chars().count() <= MAX_DETAIL {
        s
    } else {
        let mut t: String = s.chars().take(MAX_DETAIL).collect();
        t.push_str(" ...");
        t
    }
}

/// Outcome of one instance: a failure description in the selected mode and a
/// disagreement between Groebner reduction and evaluation, if any.
#[derive(Default)]
struct Outcome {
    failure: Option<String>,
    unsound: Option<String>,
}

struct Judge<'a> {
    ctx: &'a PairingContext,
    mode: Mode,
    samples: &'a [(QMatrix, QMatrix)],
}

impl Judge<'_> {
    fn smash(&self, diff: &SmashElement) -> Outcome {
        let nf = self.ctx.smash_normal_form(diff);
        let nf_zero = nf.is_zero();
        let bad_sample = self.samples.iter().position(|(m, mi)| !diff.evaluate(m, mi).is_zero());
        let n = self.ctx.n();
        let failed = match self.mode {
            Mode::Groebner => !nf_zero,
            Mode::Eval => bad_sample.is_some(),
        };
        let mut out = Outcome::default();
        if failed {
            out.failure = Some(clip(format!("residual {}; normal form {}", diff, nf)));
        }
        if nf_zero == bad_sample.is_some() {
            out.unsound = Some(clip(match bad_sample {
                Some(k) => format!(
                    "normal form 0 but nonzero at sample {k} ({}x{} matrix {})",
                    n, n, self.samples[k].0
                ),
                None => format!("vanishes at all samples but normal form is {nf}"),
            }));
        }
        out
    }

    fn tensor(&self, diff: &SmashTensor) -> Outcome {
        let n = self.ctx.n();
        let nf = self.ctx.smash_tensor_normal_form(diff);
        let nf_zero = nf.is_zero();
        let k = self.samples.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| [(a, a), (a, (a + 1) % k)]).collect();
        let bad_pair = pairs.iter().copied().find(|&(a, b)| {
            let (ma, ia) = &self.samples[a];
            let (mb, ib) = &self.samples[b];
            !self.ctx.smash_tensor_evaluate(diff, (ma, ia), (mb, ib)).is_zero()
        });
        let failed = match self.mode {
            Mode::Groebner => !nf_zero,
            Mode::Eval => bad_pair.is_some(),
        };
        let mut out = Outcome::default();
        if failed {
            out.failure = Some(clip(format!(
                "residual {}; normal form {}",
                diff.display(n),
                nf.display(n)
            )));
        }
        if nf_zero == bad_pair.is_some() {
            out.unsound = Some(clip(match bad_pair {
                Some((a, b)) => format!("normal form 0 but nonzero at samples ({a}, {b})"),
                None => format!("vanishes at all sample pairs but normal form is {}", nf.display(n)),
            }));
        }
        out
    }
}

/// Runs `f` over `items` in parallel and records the outcomes in order.
fn run<T: Sync>(
    check: &mut Check,
    soundness: &mut Check,
    items: &[T],
    label: impl Fn(&T) -> String + Sync,
    f: impl Fn(&T) -> Outcome + Sync,
) {
    let outcomes: Vec<Outcome> = items.par_iter().map(&f).collect();
    for (item, o) in items.iter().zip(outcomes) {
        let Outcome { failure, unsound } = o;
        check.record(failure.is_none(), || {
            format!("{}: {}", label(item), failure.unwrap_or_default())
        });
        soundness.record(unsound.is_none(), || {
            format!("{}: {}", label(item), unsound.unwrap_or_default())
        });
    }
}

fn exact<T: Sync>(
    check: &mut Check,
    items: &[T],
    label: impl Fn(&T) -> String + Sync,
    f: impl Fn(&T) -> Option<String> + Sync,
) {
    let outcomes: Vec<Option<String>> = items.par_iter().map(&f).collect();
    for (item, o) in items.iter().zip(outcomes) {
        check.record(o.is_none(), || {
            clip(format!("{}: {}", label(item), o.unwrap_or_default()))
        });
    }
}

fn mono(w: &PbwMonomial) -> PbwElement {
    PbwElement::monomial(w.clone(), Scalar::one())
}

fn show(w: &PbwMonomial) -> String {
    if w.is_one() {
        "1".into()
    } else {
        w.to_string()
    }
}

/// Identities (1)-(5), counitality and the Groebner/evaluation agreement,
/// for all PBW monomials `u, v` of degree at most `degcap` and all monomials
/// `f` of degree at most `h_degree` in the generators of `O(Aut(h))`.
pub fn verify_yd_suite(ctx: &PairingContext, opts: &YdOptions) -> Result<Report> {
    ctx.alg.require_leibniz()?;
    if opts.mode == Mode::Eval && opts.samples.is_empty() {
        return Err(Error::VerificationFailed("eval mode needs at least one sample".into()));
    }
    let name = &ctx.name;
    let n = ctx.n();
    let judge = Judge {
        ctx,
        mode: opts.mode,
        samples: &opts.samples,
    };
    let us = ctx.pbw_monomials(opts.degcap);
    let fs = ctx.test_monomials(opts.h_degree);
    let pairs: Vec<(PbwMonomial, PbwMonomial)> = us
        .iter()
        .flat_map(|u| us.iter().map(move |v| (u.clone(), v.clone())))
        .collect();
    let uf: Vec<(PbwMonomial, Poly)> = us
        .iter()
        .flat_map(|u| fs.iter().map(move |f| (u.clone(), f.clone())))
        .collect();
    let pair_label = |(u, v): &(PbwMonomial, PbwMonomial)| format!("u={}, v={}", show(u), show(v));

    // Warm the coaction cache sequentially so parallel workers share it.
    for u in &us {
        ctx.coaction_monomial(u);
    }

    let mut rep = Report::new();
    let mut soundness = Check::new(
        "yd.soundness",
        "Groebner normal form 0 iff the residual vanishes at every sampled automorphism",
        name,
    );

    let mut commute = Check::new("yd.commute", "z lambda(v) = lambda(v) z for z in 1#U(h_Lie)", name);
    run(&mut commute, &mut soundness, &pairs, pair_label, |(u, v)| {
        let z = SmashElement::from_u(n, &mono(u));
        let l = ctx.coaction_monomial(v);
        judge.smash(&ctx.smash_mul(&z, &l).sub(&ctx.smash_mul(&l, &z)))
    });
    rep.push(commute);

    let mut coassoc = Check::new(
        "yd.coassociative",
        "(Delta (x) id) lambda = (id (x) lambda) lambda, evaluating to sum Gbar^k_j (x) Gbar^i_k # x_i on generators",
        name,
    );
    run(
        &mut coassoc,
        &mut soundness,
        &us,
        |u| format!("v={}", show(u)),
        |u| {
            let l = ctx.coaction_monomial(u);
            judge.tensor(&ctx.delta_h_leg(&l).sub(&ctx.lambda_u_leg(&l)))
        },
    );
    rep.push(coassoc);

    let mut counit = Check::new("yd.counit", "(epsilon (x) id) lambda = id", name);
    exact(
        &mut counit,
        &us,
        |u| format!("v={}", show(u)),
        |u| {
            let got = ctx.coaction_monomial(u).counit_h_leg();
            (got != mono(u)).then(|| format!("got {got}"))
        },
    );
    rep.push(counit);

    let mut yd = Check::new(
        "yd.compatibility",
        "f_(2) lambda(u <| f_(1)) = lambda(u) f in the smash product",
        name,
    );
    run(
        &mut yd,
        &mut soundness,
        &uf,
        |(u, f)| format!("u={}, f={f}", show(u)),
        |(u, f)| {
            let mut lhs = SmashElement::zero(n);
            for (f1, f2, c) in ctx.oaut.coproduct(f).terms() {
                let acted = ctx.act_monomial(u, f1);
                if acted.is_zero() {
                    continue;
                }
                let h = SmashElement::from_h(&Poly::monomial(n, f2.clone(), c.clone()));
                lhs = lhs.add(&ctx.smash_mul(&h, &ctx.coaction(&acted)));
            }
            let rhs = ctx.smash_mul(&ctx.coaction_monomial(u), &SmashElement::from_h(f));
            judge.smash(&lhs.sub(&rhs))
        },
    );
    rep.push(yd);

    let mut braided = Check::new("yd.braided", "u <| lambda(v) = v u", name);
    exact(&mut braided, &pairs, pair_label, |(u, v)| {
        let lhs = ctx.extended_act(&mono(u), &ctx.coaction_monomial(v));
        let rhs = ctx.uea.mul(&mono(v), &mono(u));
        (lhs != rhs).then(|| format!("{lhs} vs {rhs}"))
    });
    rep.push(braided);

    let mut anti = Check::new("yd.antimultiplicative", "lambda(u v) = lambda(v) lambda(u)", name);
    run(&mut anti, &mut soundness, &pairs, pair_label, |(u, v)| {
        let lhs = ctx.coaction(&ctx.uea.mul(&mono(u), &mono(v)));
        let rhs = ctx.smash_mul(&ctx.coaction_monomial(v), &ctx.coaction_monomial(u));
        judge.smash(&lhs.sub(&rhs))
    });
    rep.push(anti);

    rep.push(soundness);
    Ok(rep)
}

/// Replacing the section of `h -> h_Lie` by one perturbed with kernel vectors
/// changes neither the pairing nor `lambda` modulo the ideal.
pub fn lift_independence(ctx: &PairingContext, degcap: usize, trials: usize, seed: u64) -> Report {
    let name = &ctx.name;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lam = Check::new("lift.coaction", "lambda does not depend on the chosen lift", name);
    let mut pair = Check::new("lift.pairing", "the pairing does not depend on the chosen lift", name);
    let us = ctx.pbw_monomials(degcap);
    let fs = ctx.test_monomials(2);
    for t in 0..trials {
        if ctx.lq.kernel_basis.is_empty() {
            break;
        }
        let mut lift = ctx.lq.lift.clone();
        for a in 0..ctx.m() {
            for v in &ctx.lq.kernel_basis {
                let c = random_rational(&mut rng);
                for (k, x) in v.iter().enumerate() {
                    lift[(k, a)] += &c * x;
                }
            }
        }
        let other = ctx.with_lift(lift);
        for u in &us {
            let d = ctx.coaction_monomial(u).sub(&other.coaction_monomial(u));
            lam.record(ctx.smash_is_zero(&d), || format!("trial {t}, u={}: {d}", show(u)));
            for f in fs.iter().take(64) {
                let m = &f.terms()[0].0;
                let a = ctx.pair_word(Alphabet::Lie, u.letters(), m);
                let b = other.pair_word(Alphabet::Lie, u.letters(), m);
                pair.record(a == b, || format!("trial {t}, <{}, {f}>: {a} vs {b}", show(u)));
            }
        }
    }
    let mut rep = Report::new();
    rep.push(lam);
    rep.push(pair);
    rep
}

/// `lambda` of every kernel vector of `h -> h_Lie`, taken on `h` directly,
/// vanishes modulo the ideal.
pub fn kernel_coaction(ctx: &PairingContext) -> Report {
    let n = ctx.n();
    let mut c = Check::new(
        "kernel.coaction",
        "lambda vanishes on lifts of kernel vectors",
        &ctx.name,
    );
    for v in &ctx.lq.kernel_basis {
        let mut s = SmashElement::zero(n);
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                s = s.add(&ctx.coaction_h_generator(k).scale(x));
            }
        }
        c.record(ctx.smash_is_zero(&s), || format!("{v:?}: {s}"));
    }
    let mut rep = Report::new();
    rep.push(c);
    rep
}

/// Transports data from the algebra in the basis `x'_j = sum_i T^i_j x_i` back
/// to the original basis.
pub struct Transport<'a> {
    pub base: &'a PairingContext,
    pub moved: PairingContext,
    theta: Vec<Poly>,
    letters: Vec<PbwElement>,
}

impl<'a> Transport<'a> {
    pub fn new(base: &'a PairingContext, t: &BasisChange, degree_cap: u32) -> Result<Self> {
        let alg = base.alg.transform_basis(t)?;
        let moved = PairingContext::with_legs(&base.name, &alg, degree_cap, base.legs)?;
        let theta = basis_change_generators(t);
        let n = base.n();
        let letters = (0..moved.m())
            .map(|a| {
                let col: Vec<Scalar> = (0..n).map(|k| moved.lq.lift[(k, a)].clone()).collect();
                base.image(&t.t.mul_vec(&col))
            })
            .collect();
        Ok(Transport {
            base,
            moved,
            theta,
            letters,
        })
    }

    pub fn map_u(&self, w: &PbwMonomial) -> PbwElement {
        let fs: Vec<&PbwElement> = w.letters().iter().map(|&a| &self.letters[a]).collect();
        self.base.uea.mul_all(&fs)
    }

    pub fn map_h(&self, f: &Poly) -> Poly {
        apply_substitution(f, &self.theta)
    }

    pub fn map_smash(&self, s: &SmashElement) -> SmashElement {
        let n = self.base.n();
        let mut out = SmashElement::zero(n);
        for (m, w, c) in s.terms() {
            let h = self.map_h(&Poly::monomial(n, m.clone(), c.clone()));
            out = out.add(&SmashElement::pure(&h, &self.map_u(w)));
        }
        out
    }
}

/// Pairing values and `lambda` agree after transport along random basis
/// changes.
pub fn basis_change_invariance(
    ctx: &PairingContext,
    trials: usize,
    degcap: usize,
    seed: u64,
    degree_cap: u32,
) -> Result<Report> {
    let name = &ctx.name;
    let n = ctx.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pair = Check::new(
        "basis.pairing",
        "the pairing does not depend on the choice of basis",
        name,
    );
    let mut lam = Check::new("basis.coaction", "lambda does not depend on the basis", name);
    for t in 0..trials {
        let bc = BasisChange::new(fixtures::random_invertible(n, &mut rng))?;
        let tr = Transport::new(ctx, &bc, degree_cap)?;
        let us = tr.moved.pbw_monomials(degcap);
        let fs = tr.moved.test_monomials(2);
        let results: Vec<(Vec<Option<String>>, Option<String>)> = us
            .par_iter()
            .map(|u| {
                let lu = tr.map_u(u);
                let pairs = fs
                    .iter()
                    .map(|f| {
                        let a = tr.moved.pair(&mono(u), f);
                        let b = ctx.pair(&lu, &tr.map_h(f));
                        (a != b).then(|| format!("trial {t}, <{}, {f}>: {a} vs {b}", show(u)))
                    })
                    .collect();
                let d = tr.map_smash(&tr.moved.coaction_monomial(u)).sub(&ctx.coaction(&lu));
                let l = (!ctx.smash_is_zero(&d)).then(|| clip(format!("trial {t}, u={}: {d}", show(u))));
                (pairs, l)
            })
            .collect();
        for (ps, l) in results {
            for p in ps {
                pair.record(p.is_none(), || p.unwrap_or_default());
            }
            lam.record(l.is_none(), || l.unwrap_or_default());
        }
    }
    let mut rep = Report::new();
    rep.push(pair);
    rep.push(lam);
    Ok(rep)
}
