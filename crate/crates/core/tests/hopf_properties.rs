use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ydforge::fixtures::{self, random_rational};
use ydforge::groebner::DEFAULT_DEGREE_CAP;
use ydforge::oaut::{antipode_h, coproduct_h, counit_h, derived_relation_residues};
use ydforge::pairing::PairingContext;
use ydforge::pbw::{PbwElement, PbwMonomial, UTensor};
use ydforge::poly::{GenVar, Monomial, Poly};
use ydforge::smash::SmashElement;
use ydforge::Scalar;

fn contexts() -> &'static [PairingContext] {
    static CTX: OnceLock<Vec<PairingContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        fixtures::all()
            .iter()
            .map(|f| PairingContext::new(f.name, &f.algebra, DEFAULT_DEGREE_CAP).unwrap())
            .collect()
    })
}

fn random_monomial(n: usize, max_degree: u32, rng: &mut ChaCha8Rng) -> Monomial {
    let nv = 2 * n * n;
    let d = rng.gen_range(0..=max_degree);
    (0..d).fold(Monomial::one(nv), |m, _| {
        m.mul(&Monomial::var(nv, rng.gen_range(0..nv)))
    })
}

fn random_poly(n: usize, rng: &mut ChaCha8Rng) -> Poly {
    let terms = rng.gen_range(1..=4);
    Poly::from_terms(
        n,
        (0..terms).map(|_| (random_monomial(n, 2, rng), random_rational(rng))),
    )
}

fn random_pbw_monomial(m: usize, max_degree: usize, rng: &mut ChaCha8Rng) -> PbwMonomial {
    if m == 0 {
        return PbwMonomial::one();
    }
    let d = rng.gen_range(0..=max_degree);
    let mut w: Vec<usize> = (0..d).map(|_| rng.gen_range(0..m)).collect();
    w.sort();
    PbwMonomial::from_sorted(w)
}

fn random_pbw(m: usize, rng: &mut ChaCha8Rng) -> PbwElement {
    let mut u = PbwElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        u.add_term(random_pbw_monomial(m, 2, rng), random_rational(rng));
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn polynomials_form_a_commutative_ring(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_poly(n, &mut rng), random_poly(n, &mut rng), random_poly(n, &mut rng));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(Poly::parse(n, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn normal_form_is_idempotent_and_sound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (f, ctx) in fixtures::all().iter().zip(contexts()) {
            let n = ctx.n();
            let p = random_poly(n, &mut rng);
            let nf = ctx.oaut.normal_form(&p);
            prop_assert_eq!(ctx.oaut.normal_form(&nf), nf.clone());
            let mut member = Poly::zero(n);
            for g in ctx.oaut.ideal_generators() {
                member = member.add(&g.mul(&random_poly(n, &mut rng)));
            }
            prop_assert!(ctx.oaut.contains(&member));
            for m in f.sample_automorphisms(20, seed) {
                let minv = m.inverse().unwrap();
                prop_assert!(member.evaluate(&m, &minv).unwrap().is_zero());
                prop_assert_eq!(p.evaluate(&m, &minv).unwrap(), nf.evaluate(&m, &minv).unwrap());
            }
        }
    }

    #[test]
    fn pairing_is_a_hopf_pairing(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for ctx in contexts() {
            let (n, m) = (ctx.n(), ctx.m());
            let u = random_pbw(m, &mut rng);
            let v = random_pbw(m, &mut rng);
            let f = Poly::monomial(n, random_monomial(n, 2, &mut rng), Scalar::one());
            let g = Poly::monomial(n, random_monomial(n, 1, &mut rng), Scalar::one());

            let lhs = ctx.pair(&ctx.uea.mul(&u, &v), &f);
            let rhs = coproduct_h(&f).contract(|a, b| {
                ctx.pair(&u, &Poly::monomial(n, a.clone(), Scalar::one()))
                    * ctx.pair(&v, &Poly::monomial(n, b.clone(), Scalar::one()))
            });
            prop_assert_eq!(lhs, rhs);

            let lhs = ctx.pair(&u, &f.mul(&g));
            let mut rhs = Scalar::zero();
            for (legs, c) in ctx.uea.coproduct(&u).terms() {
                let a = PbwElement::monomial(legs[0].clone(), Scalar::one());
                let b = PbwElement::monomial(legs[1].clone(), Scalar::one());
                rhs += c * ctx.pair(&a, &f) * ctx.pair(&b, &g);
            }
            prop_assert_eq!(lhs, rhs);

            prop_assert_eq!(ctx.pair(&ctx.uea.antipode(&u), &f), ctx.pair(&u, &antipode_h(&f)));
            prop_assert_eq!(ctx.pair(&PbwElement::one(), &f), counit_h(&f));
        }
    }

    #[test]
    fn action_is_a_module_algebra(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for ctx in contexts() {
            let (n, m) = (ctx.n(), ctx.m());
            let u = random_pbw(m, &mut rng);
            let v = random_pbw(m, &mut rng);
            let f = Poly::monomial(n, random_monomial(n, 2, &mut rng), Scalar::one());
            let g = Poly::monomial(n, random_monomial(n, 1, &mut rng), Scalar::one());
            prop_assert_eq!(ctx.act(&ctx.act(&u, &f), &g), ctx.act(&u, &f.mul(&g)));
            let lhs = ctx.act(&ctx.uea.mul(&u, &v), &f);
            let mut rhs = PbwElement::zero();
            for (a, b, c) in coproduct_h(&f).terms() {
                let ua = ctx.act(&u, &Poly::monomial(n, a.clone(), c.clone()));
                let vb = ctx.act(&v, &Poly::monomial(n, b.clone(), Scalar::one()));
                rhs = rhs.add(&ctx.uea.mul(&ua, &vb));
            }
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn smash_product_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for ctx in contexts() {
            let (n, m) = (ctx.n(), ctx.m());
            let mut pick = || {
                SmashElement::pure(
                    &Poly::monomial(n, random_monomial(n, 2, &mut rng), random_rational(&mut rng)),
                    &PbwElement::monomial(random_pbw_monomial(m, 2, &mut rng), Scalar::one()),
                )
            };
            let (x, y, z) = (pick(), pick(), pick());
            let lhs = ctx.smash_mul(&ctx.smash_mul(&x, &y), &z);
            let rhs = ctx.smash_mul(&x, &ctx.smash_mul(&y, &z));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn derived_relations_reduce_to_zero() {
    for ctx in contexts() {
        for r in derived_relation_residues(&ctx.alg) {
            assert!(ctx.oaut.contains(&r), "{}: {r}", ctx.name);
        }
        assert!(ctx.oaut.groebner().is_proper());
        assert!(ctx.oaut.groebner().satisfies_s_pair_criterion());
        for g in ctx.oaut.ideal_generators() {
            assert!(ctx.oaut.contains(g));
        }
    }
}

#[test]
fn enveloping_algebra_is_a_hopf_algebra() {
    for ctx in contexts() {
        let uea = &ctx.uea;
        assert!(uea.check_associativity(4), "{}", ctx.name);
        for w in PbwMonomial::all_up_to(ctx.m(), 3) {
            let u = PbwElement::monomial(w.clone(), Scalar::one());
            let d = uea.coproduct(&u);
            let delta = |x: &PbwMonomial| uea.coproduct(&PbwElement::monomial(x.clone(), Scalar::one()));
            assert_eq!(d.map_leg(0, delta), d.map_leg(1, delta), "{}: {w:?}", ctx.name);

            let mut conv = PbwElement::zero();
            for (legs, c) in d.terms() {
                let a = uea.antipode(&PbwElement::monomial(legs[0].clone(), c.clone()));
                conv = conv.add(&uea.mul(&a, &PbwElement::monomial(legs[1].clone(), Scalar::one())));
            }
            assert_eq!(conv, PbwElement::scalar(u.counit()));

            for w2 in PbwMonomial::all_up_to(ctx.m(), 3 - w.degree()) {
                let v = PbwElement::monomial(w2, Scalar::one());
                let lhs = uea.coproduct(&uea.mul(&u, &v));
                let rhs: UTensor = uea.tensor_mul(&uea.coproduct(&u), &uea.coproduct(&v));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

type Triple = BTreeMap<(Monomial, Monomial, Monomial), Scalar>;

fn add_triple(t: &mut Triple, key: (Monomial, Monomial, Monomial), c: Scalar) {
    *t.entry(key).or_insert_with(Scalar::zero) += c;
    t.retain(|_, v| !v.is_zero());
}

#[test]
fn coordinate_ring_is_a_hopf_algebra() {
    for ctx in contexts() {
        let n = ctx.n();
        assert!(ctx.oaut.is_hopf_ideal(), "{}", ctx.name);
        for v in GenVar::all(n) {
            let p = Poly::var(n, v);
            let d = coproduct_h(&p);
            let mut left = Triple::new();
            let mut right = Triple::new();
            let mut counit_l = Poly::zero(n);
            let mut counit_r = Poly::zero(n);
            let mut conv = Poly::zero(n);
            for (a, b, c) in d.terms() {
                let pa = Poly::monomial(n, a.clone(), c.clone());
                let pb = Poly::monomial(n, b.clone(), Scalar::one());
                for (a1, a2, e) in coproduct_h(&pa).terms() {
                    add_triple(&mut left, (a1.clone(), a2.clone(), b.clone()), e.clone());
                }
                for (b1, b2, e) in coproduct_h(&pb).terms() {
                    add_triple(&mut right, (a.clone(), b1.clone(), b2.clone()), c * e);
                }
                counit_l = counit_l.add(&pb.scale(&counit_h(&pa)));
                counit_r = counit_r.add(&pa.scale(&counit_h(&pb)));
                conv = conv.add(&antipode_h(&pa).mul(&pb));
            }
            assert_eq!(left, right, "{}: {v}", ctx.name);
            assert_eq!(counit_l, p);
            assert_eq!(counit_r, p);
            assert!(
                ctx.oaut.contains(&conv.sub(&Poly::constant(n, counit_h(&p)))),
                "{}: {v}",
                ctx.name
            );
        }
    }
}
