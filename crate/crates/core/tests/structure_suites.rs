use ydforge::algebroid::{build_algebroid, verify_algebroid, OpElement, Presentation};
use ydforge::fixtures;
use ydforge::groebner::DEFAULT_DEGREE_CAP;
use ydforge::pairing::{CoactionLegs, PairingContext};
use ydforge::pbw::PbwElement;
use ydforge::smash::SmashElement;
use ydforge::yd::{sample_automorphisms, verify_yd_suite, Mode, YdOptions};
use ydforge::Error;

fn ctx(f: &fixtures::Fixture) -> PairingContext {
    PairingContext::new(f.name, &f.algebra, DEFAULT_DEGREE_CAP).unwrap()
}

#[test]
fn yd_suite_at_degree_two_on_every_fixture() {
    for f in fixtures::all() {
        let c = ctx(&f);
        for mode in [Mode::Groebner, Mode::Eval] {
            let mut opts = YdOptions::new(mode, sample_automorphisms(&f.algebra, 20, 4));
            opts.degcap = 2;
            let rep = verify_yd_suite(&c, &opts).unwrap();
            assert!(
                rep.passed(),
                "{} {mode}: {:?}",
                f.name,
                rep.failures().collect::<Vec<_>>()
            );
            assert!(rep.get("yd.soundness").is_some());
        }
    }
}

#[test]
fn right_chirality_with_g_legs_breaks_compatibility() {
    let f = fixtures::a2r();
    let c = PairingContext::with_legs(f.name, &f.algebra, DEFAULT_DEGREE_CAP, CoactionLegs::G).unwrap();
    let rep = verify_yd_suite(
        &c,
        &YdOptions::new(Mode::Groebner, sample_automorphisms(&f.algebra, 0, 0)),
    )
    .unwrap();
    assert!(!rep.get("yd.compatibility").unwrap().passed);
    assert!(rep.get("yd.braided").unwrap().passed);
}

#[test]
fn algebroid_on_every_left_fixture() {
    for f in fixtures::all() {
        if f.algebra.chirality() != ydforge::Chirality::Left {
            continue;
        }
        let c = ctx(&f);
        let a = build_algebroid(&c).unwrap();
        let rep = verify_algebroid(&a, 2);
        assert!(rep.passed(), "{}: {:?}", f.name, rep.failures().collect::<Vec<_>>());
        for p in [Presentation::Phi, Presentation::Theta] {
            let one = OpElement::new(p, PbwElement::one());
            assert_eq!(a.source_l(&one), SmashElement::one(c.n()));
            assert_eq!(a.target_l(&one), SmashElement::one(c.n()));
        }
    }
}

#[test]
fn non_leibniz_input_never_reaches_the_suites() {
    for alg in [fixtures::corrupted_a1(), fixtures::self_bracket_line()] {
        assert!(matches!(
            PairingContext::new("bad", &alg, DEFAULT_DEGREE_CAP),
            Err(Error::NotLeibniz { .. })
        ));
    }
}
