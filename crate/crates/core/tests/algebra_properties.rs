use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ydforge::fixtures::{self, random_invertible, random_rational};
use ydforge::io::{algebra_to_json, load_algebra, parse_algebra};
use ydforge::{lie_quotient, BasisChange, Chirality, LeibnizAlgebra, QMatrix, Scalar};

fn fixture_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn random_algebra(n: usize, chirality: Chirality, rng: &mut ChaCha8Rng) -> LeibnizAlgebra {
    let mut alg = LeibnizAlgebra::zero(n, chirality);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rand::Rng::gen_bool(rng, 0.3) {
                    alg.set(k, i, j, random_rational(rng));
                }
            }
        }
    }
    alg
}

#[test]
fn shipped_fixture_files_match_builtins() {
    for f in fixtures::all() {
        let path = fixture_dir().join(format!("{}.json", f.name));
        let loaded = load_algebra(&path).unwrap();
        assert_eq!(loaded, f.algebra, "{}", f.name);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, algebra_to_json(&f.algebra));
    }
}

#[test]
fn quotients_of_fixtures_are_lie() {
    for f in fixtures::all() {
        let lq = lie_quotient(&f.algebra).unwrap();
        assert!(lq.c_lie.check_leibniz(), "{}", f.name);
        assert!(lq.c_lie.is_lie().unwrap(), "{}", f.name);
        assert!(lq.q.mul(&lq.lift).unwrap().is_identity(), "{}", f.name);
        assert!(lq.bracket_descends(&f.algebra), "{}", f.name);
    }
}

#[test]
fn traces_match_transposed_matrices() {
    for f in fixtures::all() {
        let alg = &f.algebra;
        let n = alg.dim();
        for j in 0..n {
            let left = QMatrix::from_rows(
                (0..n)
                    .map(|k| (0..n).map(|i| alg.c(k, j, i).clone()).collect())
                    .collect(),
            )
            .unwrap();
            let right = QMatrix::from_rows(
                (0..n)
                    .map(|k| (0..n).map(|i| alg.c(k, i, j).clone()).collect())
                    .collect(),
            )
            .unwrap();
            assert_eq!(left.trace(), alg.left_trace(j));
            assert_eq!(right.transpose().trace(), alg.right_trace(j));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn leibniz_is_basis_independent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut all: Vec<LeibnizAlgebra> = fixtures::all().into_iter().map(|f| f.algebra).collect();
        all.push(fixtures::corrupted_a1());
        all.push(fixtures::self_bracket_line());
        for alg in all {
            let t = BasisChange::new(random_invertible(alg.dim(), &mut rng)).unwrap();
            let moved = alg.transform_basis(&t).unwrap();
            prop_assert_eq!(moved.check_leibniz(), alg.check_leibniz());
            prop_assert_eq!(moved.transform_basis(&t.inverse()).unwrap(), alg);
        }
    }

    #[test]
    fn quotient_of_moved_fixture_is_lie(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for f in fixtures::all() {
            let t = BasisChange::new(random_invertible(f.algebra.dim(), &mut rng)).unwrap();
            let alg = f.algebra.transform_basis(&t).unwrap();
            let lq = lie_quotient(&alg).unwrap();
            prop_assert!(lq.c_lie.is_lie().unwrap());
            prop_assert!(lq.q.mul(&lq.lift).unwrap().is_identity());
            prop_assert_eq!(lq.m, lie_quotient(&f.algebra).unwrap().m);
            for v in &lq.kernel_basis {
                prop_assert!(lq.q.mul_vec(v).iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn json_roundtrip(seed in any::<u64>(), n in 1usize..4, right in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chirality = if right { Chirality::Right } else { Chirality::Left };
        let alg = random_algebra(n, chirality, &mut rng);
        let text = algebra_to_json(&alg);
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(algebra_to_json(&back), text);
        prop_assert_eq!(back, alg);
    }
}

#[test]
fn malformed_files_are_rejected() {
    let dir = tempdir();
    let bad = [
        r#"{"n": 2, "chirality": "left", "brackets": [{"i": 1, "j": 1, "coeffs": {"3": "1"}}]}"#,
        r#"{"n": 2, "chirality": "left", "brackets": [{"i": 1, "j": 1, "coeffs": {"2": "1/0"}}]}"#,
        r#"{"n": 2, "chirality": "sideways", "brackets": []}"#,
        r#"{"n": 2, "chirality": "left", "brackets": [{"i": 0, "j": 1, "coeffs": {}}]}"#,
        "not json",
    ];
    for (k, text) in bad.iter().enumerate() {
        let path = dir.join(format!("bad{k}.json"));
        std::fs::write(&path, text).unwrap();
        assert!(matches!(load_algebra(&path), Err(ydforge::Error::Parse(_))), "{text}");
    }
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ydforge-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
