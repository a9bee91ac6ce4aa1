//! Reading and writing algebras as JSON files.
//!
//! ```json
//! { "n": 2, "chirality": "left",
//!   "brackets": [ { "i": 1, "j": 2, "coeffs": { "2": "1" } } ] }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::leibniz::{Chirality, LeibnizAlgebra};
use crate::scalar;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    n: usize,
    chirality: Chirality,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, String>,
}

fn check_index(idx: usize, n: usize, field: &str, entry: usize) -> Result<usize> {
    if idx == 0 || idx > n {
        return Err(Error::Parse(format!(
            "brackets[{entry}].{field}: index {idx} out of range 1..={n}"
        )));
    }
    Ok(idx - 1)
}

pub fn parse_algebra(text: &str) -> Result<LeibnizAlgebra> {
    let spec: SpecFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e)))?;
    if spec.n == 0 {
        return Err(Error::Parse("n must be positive".into()));
    }
    let n = spec.n;
    let mut alg = LeibnizAlgebra::zero(n, spec.chirality);
    for (e, b) in spec.brackets.iter().enumerate() {
        let i = check_index(b.i, n, "i", e)?;
        let j = check_index(b.j, n, "j", e)?;
        for (k, v) in &b.coeffs {
            let kk: usize = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("brackets[{e}].coeffs: bad key {k:?}")))?;
            let kk = check_index(kk, n, "coeffs", e)?;
            let val = scalar::parse(v).map_err(|err| Error::Parse(format!("brackets[{e}].coeffs[{k:?}]: {err}")))?;
            let cur = alg.c(kk, i, j).clone();
            alg.set(kk, i, j, cur + val);
        }
    }
    Ok(alg)
}

pub fn algebra_to_json(alg: &LeibnizAlgebra) -> String {
    let n = alg.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let coeffs: BTreeMap<String, String> = (0..n)
                .filter(|&k| !alg.c(k, i, j).is_zero())
                .map(|k| ((k + 1).to_string(), alg.c(k, i, j).to_string()))
                .collect();
            if !coeffs.is_empty() {
                brackets.push(BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    coeffs,
                });
            }
        }
    }
    let spec = SpecFile {
        n,
        chirality: alg.chirality(),
        brackets,
    };
    serde_json::to_string_pretty(&spec).expect("serializable") + "\n"
}

pub fn load_algebra(path: &Path) -> Result<LeibnizAlgebra> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_algebra(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn save_algebra(alg: &LeibnizAlgebra, path: &Path) -> Result<()> {
    std::fs::write(path, algebra_to_json(alg)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn roundtrip_fixtures() {
        for f in fixtures::all() {
            let text = algebra_to_json(&f.algebra);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back, f.algebra);
            assert_eq!(algebra_to_json(&back), text);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let out_of_range = r#"{"n":2,"chirality":"left","brackets":[{"i":1,"j":2,"coeffs":{"3":"1"}}]}"#;
        assert!(matches!(parse_algebra(out_of_range), Err(Error::Parse(_))));
        let zero_den = r#"{"n":2,"chirality":"left","brackets":[{"i":1,"j":2,"coeffs":{"2":"1/0"}}]}"#;
        assert!(matches!(parse_algebra(zero_den), Err(Error::Parse(_))));
        assert!(parse_algebra("{\"n\":2}").is_err());
        assert!(parse_algebra(r#"{"n":1,"chirality":"up","brackets":[]}"#).is_err());
    }

    #[test]
    fn omitted_brackets_are_zero() {
        let alg = parse_algebra(r#"{"n":3,"chirality":"right"}"#).unwrap();
        assert_eq!(alg, LeibnizAlgebra::zero(3, Chirality::Right));
    }
}
