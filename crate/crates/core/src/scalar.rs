//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p"`, `"-p"` or `"p/q"`. Rejects a zero denominator.
pub fn parse(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("malformed rational {s:?}")))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("malformed rational {s:?}")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(p, q))
}

pub fn to_f64(s: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    s.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse("-2/4").unwrap(), frac(-1, 2));
        assert_eq!(parse(" 6 / -3 ").unwrap(), int(-2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn reduced_with_positive_denominator() {
        let s = parse("4/-6").unwrap();
        assert_eq!(s.denom(), &BigInt::from(3));
        assert_eq!(s.numer(), &BigInt::from(-2));
    }
}
