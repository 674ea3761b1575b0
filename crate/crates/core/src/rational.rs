//! Exact rationals and their JSON encoding.
//!
//! Every rational crosses the JSON boundary as a two-element array
//! `["num", "den"]` of decimal strings, reduced, with a positive denominator.
//! Plain JSON integers and integer strings are accepted on input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact rational number used for exponents, lengths and tropical coordinates.
pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn rat_to_json(x: &Q) -> Value {
    Value::Array(vec![
        Value::String(x.numer().to_string()),
        Value::String(x.denom().to_string()),
    ])
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::invalid(format!("not an integer: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::invalid(format!("not an integer: {n}"))),
        other => Err(Error::invalid(format!("expected integer, found {other}"))),
    }
}

pub fn rat_from_json(v: &Value) -> Result<Q> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            let num = int_from_json(&parts[0])?;
            let den = int_from_json(&parts[1])?;
            if den.is_zero() {
                return Err(Error::invalid("zero denominator"));
            }
            Ok(Q::new(num, den))
        }
        Value::String(s) if s.contains('/') => {
            let (n, d) = s.split_once('/').unwrap();
            rat_from_json(&Value::Array(vec![
                Value::String(n.to_string()),
                Value::String(d.to_string()),
            ]))
        }
        _ => int_from_json(v).map(Q::from_integer),
    }
}

pub fn vec_to_json(xs: &[Q]) -> Value {
    Value::Array(xs.iter().map(rat_to_json).collect())
}

pub fn vec_from_json(v: &Value) -> Result<Vec<Q>> {
    v.as_array()
        .ok_or_else(|| Error::invalid("expected an array of rationals"))?
        .iter()
        .map(rat_from_json)
        .collect()
}

/// Human-readable form: `3`, `-1/2`.
pub fn fmt_rat(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vec(xs: &[Q]) -> String {
    let parts: Vec<String> = xs.iter().map(fmt_rat).collect();
    format!("({})", parts.join(", "))
}

/// Exact integer value of `x`, if it is one.
pub fn as_integer(x: &Q) -> Option<BigInt> {
    x.is_integer().then(|| x.numer().clone())
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_roundtrip_reduces() {
        let x = Q::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(rat_to_json(&x), json!(["-3", "2"]));
        assert_eq!(rat_from_json(&json!(["-3", "2"])).unwrap(), x);
        assert_eq!(rat_from_json(&json!(["6", "-4"])).unwrap(), x);
    }

    #[test]
    fn lenient_inputs() {
        assert_eq!(rat_from_json(&json!(5)).unwrap(), qi(5));
        assert_eq!(rat_from_json(&json!("-7")).unwrap(), qi(-7));
        assert_eq!(rat_from_json(&json!("1/3")).unwrap(), q(1, 3));
        assert!(rat_from_json(&json!(["1", "0"])).is_err());
        assert!(rat_from_json(&json!(1.5)).is_err());
    }

    #[test]
    fn huge_integers_survive() {
        let v = json!(["123456789012345678901234567890", "11"]);
        assert_eq!(rat_to_json(&rat_from_json(&v).unwrap()), v);
    }
}
