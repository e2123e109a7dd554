//! Exact rationals and their text/JSON renderings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;

pub type Rational = BigRational;

pub fn int(v: i128) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// `num/den`, or just `num` for integers.
pub fn to_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_text(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

fn big_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(v.to_string()),
    }
}

/// `[num, den]`; components that overflow i64 are written as strings.
pub fn to_json(r: &Rational) -> Value {
    Value::Array(vec![big_json(r.numer()), big_json(r.denom())])
}

pub fn from_json(v: &Value) -> Option<Rational> {
    let part = |p: &Value| -> Option<BigInt> {
        match p {
            Value::Number(n) => n.as_i64().map(BigInt::from),
            Value::String(s) => s.parse().ok(),
            _ => None,
        }
    };
    let arr = v.as_array()?;
    if arr.len() != 2 {
        return None;
    }
    let den = part(&arr[1])?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(part(&arr[0])?, den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
