//! Exact rational helpers on top of `num-rational`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational;

use crate::error::{Error, Result};

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(tok: &str) -> Option<BigRational> {
    match tok.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => tok.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub(crate) fn parse_rational_at(line: usize, tok: &str) -> Result<BigRational> {
    parse_rational(tok).ok_or_else(|| Error::parse(line, format!("bad rational `{tok}`")))
}

/// Natural log of a positive rational, accurate even when numerator and
/// denominator overflow `f64`.
pub fn ln_rational(r: &BigRational) -> f64 {
    assert!(r.is_positive(), "log of non-positive rational");
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

pub fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    match r.to_f64() {
        Some(v) if v.is_finite() && v != 0.0 => v,
        _ => {
            let sign = if r.is_negative() { -1.0 } else { 1.0 };
            sign * ln_rational(&r.abs()).exp()
        }
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}
