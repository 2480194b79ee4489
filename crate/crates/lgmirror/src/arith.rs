//! Rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn is_integral(x: &Rational) -> bool {
    x.is_integer()
}

pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Second Bernoulli polynomial `x^2 - x + 1/6`.
pub fn bernoulli2(x: &Rational) -> Rational {
    x * x - x + rat(1, 6)
}

/// Exact `n`-th root of a non-negative rational, if it exists.
pub fn exact_root(x: &Rational, n: u32) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let num = integer_root(x.numer(), n)?;
    let den = integer_root(x.denom(), n)?;
    Some(Rational::new(num, den))
}

fn integer_root(v: &BigInt, n: u32) -> Option<BigInt> {
    let r = v.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *v {
        Some(r)
    } else {
        None
    }
}

/// Renders as `p/q`, always with an explicit denominator.
pub fn fmt_rat(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn lcm_of_denominators<'a, I: IntoIterator<Item = &'a Rational>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_rat {
    use super::{fmt_rat, parse_rat};
    use crate::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod serde_rat_vec {
    use super::{fmt_rat, parse_rat};
    use crate::Rational;
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_rat(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

pub mod serde_rat_opt {
    use super::{fmt_rat, parse_rat};
    use crate::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&fmt_rat(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        match v {
            Some(s) => parse_rat(&s)
                .map(Some)
                .ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))),
            None => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_of_negative() {
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(&int(-2)), int(0));
        assert_eq!(floor_int(&rat(-1, 3)), BigInt::from(-1));
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(&rat(1, 81), 4), Some(rat(1, 3)));
        assert_eq!(exact_root(&rat(2, 81), 4), None);
        assert_eq!(exact_root(&rat(-1, 81), 4), None);
    }

    #[test]
    fn text_round_trip() {
        for x in [rat(-7, 3), int(0), int(5), rat(1, 12)] {
            assert_eq!(parse_rat(&fmt_rat(&x)), Some(x));
        }
        assert_eq!(fmt_rat(&int(0)), "0/1");
        assert_eq!(parse_rat("4"), Some(int(4)));
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn bernoulli_symmetry() {
        for k in 0..12 {
            let x = rat(k, 11);
            assert_eq!(bernoulli2(&x), bernoulli2(&(int(1) - &x)));
        }
    }
}
