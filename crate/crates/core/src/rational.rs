//! Exact rational scalars.
//!
//! Every triangle entry is a [`Rational`], an arbitrary-precision fraction
//! kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Parses an optionally signed integer or `p/q` literal with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (t, None),
    };
    let num: BigInt = parse_int(num).ok_or_else(|| Error::parse(s, "not a rational literal"))?;
    let den = match den {
        None => BigInt::one(),
        Some(q) => {
            if q.starts_with(['+', '-']) {
                return Err(Error::parse(s, "denominator must be an unsigned integer"));
            }
            let q = parse_int(q).ok_or_else(|| Error::parse(s, "not a rational literal"))?;
            if q.is_zero() {
                return Err(Error::parse(s, "zero denominator"));
            }
            q
        }
    };
    Ok(Rational::new(num, den))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.trim_start_matches('+').parse().ok()
}

/// Renders as `p/q`, or `p` for integers.
pub fn render(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapter: writes string literals, reads integers or strings.
pub mod literal {
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;

    use super::{int, parse_rational, render, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(LiteralVisitor)
    }

    pub(crate) struct LiteralVisitor;

    impl<'de> Visitor<'de> for LiteralVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("an integer or a \"p/q\" rational literal")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
            Ok(int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
            Ok(Rational::from_integer(v.into()))
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }
    }

    pub mod vec {
        use serde::de::{Deserializer, SeqAccess, Visitor};
        use serde::ser::{SerializeSeq, Serializer};

        use super::super::{render, Rational};
        use super::LiteralVisitor;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&render(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            struct Elem(Rational);
            impl<'de> serde::Deserialize<'de> for Elem {
                fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                    d.deserialize_any(LiteralVisitor).map(Elem)
                }
            }
            struct SeqVisitor;
            impl<'de> Visitor<'de> for SeqVisitor {
                type Value = Vec<Rational>;
                fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                    f.write_str("an array of rational literals")
                }
                fn visit_seq<A: SeqAccess<'de>>(self, mut a: A) -> Result<Self::Value, A::Error> {
                    let mut out = Vec::new();
                    while let Some(Elem(r)) = a.next_element()? {
                        out.push(r);
                    }
                    Ok(out)
                }
            }
            d.deserialize_seq(SeqVisitor)
        }
    }
}
