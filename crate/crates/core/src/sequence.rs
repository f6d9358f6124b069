//! Sequence mini-language: `ones`, `fact`, `sfact`, `geo:c`, `list:v0,v1,..`
//! and `inv(X)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, parse_rational, render, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSpec {
    /// `a_n = 1`
    Ones,
    /// `a_n = n!`
    Fact,
    /// `a_n = n!·(n+1)!`
    SFact,
    /// `a_n = c^n`
    Geo(Rational),
    /// Finite explicit prefix; indexing past it is an error.
    List(Vec<Rational>),
    /// Termwise reciprocal.
    Inv(Box<SequenceSpec>),
}

impl SequenceSpec {
    pub fn inv(inner: SequenceSpec) -> Self {
        SequenceSpec::Inv(Box::new(inner))
    }

    pub fn eval(&self, n: usize) -> Result<Rational> {
        Ok(match self {
            SequenceSpec::Ones => Rational::one(),
            SequenceSpec::Fact => Rational::from_integer(factorial(n)),
            SequenceSpec::SFact => Rational::from_integer(factorial(n) * factorial(n + 1)),
            SequenceSpec::Geo(c) => pow(c, n),
            SequenceSpec::List(values) => values.get(n).cloned().ok_or(Error::ListExhausted {
                index: n,
                len: values.len(),
            })?,
            SequenceSpec::Inv(inner) => {
                let v = inner.eval(n)?;
                if v.is_zero() {
                    return Err(Error::ZeroTerm { index: n });
                }
                v.recip()
            }
        })
    }

    /// Terms `0..len`.
    pub fn prefix(&self, len: usize) -> Result<Vec<Rational>> {
        (0..len).map(|n| self.eval(n)).collect()
    }
}

fn pow(c: &Rational, n: usize) -> Rational {
    let mut acc = Rational::from_integer(BigInt::one());
    for _ in 0..n {
        acc *= c;
    }
    acc
}

impl FromStr for SequenceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "ones" => return Ok(SequenceSpec::Ones),
            "fact" => return Ok(SequenceSpec::Fact),
            "sfact" => return Ok(SequenceSpec::SFact),
            _ => {}
        }
        if let Some(c) = t.strip_prefix("geo:") {
            return Ok(SequenceSpec::Geo(parse_rational(c)?));
        }
        if let Some(body) = t.strip_prefix("list:") {
            let values = body
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            return Ok(SequenceSpec::List(values));
        }
        if let Some(inner) = t.strip_prefix("inv(").and_then(|r| r.strip_suffix(')')) {
            return Ok(SequenceSpec::inv(inner.parse()?));
        }
        Err(Error::parse(s, "unknown sequence; expected ones, fact, sfact, geo:c, list:.. or inv(..)"))
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::Ones => f.write_str("ones"),
            SequenceSpec::Fact => f.write_str("fact"),
            SequenceSpec::SFact => f.write_str("sfact"),
            SequenceSpec::Geo(c) => write!(f, "geo:{}", render(c)),
            SequenceSpec::List(values) => {
                let body: Vec<String> = values.iter().map(render).collect();
                write!(f, "list:{}", body.join(","))
            }
            SequenceSpec::Inv(inner) => write!(f, "inv({inner})"),
        }
    }
}
