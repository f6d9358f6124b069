//! Truncated formal power series and Riordan arrays.
//!
//! A [`Series`] stores coefficients `0..N`; every operation returns a
//! series no longer than the shortest input it depends on, so every stored
//! coefficient is exact.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, render, Rational};
use crate::triangle::Window;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Series { coeffs }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Series::new(values.iter().map(|&v| crate::rational::int(v)).collect())
    }

    /// `1`, truncated to `len` terms.
    pub fn unit(len: usize) -> Self {
        Series::new((0..len).map(|i| if i == 0 { Rational::one() } else { Rational::zero() }).collect())
    }

    /// `t`, truncated to `len` terms.
    pub fn t(len: usize) -> Self {
        Series::new((0..len).map(|i| if i == 1 { Rational::one() } else { Rational::zero() }).collect())
    }

    /// `1/(1 - c t)` or, with `shifted`, `t/(1 - c t)`.
    pub fn geometric(c: &Rational, shifted: bool, len: usize) -> Self {
        let mut coeffs = Vec::with_capacity(len);
        let mut power = Rational::one();
        if shifted && len > 0 {
            coeffs.push(Rational::zero());
        }
        while coeffs.len() < len {
            coeffs.push(power.clone());
            power *= c;
        }
        Series::new(coeffs)
    }

    /// `1/(1 - t^2)` or, with `shifted`, `t/(1 - t^2)`.
    pub fn geometric_even(shifted: bool, len: usize) -> Self {
        let parity = usize::from(shifted);
        Series::new(
            (0..len)
                .map(|i| if i % 2 == parity { Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }

    /// Parses `v0,v1,..` (a polynomial, zero-padded to `len`), `geomrec:c`,
    /// `tgeomrec:c`, `geomrec2` or `tgeomrec2`.
    pub fn parse(s: &str, len: usize) -> Result<Self> {
        let t = s.trim();
        if let Some(c) = t.strip_prefix("geomrec:") {
            return Ok(Series::geometric(&parse_rational(c)?, false, len));
        }
        if let Some(c) = t.strip_prefix("tgeomrec:") {
            return Ok(Series::geometric(&parse_rational(c)?, true, len));
        }
        match t {
            "geomrec2" => return Ok(Series::geometric_even(false, len)),
            "tgeomrec2" => return Ok(Series::geometric_even(true, len)),
            _ => {}
        }
        let mut coeffs = t
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::parse(s, "expected comma-separated rationals or a named series"))?;
        if coeffs.len() < len {
            coeffs.resize(len, Rational::zero());
        }
        Ok(Series::new(coeffs))
    }

    /// Number of known coefficients.
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Result<&Rational> {
        self.coeffs.get(i).ok_or(Error::Truncation {
            needed: i + 1,
            available: self.coeffs.len(),
        })
    }

    pub fn truncate(&self, len: usize) -> Result<Series> {
        if len > self.coeffs.len() {
            return Err(Error::Truncation {
                needed: len,
                available: self.coeffs.len(),
            });
        }
        Ok(Series::new(self.coeffs[..len].to_vec()))
    }

    fn head(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.coeffs.iter().map(render).collect();
        f.write_str(&body.join(","))
    }
}

/// Cauchy product.
pub fn series_mul(a: &Series, b: &Series) -> Series {
    let len = a.truncation().min(b.truncation());
    Series::new(
        (0..len)
            .map(|n| (0..=n).fold(Rational::zero(), |acc, i| acc + &a.coeffs[i] * &b.coeffs[n - i]))
            .collect(),
    )
}

pub fn series_reciprocal(a: &Series) -> Result<Series> {
    let head = a.head();
    if head.is_zero() {
        return Err(Error::Invalid("reciprocal needs a nonzero constant term".into()));
    }
    let inv0 = head.recip();
    let mut out: Vec<Rational> = Vec::with_capacity(a.truncation());
    for n in 0..a.truncation() {
        if n == 0 {
            out.push(inv0.clone());
            continue;
        }
        let s = (1..=n).fold(Rational::zero(), |acc, i| acc + &a.coeffs[i] * &out[n - i]);
        out.push(-s * &inv0);
    }
    Ok(Series::new(out))
}

/// `a(h(t))` by Horner's rule; requires `h_0 = 0`.
pub fn series_compose(a: &Series, h: &Series) -> Result<Series> {
    if !h.head().is_zero() {
        return Err(Error::Invalid("inner series of a composition must have h_0 = 0".into()));
    }
    let len = a.truncation().min(h.truncation());
    let h = Series::new(h.coeffs[..len].to_vec());
    let mut acc = Series::new(vec![Rational::zero(); len]);
    for c in a.coeffs[..len].iter().rev() {
        acc = series_mul(&acc, &h);
        if let Some(first) = acc.coeffs.first_mut() {
            *first += c;
        }
    }
    Ok(acc)
}

/// Compositional inverse `hbar` with `h(hbar(t)) = t`, solved one
/// coefficient at a time: coefficient `n` of `h(hbar)` is
/// `h_1 · hbar_n` plus terms in earlier coefficients.
pub fn series_comp_inverse(h: &Series) -> Result<Series> {
    if h.truncation() < 2 || !h.head().is_zero() || h.coeffs[1].is_zero() {
        return Err(Error::Invalid("compositional inverse needs h_0 = 0 and h_1 != 0".into()));
    }
    let len = h.truncation();
    let h1 = h.coeffs[1].clone();
    let mut g = vec![Rational::zero(); len];
    g[1] = h1.recip();
    for n in 2..len {
        let partial = series_compose(
            &Series::new(h.coeffs[..=n].to_vec()),
            &Series::new(g[..=n].to_vec()),
        )?;
        g[n] = -partial.coeffs[n].clone() / &h1;
    }
    Ok(Series::new(g))
}

/// A Riordan pair `(d(t), h(t))` with `d_0 != 0`, `h_0 = 0`, `h_1 != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanPair {
    d: Series,
    h: Series,
}

impl RiordanPair {
    pub fn new(d: Series, h: Series) -> Result<Self> {
        if d.head().is_zero() {
            return Err(Error::Invalid("Riordan pair needs d_0 != 0".into()));
        }
        if h.truncation() < 2 || !h.head().is_zero() || h.coeffs[1].is_zero() {
            return Err(Error::Invalid("Riordan pair needs h_0 = 0 and h_1 != 0".into()));
        }
        Ok(RiordanPair { d, h })
    }

    /// `(1, t)`.
    pub fn identity(len: usize) -> Self {
        RiordanPair {
            d: Series::unit(len),
            h: Series::t(len.max(2)),
        }
    }

    pub fn d(&self) -> &Series {
        &self.d
    }

    pub fn h(&self) -> &Series {
        &self.h
    }

    pub fn truncation(&self) -> usize {
        self.d.truncation().min(self.h.truncation())
    }

    /// Both series cut to the same length.
    pub fn truncate(&self, len: usize) -> Result<Self> {
        RiordanPair::new(self.d.truncate(len)?, self.h.truncate(len)?)
    }
}

/// Entry `(n, k)` is `[t^n] d(t) h(t)^k`.
pub fn riordan_window(r: &RiordanPair, n_rows: usize) -> Result<Window> {
    if n_rows == 0 {
        return Err(Error::Invalid("a window needs at least one row".into()));
    }
    if r.truncation() < n_rows {
        return Err(Error::Truncation {
            needed: n_rows,
            available: r.truncation(),
        });
    }
    let d = r.d.truncate(n_rows)?;
    let h = r.h.truncate(n_rows)?;
    let mut columns = Vec::with_capacity(n_rows);
    let mut column = d;
    for _ in 0..n_rows {
        let next = series_mul(&column, &h);
        columns.push(column);
        column = next;
    }
    Window::from_rows(
        (0..n_rows)
            .map(|n| (0..=n).map(|k| columns[k].coeffs[n].clone()).collect())
            .collect(),
    )
}

/// `(d, h)(g, f) = (d · g(h), f(h))`.
pub fn riordan_mul(x: &RiordanPair, y: &RiordanPair) -> Result<RiordanPair> {
    let d = series_mul(&x.d, &series_compose(&y.d, &x.h)?);
    let h = series_compose(&y.h, &x.h)?;
    RiordanPair::new(d, h)
}

/// `(d, h)^{-1} = (1 / d(hbar), hbar)`.
pub fn riordan_inverse(r: &RiordanPair) -> Result<RiordanPair> {
    let hbar = series_comp_inverse(&r.h)?;
    let d = series_reciprocal(&series_compose(&r.d, &hbar)?)?;
    RiordanPair::new(d, hbar)
}
