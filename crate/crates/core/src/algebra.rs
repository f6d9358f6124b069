//! Hadamard algebra, exact triangular matrix products/inverses/powers, and
//! the closed forms for inverses and powers of product-form triangles.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{one, zero, Rational};
use crate::sequence::SequenceSpec;
use crate::triangle::{Triangle, Window};

/// Entrywise product.
pub fn hadamard_product(a: &Triangle, b: &Triangle) -> Triangle {
    let (x, y) = (a.clone(), b.clone());
    Triangle::from_fn(format!("hadamard({};{})", a.name(), b.name()), move |n, k| {
        Ok(x.get(n, k)? * y.get(n, k)?)
    })
}

/// Entrywise reciprocal; evaluating a zero entry reports its position.
pub fn hadamard_inverse(a: &Triangle) -> Triangle {
    let x = a.clone();
    Triangle::from_fn(format!("hinv({})", a.name()), move |n, k| {
        let v = x.get(n, k)?;
        if v.is_zero() {
            return Err(Error::ZeroEntry { n, k });
        }
        Ok(v.recip())
    })
}

/// `j`-th Hadamard power; negative `j` goes through the Hadamard inverse.
pub fn hadamard_power(a: &Triangle, j: i32) -> Triangle {
    let base = if j < 0 { hadamard_inverse(a) } else { a.clone() };
    let e = j.unsigned_abs();
    Triangle::from_fn(format!("hpow({};{j})", a.name()), move |n, k| {
        let v = base.get(n, k)?;
        Ok((0..e).fold(one(), |acc, _| acc * &v))
    })
}

/// Interleaves a triangle with zeros: entry `T[(n+k)/2, (n-k)/2]` when
/// `n ≡ k (mod 2)`, else 0.
pub fn aerate(t: &Triangle) -> Triangle {
    let x = t.clone();
    Triangle::from_fn(format!("aerate({})", t.name()), move |n, k| {
        if (n - k) % 2 == 0 {
            x.get((n + k) / 2, (n - k) / 2)
        } else {
            Ok(zero())
        }
    })
}

pub fn matmul(a: &Window, b: &Window) -> Result<Window> {
    if a.n_rows() != b.n_rows() {
        return Err(Error::SizeMismatch {
            left: a.n_rows(),
            right: b.n_rows(),
        });
    }
    let rows = (0..a.n_rows())
        .map(|n| {
            let row_a = a.row(n).expect("row in range");
            (0..=n)
                .map(|k| {
                    (k..=n).fold(Rational::zero(), |acc, j| {
                        acc + &row_a[j] * b.get(j, k).expect("lower-triangular entry")
                    })
                })
                .collect()
        })
        .collect();
    Window::from_rows(rows)
}

/// Exact inverse by forward substitution.
#[allow(clippy::needless_range_loop)]
pub fn tri_inverse(w: &Window) -> Result<Window> {
    let size = w.n_rows();
    if let Some(index) = (0..size).find(|&n| w.get(n, n).expect("diagonal").is_zero()) {
        return Err(Error::ZeroDiagonal { index });
    }
    let mut rows: Vec<Vec<Rational>> = (0..size).map(|n| vec![Rational::zero(); n + 1]).collect();
    for k in 0..size {
        rows[k][k] = w.get(k, k).expect("diagonal").recip();
        for n in k + 1..size {
            let row_w = w.row(n).expect("row in range");
            let s = (k..n).fold(Rational::zero(), |acc, j| acc + &row_w[j] * &rows[j][k]);
            rows[n][k] = -s / &row_w[n];
        }
    }
    Window::from_rows(rows)
}

/// `w^j`; `j = 0` is the identity and negative powers invert once.
pub fn matrix_power(w: &Window, j: i64) -> Result<Window> {
    let base = if j < 0 { tri_inverse(w)? } else { w.clone() };
    let mut acc = Window::identity(w.n_rows());
    for _ in 0..j.unsigned_abs() {
        acc = matmul(&acc, &base)?;
    }
    Ok(acc)
}

/// A finite coefficient prefix `values[0..N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SequencePrefix(#[serde(with = "crate::rational::literal::vec")] pub Vec<Rational>);

impl SequencePrefix {
    pub fn from_ints(values: &[i64]) -> Self {
        SequencePrefix(values.iter().map(|&v| crate::rational::int(v)).collect())
    }

    pub fn from_spec(spec: &SequenceSpec, len: usize) -> Result<Self> {
        spec.prefix(len).map(SequencePrefix)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.0.get(i)
    }
}

fn require_unit_head(b: &SequencePrefix) -> Result<()> {
    match b.get(0) {
        Some(v) if v.is_one() => Ok(()),
        Some(v) => Err(Error::Invalid(format!("b_0 must be 1, got {v}"))),
        None => Err(Error::Invalid("empty sequence prefix".into())),
    }
}

/// Coefficients of `1 / b(t)` for `b_0 = 1`, via
/// `B_n = -Σ_{i=1..n} b_i · B_{n-i}`.
pub fn series_inverse_b(b: &SequencePrefix) -> Result<SequencePrefix> {
    require_unit_head(b)?;
    let mut out: Vec<Rational> = Vec::with_capacity(b.len());
    out.push(one());
    for n in 1..b.len() {
        let s = (1..=n).fold(Rational::zero(), |acc, i| acc + &b.0[i] * &out[n - i]);
        out.push(-s);
    }
    Ok(SequencePrefix(out))
}

/// Largest index the composition-sum form will enumerate.
pub const COMPOSITION_SUM_MAX_INDEX: usize = 14;

/// Alternating sum over compositions:
/// `B_n = Σ_{j=1..n} (-1)^j Σ_{i_1+..+i_j=n, i_t>=1} b_{i_1}···b_{i_j}`.
///
/// Exponential in `n`; kept as a cross-check for [`series_inverse_b`].
pub fn series_inverse_b_by_compositions(b: &SequencePrefix) -> Result<SequencePrefix> {
    require_unit_head(b)?;
    if b.len() > COMPOSITION_SUM_MAX_INDEX + 1 {
        return Err(Error::Invalid(format!(
            "composition sum is limited to indices <= {COMPOSITION_SUM_MAX_INDEX}"
        )));
    }
    fn walk(b: &[Rational], remaining: usize, parts: usize, prod: &Rational, acc: &mut Rational) {
        if remaining == 0 {
            if parts.is_multiple_of(2) {
                *acc += prod;
            } else {
                *acc -= prod;
            }
            return;
        }
        for first in 1..=remaining {
            let next = prod * &b[first];
            walk(b, remaining - first, parts + 1, &next, acc);
        }
    }
    let mut out = vec![one()];
    for n in 1..b.len() {
        let mut acc = Rational::zero();
        walk(&b.0, n, 0, &one(), &mut acc);
        out.push(acc);
    }
    Ok(SequencePrefix(out))
}

fn convolve(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let len = x.len().min(y.len());
    (0..len)
        .map(|n| (0..=n).fold(Rational::zero(), |acc, i| acc + &x[i] * &y[n - i]))
        .collect()
}

/// `C_n`: coefficients of the `j`-th convolution power of `b`.
pub fn series_power_c(b: &SequencePrefix, j: usize) -> Result<SequencePrefix> {
    require_unit_head(b)?;
    if j < 1 {
        return Err(Error::Invalid("convolution power must be at least 1".into()));
    }
    let mut acc = b.0.clone();
    for _ in 1..j {
        acc = convolve(&acc, &b.0);
    }
    Ok(SequencePrefix(acc))
}

fn nonzero_terms(spec: &SequenceSpec, len: usize, label: &str) -> Result<Vec<Rational>> {
    let terms = spec.prefix(len)?;
    if let Some(i) = terms.iter().position(Zero::is_zero) {
        return Err(Error::Invalid(format!("{label}_{i} is zero")));
    }
    Ok(terms)
}

fn check_rows(n_rows: usize) -> Result<()> {
    if n_rows == 0 {
        return Err(Error::Invalid("a window needs at least one row".into()));
    }
    Ok(())
}

/// Inverse of the product triangle `a_k · b_{n-k} · c_n` from its closed
/// form `a_n^{-1} · B_{n-k} · c_k^{-1}`, where `B = 1/b`.
pub fn product_inverse_closed(
    a: &SequenceSpec,
    b: &SequenceSpec,
    c: &SequenceSpec,
    n_rows: usize,
) -> Result<Window> {
    check_rows(n_rows)?;
    let a = nonzero_terms(a, n_rows, "a")?;
    let c = nonzero_terms(c, n_rows, "c")?;
    let big_b = series_inverse_b(&SequencePrefix::from_spec(b, n_rows)?)?;
    let rows = (0..n_rows)
        .map(|n| {
            (0..=n)
                .map(|k| a[n].recip() * &big_b.0[n - k] * c[k].recip())
                .collect()
        })
        .collect();
    Window::from_rows(rows)
}

/// `j`-th matrix power of `a_n · b_{n-k} · a_k^{-1}` from its closed form
/// `a_n · C_{n-k} · a_k^{-1}`. Negative `j` raises the inverse series `1/b`.
pub fn product_power_closed(a: &SequenceSpec, b: &SequenceSpec, j: i64, n_rows: usize) -> Result<Window> {
    check_rows(n_rows)?;
    let a = nonzero_terms(a, n_rows, "a")?;
    let b = SequencePrefix::from_spec(b, n_rows)?;
    require_unit_head(&b)?;
    let coeffs = match j {
        0 => {
            let mut unit = vec![Rational::zero(); n_rows];
            unit[0] = one();
            SequencePrefix(unit)
        }
        j if j > 0 => series_power_c(&b, j as usize)?,
        j => series_power_c(&series_inverse_b(&b)?, j.unsigned_abs() as usize)?,
    };
    let rows = (0..n_rows)
        .map(|n| (0..=n).map(|k| &a[n] * &coeffs.0[n - k] / &a[k]).collect())
        .collect();
    Window::from_rows(rows)
}
