//! Contiguous-minor transform: entry `(n, k)` of `A_[j]` is the determinant
//! of the `j × j` block of `A` with top-left corner `(n, k)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sequence::SequenceSpec;
use crate::triangle::Window;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix {
    size: usize,
    entries: Vec<Rational>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(Error::Invalid("matrix must be square and non-empty".into()));
        }
        Ok(SquareMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        SquareMatrix {
            size,
            entries: (0..size * size).map(|i| f(i / size, i % size)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.size + j]
    }
}

/// Exact determinant by Gaussian elimination; the pivot is the first
/// nonzero entry in the column.
pub fn det(m: &SquareMatrix) -> Rational {
    let n = m.size;
    let mut a = m.entries.clone();
    let mut acc = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
            }
            acc = -acc;
        }
        let p = a[col * n + col].clone();
        acc *= &p;
        for r in col + 1..n {
            if a[r * n + col].is_zero() {
                continue;
            }
            let factor = &a[r * n + col] / &p;
            for j in col..n {
                let delta = &factor * &a[col * n + j];
                a[r * n + j] -= delta;
            }
        }
    }
    acc
}

/// `A_[j]` on a window of `N` rows; the result has `N - j + 1` rows.
pub fn minor_triangle(w: &Window, j: usize) -> Result<Window> {
    if j == 0 {
        return Err(Error::Invalid("minor size must be at least 1".into()));
    }
    if j > w.n_rows() {
        return Err(Error::WindowTooSmall {
            rows: w.n_rows(),
            required: j,
        });
    }
    let out_rows = w.n_rows() - j + 1;
    let rows = (0..out_rows)
        .map(|n| {
            (0..=n)
                .map(|k| det(&SquareMatrix::from_fn(j, |r, s| w.value(n + r, (k + s) as isize))))
                .collect()
        })
        .collect();
    Window::from_rows(rows)
}

/// `j × j` Toeplitz determinant `det[b_{m + r - s}]`, zero for negative indices.
pub fn toeplitz_det(b: &[Rational], m: usize, j: usize) -> Rational {
    det(&SquareMatrix::from_fn(j, |r, s| {
        (m + r).checked_sub(s).map(|i| b[i].clone()).unwrap_or_else(Rational::zero)
    }))
}

/// `A_[j]` for the product triangle `a_k · b_{n-k} · c_n` in closed form:
/// `B_{n-k} · Π_{i<j} a_{k+i} · c_{n+i}` with `B` the Toeplitz determinant of `b`.
pub fn toeplitz_minor_closed(
    a: &SequenceSpec,
    b: &SequenceSpec,
    c: &SequenceSpec,
    j: usize,
    n_rows: usize,
) -> Result<Window> {
    if j == 0 || n_rows == 0 {
        return Err(Error::Invalid("need j >= 1 and at least one row".into()));
    }
    let len = n_rows + j - 1;
    let (a, b, c) = (a.prefix(len)?, b.prefix(len)?, c.prefix(len)?);
    let big_b: Vec<Rational> = (0..n_rows).map(|m| toeplitz_det(&b, m, j)).collect();
    let span = |s: &[Rational], start: usize| -> Rational { s[start..start + j].iter().product() };
    let rows = (0..n_rows)
        .map(|n| (0..=n).map(|k| &big_b[n - k] * span(&a, k) * span(&c, n)).collect())
        .collect();
    Window::from_rows(rows)
}
