//! Lazy infinite lower-triangular matrices and their finite windows.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, one, zero, Rational};

type Rule = Arc<dyn Fn(usize, usize) -> Result<Rational> + Send + Sync>;

/// An infinite lower-triangular matrix given by a generator rule.
///
/// The rule is only consulted for `0 <= k <= n`; every other position is
/// zero. Values are memoized per triangle, and clones share the memo.
#[derive(Clone)]
pub struct Triangle {
    name: String,
    rule: Rule,
    memo: Arc<RwLock<HashMap<(usize, usize), Rational>>>,
}

impl fmt::Debug for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Triangle").field("name", &self.name).finish()
    }
}

impl Triangle {
    pub fn from_fn<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(usize, usize) -> Result<Rational> + Send + Sync + 'static,
    {
        Triangle {
            name: name.into(),
            rule: Arc::new(rule),
            memo: Arc::default(),
        }
    }

    /// A finite triangle backed by stored rows; rows past the end are an error.
    pub fn from_window(name: impl Into<String>, window: Window) -> Self {
        let rows = window.n_rows();
        let window = Arc::new(window);
        Triangle::from_fn(name, move |n, k| match window.row(n) {
            Some(row) => Ok(row[k].clone()),
            None => Err(Error::RowOutOfRange { n, rows }),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Entry `(n, k)` with zero-extension for `k < 0` and `k > n`.
    pub fn entry(&self, n: usize, k: isize) -> Result<Rational> {
        if k < 0 {
            return Ok(zero());
        }
        self.get(n, k as usize)
    }

    pub fn get(&self, n: usize, k: usize) -> Result<Rational> {
        if k > n {
            return Ok(zero());
        }
        if let Some(v) = self.memo.read().expect("memo lock poisoned").get(&(n, k)) {
            return Ok(v.clone());
        }
        let v = (self.rule)(n, k)?;
        self.memo
            .write()
            .expect("memo lock poisoned")
            .entry((n, k))
            .or_insert_with(|| v.clone());
        Ok(v)
    }

    pub fn materialize(&self, n_rows: usize) -> Result<Window> {
        if n_rows == 0 {
            return Err(Error::Invalid("a window needs at least one row".into()));
        }
        let rows = (0..n_rows)
            .map(|n| (0..=n).map(|k| self.get(n, k)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Window { rows })
    }
}

/// The first `N` rows of a triangle; row `n` holds entries `(n, 0..=n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    rows: Vec<Vec<Rational>>,
}

impl Window {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Invalid("a window needs at least one row".into()));
        }
        if let Some((n, row)) = rows.iter().enumerate().find(|(n, row)| row.len() != n + 1) {
            return Err(Error::Schema(format!(
                "row {n} has {} entries, expected {}",
                row.len(),
                n + 1
            )));
        }
        Ok(Window { rows })
    }

    /// Convenience constructor for integer rows.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Window::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
                .collect(),
        )
    }

    pub fn identity(n_rows: usize) -> Self {
        let rows = (0..n_rows.max(1))
            .map(|n| (0..=n).map(|k| if k == n { one() } else { zero() }).collect())
            .collect();
        Window { rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.rows
    }

    pub fn row(&self, n: usize) -> Option<&[Rational]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// Stored entry, or `None` above the diagonal or past the last row.
    pub fn get(&self, n: usize, k: usize) -> Option<&Rational> {
        self.rows.get(n).and_then(|row| row.get(k))
    }

    /// Zero-extended entry; `n` must be a stored row.
    pub fn value(&self, n: usize, k: isize) -> Rational {
        assert!(n < self.n_rows(), "row {n} outside window of {} rows", self.n_rows());
        if k < 0 {
            return zero();
        }
        self.get(n, k as usize).cloned().unwrap_or_else(zero)
    }

    /// First `n_rows` rows of this window.
    pub fn truncate(&self, n_rows: usize) -> Result<Window> {
        if n_rows == 0 || n_rows > self.n_rows() {
            return Err(Error::WindowTooSmall {
                rows: self.n_rows(),
                required: n_rows.max(1),
            });
        }
        Ok(Window {
            rows: self.rows[..n_rows].to_vec(),
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(k, v)| (n, k, v)))
    }

    pub fn first_zero(&self) -> Option<(usize, usize)> {
        self.entries().find(|(_, _, v)| v.is_zero()).map(|(n, k, _)| (n, k))
    }

    pub fn all_nonzero(&self) -> bool {
        self.first_zero().is_none()
    }

    pub fn to_file(&self, name: impl Into<String>) -> TriangleFile {
        TriangleFile {
            name: name.into(),
            rows: self.rows.iter().cloned().map(Row).collect(),
        }
    }
}

impl fmt::Display for Window {
    /// Right-aligned table, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Row(#[serde(with = "crate::rational::literal::vec")] pub Vec<Rational>);

/// On-disk triangle: `{"name": .., "rows": [[..], ..]}` with integer or
/// `"p/q"` string entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleFile {
    pub name: String,
    pub rows: Vec<Row>,
}

impl TriangleFile {
    pub fn into_window(self) -> Result<Window> {
        Window::from_rows(self.rows.into_iter().map(|r| r.0).collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("triangle file serializes")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        TriangleFile::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n").map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Builtin {
    Pascal,
    Narayana,
    Lah,
    Aerated,
    AllOnes,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::Pascal,
        Builtin::Narayana,
        Builtin::Lah,
        Builtin::Aerated,
        Builtin::AllOnes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Pascal => "pascal",
            Builtin::Narayana => "narayana",
            Builtin::Lah => "lah",
            Builtin::Aerated => "aerated",
            Builtin::AllOnes => "allones",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn value(self, n: usize, k: usize) -> Rational {
        match self {
            Builtin::Pascal => Rational::from_integer(binomial(n, k)),
            // N_{n+1,k+1} = C(n+1,k+1)·C(n+1,k)/(n+1)
            Builtin::Narayana => Rational::from_integer(
                binomial(n + 1, k + 1) * binomial(n + 1, k) / BigInt::from(n + 1),
            ),
            Builtin::Lah => Rational::from_integer(
                binomial(n, k) * factorial(n + 1) / factorial(k + 1),
            ),
            Builtin::Aerated => {
                if (n - k).is_multiple_of(2) {
                    Rational::from_integer(binomial((n + k) / 2, (n - k) / 2))
                } else {
                    zero()
                }
            }
            Builtin::AllOnes => one(),
        }
    }

    pub fn triangle(self) -> Triangle {
        Triangle::from_fn(self.name(), move |n, k| Ok(self.value(n, k)))
    }
}
