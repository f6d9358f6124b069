//! Generalized Star-of-David rule checking on finite windows.
//!
//! A matrix is SDR of order `m` when, for every level `2 <= p <= m-1` and
//! rotation `0 <= r <= p-1`, the two interlocking products around every
//! anchor `(n, k)` agree:
//!
//! ```text
//! lhs = Π_{i=0..r} A[n+i, k+r-i] · Π_{i=0..p-r-1} A[n+p-i, k+r+i+1]
//! rhs = Π_{i=0..r} A[n+p-i, k+p-r+i] · Π_{i=0..p-r-1} A[n+i, k+p-r-i-1]
//! ```
//!
//! Entries above the diagonal are zero and take part in the products
//! literally.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::triangle::Window;

pub const DEFAULT_MAX_VIOLATIONS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityInstance {
    pub p: usize,
    pub r: usize,
    pub n: usize,
    pub k: usize,
    #[serde(with = "crate::rational::literal")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::literal")]
    pub rhs: Rational,
}

impl IdentityInstance {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdrReport {
    #[serde(rename = "order")]
    pub order_checked: usize,
    #[serde(rename = "rows")]
    pub window_rows: usize,
    pub verdict: Verdict,
    pub violations: Vec<IdentityInstance>,
    pub violations_total: u64,
    pub cells_checked: u64,
}

impl SdrReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn first_violation(&self) -> Option<&IdentityInstance> {
        self.violations.first()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Violations kept in the report; the total is always counted.
    pub max_violations: usize,
    /// Upper bound on identity instances per check.
    pub max_cells: Option<u64>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_violations: DEFAULT_MAX_VIOLATIONS,
            max_cells: None,
        }
    }
}

fn product<I: IntoIterator<Item = (usize, isize)>>(w: &Window, cells: I) -> Rational {
    let mut acc = Rational::one();
    for (n, k) in cells {
        let v = w.value(n, k);
        if v.is_zero() {
            return v;
        }
        acc *= v;
    }
    acc
}

fn evaluate(w: &Window, p: usize, r: usize, n: usize, k: usize) -> IdentityInstance {
    let (pi, ri, ki) = (p as isize, r as isize, k as isize);
    let lhs = product(
        w,
        (0..=r)
            .map(|i| (n + i, ki + ri - i as isize))
            .chain((0..p - r).map(|i| (n + p - i, ki + ri + i as isize + 1))),
    );
    let rhs = product(
        w,
        (0..=r)
            .map(|i| (n + p - i, ki + pi - ri + i as isize))
            .chain((0..p - r).map(|i| (n + i, ki + pi - ri - i as isize - 1))),
    );
    IdentityInstance { p, r, n, k, lhs, rhs }
}

/// Evaluates one identity instance at anchor `(n, k)`.
pub fn check_identity(w: &Window, p: usize, r: usize, n: usize, k: usize) -> Result<IdentityInstance> {
    if p < 2 || r >= p {
        return Err(Error::Invalid(format!(
            "need 2 <= p and 0 <= r <= p-1, got p={p}, r={r}"
        )));
    }
    if k > n {
        return Err(Error::Invalid(format!("anchor column {k} exceeds row {n}")));
    }
    if n + p >= w.n_rows() {
        return Err(Error::WindowTooSmall {
            rows: w.n_rows(),
            required: n + p + 1,
        });
    }
    Ok(evaluate(w, p, r, n, k))
}

/// Number of identity instances `check_order(w, m)` evaluates on `rows` rows.
pub fn instance_count(rows: usize, m: usize) -> u64 {
    (2..m)
        .filter(|&p| p < rows)
        .map(|p| {
            let anchors = (rows - p) as u64;
            p as u64 * anchors * (anchors + 1) / 2
        })
        .sum()
}

pub fn check_order(w: &Window, m: usize) -> Result<SdrReport> {
    check_order_with(w, m, &CheckOptions::default())
}

pub fn check_order_with(w: &Window, m: usize, opts: &CheckOptions) -> Result<SdrReport> {
    if m < 3 {
        return Err(Error::Invalid(format!("order must be at least 3, got {m}")));
    }
    let rows = w.n_rows();
    if rows < m {
        return Err(Error::WindowTooSmall { rows, required: m });
    }
    let cells = instance_count(rows, m);
    if let Some(limit) = opts.max_cells {
        if cells > limit {
            return Err(Error::TooManyCells { cells, limit });
        }
    }

    // (p, r, n) in lexicographic order; each job scans k = 0..=n.
    let jobs: Vec<(usize, usize, usize)> = (2..m)
        .flat_map(|p| (0..p).flat_map(move |r| (0..rows - p).map(move |n| (p, r, n))))
        .collect();
    let scan = |&(p, r, n): &(usize, usize, usize)| -> Vec<IdentityInstance> {
        (0..=n)
            .map(|k| evaluate(w, p, r, n, k))
            .filter(|inst| !inst.holds())
            .collect()
    };
    #[cfg(feature = "parallel")]
    let found: Vec<Vec<IdentityInstance>> = {
        use rayon::prelude::*;
        jobs.par_iter().map(scan).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let found: Vec<Vec<IdentityInstance>> = jobs.iter().map(scan).collect();

    let violations_total = found.iter().map(|v| v.len() as u64).sum();
    let violations: Vec<_> = found.into_iter().flatten().take(opts.max_violations).collect();
    Ok(SdrReport {
        order_checked: m,
        window_rows: rows,
        verdict: if violations_total == 0 { Verdict::Pass } else { Verdict::Fail },
        violations,
        violations_total,
        cells_checked: cells,
    })
}

/// Largest order `m <= cap` that passes, or 2 when order 3 already fails.
///
/// The report belongs to the first failing order, or to `cap` if all pass.
pub fn max_order(w: &Window, cap: usize) -> Result<(usize, SdrReport)> {
    max_order_with(w, cap, &CheckOptions::default())
}

pub fn max_order_with(w: &Window, cap: usize, opts: &CheckOptions) -> Result<(usize, SdrReport)> {
    if cap < 3 {
        return Err(Error::Invalid(format!("cap must be at least 3, got {cap}")));
    }
    if w.n_rows() < cap {
        return Err(Error::WindowTooSmall {
            rows: w.n_rows(),
            required: cap,
        });
    }
    let mut last = None;
    for m in 3..=cap {
        let report = check_order_with(w, m, opts)?;
        if !report.passed() {
            return Ok((m - 1, report));
        }
        last = Some(report);
    }
    Ok((cap, last.expect("cap >= 3 checks at least one order")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    #[serde(rename = "consistent-with-SDR-infinity (Theorem 2)")]
    ConsistentWithInfinity,
    #[serde(rename = "no evidence")]
    NoEvidence,
}

/// Finite evidence for infinite order: with no zero entries, order 3
/// implies every higher order, so a nonzero window passing order 3 is
/// consistent with SDR of all orders. Evidence only, never proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityCertificate {
    pub sdr3_on_window: bool,
    pub all_entries_nonzero_on_window: bool,
    pub conclusion: Conclusion,
}

impl InfinityCertificate {
    pub fn is_consistent(&self) -> bool {
        self.conclusion == Conclusion::ConsistentWithInfinity
    }
}

pub fn infinity_evidence(w: &Window) -> Result<InfinityCertificate> {
    if w.n_rows() < 4 {
        return Err(Error::WindowTooSmall {
            rows: w.n_rows(),
            required: 4,
        });
    }
    let sdr3 = check_order(w, 3)?.passed();
    let nonzero = w.all_nonzero();
    Ok(InfinityCertificate {
        sdr3_on_window: sdr3,
        all_entries_nonzero_on_window: nonzero,
        conclusion: if sdr3 && nonzero {
            Conclusion::ConsistentWithInfinity
        } else {
            Conclusion::NoEvidence
        },
    })
}
