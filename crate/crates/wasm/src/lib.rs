//! Browser bindings. Every export returns a JSON string; errors come back as
//! `{"error": "..."}` so the page never has to catch exceptions.

use sdr_core::checker::{check_order_with, CheckOptions, IdentityInstance};
use sdr_core::minor::minor_triangle;
use sdr_core::{TriangleSpec, Window};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Browser-side limit on rows, keeps exact arithmetic responsive.
pub const MAX_ROWS: usize = 40;

#[derive(Serialize)]
struct Table {
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Check {
    rows: Vec<Vec<String>>,
    verdict: &'static str,
    instances: u64,
    violations_total: u64,
    /// Cells touched by the reported violations, as `[n, k]`.
    cells: Vec<[usize; 2]>,
    violations: Vec<IdentityInstance>,
}

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v),
        Err(error) => serde_json::to_string(&Failure { error }),
    }
    .expect("plain data serializes")
}

fn window(spec: &str, rows: usize) -> Result<Window, String> {
    if rows > MAX_ROWS {
        return Err(format!("rows: at most {MAX_ROWS} in the browser"));
    }
    let spec: TriangleSpec = spec.parse().map_err(|e| format!("triangle: {e}"))?;
    spec.build()
        .and_then(|t| t.materialize(rows))
        .map_err(|e| format!("triangle: {e}"))
}

fn strings(w: &Window) -> Vec<Vec<String>> {
    w.rows()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

/// Cells of one identity instance that the two products read.
fn instance_cells(v: &IdentityInstance) -> Vec<[usize; 2]> {
    let (p, r, n, k) = (v.p, v.r, v.n, v.k);
    let mut cells = Vec::new();
    for i in 0..=r {
        cells.push([n + i, k + r - i]);
        cells.push([n + p - i, k + p - r + i]);
    }
    for i in 0..p - r {
        cells.push([n + p - i, k + r + i + 1]);
        cells.push([n + i, k + p - r - i - 1]);
    }
    cells.retain(|[n, k]| k <= n);
    cells
}

/// First `rows` rows of a triangle as strings.
#[wasm_bindgen]
pub fn render(spec: &str, rows: usize) -> String {
    to_json(window(spec, rows).map(|w| Table { rows: strings(&w) }))
}

/// Checks the identities of order `order` and lists the cells of reported
/// violations.
#[wasm_bindgen]
pub fn check(spec: &str, order: usize, rows: usize) -> String {
    to_json(window(spec, rows).and_then(|w| {
        let report = check_order_with(&w, order, &CheckOptions::default()).map_err(|e| format!("order: {e}"))?;
        let mut cells: Vec<[usize; 2]> = report.violations.iter().flat_map(instance_cells).collect();
        cells.sort_unstable();
        cells.dedup();
        Ok(Check {
            rows: strings(&w),
            verdict: if report.passed() { "pass" } else { "fail" },
            instances: report.cells_checked,
            violations_total: report.violations_total,
            cells,
            violations: report.violations,
        })
    }))
}

/// Contiguous `j`×`j` minor transform of the first `rows` rows.
#[wasm_bindgen]
pub fn minor(spec: &str, j: usize, rows: usize) -> String {
    to_json(window(spec, rows).and_then(|w| {
        minor_triangle(&w, j)
            .map(|m| Table { rows: strings(&m) })
            .map_err(|e| format!("j: {e}"))
    }))
}
