use std::fmt;
use std::path::Path;

use sdr_core::algebra::{hadamard_inverse, hadamard_product, matrix_power, tri_inverse};
use sdr_core::checker::{check_order_with, max_order_with, CheckOptions, SdrReport};
use sdr_core::harness::{self, Family, HarnessConfig, Transform};
use sdr_core::minor::minor_triangle;
use sdr_core::riordan::{riordan_inverse, riordan_mul, riordan_window, RiordanPair, Series};
use sdr_core::{Triangle, TriangleSpec, Window};

use crate::{Command, ConjectureKind, RiordanOp, EXIT_HELD, EXIT_VIOLATED};

pub const MAX_CELLS_VAR: &str = "SDR_MAX_CELLS";
pub const DEFAULT_MAX_CELLS: u64 = 10_000_000;

/// A failure tied to the flag that caused it.
#[derive(Debug)]
pub struct CliError {
    flag: &'static str,
    message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.flag, self.message)
    }
}

trait Flagged<T> {
    fn flag(self, flag: &'static str) -> Result<T, CliError>;
}

impl<T, E: fmt::Display> Flagged<T> for Result<T, E> {
    fn flag(self, flag: &'static str) -> Result<T, CliError> {
        self.map_err(|e| CliError {
            flag,
            message: e.to_string(),
        })
    }
}

fn options() -> Result<CheckOptions, CliError> {
    let max_cells = match std::env::var(MAX_CELLS_VAR) {
        Ok(v) => v.trim().parse::<u64>().flag(MAX_CELLS_VAR)?,
        Err(_) => DEFAULT_MAX_CELLS,
    };
    Ok(CheckOptions {
        max_cells: Some(max_cells),
        ..CheckOptions::default()
    })
}

fn triangle(spec: &str, flag: &'static str) -> Result<Triangle, CliError> {
    spec.parse::<TriangleSpec>().and_then(|s| s.build()).flag(flag)
}

fn window(spec: &str, rows: usize, flag: &'static str) -> Result<Window, CliError> {
    triangle(spec, flag)?.materialize(rows).flag(flag)
}

fn emit_window(w: &Window, name: &str, json: Option<&Path>) -> Result<u8, CliError> {
    print!("{w}");
    if let Some(path) = json {
        w.to_file(name).write(path).flag("--json")?;
    }
    Ok(EXIT_HELD)
}

fn print_report(report: &SdrReport) {
    println!(
        "order {}  rows {}  verdict {}  instances {}  violations {}",
        report.order_checked,
        report.window_rows,
        if report.passed() { "pass" } else { "fail" },
        report.cells_checked,
        report.violations_total
    );
    for v in report.violations.iter().take(10) {
        println!("  p={} r={} n={} k={}  lhs={}  rhs={}", v.p, v.r, v.n, v.k, v.lhs, v.rhs);
    }
    if report.violations_total > 10 {
        println!("  ... {} more", report.violations_total - 10);
    }
}

fn write_json(path: Option<&Path>, text: String) -> Result<(), CliError> {
    if let Some(path) = path {
        std::fs::write(path, text + "\n").flag("--json")?;
    }
    Ok(())
}

fn series(text: &str, rows: usize, flag: &'static str) -> Result<Series, CliError> {
    Series::parse(text, rows).flag(flag)
}

pub fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Check { tri, order, rows, json } => {
            let w = window(&tri, rows, "--tri")?;
            let report = check_order_with(&w, order, &options()?).flag("--order")?;
            print_report(&report);
            write_json(json.as_deref(), report.to_json())?;
            Ok(if report.passed() { EXIT_HELD } else { EXIT_VIOLATED })
        }
        Command::MaxOrder { tri, rows, cap, json } => {
            let w = window(&tri, rows, "--tri")?;
            let (m, report) = max_order_with(&w, cap, &options()?).flag("--cap")?;
            if m < 3 {
                println!("max order: none (order 3 fails)");
            } else {
                println!("max order: {m} (cap {cap})");
            }
            print_report(&report);
            write_json(json.as_deref(), report.to_json())?;
            Ok(if m >= 3 { EXIT_HELD } else { EXIT_VIOLATED })
        }
        Command::Invert(args) => {
            let w = window(&args.tri, args.rows, "--tri")?;
            let inv = tri_inverse(&w).flag("--tri")?;
            emit_window(&inv, &format!("inverse({})", args.tri), args.json.as_deref())
        }
        Command::Power { window: args, exp } => {
            let w = window(&args.tri, args.rows, "--tri")?;
            let p = matrix_power(&w, exp).flag("--exp")?;
            emit_window(&p, &format!("power({};{exp})", args.tri), args.json.as_deref())
        }
        Command::Hadamard { a, b, inv, rows, json } => {
            let (t, name) = match (a, b, inv) {
                (Some(a), Some(b), None) => (
                    hadamard_product(&triangle(&a, "--a")?, &triangle(&b, "--b")?),
                    format!("hadamard({a};{b})"),
                ),
                (None, None, Some(x)) => (hadamard_inverse(&triangle(&x, "--inv")?), format!("hinv({x})")),
                _ => {
                    return Err(CliError {
                        flag: "--a/--b/--inv",
                        message: "give either --a and --b, or --inv".into(),
                    })
                }
            };
            let w = t.materialize(rows).flag("--rows")?;
            emit_window(&w, &name, json.as_deref())
        }
        Command::Minor { window: args, j } => {
            let w = window(&args.tri, args.rows, "--tri")?;
            let m = minor_triangle(&w, j).flag("--j")?;
            emit_window(&m, &format!("minor({};{j})", args.tri), args.json.as_deref())
        }
        Command::Riordan { op, d, h, d2, h2, rows, json } => {
            let pair = RiordanPair::new(series(&d, rows, "--d")?, series(&h, rows, "--h")?).flag("--d/--h")?;
            let result = match op {
                RiordanOp::Window => pair,
                RiordanOp::Inverse => riordan_inverse(&pair).flag("--h")?,
                RiordanOp::Mul => {
                    let (Some(d2), Some(h2)) = (d2, h2) else {
                        return Err(CliError {
                            flag: "--d2/--h2",
                            message: "`riordan mul` needs a second pair".into(),
                        });
                    };
                    let other = RiordanPair::new(series(&d2, rows, "--d2")?, series(&h2, rows, "--h2")?)
                        .flag("--d2/--h2")?;
                    riordan_mul(&pair, &other).flag("--d2/--h2")?
                }
            };
            println!("d: {}", result.d());
            println!("h: {}", result.h());
            let w = riordan_window(&result, rows).flag("--rows")?;
            emit_window(&w, &format!("riordan({};{})", result.d(), result.h()), json.as_deref())
        }
        Command::Conjecture { kind, family, trials, rows, seed, j, json } => {
            let families = if family == "all" {
                Family::all()
            } else {
                vec![family.parse::<Family>().flag("--family")?]
            };
            let transform = match (kind, j) {
                (ConjectureKind::Inverse, None) => Transform::Inverse,
                (ConjectureKind::Minor, Some(j)) => Transform::Minor(j),
                (ConjectureKind::Minor, None) => {
                    return Err(CliError {
                        flag: "--j",
                        message: "`conjecture minor` needs --j".into(),
                    })
                }
                (ConjectureKind::Inverse, Some(_)) => {
                    return Err(CliError {
                        flag: "--j",
                        message: "--j only applies to `conjecture minor`".into(),
                    })
                }
            };
            let config = HarnessConfig {
                families: families.clone(),
                trials,
                rows,
                seed,
                transform,
            };
            let records = harness::run(&config).flag("--rows")?;
            println!("{:<22} {:>6} {:>11} {:>10} {:>9} {:>8}", "family", "cases", "consistent", "candidate", "expected", "skipped");
            for f in &families {
                let subset: Vec<_> = records.iter().filter(|r| r.case.family == *f).cloned().collect();
                let s = harness::summarize(&subset);
                println!(
                    "{:<22} {:>6} {:>11} {:>10} {:>9} {:>8}",
                    f.to_string(),
                    s.total,
                    s.consistent,
                    s.candidates,
                    s.expected_failures,
                    s.skipped
                );
            }
            let summary = harness::summarize(&records);
            write_json(
                json.as_deref(),
                serde_json::to_string_pretty(&records).expect("records serialize"),
            )?;
            Ok(if summary.candidates == 0 { EXIT_HELD } else { EXIT_VIOLATED })
        }
        Command::Print(args) => {
            let t = triangle(&args.tri, "--tri")?;
            let w = t.materialize(args.rows).flag("--rows")?;
            emit_window(&w, &args.tri, args.json.as_deref())
        }
    }
}
