//! Exit criteria. Each test prints one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p sdr-core --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;

use sdr_core::algebra::{
    matmul, matrix_power, product_inverse_closed, product_power_closed, series_inverse_b,
    series_inverse_b_by_compositions, tri_inverse, SequencePrefix,
};
use sdr_core::checker::{check_order, max_order};
use sdr_core::harness::{
    self, gen_case, random_product_spec, rng_for, summarize, test_minor_conjecture, CaseVerdict, ClaimedOrder,
    Family, HarnessConfig, Transform,
};
use sdr_core::minor::{minor_triangle, toeplitz_minor_closed};
use sdr_core::rational::{int, Rational};
use sdr_core::riordan::{riordan_inverse, riordan_mul, riordan_window, series_compose, RiordanPair, Series};
use sdr_core::{Builtin, SequenceSpec, TriangleSpec, Window};

const BASE_SEED: u64 = 20_240_601;

struct Criterion {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn within(&mut self, elapsed: Duration, limit: Duration, what: &str) {
        self.check(elapsed < limit, format!("{what}: {elapsed:?} >= {limit:?}"));
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("[PASS] criterion {}: {}", self.id, self.title);
        } else {
            println!("[FAIL] criterion {}: {} -- {}", self.id, self.title, self.failures.join("; "));
            panic!("criterion {} failed: {:?}", self.id, self.failures);
        }
    }
}

fn rows(r: &[&[i64]]) -> Window {
    Window::from_int_rows(r).unwrap()
}

fn builtin(b: Builtin, n: usize) -> Window {
    b.triangle().materialize(n).unwrap()
}

fn product_parts(spec: &TriangleSpec) -> (SequenceSpec, SequenceSpec, SequenceSpec) {
    match spec {
        TriangleSpec::Product { a, b, c } => (a.clone(), b.clone(), c.clone()),
        other => panic!("not a product spec: {other}"),
    }
}

/// Seeded random product triangles; seeds are `BASE_SEED + i`.
fn random_products(count: usize, len: usize) -> Vec<(u64, TriangleSpec)> {
    (0..count as u64)
        .map(|i| {
            let seed = BASE_SEED + i;
            (seed, random_product_spec(&mut rng_for(seed), len))
        })
        .collect()
}

#[test]
fn criterion_1_golden_rows() {
    let mut c = Criterion::new(1, "golden rows of P, N, P·N, aerated, A_[2], A_[3]");
    let start = Instant::now();
    c.check(
        builtin(Builtin::Pascal, 6)
            == rows(&[&[1], &[1, 1], &[1, 2, 1], &[1, 3, 3, 1], &[1, 4, 6, 4, 1], &[1, 5, 10, 10, 5, 1]]),
        "pascal rows",
    );
    c.check(
        builtin(Builtin::Narayana, 6)
            == rows(&[&[1], &[1, 1], &[1, 3, 1], &[1, 6, 6, 1], &[1, 10, 20, 10, 1], &[1, 15, 50, 50, 15, 1]]),
        "narayana rows",
    );
    c.check(
        matmul(&builtin(Builtin::Pascal, 6), &builtin(Builtin::Narayana, 6)).unwrap()
            == rows(&[
                &[1],
                &[2, 1],
                &[4, 5, 1],
                &[8, 18, 9, 1],
                &[16, 56, 50, 14, 1],
                &[32, 160, 220, 110, 20, 1],
            ]),
        "P·N rows",
    );
    c.check(
        builtin(Builtin::Aerated, 6)
            == rows(&[&[1], &[0, 1], &[1, 0, 1], &[0, 2, 0, 1], &[1, 0, 3, 0, 1], &[0, 3, 0, 4, 0, 1]]),
        "aerated rows",
    );
    let a2 = minor_triangle(&builtin(Builtin::Aerated, 6), 2).unwrap();
    c.check(
        a2 == rows(&[&[1], &[-1, 1], &[2, -2, 1], &[-2, 6, -3, 1], &[3, -9, 12, -4, 1]]),
        "A_[2] rows",
    );
    let a3 = minor_triangle(&builtin(Builtin::Aerated, 7), 3).unwrap();
    let displayed = rows(&[&[1], &[0, 1], &[2, 0, 1], &[0, 15, 0, 1], &[9, 0, 36, 0, 1]]);
    if a3 != displayed {
        let diffs: Vec<String> = a3
            .entries()
            .zip(displayed.entries())
            .filter(|((_, _, x), (_, _, y))| x != y)
            .map(|((n, k, x), (_, _, y))| format!("({n},{k}) computed {x}, displayed {y}"))
            .collect();
        c.check(false, format!("A_[3] rows differ from the display: {}", diffs.join(", ")));
    }
    c.within(start.elapsed(), Duration::from_secs(1), "runtime");
    c.finish();
}

#[test]
fn criterion_2_sdr_verdicts() {
    let mut c = Criterion::new(2, "SDR verdicts for P, N, L, P·N and the aerated triangle");
    let start = Instant::now();
    for b in [Builtin::Pascal, Builtin::Narayana, Builtin::Lah] {
        c.check(check_order(&builtin(b, 16), 8).unwrap().passed(), format!("{} at m = 8", b.name()));
    }
    c.within(start.elapsed(), Duration::from_secs(5), "order-8 checks");

    let pn = matmul(&builtin(Builtin::Pascal, 6), &builtin(Builtin::Narayana, 6)).unwrap();
    let report = check_order(&pn, 3).unwrap();
    c.check(!report.passed(), "P·N should fail order 3");
    match report.first_violation() {
        Some(v) => {
            c.check((v.p, v.r, v.n, v.k) == (2, 0, 2, 0), format!("first violation {:?}", (v.p, v.r, v.n, v.k)));
            c.check(v.lhs == int(2016) && v.rhs == int(2000), format!("sides {} vs {}", v.lhs, v.rhs));
        }
        None => c.check(false, "no violation listed"),
    }
    let (m, _) = max_order(&builtin(Builtin::Aerated, 12), 8).unwrap();
    c.check(m == 3, format!("aerated max order {m}"));
    c.finish();
}

#[test]
fn criterion_3_closed_form_inverse() {
    let mut c = Criterion::new(3, "closed-form inverse equals forward substitution");
    for (seed, spec) in random_products(25, 12) {
        let (a, b, cc) = product_parts(&spec);
        let w = spec.build().unwrap().materialize(12).unwrap();
        let inv = tri_inverse(&w).unwrap();
        c.check(product_inverse_closed(&a, &b, &cc, 12).unwrap() == inv, format!("seed {seed}: closed form"));
        c.check(matmul(&w, &inv).unwrap() == Window::identity(12), format!("seed {seed}: W·W^-1"));
    }
    let nar_inv = tri_inverse(&builtin(Builtin::Narayana, 12)).unwrap();
    c.check(check_order(&nar_inv, 6).unwrap().passed(), "Narayana inverse at m = 6");
    c.finish();
}

#[test]
fn criterion_4_closed_form_powers() {
    let mut c = Criterion::new(4, "closed-form powers equal repeated products");
    for (seed, spec) in random_products(25, 12) {
        let (a, b, _) = product_parts(&spec);
        // a_n · b_{n-k} · a_k^{-1}
        let conj = TriangleSpec::product(SequenceSpec::inv(a.clone()), b.clone(), a.clone());
        let w = conj.build().unwrap().materialize(12).unwrap();
        for j in [-2i64, -1, 0, 2, 3] {
            c.check(
                product_power_closed(&a, &b, j, 12).unwrap() == matrix_power(&w, j).unwrap(),
                format!("seed {seed}, j = {j}"),
            );
        }
    }
    let p2 = matrix_power(&builtin(Builtin::Pascal, 10), 2).unwrap();
    let pair = RiordanPair::new(Series::parse("geomrec:2", 10).unwrap(), Series::parse("tgeomrec:2", 10).unwrap()).unwrap();
    c.check(riordan_window(&pair, 10).unwrap() == p2, "P^2 equals (1/(1-2t), t/(1-2t))");
    c.finish();
}

#[test]
fn criterion_5_b_series_forms() {
    let mut c = Criterion::new(5, "alternating-sum and recurrence forms of B agree");
    for i in 0..10u64 {
        let seed = BASE_SEED + 100 + i;
        let mut rng = rng_for(seed);
        let mut v = vec![Rational::one()];
        for _ in 0..14 {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            v.push(Rational::new((sign * rng.gen_range(1..=9)).into(), rng.gen_range(1..=9i64).into()));
        }
        let b = SequencePrefix(v);
        c.check(
            series_inverse_b(&b).unwrap() == series_inverse_b_by_compositions(&b).unwrap(),
            format!("seed {seed}"),
        );
    }
    let ones = SequencePrefix(vec![Rational::one(); 15]);
    let mut expected = vec![Rational::zero(); 15];
    expected[0] = Rational::one();
    expected[1] = int(-1);
    c.check(series_inverse_b_by_compositions(&ones).unwrap().0 == expected, "b = 1,1,1,.. (sum)");
    c.check(series_inverse_b(&ones).unwrap().0 == expected, "b = 1,1,1,.. (recurrence)");
    c.finish();
}

#[test]
fn criterion_6_order_three_lifts() {
    let mut c = Criterion::new(6, "order 3 implies orders 4..6 on nonzero windows");
    let mut discrepancies = 0;
    for (seed, spec) in random_products(50, 12) {
        let w = spec.build().unwrap().materialize(12).unwrap();
        assert!(w.all_nonzero());
        if check_order(&w, 3).unwrap().passed() {
            for m in 4..=6 {
                if !check_order(&w, m).unwrap().passed() {
                    discrepancies += 1;
                    c.check(false, format!("seed {seed}: order {m} fails"));
                }
            }
        }
    }
    c.check(discrepancies == 0, format!("{discrepancies} discrepancies"));
    c.finish();
}

#[test]
fn criterion_7_toeplitz_minors() {
    let mut c = Criterion::new(7, "Toeplitz closed form equals block determinants");
    for (seed, spec) in random_products(25, 12) {
        let (a, b, cc) = product_parts(&spec);
        let w = spec.build().unwrap().materialize(10).unwrap();
        for j in 1..=4 {
            c.check(
                toeplitz_minor_closed(&a, &b, &cc, j, 11 - j).unwrap() == minor_triangle(&w, j).unwrap(),
                format!("seed {seed}, j = {j}"),
            );
        }
    }
    c.check(
        minor_triangle(&builtin(Builtin::Pascal, 10), 2).unwrap() == builtin(Builtin::Narayana, 9),
        "P_[2] equals N",
    );
    c.finish();
}

/// Coefficients of the aerated pair's inverse found by undetermined
/// coefficients: `h(hbar) = t` solved by exhaustive integer search, then
/// `d_inv = 1 - hbar^2` since `d = 1/(1 - t^2)`.
fn aerated_inverse_d_oracle(len: usize) -> Vec<Rational> {
    let h = Series::geometric_even(true, len);
    let mut g = vec![Rational::zero(); len];
    for n in 1..len {
        let hit = (-50i64..=50)
            .find(|&cand| {
                g[n] = int(cand);
                let comp = series_compose(&Series::new(h.coeffs()[..=n].to_vec()), &Series::new(g[..=n].to_vec()))
                    .unwrap();
                comp.coeffs()[n] == if n == 1 { Rational::one() } else { Rational::zero() }
            })
            .expect("integer coefficient in range");
        g[n] = int(hit);
    }
    (0..len)
        .map(|n| {
            let sq: Rational = (0..=n).map(|i| &g[i] * &g[n - i]).sum();
            if n == 0 { Rational::one() - sq } else { -sq }
        })
        .collect()
}

#[test]
fn criterion_8_riordan_layer() {
    let mut c = Criterion::new(8, "Riordan windows, group inverse and the aerated inverse pair");
    let pascal = RiordanPair::new(Series::parse("geomrec:1", 6).unwrap(), Series::parse("tgeomrec:1", 6).unwrap()).unwrap();
    c.check(riordan_window(&pascal, 6).unwrap() == builtin(Builtin::Pascal, 6), "Pascal pair window");

    for i in 0..20u64 {
        let seed = BASE_SEED + 200 + i;
        let mut rng = rng_for(seed);
        let mut term = || Rational::new(rng.gen_range(-9..=9i64).into(), rng.gen_range(1..=9i64).into());
        let mut d: Vec<Rational> = (0..12).map(|_| term()).collect();
        let mut h: Vec<Rational> = (0..12).map(|_| term()).collect();
        if d[0].is_zero() {
            d[0] = Rational::one();
        }
        h[0] = Rational::zero();
        if h[1].is_zero() {
            h[1] = Rational::one();
        }
        let r = RiordanPair::new(Series::new(d), Series::new(h)).unwrap();
        let prod = riordan_mul(&r, &riordan_inverse(&r).unwrap()).unwrap();
        c.check(prod == RiordanPair::identity(12), format!("seed {seed}: r·r^-1 = (1, t)"));
    }

    let aerated = RiordanPair::new(Series::parse("geomrec2", 9).unwrap(), Series::parse("tgeomrec2", 9).unwrap()).unwrap();
    let inv = riordan_inverse(&aerated).unwrap();
    let oracle = aerated_inverse_d_oracle(9);
    c.check(inv.d().coeffs() == oracle.as_slice(), "inverse d matches the undetermined-coefficients oracle");
    let stated: Vec<Rational> = [1, 0, 1, 0, 2, 0, 5, 0, 14].into_iter().map(int).collect();
    if inv.d().coeffs() != stated.as_slice() {
        let got: Vec<String> = inv.d().coeffs().iter().map(|v| v.to_string()).collect();
        c.check(false, format!("inverse d is ({}), stated (1,0,1,0,2,0,5,0,14)", got.join(",")));
    }
    let inv_window = riordan_window(&inv, 9).unwrap();
    c.check(inv_window == tri_inverse(&builtin(Builtin::Aerated, 9)).unwrap(), "inverse window = tri_inverse");
    c.check(check_order(&inv_window, 3).unwrap().passed(), "inverse window passes m = 3");
    c.finish();
}

#[test]
fn criterion_9_conjecture_harness() {
    let mut c = Criterion::new(9, "conjecture harness: no candidates on guaranteed families");
    let start = Instant::now();
    for transform in [Transform::Inverse, Transform::Minor(2), Transform::Minor(3)] {
        let config = HarnessConfig {
            families: Family::all(),
            trials: harness::DEFAULT_TRIALS,
            rows: 10,
            seed: BASE_SEED,
            transform,
        };
        let records = harness::run(&config).unwrap();
        let summary = summarize(&records);
        println!("    {transform:?}: {summary:?}");
        c.check(summary.total == Family::all().len() * 50, "trial count");
        c.check(
            summary.candidates_on_guaranteed == 0,
            format!("{transform:?}: {} candidates on guaranteed families", summary.candidates_on_guaranteed),
        );
        c.check(records == harness::run(&config).unwrap(), format!("{transform:?}: reproducible"));
    }

    // Remark: aerated is order 3 but not order 4.
    let aer = gen_case(Family::Builtin(Builtin::Aerated), BASE_SEED, 10).unwrap();
    c.check(aer.claimed_order == ClaimedOrder::Finite(3) && aer.verified, "aerated claim verified at order 3");
    c.check(!check_order(&aer.window().unwrap(), 4).unwrap().passed(), "aerated fails order 4");
    // Remark: A_[2] fails order 3, A_[3] passes.
    let v2 = test_minor_conjecture(&aer, 2).unwrap();
    c.check(v2.verdict == CaseVerdict::ExpectedFailure, format!("A_[2] verdict {:?}", v2.verdict));
    let v3 = test_minor_conjecture(&aer, 3).unwrap();
    c.check(v3.verdict == CaseVerdict::Consistent, format!("A_[3] verdict {:?}", v3.verdict));

    c.within(start.elapsed(), Duration::from_secs(60), "runtime");
    c.finish();
}
