//! Seeded counterexample search for the inverse-closure and minor-closure
//! conjectures.
//!
//! Each case is a triangle expression generated deterministically from
//! `(family, seed, rows)`. Its claimed order is checked on the window before
//! any transform is tested, and verdicts are finite evidence only.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::tri_inverse;
use crate::checker::{check_order, infinity_evidence, InfinityCertificate, SdrReport};
use crate::error::{Error, Result};
use crate::rational::{one, Rational};
use crate::sequence::SequenceSpec;
use crate::spec::TriangleSpec;
use crate::triangle::{Builtin, TriangleFile, Window};
use crate::minor::minor_triangle;

pub const DEFAULT_TRIALS: usize = 50;
pub const MIN_ROWS: usize = 6;
/// Numerators and denominators of random terms are drawn from `1..=9`.
pub const RANDOM_TERM_BOUND: i64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    ProductRandom,
    HadamardCombo,
    AeratedBinomial,
    AeratedOfProduct,
    Builtin(Builtin),
}

impl Family {
    pub fn all() -> Vec<Family> {
        let mut v = vec![
            Family::ProductRandom,
            Family::HadamardCombo,
            Family::AeratedBinomial,
            Family::AeratedOfProduct,
        ];
        v.extend(Builtin::ALL.into_iter().map(Family::Builtin));
        v
    }

    /// Families whose claimed order follows from a proven closure result;
    /// a counterexample candidate here means a bug.
    pub fn is_guaranteed(self) -> bool {
        match self {
            Family::ProductRandom | Family::HadamardCombo => true,
            Family::Builtin(b) => b != Builtin::Aerated,
            Family::AeratedBinomial | Family::AeratedOfProduct => false,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::ProductRandom => f.write_str("product-random"),
            Family::HadamardCombo => f.write_str("hadamard-combo"),
            Family::AeratedBinomial => f.write_str("aerated-binomial"),
            Family::AeratedOfProduct => f.write_str("aerated-of-product"),
            Family::Builtin(b) => write!(f, "builtin:{}", b.name()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product-random" => Ok(Family::ProductRandom),
            "hadamard-combo" => Ok(Family::HadamardCombo),
            "aerated-binomial" => Ok(Family::AeratedBinomial),
            "aerated-of-product" => Ok(Family::AeratedOfProduct),
            _ => s
                .strip_prefix("builtin:")
                .and_then(Builtin::from_name)
                .map(Family::Builtin)
                .ok_or_else(|| Error::parse(s, "unknown family")),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimedOrder {
    Finite(usize),
    InfinityEvidence,
}

/// Exact fit of a window to `a_k · b_{n-k} · c_n`, normalized by
/// `a_0 = b_0 = b_1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFit {
    pub exact: bool,
    pub mismatches: usize,
    #[serde(with = "crate::rational::literal::vec")]
    pub a: Vec<Rational>,
    #[serde(with = "crate::rational::literal::vec")]
    pub b: Vec<Rational>,
    #[serde(with = "crate::rational::literal::vec")]
    pub c: Vec<Rational>,
}

/// `None` when an entry the fit divides by (columns 0 and 1 or the
/// diagonal) is zero.
pub fn fit_product_form(w: &Window) -> Option<ProductFit> {
    use num_traits::Zero;
    let rows = w.n_rows();
    let at = |n: usize, k: usize| w.get(n, k).expect("in window").clone();
    let nonzero = |v: Rational| if v.is_zero() { None } else { Some(v) };
    let mut a = vec![one()];
    let mut b = vec![one()];
    let mut c = vec![nonzero(at(0, 0))?];
    if rows > 1 {
        b.push(one());
        c.push(nonzero(at(1, 0))?);
        a.push(nonzero(at(1, 1))? / &c[1]);
    }
    for n in 2..rows {
        let cn = nonzero(at(n, 1))? / (&a[1] * &b[n - 1]);
        b.push(nonzero(at(n, 0))? / &cn);
        a.push(nonzero(at(n, n))? / &cn);
        c.push(cn);
    }
    let mismatches = w
        .entries()
        .filter(|&(n, k, v)| &(&a[k] * &b[n - k] * &c[n]) != v)
        .count();
    Some(ProductFit {
        exact: mismatches == 0,
        mismatches,
        a,
        b,
        c,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub family: Family,
    pub seed: u64,
    pub spec: String,
    pub window_rows: usize,
    pub claimed_order: ClaimedOrder,
    pub provenance: String,
    /// Whether the claim held when re-checked on the window.
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub product_fit: Option<ProductFit>,
    #[serde(skip)]
    window: Option<Window>,
}

impl CaseRecord {
    pub fn window(&self) -> Result<Window> {
        match &self.window {
            Some(w) => Ok(w.clone()),
            None => self.spec.parse::<TriangleSpec>()?.build()?.materialize(self.window_rows),
        }
    }
}

fn random_term(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        rng.gen_range(1..=RANDOM_TERM_BOUND).into(),
        rng.gen_range(1..=RANDOM_TERM_BOUND).into(),
    )
}

fn random_list(rng: &mut ChaCha8Rng, len: usize, unit_head: bool) -> SequenceSpec {
    SequenceSpec::List(
        (0..len)
            .map(|i| if i == 0 && unit_head { one() } else { random_term(rng) })
            .collect(),
    )
}

/// Random strictly positive product triangle with `b_0 = 1`.
pub fn random_product_spec(rng: &mut ChaCha8Rng, len: usize) -> TriangleSpec {
    let a = random_list(rng, len, false);
    let b = random_list(rng, len, true);
    let c = random_list(rng, len, false);
    TriangleSpec::product(a, b, c)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gen_case(family: Family, seed: u64, n_rows: usize) -> Result<CaseRecord> {
    if n_rows < MIN_ROWS {
        return Err(Error::WindowTooSmall {
            rows: n_rows,
            required: MIN_ROWS,
        });
    }
    let mut rng = rng_for(seed);
    let inf = ClaimedOrder::InfinityEvidence;
    let (spec, claimed, provenance) = match family {
        Family::ProductRandom => (
            random_product_spec(&mut rng, n_rows),
            inf,
            "product form with nonzero terms",
        ),
        Family::HadamardCombo => {
            let base = [Builtin::Pascal, Builtin::Narayana, Builtin::Lah][rng.gen_range(0..3)];
            let product = random_product_spec(&mut rng, n_rows);
            (
                TriangleSpec::Hadamard(Box::new(TriangleSpec::Builtin(base)), Box::new(product)),
                inf,
                "hadamard product of infinite-order triangles",
            )
        }
        Family::AeratedBinomial => {
            let product = random_product_spec(&mut rng, n_rows);
            (
                TriangleSpec::Hadamard(Box::new(TriangleSpec::Builtin(Builtin::Aerated)), Box::new(product)),
                ClaimedOrder::Finite(3),
                "hadamard product of the aerated witness with a product form",
            )
        }
        Family::AeratedOfProduct => (
            TriangleSpec::Aerate(Box::new(random_product_spec(&mut rng, n_rows))),
            ClaimedOrder::Finite(3),
            "empirical",
        ),
        Family::Builtin(Builtin::Aerated) => (
            TriangleSpec::Builtin(Builtin::Aerated),
            ClaimedOrder::Finite(3),
            "aerated witness: order 3 but not order 4",
        ),
        Family::Builtin(b) => (TriangleSpec::Builtin(b), inf, "builtin product factorization"),
    };
    let window = spec.build()?.materialize(n_rows)?;
    let verified = match claimed {
        ClaimedOrder::Finite(m) => check_order(&window, m.min(n_rows))?.passed(),
        ClaimedOrder::InfinityEvidence => {
            infinity_evidence(&window)?.is_consistent() || check_order(&window, n_rows)?.passed()
        }
    };
    let product_fit = if window.all_nonzero() && check_order(&window, 3)?.passed() {
        fit_product_form(&window)
    } else {
        None
    };
    Ok(CaseRecord {
        family,
        seed,
        spec: spec.to_string(),
        window_rows: n_rows,
        claimed_order: claimed,
        provenance: provenance.to_string(),
        verified,
        product_fit,
        window: Some(window),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseVerdict {
    Consistent,
    CounterexampleCandidate,
    /// A finite-order case failing a check that the conjecture only
    /// makes for infinite order.
    ExpectedFailure,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dump {
    pub input: TriangleFile,
    pub output: TriangleFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub case: CaseRecord,
    pub transform: String,
    pub result_order_check: Option<SdrReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<InfinityCertificate>,
    pub verdict: CaseVerdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dump: Option<Dump>,
}

fn skipped(case: &CaseRecord, transform: String, note: String) -> VerdictRecord {
    VerdictRecord {
        case: case.clone(),
        transform,
        result_order_check: None,
        certificate: None,
        verdict: CaseVerdict::Skipped,
        note: Some(note),
        dump: None,
    }
}

fn dump(case: &CaseRecord, input: &Window, output: &Window, transform: &str) -> Dump {
    Dump {
        input: input.to_file(case.spec.clone()),
        output: output.to_file(format!("{transform}({})", case.spec)),
    }
}

/// Inverse closure: the inverse window should pass the case's order.
pub fn test_inverse_conjecture(case: &CaseRecord) -> Result<VerdictRecord> {
    let transform = "inverse".to_string();
    if !case.verified {
        return Ok(skipped(case, transform, "claimed order not verified on the window".into()));
    }
    let w = case.window()?;
    let inv = match tri_inverse(&w) {
        Ok(inv) => inv,
        Err(Error::ZeroDiagonal { index }) => {
            return Ok(skipped(case, transform, format!("not invertible: zero diagonal at row {index}")))
        }
        Err(e) => return Err(e),
    };
    let order = match case.claimed_order {
        ClaimedOrder::Finite(m) => m.min(inv.n_rows()),
        ClaimedOrder::InfinityEvidence => inv.n_rows(),
    };
    let report = check_order(&inv, order)?;
    let certificate = match case.claimed_order {
        ClaimedOrder::InfinityEvidence => Some(infinity_evidence(&inv)?),
        ClaimedOrder::Finite(_) => None,
    };
    let passed = report.passed();
    Ok(VerdictRecord {
        case: case.clone(),
        dump: (!passed).then(|| dump(case, &w, &inv, &transform)),
        transform,
        result_order_check: Some(report),
        certificate,
        verdict: if passed {
            CaseVerdict::Consistent
        } else {
            CaseVerdict::CounterexampleCandidate
        },
        note: None,
    })
}

/// Minor closure: `A_[j]` checked at order 3, plus the nonzero certificate.
pub fn test_minor_conjecture(case: &CaseRecord, j: usize) -> Result<VerdictRecord> {
    let transform = format!("minor:{j}");
    if j == 0 || j > case.window_rows {
        return Err(Error::Invalid(format!(
            "minor size {j} must be in 1..={}",
            case.window_rows
        )));
    }
    if case.window_rows - j + 1 < 3 {
        return Err(Error::WindowTooSmall {
            rows: case.window_rows,
            required: j + 2,
        });
    }
    if !case.verified {
        return Ok(skipped(case, transform, "claimed order not verified on the window".into()));
    }
    let w = case.window()?;
    let minor = minor_triangle(&w, j)?;
    let report = check_order(&minor, 3)?;
    let certificate = if minor.n_rows() >= 4 {
        Some(infinity_evidence(&minor)?)
    } else {
        None
    };
    let passed = report.passed();
    let (verdict, note) = match (passed, case.claimed_order) {
        (true, _) => (CaseVerdict::Consistent, None),
        (false, ClaimedOrder::InfinityEvidence) => (CaseVerdict::CounterexampleCandidate, None),
        (false, ClaimedOrder::Finite(m)) => (
            CaseVerdict::ExpectedFailure,
            Some(format!("claimed order {m} is finite; minor closure is not expected")),
        ),
    };
    Ok(VerdictRecord {
        case: case.clone(),
        dump: (verdict == CaseVerdict::CounterexampleCandidate).then(|| dump(case, &w, &minor, &transform)),
        transform,
        result_order_check: Some(report),
        certificate,
        verdict,
        note,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Inverse,
    Minor(usize),
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub families: Vec<Family>,
    pub trials: usize,
    pub rows: usize,
    pub seed: u64,
    pub transform: Transform,
}

/// Runs every `(family, trial)` pair; trial `t` uses seed `seed + t`.
/// Records are ordered by family, then seed.
pub fn run(config: &HarnessConfig) -> Result<Vec<VerdictRecord>> {
    let jobs: Vec<(Family, u64)> = config
        .families
        .iter()
        .flat_map(|&f| (0..config.trials as u64).map(move |t| (f, config.seed.wrapping_add(t))))
        .collect();
    let one_job = |&(family, seed): &(Family, u64)| -> Result<VerdictRecord> {
        let case = gen_case(family, seed, config.rows)?;
        match config.transform {
            Transform::Inverse => test_inverse_conjecture(&case),
            Transform::Minor(j) => test_minor_conjecture(&case, j),
        }
    };
    #[cfg(feature = "parallel")]
    let records = {
        use rayon::prelude::*;
        jobs.par_iter().map(one_job).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let records = jobs.iter().map(one_job).collect();
    records
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub consistent: usize,
    pub candidates: usize,
    pub candidates_on_guaranteed: usize,
    pub expected_failures: usize,
    pub skipped: usize,
}

pub fn summarize(records: &[VerdictRecord]) -> Summary {
    let mut s = Summary {
        total: records.len(),
        ..Summary::default()
    };
    for r in records {
        match r.verdict {
            CaseVerdict::Consistent => s.consistent += 1,
            CaseVerdict::CounterexampleCandidate => {
                s.candidates += 1;
                if r.case.family.is_guaranteed() {
                    s.candidates_on_guaranteed += 1;
                }
            }
            CaseVerdict::ExpectedFailure => s.expected_failures += 1,
            CaseVerdict::Skipped => s.skipped += 1,
        }
    }
    s
}
