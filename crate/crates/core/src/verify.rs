//! Named verification suites. Each suite realizes one of the proved or
//! asserted identity families as an executable, exhaustive (or seeded) check
//! with exact coefficient comparisons, and produces a machine-readable
//! report.
//!
//! S1  confluence sampling for both rewriting engines
//! S2  well-definedness of the module action on all sphere relations
//! S3  the four recursion-compatibility identity families
//! S4  chi . tau = id over all basis indices up to a level
//! S5  the auxiliary identity families (facili_bis / _tris variants)
//! S6  the 4-sphere presentation, coinvariance and B-balance of chi
//! S7  coaction counit and coassociativity laws
//! S8  full column rank of the entwining map at a rational specialization

use crate::cmod::{self, ActionTable, CElement, CIndex};
use crate::coeff::{one_minus_q2, LaurentCoeff};
use crate::galois::{self, PCElement, PPElement, TauError, TauKey, TauTable};
use crate::lincomb::LinComb;
use crate::rewrite::Strategy;
use crate::s7::{self, PElement, PMonomial, ZLetter};
use crate::suq2::{self, Su2Letter};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

/// Identifier of a verification suite.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum SuiteId {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
}

pub const ALL_SUITES: [SuiteId; 8] = [
    SuiteId::S1,
    SuiteId::S2,
    SuiteId::S3,
    SuiteId::S4,
    SuiteId::S5,
    SuiteId::S6,
    SuiteId::S7,
    SuiteId::S8,
];

impl SuiteId {
    pub fn describe(self) -> &'static str {
        match self {
            SuiteId::S1 => "confluence sampling (two reduction strategies agree)",
            SuiteId::S2 => "module action well-defined on all sphere relations",
            SuiteId::S3 => "recursion-compatibility identity families under chi",
            SuiteId::S4 => "chi . tau = id on all basis indices",
            SuiteId::S5 => "auxiliary identity families under chi",
            SuiteId::S6 => "4-sphere presentation, coinvariance, B-balance of chi",
            SuiteId::S7 => "coaction counit and coassociativity laws",
            SuiteId::S8 => "entwining map has full column rank at q0 = 3/2",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", *self as u8 + 1)
    }
}

impl std::str::FromStr for SuiteId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "S1" => Ok(SuiteId::S1),
            "S2" => Ok(SuiteId::S2),
            "S3" => Ok(SuiteId::S3),
            "S4" => Ok(SuiteId::S4),
            "S5" => Ok(SuiteId::S5),
            "S6" => Ok(SuiteId::S6),
            "S7" => Ok(SuiteId::S7),
            "S8" => Ok(SuiteId::S8),
            other => Err(format!("unknown suite id `{}` (expected S1..S8)", other)),
        }
    }
}

/// A failing case: its enumeration label and both rendered sides.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Failure {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one suite run. Reproducible bit for bit from
/// (id, max_degree, seed) except for the wall-clock duration.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub id: SuiteId,
    pub max_degree: u32,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<(String, String)>,
    pub duration: Duration,
}

impl SuiteReport {
    pub fn passed_all(&self) -> bool {
        self.failures.is_empty() && self.passed == self.cases
    }

    pub fn first_counterexample(&self) -> Option<&Failure> {
        self.failures.first()
    }

    /// Key-value header plus one line per failing case.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.id));
        out.push_str(&format!("description: {}\n", self.id.describe()));
        out.push_str(&format!("max_degree: {}\n", self.max_degree));
        out.push_str(&format!("seed: {}\n", self.seed));
        out.push_str(&format!("cases: {}\n", self.cases));
        out.push_str(&format!("passed: {}\n", self.passed));
        for (k, v) in &self.notes {
            out.push_str(&format!("{}: {}\n", k, v));
        }
        out.push_str(&format!("duration_ms: {}\n", self.duration.as_millis()));
        out.push_str(&format!(
            "status: {}\n",
            if self.passed_all() { "PASS" } else { "FAIL" }
        ));
        for f in &self.failures {
            out.push_str(&format!(
                "fail: {} :: lhs = {} :: rhs = {}\n",
                f.case, f.lhs, f.rhs
            ));
        }
        out
    }
}

/// Errors aborting a suite before completion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SuiteError {
    Tau { suite: SuiteId, source: TauError },
}

impl fmt::Display for SuiteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteError::Tau { suite, source } => {
                write!(f, "suite {} aborted: {}", suite, source)
            }
        }
    }
}

impl std::error::Error for SuiteError {}

/// Run a suite against the standard action table.
pub fn run_suite(id: SuiteId, max_degree: u32, seed: u64) -> Result<SuiteReport, SuiteError> {
    run_suite_with(&ActionTable::standard(), id, max_degree, seed)
}

/// Run a suite against an explicit action table (the mutation-testing hook).
pub fn run_suite_with(
    table: &ActionTable,
    id: SuiteId,
    max_degree: u32,
    seed: u64,
) -> Result<SuiteReport, SuiteError> {
    let start = Instant::now();
    let mut notes = Vec::new();
    let (cases, failures) = match id {
        SuiteId::S1 => suite_s1(seed),
        SuiteId::S2 => suite_s2(table, max_degree),
        SuiteId::S3 => suite_s3(table, max_degree).map_err(|e| wrap(id, e))?,
        SuiteId::S4 => suite_s4(table, max_degree).map_err(|e| wrap(id, e))?,
        SuiteId::S5 => suite_s5(table, max_degree).map_err(|e| wrap(id, e))?,
        SuiteId::S6 => suite_s6(table, max_degree),
        SuiteId::S7 => suite_s7(table, max_degree),
        SuiteId::S8 => {
            let (c, f, n) = suite_s8(table, max_degree);
            notes = n;
            (c, f)
        }
    };
    Ok(SuiteReport {
        id,
        max_degree,
        seed,
        cases,
        passed: cases - failures.len(),
        failures,
        notes,
        duration: start.elapsed(),
    })
}

fn wrap(suite: SuiteId, source: TauError) -> SuiteError {
    SuiteError::Tau { suite, source }
}

// ---------------------------------------------------------------------------
// Case plumbing
// ---------------------------------------------------------------------------

type CaseResult = Option<Failure>;

fn collect_failures(results: Vec<CaseResult>) -> (usize, Vec<Failure>) {
    let cases = results.len();
    let failures = results.into_iter().flatten().collect();
    (cases, failures)
}

fn check_pc(case: String, lhs: &PCElement, rhs: &PCElement) -> CaseResult {
    if lhs == rhs {
        None
    } else {
        Some(Failure {
            case,
            lhs: galois::render_pc(lhs),
            rhs: galois::render_pc(rhs),
        })
    }
}

// ---------------------------------------------------------------------------
// S1: confluence sampling
// ---------------------------------------------------------------------------

/// Deterministic splitmix64 stream; fixed here so reports are reproducible
/// across platforms and dependency versions.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

const S1_SAMPLES: usize = 1000;
const S1_MAX_LEN: usize = 8;

fn suite_s1(seed: u64) -> (usize, Vec<Failure>) {
    let mut rng = SplitMix64(seed);
    let mut inputs: Vec<(String, Vec<u8>, bool)> = Vec::with_capacity(2 * S1_SAMPLES);
    for i in 0..S1_SAMPLES {
        let len = (rng.next() % S1_MAX_LEN as u64) as usize + 1;
        let word: Vec<u8> = (0..len).map(|_| (rng.next() % 4) as u8).collect();
        inputs.push((format!("su2 word #{} {:?}", i, word), word, false));
    }
    for i in 0..S1_SAMPLES {
        let len = (rng.next() % S1_MAX_LEN as u64) as usize + 1;
        let word: Vec<u8> = (0..len).map(|_| (rng.next() % 8) as u8).collect();
        inputs.push((format!("s7 word #{} {:?}", i, word), word, true));
    }
    let results: Vec<CaseResult> = inputs
        .par_iter()
        .map(|(case, word, is_s7)| {
            if *is_s7 {
                let letters: Vec<ZLetter> = word.iter().map(|&id| ZLetter::from_id(id)).collect();
                let l = s7::nf_word_with_strategy(&letters, Strategy::LeftmostInnermost);
                let r = s7::nf_word_with_strategy(&letters, Strategy::RightmostInnermost);
                if l == r {
                    None
                } else {
                    Some(Failure {
                        case: case.clone(),
                        lhs: s7::render_element(&l),
                        rhs: s7::render_element(&r),
                    })
                }
            } else {
                let letters: Vec<Su2Letter> =
                    word.iter().map(|&id| Su2Letter::from_id(id)).collect();
                let l = suq2::nf_word_with_strategy(&letters, Strategy::LeftmostInnermost);
                let r = suq2::nf_word_with_strategy(&letters, Strategy::RightmostInnermost);
                if l == r {
                    None
                } else {
                    Some(Failure {
                        case: case.clone(),
                        lhs: suq2::render_element(&l),
                        rhs: suq2::render_element(&r),
                    })
                }
            }
        })
        .collect();
    collect_failures(results)
}

// ---------------------------------------------------------------------------
// S2: well-definedness of the triangle action
// ---------------------------------------------------------------------------

fn suite_s2(table: &ActionTable, max_degree: u32) -> (usize, Vec<Failure>) {
    let relations = s7::defining_relations();
    let indices = cmod::c_indices_up_to(max_degree);
    let mut inputs = Vec::new();
    for (label, comb) in &relations {
        for idx in &indices {
            inputs.push((label.clone(), comb.clone(), *idx));
        }
    }
    let results: Vec<CaseResult> = inputs
        .par_iter()
        .map(|(label, comb, idx)| {
            let start = PCElement::basis((PMonomial::unit(), *idx));
            let mut acc = PCElement::zero();
            for (c, word) in comb {
                acc.add_scaled(&galois::triangle_word(&start, word, table), c);
            }
            if acc.is_zero() {
                None
            } else {
                Some(Failure {
                    case: format!("relation `{}` acting on {}", label, idx.render()),
                    lhs: galois::render_pc(&acc),
                    rhs: "0".to_string(),
                })
            }
        })
        .collect();
    collect_failures(results)
}

// ---------------------------------------------------------------------------
// Identity-family plumbing shared by S3 and S5
// ---------------------------------------------------------------------------

fn qp(e: i64) -> LaurentCoeff {
    LaurentCoeff::q_pow(e)
}

fn zel(i: u8, starred: bool) -> PElement {
    PElement::basis(if starred {
        let mut m = PMonomial::unit();
        m.zs[(i - 1) as usize] = 1;
        m
    } else {
        let mut m = PMonomial::unit();
        m.z[(i - 1) as usize] = 1;
        m
    })
}

/// coeff * (left . tau . right), with either side optional.
fn part(
    coeff: LaurentCoeff,
    left: Option<&PElement>,
    tau: &PPElement,
    right: Option<&PElement>,
) -> PPElement {
    let mut acc = tau.clone();
    if let Some(l) = left {
        acc = pp_left_mul(l, &acc);
    }
    if let Some(r) = right {
        acc = pp_right_mul(&acc, r);
    }
    acc.scale(&coeff)
}

fn pp_left_mul(e: &PElement, x: &PPElement) -> PPElement {
    let mut out = PPElement::zero();
    for ((p1, p2), c) in x.iter() {
        let left = s7::mul(e, &PElement::basis(*p1));
        for (lm, lc) in left.iter() {
            out.add_term((*lm, *p2), c * lc);
        }
    }
    out
}

fn pp_right_mul(x: &PPElement, e: &PElement) -> PPElement {
    let mut out = PPElement::zero();
    for ((p1, p2), c) in x.iter() {
        let right = s7::mul(&PElement::basis(*p2), e);
        for (rm, rc) in right.iter() {
            out.add_term((*p1, *rm), c * rc);
        }
    }
    out
}

fn sum(parts: Vec<PPElement>) -> PPElement {
    let mut acc = PPElement::zero();
    for p in parts {
        acc.add_assign(&p);
    }
    acc
}

/// 1 - q^2 R as an element of P.
fn one_minus_q2_r() -> PElement {
    let mut out = s7::one();
    out.add_scaled(&galois::gen_r(), &-LaurentCoeff::q_pow(2));
    out
}

struct IdentityCase {
    label: String,
    lhs: PPElement,
    rhs: PPElement,
}

fn fill_tau(table: &TauTable, keys: impl IntoIterator<Item = TauKey>) -> Result<(), TauError> {
    for key in keys {
        table.tau(key.k, key.m, key.n)?;
    }
    Ok(())
}

/// The four (facili) identities at (k,m,n), k >= 0.
fn facili_cases(tt: &TauTable, k: i64, m: u32, n: u32) -> Result<Vec<IdentityCase>, TauError> {
    let mn = (m + n) as i64;
    let t = tt.tau(k, m, n)?;
    let tk = tt.tau(k + 1, m, n)?;
    let tn = tt.tau(k, m, n + 1)?;
    let lab = |i: usize| format!("facili #{} at ({},{},{})", i, k, m, n);
    Ok(vec![
        IdentityCase {
            label: lab(1),
            lhs: sum(vec![
                part(qp(-mn), Some(&zel(1, false)), &tk, None),
                part(qp(0), Some(&zel(2, false)), &tn, None),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(1, false))),
        },
        IdentityCase {
            label: lab(2),
            lhs: sum(vec![
                part(-qp(-k), Some(&zel(3, false)), &tn, None),
                part(qp(0), Some(&zel(4, false)), &tk, None),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(4, false))),
        },
        IdentityCase {
            label: lab(3),
            lhs: sum(vec![
                part(-qp(1), Some(&zel(1, true)), &tn, None),
                part(qp(-mn), Some(&zel(2, true)), &tk, None),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(2, true))),
        },
        IdentityCase {
            label: lab(4),
            lhs: sum(vec![
                part(qp(0), Some(&zel(3, true)), &tk, None),
                part(qp(-(1 + k)), Some(&zel(4, true)), &tn, None),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(3, true))),
        },
    ])
}

/// The four (facilineg) identities at (k,m,n), k <= 0.
fn facilineg_cases(tt: &TauTable, k: i64, m: u32, n: u32) -> Result<Vec<IdentityCase>, TauError> {
    let mn = (m + n) as i64;
    let t = tt.tau(k, m, n)?;
    let tk = tt.tau(k - 1, m, n)?;
    let tm = tt.tau(k, m + 1, n)?;
    let lab = |i: usize| format!("facilineg #{} at ({},{},{})", i, k, m, n);
    Ok(vec![
        IdentityCase {
            label: lab(1),
            lhs: sum(vec![
                part(qp(-mn), Some(&zel(3, false)), &tk, None),
                part(-qp(0), Some(&zel(4, false)), &tm, None),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(3, false))),
        },
        IdentityCase {
            label: lab(2),
            lhs: sum(vec![
                part(qp(k), Some(&zel(1, false)), &tm, None),
                part(qp(0), Some(&zel(2, false)), &tk, None),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(2, false))),
        },
        IdentityCase {
            label: lab(3),
            lhs: sum(vec![
                part(qp(1), Some(&zel(3, true)), &tm, None),
                part(qp(-mn), Some(&zel(4, true)), &tk, None),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(4, true))),
        },
        IdentityCase {
            label: lab(4),
            lhs: sum(vec![
                part(qp(0), Some(&zel(1, true)), &tk, None),
                part(-qp(-(1 - k)), Some(&zel(2, true)), &tm, None),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(1, true))),
        },
    ])
}

/// The four (difficili_bis) identities at (k,m,n), k >= 1.
fn difficili_bis_cases(
    tt: &TauTable,
    k: i64,
    m: u32,
    n: u32,
) -> Result<Vec<IdentityCase>, TauError> {
    let mn = (m + n) as i64;
    let t = tt.tau(k, m, n)?;
    let tk = tt.tau(k - 1, m, n)?;
    let tkm = tt.tau(k - 1, m + 1, n)?;
    let lab = |i: usize| format!("difficili_bis #{} at ({},{},{})", i, k, m, n);
    Ok(vec![
        IdentityCase {
            label: lab(1),
            lhs: sum(vec![
                part(qp(mn), Some(&zel(2, false)), &tk, None),
                part(qp(mn + 1), None, &tkm, Some(&zel(1, false))),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(2, false))),
        },
        IdentityCase {
            label: lab(2),
            lhs: sum(vec![
                part(qp(0), Some(&zel(3, false)), &tk, None),
                part(-qp(-k), None, &tkm, Some(&zel(4, false))),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(3, false))),
        },
        IdentityCase {
            label: lab(3),
            lhs: sum(vec![
                part(qp(mn), Some(&zel(1, true)), &tk, None),
                part(-qp(mn), None, &tkm, Some(&zel(2, true))),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(1, true))),
        },
        IdentityCase {
            label: lab(4),
            lhs: sum(vec![
                part(qp(0), Some(&zel(4, true)), &tk, None),
                part(qp(1 - k), None, &tkm, Some(&zel(3, true))),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(4, true))),
        },
    ])
}

/// The four (difficilineg_bis) identities at (k,m,n), k <= -1.
fn difficilineg_bis_cases(
    tt: &TauTable,
    k: i64,
    m: u32,
    n: u32,
) -> Result<Vec<IdentityCase>, TauError> {
    let mn = (m + n) as i64;
    let t = tt.tau(k, m, n)?;
    let tk = tt.tau(k + 1, m, n)?;
    let tkn = tt.tau(k + 1, m, n + 1)?;
    let lab = |i: usize| format!("difficilineg_bis #{} at ({},{},{})", i, k, m, n);
    Ok(vec![
        IdentityCase {
            label: lab(1),
            lhs: sum(vec![
                part(qp(mn), Some(&zel(4, false)), &tk, None),
                part(-qp(mn + 1), None, &tkn, Some(&zel(3, false))),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(4, false))),
        },
        IdentityCase {
            label: lab(2),
            lhs: sum(vec![
                part(qp(0), Some(&zel(1, false)), &tk, None),
                part(qp(k), None, &tkn, Some(&zel(2, false))),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(1, false))),
        },
        IdentityCase {
            label: lab(3),
            lhs: sum(vec![
                part(qp(mn), Some(&zel(3, true)), &tk, None),
                part(qp(mn), None, &tkn, Some(&zel(4, true))),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(3, true))),
        },
        IdentityCase {
            label: lab(4),
            lhs: sum(vec![
                part(qp(0), Some(&zel(2, true)), &tk, None),
                part(-qp(1 + k), None, &tkn, Some(&zel(1, true))),
            ]),
            rhs: part(qp(0), None, &t, Some(&zel(2, true))),
        },
    ])
}

fn run_identity_cases(
    table: &ActionTable,
    cases: Vec<IdentityCase>,
) -> (usize, Vec<Failure>) {
    let results: Vec<CaseResult> = cases
        .par_iter()
        .map(|c| {
            check_pc(
                c.label.clone(),
                &galois::chi(&c.lhs, table),
                &galois::chi(&c.rhs, table),
            )
        })
        .collect();
    collect_failures(results)
}

fn suite_s3(table: &ActionTable, max_degree: u32) -> Result<(usize, Vec<Failure>), TauError> {
    let tt = TauTable::new();
    let mut cases = Vec::new();
    // (facili): k >= 0, k+m+n <= N-1; (facilineg): k <= 0, |k|+m+n <= N-1
    for idx in cmod::c_indices_up_to(max_degree.saturating_sub(1)) {
        if idx.k >= 0 {
            cases.extend(facili_cases(&tt, idx.k, idx.m, idx.n)?);
        }
        if idx.k <= 0 {
            cases.extend(facilineg_cases(&tt, idx.k, idx.m, idx.n)?);
        }
    }
    // (difficili_bis): k >= 1, k+m+n <= N; (difficilineg_bis): k <= -1
    for idx in cmod::c_indices_up_to(max_degree) {
        if idx.k >= 1 {
            cases.extend(difficili_bis_cases(&tt, idx.k, idx.m, idx.n)?);
        }
        if idx.k <= -1 {
            cases.extend(difficilineg_bis_cases(&tt, idx.k, idx.m, idx.n)?);
        }
    }
    Ok(run_identity_cases(table, cases))
}

fn suite_s4(table: &ActionTable, max_degree: u32) -> Result<(usize, Vec<Failure>), TauError> {
    let tt = TauTable::new();
    let indices = cmod::c_indices_up_to(max_degree);
    fill_tau(&tt, indices.iter().map(|i| TauKey::new(i.k, i.m, i.n)))?;
    let results: Vec<CaseResult> = indices
        .par_iter()
        .map(|idx| {
            let tau = tt.tau(idx.k, idx.m, idx.n).expect("prefilled");
            let got = galois::chi(&tau, table);
            let want = PCElement::basis((PMonomial::unit(), *idx));
            check_pc(format!("chi(tau({},{},{}))", idx.k, idx.m, idx.n), &got, &want)
        })
        .collect();
    Ok(collect_failures(results))
}

/// The four (facili_bis) identities at (k,m,n), k >= 0.
fn facili_bis_cases(tt: &TauTable, k: i64, m: u32, n: u32) -> Result<Vec<IdentityCase>, TauError> {
    let mn = (m + n) as i64;
    let s = k + mn;
    let t = tt.tau(k, m, n)?;
    let lab = |i: usize| format!("facili_bis #{} at ({},{},{})", i, k, m, n);
    let a_s = galois::a_n(s);
    let as_neg = s7::star(&galois::a_n(-s));
    let b_s = galois::b_n(s);
    let bs_neg = s7::star(&galois::b_n(-s));
    let r = galois::gen_r();
    let omq2r = one_minus_q2_r();
    Ok(vec![
        IdentityCase {
            label: lab(1),
            lhs: part(qp(0), Some(&omq2r), &t, Some(&zel(1, false))),
            rhs: sum(vec![
                part(qp(2 - mn), Some(&b_s), &t, Some(&zel(3, true))),
                part(qp(-mn), Some(&a_s), &t, Some(&zel(4, false))),
            ]),
        },
        IdentityCase {
            label: lab(2),
            lhs: part(qp(0), Some(&r), &t, Some(&zel(4, false))),
            rhs: sum(vec![
                part(qp(2 - k), Some(&b_s), &t, Some(&zel(2, true))),
                part(qp(2 + mn), Some(&as_neg), &t, Some(&zel(1, false))),
            ]),
        },
        IdentityCase {
            label: lab(3),
            lhs: part(qp(0), Some(&omq2r), &t, Some(&zel(2, true))),
            rhs: sum(vec![
                part(qp(k), Some(&bs_neg), &t, Some(&zel(4, false))),
                part(-qp(3 + k), Some(&as_neg), &t, Some(&zel(3, true))),
            ]),
        },
        IdentityCase {
            label: lab(4),
            lhs: part(qp(4), Some(&r), &t, Some(&zel(3, true))),
            rhs: sum(vec![
                part(qp(2 + mn), Some(&bs_neg), &t, Some(&zel(1, false))),
                part(-qp(3 - k), Some(&a_s), &t, Some(&zel(2, true))),
            ]),
        },
    ])
}

/// The six (facili_tris) identities at (k,m,n), k >= 0.
fn facili_tris_cases(tt: &TauTable, k: i64, m: u32, n: u32) -> Result<Vec<IdentityCase>, TauError> {
    let mn = (m + n) as i64;
    let s1 = k + mn + 1;
    let t = tt.tau(k, m, n)?;
    let tk = tt.tau(k + 1, m, n)?;
    let lab = |i: usize| format!("facili_tris #{} at ({},{},{})", i, k, m, n);
    Ok(vec![
        IdentityCase {
            label: lab(1),
            lhs: part(qp(0), Some(&one_minus_q2_r()), &tk, None),
            rhs: sum(vec![
                part(qp(0), Some(&zel(4, true)), &t, Some(&zel(4, false))),
                part(qp(2), Some(&zel(3, false)), &t, Some(&zel(3, true))),
            ]),
        },
        IdentityCase {
            label: lab(2),
            lhs: part(qp(-mn), Some(&galois::b_n(s1)), &tk, None),
            rhs: sum(vec![
                part(qp(1), Some(&zel(3, false)), &t, Some(&zel(1, false))),
                part(qp(k), Some(&zel(2, false)), &t, Some(&zel(4, false))),
            ]),
        },
        IdentityCase {
            label: lab(3),
            lhs: part(qp(-mn), Some(&galois::a_n(s1)), &tk, None),
            rhs: sum(vec![
                part(qp(-1), Some(&zel(4, true)), &t, Some(&zel(1, false))),
                part(-qp(1 + k), Some(&zel(2, false)), &t, Some(&zel(3, true))),
            ]),
        },
        IdentityCase {
            label: lab(4),
            lhs: part(qp(0), Some(&s7::star(&galois::a_n(-s1))), &tk, None),
            rhs: sum(vec![
                part(qp(-1), Some(&zel(1, true)), &t, Some(&zel(4, false))),
                part(-qp(-k - 1), Some(&zel(3, false)), &t, Some(&zel(2, true))),
            ]),
        },
        IdentityCase {
            label: lab(5),
            lhs: part(qp(0), Some(&galois::gen_r()), &tk, None),
            rhs: sum(vec![
                part(qp(mn), Some(&zel(1, true)), &t, Some(&zel(1, false))),
                part(qp(mn), Some(&zel(2, false)), &t, Some(&zel(2, true))),
            ]),
        },
        IdentityCase {
            label: lab(6),
            lhs: part(qp(0), Some(&s7::star(&galois::b_n(-s1))), &tk, None),
            rhs: sum(vec![
                part(qp(1), Some(&zel(1, true)), &t, Some(&zel(3, true))),
                part(qp(-k - 2), Some(&zel(4, true)), &t, Some(&zel(2, true))),
            ]),
        },
    ])
}

/// The six (difficili_tris) identities at (k,m,n), k >= 1.
fn difficili_tris_cases(
    tt: &TauTable,
    k: i64,
    m: u32,
    n: u32,
) -> Result<Vec<IdentityCase>, TauError> {
    let mn = (m + n) as i64;
    let s = k + mn;
    let t = tt.tau(k, m, n)?;
    let tk = tt.tau(k - 1, m, n)?;
    let lab = |i: usize| format!("difficili_tris #{} at ({},{},{})", i, k, m, n);
    Ok(vec![
        IdentityCase {
            label: lab(1),
            lhs: part(qp(0), None, &t, Some(&one_minus_q2_r())),
            rhs: sum(vec![
                part(qp(0), Some(&zel(4, true)), &tk, Some(&zel(4, false))),
                part(qp(2), Some(&zel(3, false)), &tk, Some(&zel(3, true))),
            ]),
        },
        IdentityCase {
            label: lab(2),
            lhs: part(qp(0), None, &t, Some(&galois::gen_r())),
            rhs: sum(vec![
                part(qp(mn), Some(&zel(2, false)), &tk, Some(&zel(2, true))),
                part(qp(mn), Some(&zel(1, true)), &tk, Some(&zel(1, false))),
            ]),
        },
        IdentityCase {
            label: lab(3),
            lhs: part(qp(0), None, &t, Some(&galois::a_n(-s))),
            rhs: sum(vec![
                part(qp(-1), Some(&zel(4, true)), &tk, Some(&zel(1, false))),
                part(-qp(-k), Some(&zel(2, false)), &tk, Some(&zel(3, true))),
            ]),
        },
        IdentityCase {
            label: lab(4),
            lhs: part(qp(0), None, &t, Some(&galois::b_n(-s))),
            rhs: sum(vec![
                part(qp(1), Some(&zel(3, false)), &tk, Some(&zel(1, false))),
                part(qp(-k - 1), Some(&zel(2, false)), &tk, Some(&zel(4, false))),
            ]),
        },
        IdentityCase {
            label: lab(5),
            lhs: part(qp(0), None, &t, Some(&s7::star(&galois::a_n(s)))),
            rhs: sum(vec![
                part(qp(mn - 1), Some(&zel(1, true)), &tk, Some(&zel(4, false))),
                part(-qp(s), Some(&zel(3, false)), &tk, Some(&zel(2, true))),
            ]),
        },
        IdentityCase {
            label: lab(6),
            lhs: part(qp(0), None, &t, Some(&s7::star(&galois::b_n(s)))),
            rhs: sum(vec![
                part(qp(mn + 1), Some(&zel(1, true)), &tk, Some(&zel(3, true))),
                part(qp(s - 1), Some(&zel(4, true)), &tk, Some(&zel(2, true))),
            ]),
        },
    ])
}

fn suite_s5(table: &ActionTable, max_degree: u32) -> Result<(usize, Vec<Failure>), TauError> {
    let tt = TauTable::new();
    let mut cases = Vec::new();
    for idx in cmod::c_indices_up_to(max_degree) {
        if idx.k >= 0 {
            cases.extend(facili_bis_cases(&tt, idx.k, idx.m, idx.n)?);
        }
        if idx.k >= 1 {
            cases.extend(difficili_tris_cases(&tt, idx.k, idx.m, idx.n)?);
        }
    }
    for idx in cmod::c_indices_up_to(max_degree.saturating_sub(1)) {
        if idx.k >= 0 {
            cases.extend(facili_tris_cases(&tt, idx.k, idx.m, idx.n)?);
        }
    }
    Ok(run_identity_cases(table, cases))
}

// ---------------------------------------------------------------------------
// S6: 4-sphere presentation, coinvariance, B-balance
// ---------------------------------------------------------------------------

/// The nine relations presenting the coinvariant subalgebra: the four
/// R-commutations (two of them star conjugates of the others), the two
/// a-b commutations, and the three quadratic relations tying a a*, b b*
/// and R together.
pub fn sphere_relations() -> Vec<(String, PElement)> {
    let a = galois::gen_a();
    let ast = s7::star(&galois::gen_a());
    let b = galois::gen_b();
    let bst = s7::star(&galois::gen_b());
    let r = galois::gen_r();
    let mul = s7::mul;
    let mut rels = Vec::new();
    // R a = q^-2 a R
    rels.push((
        "Ra = q^-2 aR".to_string(),
        mul(&r, &a).sub(&mul(&a, &r).scale(&qp(-2))),
    ));
    // R b = q^2 b R
    rels.push((
        "Rb = q^2 bR".to_string(),
        mul(&r, &b).sub(&mul(&b, &r).scale(&qp(2))),
    ));
    // R a* = q^2 a* R (star conjugate of the first)
    rels.push((
        "Ra* = q^2 a*R".to_string(),
        mul(&r, &ast).sub(&mul(&ast, &r).scale(&qp(2))),
    ));
    // R b* = q^-2 b* R
    rels.push((
        "Rb* = q^-2 b*R".to_string(),
        mul(&r, &bst).sub(&mul(&bst, &r).scale(&qp(-2))),
    ));
    // a b = q^3 b a
    rels.push((
        "ab = q^3 ba".to_string(),
        mul(&a, &b).sub(&mul(&b, &a).scale(&qp(3))),
    ));
    // a b* = q^-1 b* a
    rels.push((
        "ab* = q^-1 b*a".to_string(),
        mul(&a, &bst).sub(&mul(&bst, &a).scale(&qp(-1))),
    ));
    // a a* + q^2 b b* = R (1 - q^2 R)
    rels.push(("aa* + q^2 bb* = R(1 - q^2 R)".to_string(), {
        let lhs = mul(&a, &ast).add(&mul(&b, &bst).scale(&qp(2)));
        lhs.sub(&mul(&r, &one_minus_q2_r()))
    }));
    // a a* = q^2 a* a + (1 - q^2) R^2
    rels.push(("aa* = q^2 a*a + (1 - q^2) R^2".to_string(), {
        let rhs = mul(&ast, &a)
            .scale(&qp(2))
            .add(&mul(&r, &r).scale(&one_minus_q2()));
        mul(&a, &ast).sub(&rhs)
    }));
    // b* b = q^4 b b* + (1 - q^2) R
    rels.push(("b*b = q^4 bb* + (1 - q^2) R".to_string(), {
        let rhs = mul(&b, &bst)
            .scale(&qp(4))
            .add(&r.scale(&one_minus_q2()));
        mul(&bst, &b).sub(&rhs)
    }));
    rels
}

const S6_BALANCE_DEGREE: usize = 2;

fn suite_s6(table: &ActionTable, _max_degree: u32) -> (usize, Vec<Failure>) {
    let mut results: Vec<CaseResult> = Vec::new();
    // nine presentation relations normalize to 0
    for (label, diff) in sphere_relations() {
        results.push(if diff.is_zero() {
            None
        } else {
            Some(Failure {
                case: format!("relation {}", label),
                lhs: s7::render_element(&diff),
                rhs: "0".to_string(),
            })
        });
    }
    // coinvariance of the five generators
    for (name, g) in galois::b_generators() {
        results.push(if galois::is_coinvariant(&g, table) {
            None
        } else {
            Some(Failure {
                case: format!("coinvariance of {}", name),
                lhs: galois::render_pc(&galois::delta_r(&g, table)),
                rhs: "p (x) r(1)".to_string(),
            })
        });
    }
    // B-balance of chi on all monomial pairs of degree <= 2
    let monos = s7::monomials_up_to(S6_BALANCE_DEGREE);
    let gens = galois::b_generators();
    let mut inputs = Vec::new();
    for (name, x) in &gens {
        for u in &monos {
            for v in &monos {
                inputs.push((name.clone(), x.clone(), *u, *v));
            }
        }
    }
    let balance: Vec<CaseResult> = inputs
        .par_iter()
        .map(|(name, x, u, v)| {
            let ux = s7::mul(&PElement::basis(*u), x);
            let xv = s7::mul(x, &PElement::basis(*v));
            let lhs: PPElement = ux
                .iter()
                .map(|(mm, c)| ((*mm, *v), c.clone()))
                .collect();
            let rhs: PPElement = xv
                .iter()
                .map(|(mm, c)| ((*u, *mm), c.clone()))
                .collect();
            check_pc(
                format!(
                    "B-balance of chi: x = {}, u = {}, v = {}",
                    name,
                    u.render(),
                    v.render()
                ),
                &galois::chi(&lhs, table),
                &galois::chi(&rhs, table),
            )
        })
        .collect();
    results.extend(balance);
    collect_failures(results)
}

// ---------------------------------------------------------------------------
// S7: coaction axioms
// ---------------------------------------------------------------------------

fn suite_s7(table: &ActionTable, max_degree: u32) -> (usize, Vec<Failure>) {
    let counit_monos = s7::monomials_up_to(max_degree as usize);
    let coassoc_monos = s7::monomials_up_to(max_degree.saturating_sub(1) as usize);
    let counit_results: Vec<CaseResult> = counit_monos
        .par_iter()
        .map(|w| {
            let d = galois::delta_r(&PElement::basis(*w), table);
            let mut collapsed = PElement::zero();
            for ((p, cidx), c) in d.iter() {
                collapsed.add_term(*p, c * &suq2::counit(&cidx.to_su2()));
            }
            let id = PElement::basis(*w);
            if collapsed == id {
                None
            } else {
                Some(Failure {
                    case: format!("counit law on {}", w.render()),
                    lhs: s7::render_element(&collapsed),
                    rhs: s7::render_element(&id),
                })
            }
        })
        .collect();
    let coassoc_results: Vec<CaseResult> = coassoc_monos
        .par_iter()
        .map(|w| {
            let d = galois::delta_r(&PElement::basis(*w), table);
            let mut lhs: LinComb<(PMonomial, CIndex, CIndex)> = LinComb::zero();
            let mut rhs = lhs.clone();
            for ((p, cidx), c) in d.iter() {
                for ((p2, c1), cc) in galois::delta_r(&PElement::basis(*p), table).iter() {
                    lhs.add_term((*p2, *c1, *cidx), c * cc);
                }
                for ((c1, c2), cc) in cmod::coproduct_c(cidx).iter() {
                    rhs.add_term((*p, *c1, *c2), c * cc);
                }
            }
            if lhs == rhs {
                None
            } else {
                Some(Failure {
                    case: format!("coassociativity on {}", w.render()),
                    lhs: format!("{} terms", lhs.num_terms()),
                    rhs: format!("{} terms", rhs.num_terms()),
                })
            }
        })
        .collect();
    let mut results = counit_results;
    results.extend(coassoc_results);
    collect_failures(results)
}

// ---------------------------------------------------------------------------
// S8: entwining rank at a rational specialization
// ---------------------------------------------------------------------------

fn s8_q0() -> BigRational {
    BigRational::new(3.into(), 2.into())
}

fn suite_s8(
    table: &ActionTable,
    max_degree: u32,
) -> (usize, Vec<Failure>, Vec<(String, String)>) {
    let q0 = s8_q0();
    let cs = cmod::c_indices_up_to(max_degree);
    let ps = s7::monomials_up_to(max_degree as usize);
    type Column = BTreeMap<(PMonomial, CIndex), BigRational>;
    // columns of psi restricted to span{c (x) p}, exact coordinates at q = q0
    let columns: Vec<(String, Column)> = cs
        .par_iter()
        .flat_map_iter(|cidx| {
            let q0 = q0.clone();
            ps.iter().map(move |p| {
                let image = galois::psi(
                    &CElement::basis(*cidx),
                    &PElement::basis(*p),
                    table,
                );
                let mut col = BTreeMap::new();
                for (key, c) in image.iter() {
                    let v = c.eval_at(&q0).expect("q0 is nonzero");
                    if !v.is_zero() {
                        col.insert(*key, v);
                    }
                }
                (format!("psi({} (x) {})", cidx.render(), p.render()), col)
            })
        })
        .collect();
    // exact Gaussian elimination: every column must contribute a pivot
    let mut pivots: BTreeMap<(PMonomial, CIndex), BTreeMap<(PMonomial, CIndex), BigRational>> =
        BTreeMap::new();
    let mut failures = Vec::new();
    let mut rank = 0usize;
    let cases = columns.len();
    for (label, mut col) in columns {
        while let Some(coord) = col.keys().next().copied() {
            let Some(pivot_row) = pivots.get(&coord) else {
                break;
            };
            let factor = col.get(&coord).unwrap().clone();
            for (k, v) in pivot_row {
                let entry = col.entry(*k).or_insert_with(BigRational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    col.remove(k);
                }
            }
        }
        match col.iter().next().map(|(k, v)| (*k, v.clone())) {
            None => failures.push(Failure {
                case: label,
                lhs: "column is linearly dependent".to_string(),
                rhs: "expected a fresh pivot".to_string(),
            }),
            Some((coord, lead)) => {
                let normalized: BTreeMap<_, _> = col
                    .iter()
                    .map(|(k, v)| (*k, v / &lead))
                    .collect();
                pivots.insert(coord, normalized);
                rank += 1;
            }
        }
    }
    let notes = vec![
        ("q0".to_string(), format!("{}", q0)),
        ("columns".to_string(), cases.to_string()),
        ("rank".to_string(), rank.to_string()),
    ];
    (cases, failures, notes)
}
