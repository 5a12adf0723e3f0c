//! The Galois-theoretic layer: the right module action of P on P (x) C, the
//! coaction, the canonical map chi on tensor representatives, the recursive
//! translation map tau with memoization, the 4-sphere coinvariant generators
//! and the entwining map psi.
//!
//! Equality in the balanced tensor product is decided operationally through
//! chi: representatives x, y of classes in P (x)_B P are identified exactly
//! when chi(x) = chi(y). The bijectivity of chi makes this faithful, and all
//! identity suites compare both sides in the image of chi.

use crate::cmod::{self, ActionTable, CElement, CIndex, GenSymbol};
use crate::coeff::LaurentCoeff;
use crate::lincomb::LinComb;
use crate::s7::{self, PElement, PMonomial, ZLetter};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

/// An exact element of P (x) C.
pub type PCElement = LinComb<(PMonomial, CIndex)>;

/// A representative of a class in P (x)_B P. Equality of classes is decided
/// through [`chi`]; see [`quotient_eq`].
pub type PPElement = LinComb<(PMonomial, PMonomial)>;

/// 1 (x) r(1), the unit of the module P (x) C.
pub fn unit_pc() -> PCElement {
    PCElement::basis((PMonomial::unit(), CIndex::unit()))
}

/// 1 (x)_B 1.
pub fn unit_pp() -> PPElement {
    PPElement::basis((PMonomial::unit(), PMonomial::unit()))
}

/// One letter of the right module action:
/// (u (x) x) <| z_i  = sum_j nf(u z_j)  (x) x . t_ji
/// (u (x) x) <| z_i* = sum_j nf(u z_j*) (x) x . t_ji*
pub fn triangle_letter(x: &PCElement, l: ZLetter, table: &ActionTable) -> PCElement {
    let mut out = PCElement::zero();
    for ((u, cidx), coeff) in x.iter() {
        for j in 1..=4u8 {
            let g = GenSymbol::new(j, l.index, l.starred);
            let cpart = cmod::act_index(table, cidx, g);
            if cpart.is_zero() {
                continue;
            }
            let ppart = s7::mul_monomial_letter(
                u,
                ZLetter {
                    index: j,
                    starred: l.starred,
                },
            );
            for (pm, pc) in ppart.iter() {
                for (ci, cc) in cpart.iter() {
                    out.add_term((*pm, *ci), &(coeff * pc) * cc);
                }
            }
        }
    }
    out
}

/// The action of a word, folded left to right.
pub fn triangle_word(x: &PCElement, word: &[ZLetter], table: &ActionTable) -> PCElement {
    let mut acc = x.clone();
    for &l in word {
        acc = triangle_letter(&acc, l, table);
    }
    acc
}

/// The action of an element of P, extended bilinearly over its normal-form
/// monomials (suite S2 checks that this is independent of representatives).
pub fn triangle(x: &PCElement, v: &PElement, table: &ActionTable) -> PCElement {
    let mut out = PCElement::zero();
    for (mono, c) in v.iter() {
        let letters: Vec<ZLetter> = mono.letters().iter().map(|&id| ZLetter::from_id(id)).collect();
        out.add_scaled(&triangle_word(x, &letters, table), c);
    }
    out
}

/// The right coaction of C on P: delta_r(p) = (1 (x) r(1)) <| p.
pub fn delta_r(p: &PElement, table: &ActionTable) -> PCElement {
    triangle(&unit_pc(), p, table)
}

/// The canonical map on representatives: chi(p' (x) p) = p' delta_r(p),
/// computed as (p' (x) r(1)) <| p using right module linearity. Terms are
/// grouped by their right leg so each distinct leg is folded once and
/// intermediate cancellations happen early.
pub fn chi(x: &PPElement, table: &ActionTable) -> PCElement {
    let mut by_right: BTreeMap<PMonomial, PCElement> = BTreeMap::new();
    for ((p1, p2), c) in x.iter() {
        by_right
            .entry(*p2)
            .or_default()
            .add_term((*p1, CIndex::unit()), c.clone());
    }
    let mut out = PCElement::zero();
    for (p2, start) in &by_right {
        let letters: Vec<ZLetter> = p2.letters().iter().map(|&id| ZLetter::from_id(id)).collect();
        out.add_assign(&triangle_word(start, &letters, table));
    }
    out
}

/// The entwining map: psi(c (x) p) = (1 (x) c) <| p.
pub fn psi(c: &CElement, p: &PElement, table: &ActionTable) -> PCElement {
    let start: PCElement = c
        .iter()
        .map(|(idx, cc)| ((PMonomial::unit(), *idx), cc.clone()))
        .collect();
    triangle(&start, p, table)
}

/// True when delta_r(p) = p (x) r(1).
pub fn is_coinvariant(p: &PElement, table: &ActionTable) -> bool {
    let expected: PCElement = p
        .iter()
        .map(|(m, c)| ((*m, CIndex::unit()), c.clone()))
        .collect();
    delta_r(p, table) == expected
}

/// Class equality in P (x)_B P, decided through chi.
pub fn quotient_eq(x: &PPElement, y: &PPElement, table: &ActionTable) -> bool {
    chi(x, table) == chi(y, table)
}

// ---------------------------------------------------------------------------
// Coinvariant generators of the 4-sphere subalgebra
// ---------------------------------------------------------------------------

fn mono(z: [u16; 4], zs: [u16; 4]) -> PMonomial {
    PMonomial { z, zs }
}

/// a_n = z1 z4* - q^n z2 z3*.
pub fn a_n(n: i64) -> PElement {
    let mut out = PElement::basis(mono([1, 0, 0, 0], [0, 0, 0, 1]));
    out.add_term(mono([0, 1, 0, 0], [0, 0, 1, 0]), -LaurentCoeff::q_pow(n));
    out
}

/// b_n = z1 z3 + q^{n-1} z2 z4.
pub fn b_n(n: i64) -> PElement {
    let mut out = PElement::basis(mono([1, 0, 1, 0], [0; 4]));
    out.add_term(mono([0, 1, 0, 1], [0; 4]), LaurentCoeff::q_pow(n - 1));
    out
}

/// a = a_0, the first coinvariant generator.
pub fn gen_a() -> PElement {
    a_n(0)
}

/// b = b_0.
pub fn gen_b() -> PElement {
    b_n(0)
}

/// R = z1 z1* + z2 z2*.
pub fn gen_r() -> PElement {
    let mut out = PElement::basis(mono([1, 0, 0, 0], [1, 0, 0, 0]));
    out.add_term(mono([0, 1, 0, 0], [0, 1, 0, 0]), LaurentCoeff::one());
    out
}

/// The five generators {a, a*, b, b*, R} of the coinvariant subalgebra.
pub fn b_generators() -> Vec<(String, PElement)> {
    vec![
        ("a".to_string(), gen_a()),
        ("a*".to_string(), s7::star(&gen_a())),
        ("b".to_string(), gen_b()),
        ("b*".to_string(), s7::star(&gen_b())),
        ("R".to_string(), gen_r()),
    ]
}

// ---------------------------------------------------------------------------
// The translation map tau
// ---------------------------------------------------------------------------

/// Index of a tau table entry.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TauKey {
    pub k: i64,
    pub m: u32,
    pub n: u32,
}

impl TauKey {
    pub fn new(k: i64, m: u32, n: u32) -> Self {
        TauKey { k, m, n }
    }

    pub fn level(&self) -> usize {
        self.k.unsigned_abs() as usize + self.m as usize + self.n as usize
    }

    pub fn c_index(&self) -> CIndex {
        CIndex::new(self.k, self.m, self.n)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TauError {
    /// |k| + m + n exceeds the configured degree cap.
    DegreeCapExceeded { key: TauKey, cap: usize },
    /// An entry failed the chi check (verification mode only).
    VerificationFailed { key: TauKey },
}

impl fmt::Display for TauError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauError::DegreeCapExceeded { key, cap } => write!(
                f,
                "tau({},{},{}) exceeds the degree cap {} (|k|+m+n = {})",
                key.k,
                key.m,
                key.n,
                cap,
                key.level()
            ),
            TauError::VerificationFailed { key } => write!(
                f,
                "tau({},{},{}) failed the chi verification check",
                key.k, key.m, key.n
            ),
        }
    }
}

impl std::error::Error for TauError {}

/// One sandwiching step of the recursion: sum of coeff * (z_l tau z_r).
fn sandwich(prev: &PPElement, parts: &[(LaurentCoeff, ZLetter, ZLetter)]) -> PPElement {
    let mut out = PPElement::zero();
    for ((p1, p2), c) in prev.iter() {
        for (coef, lft, rgt) in parts {
            let left = s7::mul_letter_monomial(*lft, p1);
            let right = s7::mul_monomial_letter(p2, *rgt);
            let scale = c * coef;
            for (lm, lc) in left.iter() {
                for (rm, rc) in right.iter() {
                    out.add_term((*lm, *rm), &(&scale * lc) * rc);
                }
            }
        }
    }
    out
}

fn qp(e: i64) -> LaurentCoeff {
    LaurentCoeff::q_pow(e)
}

/// tau_{k+1,m,n} from tau_{k,m,n}, valid for k >= 0.
fn step_k_up(prev: &PPElement, m: u32, n: u32) -> PPElement {
    let mn = (m + n) as i64;
    sandwich(
        prev,
        &[
            (qp(2 + mn), ZLetter::zs(1), ZLetter::z(1)),
            (qp(2 + mn), ZLetter::z(2), ZLetter::zs(2)),
            (qp(2), ZLetter::z(3), ZLetter::zs(3)),
            (qp(0), ZLetter::zs(4), ZLetter::z(4)),
        ],
    )
}

/// tau_{k-1,m,n} from tau_{k,m,n}, valid for k <= 0.
fn step_k_down(prev: &PPElement, m: u32, n: u32) -> PPElement {
    let mn = (m + n) as i64;
    sandwich(
        prev,
        &[
            (qp(4), ZLetter::z(1), ZLetter::zs(1)),
            (qp(2), ZLetter::zs(2), ZLetter::z(2)),
            (qp(mn), ZLetter::zs(3), ZLetter::z(3)),
            (qp(mn), ZLetter::z(4), ZLetter::zs(4)),
        ],
    )
}

/// tau_{k,m+1,n} from tau_{k,m,n}, any k.
fn step_m_up(prev: &PPElement, k: i64) -> PPElement {
    let e = (k.abs() - k) / 2;
    let f = (k.abs() + k) / 2;
    sandwich(
        prev,
        &[
            (qp(2 + e), ZLetter::zs(1), ZLetter::z(2)),
            (-qp(3 + e), ZLetter::z(2), ZLetter::zs(1)),
            (qp(1 + f), ZLetter::z(3), ZLetter::zs(4)),
            (-qp(f), ZLetter::zs(4), ZLetter::z(3)),
        ],
    )
}

/// tau_{k,m,n+1} from tau_{k,m,n}, any k.
fn step_n_up(prev: &PPElement, k: i64) -> PPElement {
    let e = (k.abs() - k) / 2;
    let f = (k.abs() + k) / 2;
    sandwich(
        prev,
        &[
            (-qp(3 + e), ZLetter::z(1), ZLetter::zs(2)),
            (qp(2 + e), ZLetter::zs(2), ZLetter::z(1)),
            (-qp(f), ZLetter::zs(3), ZLetter::z(4)),
            (qp(1 + f), ZLetter::z(4), ZLetter::zs(3)),
        ],
    )
}

/// Persistent memo table for tau along the canonical recursion path: from
/// (0,0,0) move k toward its target, then raise m, then raise n. Entries are
/// immutable once computed; concurrent workers may race to insert but always
/// insert the same value.
pub struct TauTable {
    entries: RwLock<BTreeMap<TauKey, Arc<PPElement>>>,
    degree_cap: usize,
    verifier: Option<ActionTable>,
}

impl Default for TauTable {
    fn default() -> Self {
        Self::new()
    }
}

impl TauTable {
    pub fn new() -> Self {
        Self::with_degree_cap(s7::DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap(cap: usize) -> Self {
        TauTable {
            entries: RwLock::new(BTreeMap::new()),
            degree_cap: cap,
            verifier: None,
        }
    }

    /// Turn on the chi check: every entry inserted (computed or loaded) must
    /// satisfy chi(entry) = 1 (x) r[k,m,n].
    pub fn with_verifier(mut self, table: ActionTable) -> Self {
        self.verifier = Some(table);
        self
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &TauKey) -> Option<Arc<PPElement>> {
        self.entries.read().unwrap().get(key).cloned()
    }

    fn check(&self, key: TauKey, value: &PPElement) -> Result<(), TauError> {
        if let Some(table) = &self.verifier {
            let expected = PCElement::basis((PMonomial::unit(), key.c_index()));
            if chi(value, table) != expected {
                return Err(TauError::VerificationFailed { key });
            }
        }
        Ok(())
    }

    fn store(&self, key: TauKey, value: PPElement) -> Result<Arc<PPElement>, TauError> {
        self.check(key, &value)?;
        let mut entries = self.entries.write().unwrap();
        Ok(entries.entry(key).or_insert_with(|| Arc::new(value)).clone())
    }

    /// Insert an externally produced entry (e.g. loaded from a cache file).
    pub fn insert_entry(&self, key: TauKey, value: PPElement) -> Result<(), TauError> {
        if key.level() > self.degree_cap {
            return Err(TauError::DegreeCapExceeded {
                key,
                cap: self.degree_cap,
            });
        }
        self.store(key, value).map(|_| ())
    }

    /// The translation map on the basis element r[k,m,n].
    pub fn tau(&self, k: i64, m: u32, n: u32) -> Result<Arc<PPElement>, TauError> {
        let key = TauKey::new(k, m, n);
        if key.level() > self.degree_cap {
            return Err(TauError::DegreeCapExceeded {
                key,
                cap: self.degree_cap,
            });
        }
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        let value = if n > 0 {
            step_n_up(&*self.tau(k, m, n - 1)?, k)
        } else if m > 0 {
            step_m_up(&*self.tau(k, m - 1, 0)?, k)
        } else if k > 0 {
            step_k_up(&*self.tau(k - 1, 0, 0)?, 0, 0)
        } else if k < 0 {
            step_k_down(&*self.tau(k + 1, 0, 0)?, 0, 0)
        } else {
            unit_pp()
        };
        self.store(key, value)
    }

    /// Snapshot of all entries in key order.
    pub fn snapshot(&self) -> Vec<(TauKey, Arc<PPElement>)> {
        self.entries
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }
}

/// tau computed along the alternate path (raise n before m), without touching
/// any shared table. Used by the path-independence property check.
pub fn tau_alternate_path(k: i64, m: u32, n: u32, cap: usize) -> Result<PPElement, TauError> {
    let key = TauKey::new(k, m, n);
    if key.level() > cap {
        return Err(TauError::DegreeCapExceeded { key, cap });
    }
    let value = if m > 0 {
        step_m_up(&tau_alternate_path(k, m - 1, n, cap)?, k)
    } else if n > 0 {
        step_n_up(&tau_alternate_path(k, 0, n - 1, cap)?, k)
    } else if k > 0 {
        step_k_up(&tau_alternate_path(k - 1, 0, 0, cap)?, 0, 0)
    } else if k < 0 {
        step_k_down(&tau_alternate_path(k + 1, 0, 0, cap)?, 0, 0)
    } else {
        unit_pp()
    };
    Ok(value)
}

pub fn render_pc(x: &PCElement) -> String {
    x.render(|(p, c)| format!("{} ⊗ {}", p.render(), c.render()))
}

pub fn render_pp(x: &PPElement) -> String {
    x.render(|(p1, p2)| format!("{} ⊗ {}", p1.render(), p2.render()))
}
