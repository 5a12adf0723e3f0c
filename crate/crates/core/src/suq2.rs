//! Normal-form engine and coalgebra structure for A(SU_q(2)): the 2x2
//! quantum-matrix block with quantum determinant 1.
//!
//! Generators a, b, c, d satisfy ab = qba, ac = qca, bc = cb, bd = qdb,
//! cd = qdc, ad - da = (q - q^-1)bc and ad = 1 + qbc. The normal-form basis is
//! `a^k b^m c^n` for k >= 0 and `b^m c^n d^l` for l > 0: a and d never occur
//! together because the determinant relation eliminates adjacent pairs, and
//! the block determinant is central in the block, which makes the two-sided
//! elimination valid.

use crate::coeff::{q_minus_qinv, LaurentCoeff};
use crate::lincomb::LinComb;
use crate::rewrite::{reduce, RewriteRules, RuleMatch, Strategy, Word};

/// The four generators, ordered a < b < c < d (the normal order).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
#[repr(u8)]
pub enum Su2Letter {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

pub const SU2_LETTERS: [Su2Letter; 4] = [Su2Letter::A, Su2Letter::B, Su2Letter::C, Su2Letter::D];

impl Su2Letter {
    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Su2Letter {
        SU2_LETTERS[id as usize]
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Su2Letter::A => "a",
            Su2Letter::B => "b",
            Su2Letter::C => "c",
            Su2Letter::D => "d",
        }
    }
}

/// A basis monomial: `a^k b^m c^n` when `k >= 0`, `b^m c^n d^{-k}` when
/// `k < 0`. The sign of `k` selects the a-side or d-side of the basis.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Su2Monomial {
    pub k: i64,
    pub m: u32,
    pub n: u32,
}

impl Su2Monomial {
    pub fn new(k: i64, m: u32, n: u32) -> Self {
        Su2Monomial { k, m, n }
    }

    pub fn unit() -> Self {
        Su2Monomial::new(0, 0, 0)
    }

    pub fn is_unit(&self) -> bool {
        *self == Su2Monomial::unit()
    }

    pub fn degree(&self) -> usize {
        self.k.unsigned_abs() as usize + self.m as usize + self.n as usize
    }

    /// The defining word of the basis monomial.
    pub fn letters(&self) -> Word {
        let mut w = Word::with_capacity(self.degree());
        if self.k >= 0 {
            w.extend(std::iter::repeat(Su2Letter::A.id()).take(self.k as usize));
        }
        w.extend(std::iter::repeat(Su2Letter::B.id()).take(self.m as usize));
        w.extend(std::iter::repeat(Su2Letter::C.id()).take(self.n as usize));
        if self.k < 0 {
            w.extend(std::iter::repeat(Su2Letter::D.id()).take((-self.k) as usize));
        }
        w
    }

    pub fn render(&self) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut push = |sym: &str, e: u64| {
            if e == 1 {
                parts.push(sym.to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", sym, e));
            }
        };
        if self.k > 0 {
            push("a", self.k as u64);
        }
        push("b", self.m as u64);
        push("c", self.n as u64);
        if self.k < 0 {
            push("d", (-self.k) as u64);
        }
        parts.join(" ")
    }
}

/// An element of A(SU_q(2)) in the normal-form basis.
pub type Su2Element = LinComb<Su2Monomial>;

/// A tensor in A(SU_q(2)) x A(SU_q(2)), used by the coproduct.
pub type Su2Tensor = LinComb<(Su2Monomial, Su2Monomial)>;

struct Su2Rules;

impl RewriteRules for Su2Rules {
    fn match_at(&self, word: &[u8], pos: usize) -> Option<RuleMatch> {
        const A: u8 = 0;
        const B: u8 = 1;
        const C: u8 = 2;
        const D: u8 = 3;
        let x = *word.get(pos)?;
        let y = *word.get(pos + 1)?;
        let q_inv = LaurentCoeff::q_pow(-1);
        match (x, y) {
            // plain q-swaps toward the order a < b < c < d
            (B, A) | (C, A) | (D, B) | (D, C) => Some(RuleMatch {
                len: 2,
                terms: vec![(q_inv, vec![y, x])],
            }),
            (C, B) => Some(RuleMatch {
                len: 2,
                terms: vec![(LaurentCoeff::one(), vec![B, C])],
            }),
            // da = ad - (q - q^-1) bc
            (D, A) => Some(RuleMatch {
                len: 2,
                terms: vec![
                    (LaurentCoeff::one(), vec![A, D]),
                    (-q_minus_qinv(), vec![B, C]),
                ],
            }),
            // a w d = q^{|w|} w (1 + q bc) for any segment w of b's and c's,
            // using the determinant relation ad = 1 + qbc once the pair meets
            (A, _) => {
                let mut j = pos + 1;
                while j < word.len() && (word[j] == B || word[j] == C) {
                    j += 1;
                }
                if j < word.len() && word[j] == D {
                    let seg: Word = word[pos + 1..j].to_vec();
                    let e = seg.len() as i64;
                    let mut with_bc = seg.clone();
                    with_bc.extend_from_slice(&[B, C]);
                    Some(RuleMatch {
                        len: j - pos + 1,
                        terms: vec![
                            (LaurentCoeff::q_pow(e), seg),
                            (LaurentCoeff::q_pow(e + 1), with_bc),
                        ],
                    })
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

fn monomial_from_normal_word(word: &[u8]) -> Su2Monomial {
    let mut counts = [0u32; 4];
    for &l in word {
        counts[l as usize] += 1;
    }
    debug_assert!(word.windows(2).all(|w| w[0] <= w[1]), "word not sorted");
    debug_assert!(counts[0] == 0 || counts[3] == 0, "a and d coexist");
    let k = counts[0] as i64 - counts[3] as i64;
    Su2Monomial::new(k, counts[1], counts[2])
}

fn element_from_words(words: LinComb<Word>) -> Su2Element {
    words
        .iter()
        .map(|(w, c)| (monomial_from_normal_word(w), c.clone()))
        .collect()
}

/// Normal form of an arbitrary word, with an explicit reduction strategy.
pub fn nf_word_with_strategy(word: &[Su2Letter], strategy: Strategy) -> Su2Element {
    let w: Word = word.iter().map(|l| l.id()).collect();
    element_from_words(reduce(&Su2Rules, [(LaurentCoeff::one(), w)], strategy))
}

/// Normal form of an arbitrary word in the generators.
pub fn nf_word(word: &[Su2Letter]) -> Su2Element {
    nf_word_with_strategy(word, Strategy::LeftmostInnermost)
}

fn nf_raw(word: Word) -> Su2Element {
    element_from_words(reduce(
        &Su2Rules,
        [(LaurentCoeff::one(), word)],
        Strategy::LeftmostInnermost,
    ))
}

thread_local! {
    static MUL_RIGHT_CACHE: std::cell::RefCell<std::collections::HashMap<(Su2Monomial, u8), Su2Element>> =
        std::cell::RefCell::new(std::collections::HashMap::new());
}

/// Right-multiply a basis monomial by a single generator. Memoized per
/// thread: the module action of the block generators reduces to this.
pub fn mul_monomial_letter(m: &Su2Monomial, l: Su2Letter) -> Su2Element {
    MUL_RIGHT_CACHE.with(|cache| {
        if let Some(hit) = cache.borrow().get(&(*m, l.id())) {
            return hit.clone();
        }
        let mut w = m.letters();
        w.push(l.id());
        let value = nf_raw(w);
        cache.borrow_mut().insert((*m, l.id()), value.clone());
        value
    })
}

/// The product of two elements, in normal form.
pub fn mul(x: &Su2Element, y: &Su2Element) -> Su2Element {
    let mut out = Su2Element::zero();
    for (mx, cx) in x.iter() {
        for (my, cy) in y.iter() {
            let mut w = mx.letters();
            w.extend_from_slice(&my.letters());
            out.add_scaled(&nf_raw(w), &(cx * cy));
        }
    }
    out
}

pub fn one() -> Su2Element {
    Su2Element::basis(Su2Monomial::unit())
}

fn letter_coproduct(l: Su2Letter) -> [(Su2Letter, Su2Letter); 2] {
    use Su2Letter::*;
    match l {
        A => [(A, A), (B, C)],
        B => [(A, B), (B, D)],
        C => [(C, A), (D, C)],
        D => [(C, B), (D, D)],
    }
}

/// The coproduct of a basis monomial, with both legs in normal form.
///
/// Delta(a) = a(x)a + b(x)c, Delta(b) = a(x)b + b(x)d, Delta(c) = c(x)a + d(x)c,
/// Delta(d) = c(x)b + d(x)d, extended multiplicatively.
pub fn coproduct(m: &Su2Monomial) -> Su2Tensor {
    let mut acc = Su2Tensor::basis((Su2Monomial::unit(), Su2Monomial::unit()));
    for &id in &m.letters() {
        let l = Su2Letter::from_id(id);
        let mut next = Su2Tensor::zero();
        for ((u, v), c) in acc.iter() {
            for (l1, l2) in letter_coproduct(l) {
                let left = mul_monomial_letter(u, l1);
                let right = mul_monomial_letter(v, l2);
                for (u2, cu) in left.iter() {
                    for (v2, cv) in right.iter() {
                        next.add_term((*u2, *v2), &(c * cu) * cv);
                    }
                }
            }
        }
        acc = next;
    }
    acc
}

/// The counit: 1 on `a^k` and `d^l` monomials, 0 as soon as b or c occurs.
pub fn counit(m: &Su2Monomial) -> LaurentCoeff {
    if m.m == 0 && m.n == 0 {
        LaurentCoeff::one()
    } else {
        LaurentCoeff::zero()
    }
}

pub fn render_element(x: &Su2Element) -> String {
    x.render(|m| m.render())
}
