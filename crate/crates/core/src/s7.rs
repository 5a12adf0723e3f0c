//! Normal-form engine for the star-algebra A(S^7_q) = P, generated by
//! z1..z4 and their stars.
//!
//! Relations: z_i z_j = q z_j z_i (i < j), z_j* z_i = q z_i z_j* (i != j),
//! z_j* z_i* = q z_i* z_j* (i < j), z_k* z_k = z_k z_k* + (1-q^2) sum_{j<k}
//! z_j z_j*, and sum_k z_k z_k* = 1. The basis consists of sorted monomials
//! z1^a1..z4^a4 z1*^b1..z4*^b4 with a4*b4 = 0: the unit-sphere relation is
//! directed so that it eliminates the highest generator pair z4 z4*, leaving
//! low-index monomials (where the 4-sphere generators live) untouched.

use crate::coeff::{one_minus_q2, LaurentCoeff};
use crate::lincomb::LinComb;
use crate::rewrite::{reduce, RewriteRules, RuleMatch, Strategy, Word};

/// Number of letters after which computations are refused. Intermediate
/// degrees never exceed the input degree (no rule increases word length), so
/// capping inputs bounds everything.
pub const DEFAULT_DEGREE_CAP: usize = 24;

/// One of the eight generators `z_i` / `z_i*`, with `index` in 1..=4.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ZLetter {
    pub index: u8,
    pub starred: bool,
}

impl ZLetter {
    pub fn z(index: u8) -> Self {
        assert!((1..=4).contains(&index));
        ZLetter {
            index,
            starred: false,
        }
    }

    pub fn zs(index: u8) -> Self {
        assert!((1..=4).contains(&index));
        ZLetter {
            index,
            starred: true,
        }
    }

    /// Generator ids: 0..=3 are z1..z4, 4..=7 are z1*..z4*.
    pub fn id(self) -> u8 {
        (self.index - 1) + if self.starred { 4 } else { 0 }
    }

    pub fn from_id(id: u8) -> Self {
        assert!(id < 8);
        ZLetter {
            index: id % 4 + 1,
            starred: id >= 4,
        }
    }

    pub fn star(self) -> Self {
        ZLetter {
            index: self.index,
            starred: !self.starred,
        }
    }

    pub fn symbol(self) -> String {
        if self.starred {
            format!("z{}*", self.index)
        } else {
            format!("z{}", self.index)
        }
    }
}

pub fn all_letters() -> [ZLetter; 8] {
    let mut out = [ZLetter::z(1); 8];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = ZLetter::from_id(i as u8);
    }
    out
}

/// A basis monomial of P: exponents of z1..z4 and z1*..z4*, with z4 and z4*
/// never both present.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PMonomial {
    pub z: [u16; 4],
    pub zs: [u16; 4],
}

impl PMonomial {
    pub fn unit() -> Self {
        PMonomial::default()
    }

    pub fn is_unit(&self) -> bool {
        *self == PMonomial::unit()
    }

    pub fn degree(&self) -> usize {
        self.z.iter().chain(self.zs.iter()).map(|&e| e as usize).sum()
    }

    pub fn letters(&self) -> Word {
        let mut w = Word::with_capacity(self.degree());
        for i in 0..4 {
            w.extend(std::iter::repeat(i as u8).take(self.z[i] as usize));
        }
        for i in 0..4 {
            w.extend(std::iter::repeat(4 + i as u8).take(self.zs[i] as usize));
        }
        w
    }

    pub fn render(&self) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for i in 0..4 {
            match self.z[i] {
                0 => {}
                1 => parts.push(format!("z{}", i + 1)),
                e => parts.push(format!("z{}^{}", i + 1, e)),
            }
        }
        for i in 0..4 {
            match self.zs[i] {
                0 => {}
                1 => parts.push(format!("z{}*", i + 1)),
                e => parts.push(format!("z{}*^{}", i + 1, e)),
            }
        }
        parts.join(" ")
    }
}

/// An element of P in the normal-form basis.
pub type PElement = LinComb<PMonomial>;

struct S7Rules;

impl RewriteRules for S7Rules {
    fn match_at(&self, word: &[u8], pos: usize) -> Option<RuleMatch> {
        let x = *word.get(pos)?;
        let y = *word.get(pos + 1)?;
        let (xi, xs) = (x % 4, x >= 4);
        let (yi, ys) = (y % 4, y >= 4);
        match (xs, ys) {
            // z_j z_i -> q^-1 z_i z_j for i < j
            (false, false) => {
                if yi < xi {
                    Some(RuleMatch {
                        len: 2,
                        terms: vec![(LaurentCoeff::q_pow(-1), vec![y, x])],
                    })
                } else {
                    None
                }
            }
            // z4 (lower stars) z4* -> q^-|w| w (1 - sum_{j<4} z_j z_j*)
            (false, true) => {
                if xi == 3 {
                    let mut j = pos + 1;
                    while j < word.len() && (4..7).contains(&word[j]) {
                        j += 1;
                    }
                    if j < word.len() && word[j] == 7 {
                        let seg: Word = word[pos + 1..j].to_vec();
                        let scale = LaurentCoeff::q_pow(-(seg.len() as i64));
                        let mut terms = vec![(scale.clone(), seg.clone())];
                        for l in 0..3u8 {
                            let mut t = seg.clone();
                            t.extend_from_slice(&[l, l + 4]);
                            terms.push((-&scale, t));
                        }
                        return Some(RuleMatch {
                            len: j - pos + 1,
                            terms,
                        });
                    }
                }
                None
            }
            // z_j* z_i: either the q-swap (i != j) or the reordering relation
            (true, false) => {
                if xi != yi {
                    Some(RuleMatch {
                        len: 2,
                        terms: vec![(LaurentCoeff::q(), vec![y, x])],
                    })
                } else {
                    // z_k* z_k = z_k z_k* + (1-q^2) sum_{j<k} z_j z_j*
                    let mut terms = vec![(LaurentCoeff::one(), vec![y, x])];
                    for l in 0..xi {
                        terms.push((one_minus_q2(), vec![l, l + 4]));
                    }
                    Some(RuleMatch { len: 2, terms })
                }
            }
            // z_j* z_i* -> q z_i* z_j* for i < j
            (true, true) => {
                if yi < xi {
                    Some(RuleMatch {
                        len: 2,
                        terms: vec![(LaurentCoeff::q(), vec![y, x])],
                    })
                } else {
                    None
                }
            }
        }
    }
}

fn monomial_from_normal_word(word: &[u8]) -> PMonomial {
    let mut m = PMonomial::unit();
    for &l in word {
        if l < 4 {
            m.z[l as usize] += 1;
        } else {
            m.zs[(l - 4) as usize] += 1;
        }
    }
    debug_assert!(word.windows(2).all(|w| w[0] <= w[1]), "word not sorted");
    debug_assert!(m.z[3] == 0 || m.zs[3] == 0, "z4 and z4* coexist");
    m
}

fn element_from_words(words: LinComb<Word>) -> PElement {
    words
        .iter()
        .map(|(w, c)| (monomial_from_normal_word(w), c.clone()))
        .collect()
}

/// Normal form of an arbitrary word, with an explicit reduction strategy.
pub fn nf_word_with_strategy(word: &[ZLetter], strategy: Strategy) -> PElement {
    let w: Word = word.iter().map(|l| l.id()).collect();
    element_from_words(reduce(&S7Rules, [(LaurentCoeff::one(), w)], strategy))
}

/// Normal form of an arbitrary word in the eight generators.
pub fn nf_word(word: &[ZLetter]) -> PElement {
    nf_word_with_strategy(word, Strategy::LeftmostInnermost)
}

fn nf_raw(word: Word) -> PElement {
    element_from_words(reduce(
        &S7Rules,
        [(LaurentCoeff::one(), word)],
        Strategy::LeftmostInnermost,
    ))
}

thread_local! {
    static MUL_RIGHT_CACHE: std::cell::RefCell<std::collections::HashMap<(PMonomial, u8), PElement>> =
        std::cell::RefCell::new(std::collections::HashMap::new());
    static MUL_LEFT_CACHE: std::cell::RefCell<std::collections::HashMap<(u8, PMonomial), PElement>> =
        std::cell::RefCell::new(std::collections::HashMap::new());
}

/// Right-multiply a basis monomial by one generator. Results are memoized per
/// thread: these products recur constantly in the module action and the
/// translation-map recursion.
pub fn mul_monomial_letter(m: &PMonomial, l: ZLetter) -> PElement {
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

/// Left-multiply a basis monomial by one generator.
pub fn mul_letter_monomial(l: ZLetter, m: &PMonomial) -> PElement {
    MUL_LEFT_CACHE.with(|cache| {
        if let Some(hit) = cache.borrow().get(&(l.id(), *m)) {
            return hit.clone();
        }
        let mut w = Word::with_capacity(m.degree() + 1);
        w.push(l.id());
        w.extend_from_slice(&m.letters());
        let value = nf_raw(w);
        cache.borrow_mut().insert((l.id(), *m), value.clone());
        value
    })
}

thread_local! {
    static MUL_MONO_CACHE: std::cell::RefCell<std::collections::HashMap<(PMonomial, PMonomial), PElement>> =
        std::cell::RefCell::new(std::collections::HashMap::new());
}

/// The product of two basis monomials, memoized per thread.
pub fn mul_monomials(mx: &PMonomial, my: &PMonomial) -> PElement {
    MUL_MONO_CACHE.with(|cache| {
        if let Some(hit) = cache.borrow().get(&(*mx, *my)) {
            return hit.clone();
        }
        let mut w = mx.letters();
        w.extend_from_slice(&my.letters());
        let value = nf_raw(w);
        cache.borrow_mut().insert((*mx, *my), value.clone());
        value
    })
}

/// The product of two elements, in normal form.
pub fn mul(x: &PElement, y: &PElement) -> PElement {
    let mut out = PElement::zero();
    for (mx, cx) in x.iter() {
        for (my, cy) in y.iter() {
            out.add_scaled(&mul_monomials(mx, my), &(cx * cy));
        }
    }
    out
}

pub fn one() -> PElement {
    PElement::basis(PMonomial::unit())
}

/// The star involution: reverse each word, star each letter, renormalize.
/// Coefficients are untouched since they are real Laurent polynomials.
pub fn star(x: &PElement) -> PElement {
    let mut out = PElement::zero();
    for (m, c) in x.iter() {
        let w: Word = m
            .letters()
            .iter()
            .rev()
            .map(|&id| ZLetter::from_id(id).star().id())
            .collect();
        out.add_scaled(&nf_raw(w), c);
    }
    out
}

/// Maximum total letter count over the monomials of `x`; `None` for zero.
pub fn degree(x: &PElement) -> Option<usize> {
    x.keys().map(|m| m.degree()).max()
}

/// A linear combination of letter words, used to state relations.
pub type WordCombination = Vec<(LaurentCoeff, Vec<ZLetter>)>;

/// The five defining relation families of the sphere algebra, written as
/// linear combinations of words that must normalize to zero. Each entry is
/// `(label, sum of coefficient * word)`.
pub fn defining_relations() -> Vec<(String, WordCombination)> {
    let mut rels = Vec::new();
    let q = LaurentCoeff::q();
    // z_i z_j - q z_j z_i, i < j
    for i in 1..=4u8 {
        for j in (i + 1)..=4 {
            rels.push((
                format!("z{} z{} = q z{} z{}", i, j, j, i),
                vec![
                    (LaurentCoeff::one(), vec![ZLetter::z(i), ZLetter::z(j)]),
                    (-&q, vec![ZLetter::z(j), ZLetter::z(i)]),
                ],
            ));
        }
    }
    // z_j* z_i - q z_i z_j*, i != j
    for j in 1..=4u8 {
        for i in 1..=4u8 {
            if i != j {
                rels.push((
                    format!("z{}* z{} = q z{} z{}*", j, i, i, j),
                    vec![
                        (LaurentCoeff::one(), vec![ZLetter::zs(j), ZLetter::z(i)]),
                        (-&q, vec![ZLetter::z(i), ZLetter::zs(j)]),
                    ],
                ));
            }
        }
    }
    // z_j* z_i* - q z_i* z_j*, i < j
    for i in 1..=4u8 {
        for j in (i + 1)..=4 {
            rels.push((
                format!("z{}* z{}* = q z{}* z{}*", j, i, i, j),
                vec![
                    (LaurentCoeff::one(), vec![ZLetter::zs(j), ZLetter::zs(i)]),
                    (-&q, vec![ZLetter::zs(i), ZLetter::zs(j)]),
                ],
            ));
        }
    }
    // z_k* z_k - z_k z_k* - (1-q^2) sum_{j<k} z_j z_j*
    for k in 1..=4u8 {
        let mut comb = vec![
            (LaurentCoeff::one(), vec![ZLetter::zs(k), ZLetter::z(k)]),
            (-LaurentCoeff::one(), vec![ZLetter::z(k), ZLetter::zs(k)]),
        ];
        for j in 1..k {
            comb.push((-one_minus_q2(), vec![ZLetter::z(j), ZLetter::zs(j)]));
        }
        rels.push((format!("z{}* z{} reordering", k, k), comb));
    }
    // sum_k z_k z_k* - 1
    let mut sphere = vec![(-LaurentCoeff::one(), vec![])];
    for k in 1..=4u8 {
        sphere.push((LaurentCoeff::one(), vec![ZLetter::z(k), ZLetter::zs(k)]));
    }
    rels.push(("sum z_k z_k* = 1".to_string(), sphere));
    rels
}

/// All basis monomials of degree at most `max_degree`, in canonical order.
pub fn monomials_up_to(max_degree: usize) -> Vec<PMonomial> {
    let mut out = Vec::new();
    let mut exps = [0u16; 8];
    fn rec(slot: usize, remaining: usize, exps: &mut [u16; 8], out: &mut Vec<PMonomial>) {
        if slot == 8 {
            let m = PMonomial {
                z: [exps[0], exps[1], exps[2], exps[3]],
                zs: [exps[4], exps[5], exps[6], exps[7]],
            };
            if m.z[3] == 0 || m.zs[3] == 0 {
                out.push(m);
            }
            return;
        }
        for e in 0..=remaining {
            exps[slot] = e as u16;
            rec(slot + 1, remaining - e, exps, out);
        }
        exps[slot] = 0;
    }
    rec(0, max_degree, &mut exps, &mut out);
    out.sort();
    out
}

pub fn render_element(x: &PElement) -> String {
    x.render(|m| m.render())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: u8) -> ZLetter {
        ZLetter::z(i)
    }
    fn zs(i: u8) -> ZLetter {
        ZLetter::zs(i)
    }

    fn mono(z: [u16; 4], zst: [u16; 4]) -> PMonomial {
        PMonomial { z, zs: zst }
    }

    #[test]
    fn nf_swap() {
        // z2 z1 = q^-1 z1 z2
        let got = nf_word(&[z(2), z(1)]);
        let want = PElement::term(mono([1, 1, 0, 0], [0; 4]), LaurentCoeff::q_pow(-1));
        assert_eq!(got, want);
    }

    #[test]
    fn nf_star_one() {
        // z1* z1 = z1 z1* (empty correction sum)
        let got = nf_word(&[zs(1), z(1)]);
        assert_eq!(got, PElement::basis(mono([1, 0, 0, 0], [1, 0, 0, 0])));
    }

    #[test]
    fn nf_sphere_elimination() {
        // z4 z4* = 1 - z1 z1* - z2 z2* - z3 z3*
        let got = nf_word(&[z(4), zs(4)]);
        let mut want = one();
        for i in 0..3usize {
            let mut zl = [0u16; 4];
            let mut sl = [0u16; 4];
            zl[i] = 1;
            sl[i] = 1;
            want.add_term(mono(zl, sl), -LaurentCoeff::one());
        }
        assert_eq!(got, want);
    }

    #[test]
    fn nf_star4_then_eliminate() {
        // z4* z4 = 1 - q^2 (z1 z1* + z2 z2* + z3 z3*)
        let got = nf_word(&[zs(4), z(4)]);
        let mut want = one();
        for i in 0..3usize {
            let mut zl = [0u16; 4];
            let mut sl = [0u16; 4];
            zl[i] = 1;
            sl[i] = 1;
            want.add_term(mono(zl, sl), -LaurentCoeff::q_pow(2));
        }
        assert_eq!(got, want);
    }

    #[test]
    fn nf_z4_across_stars() {
        // z4 z1* z4* = q^-1 z1* (1 - z1 z1* - z2 z2* - z3 z3*)
        let got = nf_word(&[z(4), zs(1), zs(4)]);
        let lhs = mul(
            &nf_word(&[z(4)]),
            &mul(&nf_word(&[zs(1)]), &nf_word(&[zs(4)])),
        );
        assert_eq!(got, lhs);
        let direct = mul(
            &PElement::term(mono([0; 4], [1, 0, 0, 0]), LaurentCoeff::q_pow(-1)),
            &nf_word(&[z(4), zs(4)]),
        );
        assert_eq!(got, direct);
    }

    #[test]
    fn mul_star3_z3() {
        // z3* . z3 = z3 z3* + (1-q^2)(z1 z1* + z2 z2*)
        let got = mul(&nf_word(&[zs(3)]), &nf_word(&[z(3)]));
        let mut want = PElement::basis(mono([0, 0, 1, 0], [0, 0, 1, 0]));
        want.add_term(mono([1, 0, 0, 0], [1, 0, 0, 0]), one_minus_q2());
        want.add_term(mono([0, 1, 0, 0], [0, 1, 0, 0]), one_minus_q2());
        assert_eq!(got, want);
    }

    #[test]
    fn star_examples() {
        // star(z1 z2) = q z1* z2*
        let x = nf_word(&[z(1), z(2)]);
        let want = PElement::term(mono([0; 4], [1, 1, 0, 0]), LaurentCoeff::q());
        assert_eq!(star(&x), want);
        // star fixes the unit
        assert_eq!(star(&one()), one());
        // star(z3 z3*) = z3 z3*
        let y = nf_word(&[z(3), zs(3)]);
        assert_eq!(star(&y), y);
    }

    #[test]
    fn star_is_involutive_and_antimultiplicative() {
        let samples = [
            nf_word(&[z(1), zs(2), z(3)]),
            nf_word(&[zs(4), z(4), z(2)]),
            nf_word(&[z(4), zs(1), zs(4)]),
            nf_word(&[zs(3), zs(1), z(2), z(1)]),
        ];
        for x in &samples {
            assert_eq!(star(&star(x)), *x);
        }
        for x in &samples {
            for y in &samples {
                assert_eq!(star(&mul(x, y)), mul(&star(y), &star(x)));
            }
        }
    }

    #[test]
    fn relations_normalize_to_zero() {
        for (label, comb) in defining_relations() {
            let mut acc = PElement::zero();
            for (c, w) in comb {
                acc.add_scaled(&nf_word(&w), &c);
            }
            assert!(acc.is_zero(), "relation `{}` does not vanish", label);
        }
    }

    #[test]
    fn degree_counts_letters() {
        let x = nf_word(&[z(1), z(2), zs(3)]);
        assert_eq!(degree(&x), Some(3));
        assert_eq!(degree(&one()), Some(0));
        assert_eq!(degree(&PElement::zero()), None);
        // nf(z4 z4*) has degree 2 after elimination
        assert_eq!(degree(&nf_word(&[z(4), zs(4)])), Some(2));
    }

    #[test]
    fn monomial_enumeration_respects_constraint() {
        let monos = monomials_up_to(2);
        assert_eq!(monos.len(), 1 + 8 + 35);
        assert!(monos.iter().all(|m| m.z[3] == 0 || m.zs[3] == 0));
        let monos3 = monomials_up_to(3);
        assert_eq!(monos3.len(), 1 + 8 + 35 + 112);
    }

    /// Every rule application must strictly decrease the termination measure
    /// (degree, min(#z4, #z4*), star-before-nonstar inversions, index
    /// inversions), ordered lexicographically.
    #[test]
    fn rules_decrease_termination_measure() {
        fn measure(w: &[u8]) -> (usize, usize, usize, usize) {
            let deg = w.len();
            let z4 = w.iter().filter(|&&l| l == 3).count();
            let z4s = w.iter().filter(|&&l| l == 7).count();
            let mut star_inv = 0;
            let mut idx_inv = 0;
            for i in 0..w.len() {
                for j in (i + 1)..w.len() {
                    let (si, sj) = (w[i] >= 4, w[j] >= 4);
                    if si && !sj {
                        star_inv += 1;
                    }
                    if si == sj && w[i] % 4 > w[j] % 4 {
                        idx_inv += 1;
                    }
                }
            }
            (deg, z4.min(z4s), star_inv, idx_inv)
        }
        // exhaustive over all words of length <= 4
        let mut words: Vec<Word> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &words {
                for l in 0..8u8 {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            words.extend(next);
        }
        for w in &words {
            for pos in 0..w.len() {
                if let Some(m) = S7Rules.match_at(w, pos) {
                    let parent = measure(w);
                    for (_, seg) in &m.terms {
                        let mut child = w[..pos].to_vec();
                        child.extend_from_slice(seg);
                        child.extend_from_slice(&w[pos + m.len..]);
                        assert!(
                            measure(&child) < parent,
                            "measure does not drop: {:?} -> {:?}",
                            w,
                            child
                        );
                    }
                }
            }
        }
    }
}
