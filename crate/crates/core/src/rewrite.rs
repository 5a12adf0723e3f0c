//! A small rewriting engine for linear combinations of words over a finite
//! generator alphabet.
//!
//! Rules match at a word position and replace a consumed segment by a linear
//! combination of replacement segments. All systems in this crate are
//! terminating, so exhaustive reduction yields a normal form; confluence is
//! not assumed but checked empirically by suite S1, which is why the engine
//! supports more than one deterministic redex-selection strategy.

use crate::coeff::LaurentCoeff;
use crate::lincomb::LinComb;

/// A word in generator ids.
pub type Word = Vec<u8>;

/// Result of matching a rule at a position: `len` letters are consumed and
/// replaced by each `(coefficient, segment)` term.
pub struct RuleMatch {
    pub len: usize,
    pub terms: Vec<(LaurentCoeff, Word)>,
}

/// A rewriting system: given a word and a position, report the rule firing
/// there, if any. At most one rule may match at a given position.
pub trait RewriteRules {
    fn match_at(&self, word: &[u8], pos: usize) -> Option<RuleMatch>;
}

/// Deterministic redex selection order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    LeftmostInnermost,
    RightmostInnermost,
}

/// Find the redex selected by `strategy`, if the word is reducible.
pub fn find_redex<R: RewriteRules>(
    rules: &R,
    word: &[u8],
    strategy: Strategy,
) -> Option<(usize, RuleMatch)> {
    match strategy {
        Strategy::LeftmostInnermost => (0..word.len())
            .find_map(|p| rules.match_at(word, p).map(|m| (p, m))),
        Strategy::RightmostInnermost => (0..word.len())
            .rev()
            .find_map(|p| rules.match_at(word, p).map(|m| (p, m))),
    }
}

fn splice(word: &[u8], pos: usize, len: usize, segment: &[u8]) -> Word {
    let mut out = Word::with_capacity(word.len() - len + segment.len());
    out.extend_from_slice(&word[..pos]);
    out.extend_from_slice(segment);
    out.extend_from_slice(&word[pos + len..]);
    out
}

/// Reduce a linear combination of words to normal form under `rules`.
///
/// Intermediate duplicates are merged so coefficient cancellation happens as
/// early as possible. The result does not depend on the processing order of
/// the frontier, only (possibly) on `strategy` — and suite S1 checks that in
/// fact it does not depend on the strategy either.
pub fn reduce<R: RewriteRules>(
    rules: &R,
    input: impl IntoIterator<Item = (LaurentCoeff, Word)>,
    strategy: Strategy,
) -> LinComb<Word> {
    let mut frontier: LinComb<Word> = input.into_iter().map(|(c, w)| (w, c)).collect();
    let mut normal: LinComb<Word> = LinComb::zero();
    while let Some((word, coeff)) = frontier.pop_first() {
        match find_redex(rules, &word, strategy) {
            None => normal.add_term(word, coeff),
            Some((pos, m)) => {
                for (rc, segment) in &m.terms {
                    let next = splice(&word, pos, m.len, segment);
                    frontier.add_term(next, &coeff * rc);
                }
            }
        }
    }
    normal
}

/// Reduce a single word with coefficient one.
pub fn reduce_word<R: RewriteRules>(rules: &R, word: Word, strategy: Strategy) -> LinComb<Word> {
    reduce(rules, [(LaurentCoeff::one(), word)], strategy)
}
