//! Linear combinations over [`LaurentCoeff`], the shared carrier for every
//! based object in the crate (algebra elements, coalgebra elements, tensors).

use crate::coeff::LaurentCoeff;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A finite linear combination of basis keys with nonzero Laurent
/// coefficients. Zero coefficients are never stored, so `==` is equality of
/// the represented element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, LaurentCoeff>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, LaurentCoeff::one())
    }

    pub fn term(k: K, c: LaurentCoeff) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &LaurentCoeff)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> LaurentCoeff {
        self.terms.get(k).cloned().unwrap_or_else(LaurentCoeff::zero)
    }

    /// Add `c * k`, pruning the entry if the sum cancels.
    pub fn add_term(&mut self, k: K, c: LaurentCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &LaurentCoeff) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), -c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect();
        LinComb { terms }
    }

    pub fn scale(&self, c: &LaurentCoeff) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Apply a basis map extended by linearity: `f` sends a basis key to a
    /// linear combination over a new key type.
    pub fn flat_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn pop_first(&mut self) -> Option<(K, LaurentCoeff)> {
        self.terms.pop_first()
    }

    pub fn pop_last(&mut self) -> Option<(K, LaurentCoeff)> {
        self.terms.pop_last()
    }

    /// Render as a signed sum of terms, using `render_key` for the basis part
    /// (which must return `"1"` for a unit key). The output is stable and is
    /// parsed back by the expression DSL.
    pub fn render(&self, mut render_key: impl FnMut(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let (neg, body) = c.render_compact();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let key = render_key(k);
            if body.is_empty() {
                out.push_str(&key);
            } else if key == "1" {
                out.push_str(&body);
            } else {
                let _ = write!(out, "{}*{}", body, key);
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, LaurentCoeff)> for LinComb<K> {
    fn from_iter<T: IntoIterator<Item = (K, LaurentCoeff)>>(iter: T) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_prunes() {
        let mut x: LinComb<u32> = LinComb::basis(1);
        x.add_term(1, -LaurentCoeff::one());
        assert!(x.is_zero());
    }

    #[test]
    fn render_signs() {
        let mut x: LinComb<u32> = LinComb::basis(1);
        x.add_term(2, -LaurentCoeff::q_pow(2));
        let s = x.render(|k| format!("e{}", k));
        assert_eq!(s, "e1 - q^2*e2");
    }
}
