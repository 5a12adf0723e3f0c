//! Exact scalars: Laurent polynomials in the deformation parameter q with
//! arbitrary-precision rational coefficients.
//!
//! Every module in this crate is linear over [`LaurentCoeff`]. Values are kept
//! in canonical form (no stored zero term), so structural equality is ring
//! equality and the zero element is the empty term map. No division is ever
//! performed except by monomials `c*q^e`, which are units.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

/// A Laurent polynomial in q over the rationals, in canonical sparse form.
///
/// The term map sends an integer exponent of q to its nonzero rational
/// coefficient. Exponents are sparse: they cluster around 0 but grow with the
/// degree of the algebra elements being manipulated.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentCoeff {
    terms: BTreeMap<i64, BigRational>,
}

/// Errors raised by scalar operations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoeffError {
    /// `eval_at` was called with q0 = 0; negative powers of q make this
    /// meaningless.
    ZeroEvaluationPoint,
    /// A q-exponent fell outside the range supported by evaluation.
    ExponentOverflow(i64),
}

impl fmt::Display for CoeffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffError::ZeroEvaluationPoint => {
                write!(f, "cannot evaluate a Laurent polynomial at q = 0")
            }
            CoeffError::ExponentOverflow(e) => write!(f, "q-exponent {} out of range", e),
        }
    }
}

impl std::error::Error for CoeffError {}

impl LaurentCoeff {
    pub fn zero() -> Self {
        LaurentCoeff::default()
    }

    pub fn one() -> Self {
        LaurentCoeff::from_int(1)
    }

    /// The generator q itself.
    pub fn q() -> Self {
        LaurentCoeff::q_pow(1)
    }

    /// q^e for any integer e.
    pub fn q_pow(e: i64) -> Self {
        LaurentCoeff::monomial(BigRational::one(), e)
    }

    /// c * q^e.
    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentCoeff { terms }
    }

    pub fn from_int(n: i64) -> Self {
        LaurentCoeff::monomial(BigRational::from_integer(BigInt::from(n)), 0)
    }

    pub fn from_rational(r: BigRational) -> Self {
        LaurentCoeff::monomial(r, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&0)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Iterate terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// True when the lowest-exponent coefficient is negative. Used by the
    /// pretty-printers to decide between `+` and `-` term joiners.
    pub fn leading_is_negative(&self) -> bool {
        self.terms
            .values()
            .next()
            .map(|c| c.is_negative())
            .unwrap_or(false)
    }

    pub fn pow(&self, n: u32) -> LaurentCoeff {
        let mut acc = LaurentCoeff::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact substitution q := q0, with q0 a nonzero rational.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational, CoeffError> {
        if q0.is_zero() {
            return Err(CoeffError::ZeroEvaluationPoint);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let exp = i32::try_from(*e).map_err(|_| CoeffError::ExponentOverflow(*e))?;
            acc += c * q0.pow(exp);
        }
        Ok(acc)
    }

    /// Canonical text form, identical to `Display`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    /// Compact rendering for use inside element terms: returns
    /// `(leading_negative, body)` where `body` omits a unit coefficient
    /// entirely (empty string for plus or minus one).
    ///
    /// Examples: `1 -> (false, "")`, `-q^2 -> (true, "q^2")`,
    /// `3/2*q^-1 -> (false, "3/2*q^-1")`, `1 - q^2 -> (false, "(1 - q^2)")`.
    pub fn render_compact(&self) -> (bool, String) {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if *e == 0 {
                if abs.is_one() {
                    String::new()
                } else {
                    abs.to_string()
                }
            } else if abs.is_one() {
                format!("q^{}", e)
            } else {
                format!("{}*q^{}", abs, e)
            };
            (neg, body)
        } else {
            let mut s = String::from("(");
            for (i, (e, c)) in self.terms.iter().enumerate() {
                let neg = c.is_negative();
                if i == 0 {
                    if neg {
                        s.push('-');
                    }
                } else {
                    s.push_str(if neg { " - " } else { " + " });
                }
                let abs = c.abs();
                if *e == 0 {
                    s.push_str(&abs.to_string());
                } else if abs.is_one() {
                    s.push_str(&format!("q^{}", e));
                } else {
                    s.push_str(&format!("{}*q^{}", abs, e));
                }
            }
            s.push(')');
            (false, s)
        }
    }
}

impl AddAssign<&LaurentCoeff> for LaurentCoeff {
    fn add_assign(&mut self, rhs: &LaurentCoeff) {
        for (e, c) in &rhs.terms {
            self.insert_term(*e, c.clone());
        }
    }
}

impl Add for &LaurentCoeff {
    type Output = LaurentCoeff;
    fn add(self, rhs: &LaurentCoeff) -> LaurentCoeff {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentCoeff {
    type Output = LaurentCoeff;
    fn add(self, rhs: LaurentCoeff) -> LaurentCoeff {
        &self + &rhs
    }
}

impl Sub for &LaurentCoeff {
    type Output = LaurentCoeff;
    fn sub(self, rhs: &LaurentCoeff) -> LaurentCoeff {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for LaurentCoeff {
    type Output = LaurentCoeff;
    fn sub(self, rhs: LaurentCoeff) -> LaurentCoeff {
        &self - &rhs
    }
}

impl Neg for &LaurentCoeff {
    type Output = LaurentCoeff;
    fn neg(self) -> LaurentCoeff {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, -c.clone()))
            .collect();
        LaurentCoeff { terms }
    }
}

impl Neg for LaurentCoeff {
    type Output = LaurentCoeff;
    fn neg(self) -> LaurentCoeff {
        -&self
    }
}

impl Mul for &LaurentCoeff {
    type Output = LaurentCoeff;
    fn mul(self, rhs: &LaurentCoeff) -> LaurentCoeff {
        let mut out = LaurentCoeff::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentCoeff {
    type Output = LaurentCoeff;
    fn mul(self, rhs: LaurentCoeff) -> LaurentCoeff {
        &self * &rhs
    }
}

impl fmt::Display for LaurentCoeff {
    /// Canonical form: terms in ascending exponent, each `<rational>*q^<int>`
    /// with `q^0` elided to the bare rational, joined by ` + `.
    /// Example: `-1*q^-2 + 2 + 1*q^3`. Zero renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *e == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}*q^{}", c, e)?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentCoeff {
    type Err = String;

    /// Parses the canonical form produced by `Display`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentCoeff::zero());
        }
        let mut out = LaurentCoeff::zero();
        for piece in s.split(" + ") {
            let piece = piece.trim();
            let (rat_str, exp) = match piece.split_once("*q^") {
                Some((r, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| format!("bad exponent in term `{}`", piece))?;
                    (r, e)
                }
                None => (piece, 0),
            };
            let c: BigRational = rat_str
                .parse()
                .map_err(|_| format!("bad rational in term `{}`", piece))?;
            out.insert_term(exp, c);
        }
        Ok(out)
    }
}

/// `1 - q^2`, the coefficient appearing in the sphere and module relations.
pub fn one_minus_q2() -> LaurentCoeff {
    LaurentCoeff::one() - LaurentCoeff::q_pow(2)
}

/// `q - q^-1`.
pub fn q_minus_qinv() -> LaurentCoeff {
    LaurentCoeff::q_pow(1) - LaurentCoeff::q_pow(-1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn add_cancellation() {
        // (1 - q^2) + q^2 = 1
        let x = one_minus_q2() + LaurentCoeff::q_pow(2);
        assert!(x.is_one());
    }

    #[test]
    fn add_identity() {
        let x = LaurentCoeff::q_pow(3) + LaurentCoeff::from_int(7);
        assert_eq!(&x + &LaurentCoeff::zero(), x);
    }

    #[test]
    fn add_inverse() {
        // (q - q^-1) + (q^-1 - q) = 0
        let x = q_minus_qinv();
        let y = -&x;
        assert!((&x + &y).is_zero());
    }

    #[test]
    fn mul_difference_of_squares() {
        // (q - q^-1)(q + q^-1) = q^2 - q^-2
        let lhs = &q_minus_qinv() * &(LaurentCoeff::q() + LaurentCoeff::q_pow(-1));
        let rhs = LaurentCoeff::q_pow(2) - LaurentCoeff::q_pow(-2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_q_powers_cancel() {
        let x = &LaurentCoeff::q_pow(3) * &LaurentCoeff::q_pow(-3);
        assert!(x.is_one());
    }

    #[test]
    fn mul_identity() {
        let x = one_minus_q2() + LaurentCoeff::monomial(rat(3, 2), -5);
        assert_eq!(&LaurentCoeff::one() * &x, x);
    }

    #[test]
    fn eval_at_substitutes() {
        // q^2 - 1 at q = 2 gives 3
        let x = LaurentCoeff::q_pow(2) - LaurentCoeff::one();
        assert_eq!(x.eval_at(&rat(2, 1)).unwrap(), rat(3, 1));
        // q^-1 at q = 1/2 gives 2
        let y = LaurentCoeff::q_pow(-1);
        assert_eq!(y.eval_at(&rat(1, 2)).unwrap(), rat(2, 1));
        // zero evaluates to zero anywhere
        assert_eq!(
            LaurentCoeff::zero().eval_at(&rat(5, 3)).unwrap(),
            BigRational::zero()
        );
    }

    #[test]
    fn eval_at_rejects_zero() {
        let x = LaurentCoeff::q_pow(-1);
        assert_eq!(
            x.eval_at(&BigRational::zero()),
            Err(CoeffError::ZeroEvaluationPoint)
        );
    }

    #[test]
    fn canonical_display() {
        let x = LaurentCoeff::monomial(rat(-1, 1), -2)
            + LaurentCoeff::from_int(2)
            + LaurentCoeff::q_pow(3);
        assert_eq!(x.to_string(), "-1*q^-2 + 2 + 1*q^3");
        assert_eq!("-1*q^-2 + 2 + 1*q^3".parse::<LaurentCoeff>().unwrap(), x);
    }

    #[test]
    fn compact_rendering() {
        assert_eq!(LaurentCoeff::one().render_compact(), (false, String::new()));
        assert_eq!(
            (-LaurentCoeff::q_pow(2)).render_compact(),
            (true, "q^2".to_string())
        );
        assert_eq!(
            LaurentCoeff::monomial(rat(3, 2), -1).render_compact(),
            (false, "3/2*q^-1".to_string())
        );
        assert_eq!(
            one_minus_q2().render_compact(),
            (false, "(1 - q^2)".to_string())
        );
    }
}
