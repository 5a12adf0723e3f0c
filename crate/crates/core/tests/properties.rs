//! Randomized property checks for the scalar ring, the star structure and
//! the expression round trip.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qsphere::coeff::LaurentCoeff;
use qsphere::expr;
use qsphere::s7::{self, PElement, ZLetter};

fn laurent() -> impl Strategy<Value = LaurentCoeff> {
    proptest::collection::vec(((-6i64..=6), (-9i64..=9), (1i64..=4)), 0..5).prop_map(|terms| {
        let mut acc = LaurentCoeff::zero();
        for (e, num, den) in terms {
            acc = acc
                + LaurentCoeff::monomial(
                    BigRational::new(BigInt::from(num), BigInt::from(den)),
                    e,
                );
        }
        acc
    })
}

fn rational_nonzero() -> impl Strategy<Value = BigRational> {
    ((-9i64..=9), (1i64..=5))
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<ZLetter>> {
    proptest::collection::vec(0u8..8, 0..=max_len)
        .prop_map(|ids| ids.into_iter().map(ZLetter::from_id).collect())
}

proptest! {
    #[test]
    fn ring_axioms(x in laurent(), y in laurent(), z in laurent()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn eval_at_is_a_ring_homomorphism(x in laurent(), y in laurent(), q0 in rational_nonzero()) {
        let lhs = (&x * &y).eval_at(&q0).unwrap();
        let rhs = x.eval_at(&q0).unwrap() * y.eval_at(&q0).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = (&x + &y).eval_at(&q0).unwrap();
        let rhs = x.eval_at(&q0).unwrap() + y.eval_at(&q0).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_text_round_trips(x in laurent()) {
        let s = x.to_string();
        let back: LaurentCoeff = s.parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn star_is_an_involution(w in word(6)) {
        let x = s7::nf_word(&w);
        prop_assert_eq!(s7::star(&s7::star(&x)), x);
    }

    #[test]
    fn star_is_antimultiplicative(u in word(4), v in word(4)) {
        let x = s7::nf_word(&u);
        let y = s7::nf_word(&v);
        prop_assert_eq!(
            s7::star(&s7::mul(&x, &y)),
            s7::mul(&s7::star(&y), &s7::star(&x))
        );
    }

    #[test]
    fn rendered_elements_parse_back(w in word(5), c in laurent()) {
        let mut x: PElement = s7::nf_word(&w).scale(&c);
        x.add_assign(&s7::one());
        let rendered = s7::render_element(&x);
        let back = expr::parse_p(&rendered).unwrap();
        prop_assert_eq!(back, x);
    }
}
