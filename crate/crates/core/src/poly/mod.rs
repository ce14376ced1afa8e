//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod polynomial;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::{identifiers, parse_in_ring, parse_polynomial};
pub use polynomial::{Polynomial, Ring};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials live in rings with different variable lists")]
    RingMismatch,
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
}

/// Shorthand for small integer rationals.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    const VARS: [&str; 3] = ["x", "y", "z"];

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5, 1i64..=3), 0..5).prop_map(|terms| {
            let ring = Ring::new(&VARS);
            Polynomial::from_terms(
                &ring,
                terms
                    .into_iter()
                    .map(|((a, b, c), n, d)| (Monomial::from_exponents(&[a, b, c]), Rational::new(n.into(), d.into()))),
            )
        })
    }

    fn small_monomial() -> impl Strategy<Value = Monomial> {
        (0u32..4, 0u32..4, 0u32..4).prop_map(|(a, b, c)| Monomial::from_exponents(&[a, b, c]))
    }

    fn any_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::GrLex),
            Just(MonomialOrder::GrevLex),
            Just(MonomialOrder::Block(1)),
            Just(MonomialOrder::Block(2)),
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn leibniz_rule(a in small_poly(), b in small_poly(), i in 0usize..3) {
            let lhs = (&a * &b).partial_derivative(i).unwrap();
            let rhs = &(&a * &b.partial_derivative(i).unwrap()) + &(&b * &a.partial_derivative(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn orders_are_multiplicative(ord in any_order(), m in small_monomial(), a in small_monomial(), b in small_monomial()) {
            if ord.cmp(&a, &b) == std::cmp::Ordering::Less {
                prop_assert_eq!(ord.cmp(&m.mul(&a), &m.mul(&b)), std::cmp::Ordering::Less);
            }
            // total: antisymmetric and only equal on equal monomials
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ord.cmp(&a, &b) == std::cmp::Ordering::Equal, a == b);
            // well-order: 1 is the minimum
            prop_assert_ne!(ord.cmp(&Monomial::one(3), &a), std::cmp::Ordering::Greater);
        }

        #[test]
        fn print_parse_round_trip(a in small_poly()) {
            let text = a.to_string();
            let back = parse_polynomial(&text, &VARS).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
