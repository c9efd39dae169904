//! Exact arithmetic substrate: big rationals and dense polynomials over ℚ and ℤ.

mod intpoly;
mod poly;
mod rational;

pub use intpoly::IntPoly;
pub use poly::{rising_ladder, UniPoly};
pub use rational::{
    binomial, common_denominator, factorial, from_bigint, int, is_rational_square,
    parse_rational, rat, rational_sqrt, to_decimal, to_f64, Rational,
};

use crate::error::Result;

pub fn poly_mul(p: &UniPoly, q: &UniPoly) -> UniPoly {
    p.mul(q)
}

/// `p(a·z + b)`
pub fn poly_compose_linear(p: &UniPoly, a: &Rational, b: &Rational) -> UniPoly {
    p.compose_linear(a, b)
}

pub fn poly_gcd(p: &UniPoly, q: &UniPoly) -> Result<UniPoly> {
    p.gcd(q)
}

pub fn primitive_integer_form(p: &UniPoly) -> Result<(Rational, IntPoly)> {
    p.primitive_integer_form()
}

#[cfg(test)]
mod props {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    fn poly(max_len: usize) -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(small_rat(), 0..max_len).prop_map(UniPoly::new)
    }

    proptest! {
        #[test]
        fn product_evaluates_pointwise(p in poly(9), q in poly(9), t in small_rat()) {
            prop_assert_eq!(p.mul(&q).eval(&t), p.eval(&t) * q.eval(&t));
        }

        #[test]
        fn large_products_agree_with_schoolbook(p in poly(14), q in poly(14)) {
            // the integer route kicks in above 64 coefficient pairs
            let mut out = vec![Rational::zero(); (p.coeffs().len() + q.coeffs().len()).max(1)];
            for (i, a) in p.coeffs().iter().enumerate() {
                for (j, b) in q.coeffs().iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            prop_assert_eq!(p.mul(&q), UniPoly::new(out));
        }

        #[test]
        fn compose_identity_and_inverse(p in poly(8), a in small_rat(), b in small_rat()) {
            prop_assert_eq!(p.compose_linear(&Rational::one(), &Rational::zero()), p.clone());
            prop_assume!(!a.is_zero());
            let back = p.compose_linear(&a, &b).compose_linear(&a.recip(), &(-&b / &a));
            prop_assert_eq!(back, p);
        }

        #[test]
        fn content_times_primitive_reconstructs(p in poly(8)) {
            prop_assume!(!p.is_zero());
            let (c, f) = p.primitive_integer_form().unwrap();
            prop_assert_eq!(UniPoly::from_intpoly(&f).scale(&c), p);
            prop_assert!(f.content().is_one());
            prop_assert!(f.lead().unwrap() > &num_bigint::BigInt::zero());
        }

        #[test]
        fn gcd_divides_both(p in poly(6), q in poly(6), r in poly(4)) {
            let a = p.mul(&r);
            let b = q.mul(&r);
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
            prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
            if !r.is_zero() {
                prop_assert!(g.div_rem(&r).unwrap().1.is_zero());
            }
        }
    }
}
