use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use lrk_core::rational::{exact_sqrt, int, isqrt, rat, BigInt, BigRational, RationalPoly};

fn coeffs_strategy() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d)), 0..6)
}

fn poly_strategy() -> impl Strategy<Value = RationalPoly> {
    coeffs_strategy().prop_map(RationalPoly::from_coeffs)
}

fn is_canonical(q: &BigRational) -> bool {
    q.denom().is_positive() && q.numer().gcd(q.denom()) == BigInt::one()
        || (q.numer().is_zero() && q.denom().is_one())
}

proptest! {
    #[test]
    fn exact_sqrt_round_trips_squares(n in 0i64..=1_000_000, d in 1i64..=1_000_000) {
        let q = rat(n, d);
        let square = &q * &q;
        prop_assert_eq!(exact_sqrt(&square).unwrap(), Some(q));
    }

    #[test]
    fn isqrt_defining_inequality(n in 0u128..=(1u128 << 90)) {
        let big = BigInt::from(n);
        let (root, exact) = isqrt(&big).unwrap();
        let r: u128 = (&root).try_into().unwrap();
        prop_assert!(r * r <= n);
        prop_assert!((r + 1) * (r + 1) > n);
        prop_assert_eq!(exact, r * r == n);
    }

    #[test]
    fn poly_mul_commutative(p in poly_strategy(), q in poly_strategy()) {
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn poly_mul_associative(
        p in poly_strategy(),
        q in poly_strategy(),
        r in poly_strategy(),
    ) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn poly_eval_respects_multiplication(
        p in poly_strategy(),
        q in poly_strategy(),
        an in -50i64..=50,
        ad in 1i64..=9,
    ) {
        let a = rat(an, ad);
        prop_assert_eq!((&p * &q).eval(&a), p.eval(&a) * q.eval(&a));
    }

    #[test]
    fn poly_sub_self_is_zero(p in poly_strategy()) {
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn arithmetic_keeps_canonical_form(
        an in -10_000i64..=10_000, ad in 1i64..=10_000,
        bn in -10_000i64..=10_000, bd in 1i64..=10_000,
    ) {
        let a = rat(an, ad);
        let b = rat(bn, bd);
        prop_assert!(is_canonical(&(&a + &b)));
        prop_assert!(is_canonical(&(&a - &b)));
        prop_assert!(is_canonical(&(&a * &b)));
        if !b.is_zero() {
            prop_assert!(is_canonical(&(&a / &b)));
        }
        if !a.is_negative() {
            if let Some(root) = exact_sqrt(&(&a * &a)).unwrap() {
                prop_assert!(is_canonical(&root));
            }
        }
    }

    #[test]
    fn exact_sqrt_rejects_non_squares(n in 2i64..=1_000_000) {
        // n and n+1 cannot both be perfect squares for n >= 2, so at
        // least one of the two probes must come back None
        let a = exact_sqrt(&int(n)).unwrap();
        let b = exact_sqrt(&int(n + 1)).unwrap();
        prop_assert!(a.is_none() || b.is_none());
    }
}
