//! Property suites over randomly generated inputs.

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use enform::bounds::{conjecture_bound, within};
use enform::ensys::{
    canonical_form, enumerate_box, induced_system_ints, EnEquation, EnSystem, SolveOptions,
};
use enform::poly::{integer_sqrt_test, parse_polynomial, Polynomial};
use enform::transforms::{bezout_bounded, four_square, divisibility_witness};

fn arb_polynomial() -> impl Strategy<Value = Polynomial> {
    (1usize..=3).prop_flat_map(|num_vars| {
        let term = (
            proptest::collection::vec(0u32..=4, num_vars),
            -9i64..=9,
        );
        proptest::collection::vec(term, 0..=5).prop_map(move |terms| {
            Polynomial::from_terms(
                num_vars,
                terms
                    .into_iter()
                    .map(|(exps, c)| (exps, BigInt::from(c))),
            )
        })
    })
}

fn arb_point(num_vars: usize) -> impl Strategy<Value = Vec<BigInt>> {
    proptest::collection::vec((-10i64..=10).prop_map(BigInt::from), num_vars)
}

fn arb_system() -> impl Strategy<Value = EnSystem> {
    (1usize..=3).prop_flat_map(|n| {
        let eq = (0u8..3, 1..=n, 1..=n, 1..=n).prop_map(|(kind, i, j, k)| match kind {
            0 => EnEquation::one(i),
            1 => EnEquation::add(i, j, k),
            _ => EnEquation::mul(i, j, k),
        });
        proptest::collection::vec(eq, 0..=5)
            .prop_map(move |eqs| EnSystem::from_equations(n, eqs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_linear_in_subtraction(
        (p, q, point) in (arb_polynomial(), arb_polynomial(), arb_point(3))
    ) {
        let n = p.num_vars().max(q.num_vars());
        let p = p.extend_vars(n);
        let q = q.extend_vars(n);
        let point = &point[..n];
        let diff = p.sub(&q);
        prop_assert_eq!(
            diff.evaluate(point).unwrap(),
            p.evaluate(point).unwrap() - q.evaluate(point).unwrap()
        );
    }

    #[test]
    fn print_then_parse_is_identity(p in arb_polynomial()) {
        let printed = p.to_string();
        let reparsed = parse_polynomial(&printed).unwrap().extend_vars(p.num_vars());
        prop_assert_eq!(&reparsed, &p);
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    #[test]
    fn sqrt_test_recognizes_squares(n in 0i64..=1_000_000) {
        let sq = BigInt::from(n) * BigInt::from(n);
        prop_assert_eq!(integer_sqrt_test(&sq), Some(BigInt::from(n)));
    }

    #[test]
    fn propagation_is_neutral(sys in arb_system(), radius in 0i64..=6) {
        let with = enumerate_box(&sys, radius, &SolveOptions::default());
        let without = enumerate_box(
            &sys,
            radius,
            &SolveOptions { propagate: false, ..Default::default() },
        );
        prop_assert_eq!(with.solutions, without.solutions);
    }

    #[test]
    fn solutions_satisfy_canonical_relabeling(sys in arb_system()) {
        let (canon, perm) = canonical_form(&sys).unwrap();
        let sols = enumerate_box(&sys, 4, &SolveOptions::default());
        for sol in &sols.solutions {
            let mut permuted = vec![0i64; sol.len()];
            for (old, &new) in perm.iter().enumerate() {
                permuted[new - 1] = sol[old];
            }
            prop_assert!(canon.check_solution_ints(&permuted).unwrap());
        }
    }

    #[test]
    fn induced_system_is_satisfied_by_its_tuple(
        x in proptest::collection::vec(-8i64..=8, 1..=3)
    ) {
        let sys = induced_system_ints(&x);
        prop_assert!(sys.check_solution_ints(&x).unwrap());
    }

    #[test]
    fn within_is_monotone(x in -1_000_000i64..=1_000_000, y in -1_000_000i64..=1_000_000, n in 1usize..=5) {
        let bound = conjecture_bound(n);
        if x.abs() <= y.abs() && within(&BigInt::from(y), &bound) {
            prop_assert!(within(&BigInt::from(x), &bound));
        }
    }

    #[test]
    fn four_square_decomposes(m in 0i64..=5_000) {
        let (a, b, c, d) = four_square(m).unwrap();
        prop_assert_eq!(a * a + b * b + c * c + d * d, m);
        prop_assert!(a >= 0 && b >= 0 && c >= 0 && d >= 0);
    }

    #[test]
    fn bezout_identity_and_bound(a in -500i64..=500, b in 1i64..=500) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        let (x, y) = bezout_bounded(a, b).unwrap();
        prop_assert_eq!(a * x + b * y, 1);
        prop_assert!(x.abs() <= b);
    }

    #[test]
    fn divisibility_witness_identity(x in (-5_000i64..=5_000).prop_filter("non-zero", |&x| x != 0)) {
        let bx = BigInt::from(x);
        let (a, b) = divisibility_witness(&bx).unwrap();
        prop_assert_eq!(&a * &bx, (&b * 2 - 1) * (&b * 3 - 1));
        prop_assert!(b >= BigInt::from(1));
        let bound: BigInt = BigInt::from(x).abs() * 6 + 1;
        prop_assert!(b <= bound);
    }
}
