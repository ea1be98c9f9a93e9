mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::{dim, q, reference_full_degree_int, tower};
use radical_degree::criteria::decide;
use radical_degree::etale::{
    build_algebra, is_field, minimal_polynomial_exact, minimal_polynomial_multimodular, verify_primitive_sum,
    TensorAlgebra, DEFAULT_MAX_DIM,
};
use radical_degree::polyfactor::{factor_over_z, IntPolynomial};
use radical_degree::Error;

fn algebra(raw: &[(i64, u64)]) -> TensorAlgebra {
    build_algebra(&tower(raw), DEFAULT_MAX_DIM).unwrap()
}

fn degrees(raw: &[(i64, u64)], seed: u64) -> Vec<usize> {
    is_field(&algebra(raw), seed).unwrap().factor_degrees
}

#[test]
fn known_factor_degrees() {
    assert_eq!(degrees(&[(-1, 4), (2, 4)], 7), vec![8, 8]);
    assert_eq!(degrees(&[(2, 3), (4, 3)], 0), vec![3, 6]);
    assert_eq!(degrees(&[(2, 3), (3, 3)], 0), vec![9]);
    assert_eq!(degrees(&[(2, 2)], 0), vec![2]);
    assert_eq!(degrees(&[(-4, 4)], 0), vec![2, 2]);
    assert_eq!(degrees(&[(-1, 4)], 0), vec![4]);
}

#[test]
fn shape_and_capacity() {
    let a = algebra(&[(2, 3), (5, 4), (7, 1)]);
    assert_eq!(a.dim(), 12);
    assert_eq!(a.basis().len(), 12);
    let err = build_algebra(&tower(&[(2, 8), (3, 8)]), DEFAULT_MAX_DIM).unwrap_err();
    assert!(matches!(err, Error::Capacity(_)));
}

#[test]
fn generator_powers_reduce() {
    // x^3 = 2 in Q[x]/(x^3 - 2)
    let a = algebra(&[(2, 3)]);
    let x = a.generator(0);
    let cube = a.multiply(&a.multiply(&x, &x), &x);
    assert_eq!(cube, a.scalar(q(2)));
}

#[test]
fn primitive_sum_rejects_zero_weights() {
    let a = algebra(&[(2, 2), (3, 2)]);
    assert!(verify_primitive_sum(&a, &[q(1), q(1)]).unwrap());
    // x + y in Q(sqrt 2) (x) Q(sqrt 2) is not a generator: x - y is a zero divisor
    let b = algebra(&[(2, 2), (2, 2)]);
    assert!(!verify_primitive_sum(&b, &[q(1), q(-1)]).unwrap());
    assert!(matches!(verify_primitive_sum(&a, &[q(1), q(0)]), Err(Error::Domain(_))));
}

#[test]
fn exact_and_multimodular_agree() {
    for raw in [&[(6, 4), (15, 4)][..], &[(-3, 3), (5, 2), (2, 2)], &[(7, 5), (-2, 3)]] {
        let a = algebra(raw);
        let u = a.linear_form(&[q(3), q(-2), q(5)][..raw.len()]).unwrap();
        assert_eq!(
            minimal_polynomial_exact(&a, &u),
            minimal_polynomial_multimodular(&a, &u),
            "{raw:?}"
        );
    }
}

fn binomial_degrees(n: i64, m: u64) -> Vec<usize> {
    let f = IntPolynomial::binomial(m as usize, &BigInt::from(n));
    let mut d = factor_over_z(&f).unwrap().degrees();
    d.sort_unstable();
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_matches_criterion(raw in common::arb_tower(3, 6, 20)) {
        prop_assume!(dim(&raw) <= 16);
        let a = algebra(&raw);
        let r = is_field(&a, 1).unwrap();
        prop_assert_eq!(r.factor_degrees.iter().sum::<usize>(), a.dim());
        prop_assert!(a.evaluate(&r.minpoly, &r.generator).is_zero());
        prop_assert_eq!(r.is_field, decide(&tower(&raw)).unwrap().full_degree);
        prop_assert_eq!(r.is_field, reference_full_degree_int(&raw));
    }

    #[test]
    fn seed_independence(raw in common::arb_tower(3, 4, 20)) {
        prop_assume!(dim(&raw) <= 12);
        let a = algebra(&raw);
        let first = is_field(&a, 0).unwrap();
        for seed in 1..5 {
            let r = is_field(&a, seed).unwrap();
            prop_assert_eq!(r.is_field, first.is_field);
            prop_assert_eq!(&r.factor_degrees, &first.factor_degrees);
        }
    }

    #[test]
    fn single_radical_matches_binomial(n in (-60i64..=60).prop_filter("nonzero", |n| *n != 0), m in 1u64..=12) {
        prop_assert_eq!(degrees(&[(n, m)], 3), binomial_degrees(n, m));
    }

    #[test]
    fn primitive_sums_generate_fields(raw in common::arb_tower(3, 6, 20), weights in prop::collection::vec((-5i64..=5).prop_filter("nonzero", |c| *c != 0), 4)) {
        prop_assume!(dim(&raw) <= 16 && raw.len() <= 4);
        prop_assume!(decide(&tower(&raw)).unwrap().full_degree);
        let a = algebra(&raw);
        let b: Vec<BigRational> = weights[..raw.len()].iter().map(|c| q(*c)).collect();
        prop_assert!(verify_primitive_sum(&a, &b).unwrap());
    }
}
