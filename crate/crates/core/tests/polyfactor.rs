mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::{poly_mul, q};
use radical_degree::polyfactor::{
    factor_over_z, factor_over_z_with_prime, factor_rational, is_irreducible_over_q, ranked_primes,
    squarefree_decomposition, IntPolynomial,
};

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

fn sorted_degrees(f: &IntPolynomial) -> Vec<usize> {
    let mut d: Vec<usize> = factor_over_z(f)
        .unwrap()
        .factors
        .iter()
        .flat_map(|(g, e)| std::iter::repeat_n(g.degree(), *e as usize))
        .collect();
    d.sort_unstable();
    d
}

#[test]
fn binomial_minus_four_factors() {
    // (x^2 - 2x + 2)(x^2 + 2x + 2) multiplied out independently
    assert_eq!(poly_mul(&[2, -2, 1], &[2, 2, 1]), vec![4, 0, 0, 0, 1]);
    let r = factor_over_z(&poly(&[4, 0, 0, 0, 1])).unwrap();
    let mut got: Vec<Vec<BigInt>> = r.factors.iter().map(|(g, _)| g.coeffs().to_vec()).collect();
    got.sort();
    let mut want: Vec<Vec<BigInt>> = [[2, -2, 1], [2, 2, 1]]
        .iter()
        .map(|c| c.iter().map(|x| BigInt::from(*x)).collect())
        .collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn cyclotomic_degrees() {
    // x^12 - 1 = prod over d | 12 of Phi_d, degrees phi(d)
    let mut c = vec![0i64; 13];
    c[0] = -1;
    c[12] = 1;
    assert_eq!(sorted_degrees(&poly(&c)), vec![1, 1, 2, 2, 2, 4]);
}

#[test]
fn rational_coefficients_keep_the_unit() {
    // (1/2) x^2 - 2 = (1/2)(x - 2)(x + 2)
    let r = factor_rational(&[q(-2), q(0), BigRational::new(1.into(), 2.into())]).unwrap();
    assert_eq!(r.degrees(), vec![1, 1]);
    assert_eq!(r.expand(), vec![q(-2), q(0), BigRational::new(1.into(), 2.into())]);
}

#[test]
fn squarefree_parts() {
    // x^3 (x + 1)^2 (x - 2)
    let f = poly(&[0, 0, 0, 1]).mul(&poly(&[1, 1]).pow(2)).mul(&poly(&[-2, 1]));
    let mut parts: Vec<(usize, u32)> = squarefree_decomposition(&f)
        .iter()
        .map(|(g, e)| (g.degree(), *e))
        .collect();
    parts.sort_unstable();
    assert_eq!(parts, vec![(1, 1), (1, 2), (1, 3)]);
}

fn arb_factor() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 2..=4).prop_filter("nonconstant", |c| *c.last().unwrap() != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reconstruction_and_irreducible_factors(parts in prop::collection::vec(arb_factor(), 1..=4)) {
        let f = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| poly_mul(&acc, p));
        let f = poly(&f);
        let r = factor_over_z(&f).unwrap();
        let expanded = r.expand();
        let original: Vec<BigRational> = f.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
        prop_assert_eq!(expanded, original);
        for (g, _) in &r.factors {
            prop_assert!(is_irreducible_over_q(g).unwrap());
        }
        let total: usize = r.factors.iter().map(|(g, e)| g.degree() * *e as usize).sum();
        prop_assert_eq!(total, f.degree());
        // at least as many factors as planted nonconstant parts
        let count: usize = r.factors.iter().map(|(_, e)| *e as usize).sum();
        prop_assert!(count >= parts.len());
    }

    #[test]
    fn prime_choice_does_not_change_degrees(parts in prop::collection::vec(arb_factor(), 1..=3)) {
        let f = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| poly_mul(&acc, p));
        let f = poly(&f);
        let sf = squarefree_decomposition(&f);
        prop_assume!(sf.len() == 1 && sf[0].1 == 1 && f.coeff(0) != BigInt::from(0));
        let primes = ranked_primes(&f).unwrap();
        let mut reference: Option<Vec<usize>> = None;
        for p in primes.iter().take(4) {
            let mut d = factor_over_z_with_prime(&f, *p).unwrap().degrees();
            d.sort_unstable();
            if let Some(r) = &reference {
                prop_assert_eq!(&d, r);
            } else {
                reference = Some(d);
            }
        }
    }
}
