//! Brute-force oracle for the degree question.
//!
//! The tower has full degree exactly when `Q[x_1..x_l]/(x_i^{m_i} - N_i)` is a
//! field. That algebra is a product of number fields, so a random linear form
//! in the `x_i` generates it, and it is a field iff the minimal polynomial of
//! that form is irreducible. Its irreducible factors have the degrees of the
//! field factors.

mod algebra;
mod minpoly;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use algebra::{build_algebra, AlgebraElement, TensorAlgebra, DEFAULT_MAX_DIM, MAX_DIM_LIMIT};
pub use minpoly::{minimal_polynomial, minimal_polynomial_exact, minimal_polynomial_multimodular, EXACT_PATH_MAX_DIM};

use crate::error::{Error, Result};
use crate::polyfactor::factor_rational;

/// Redraws allowed when the drawn element does not generate the algebra.
pub const MAX_RETRIES: u32 = 32;

/// Random weights are drawn from `[-WEIGHT_RANGE, WEIGHT_RANGE]` without 0.
pub const WEIGHT_RANGE: i64 = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTestResult {
    pub is_field: bool,
    pub generator: AlgebraElement,
    /// The integer weights `c_i` with `generator = sum c_i x_i`.
    pub weights: Vec<i64>,
    /// Monic, lowest degree first.
    pub minpoly: Vec<BigRational>,
    /// Ascending.
    pub factor_degrees: Vec<usize>,
    pub retries_used: u32,
}

fn draw_weights(rng: &mut ChaCha8Rng, ell: usize) -> Vec<i64> {
    (0..ell)
        .map(|_| loop {
            let c = rng.gen_range(-WEIGHT_RANGE..=WEIGHT_RANGE);
            if c != 0 {
                break c;
            }
        })
        .collect()
}

pub fn is_field(algebra: &TensorAlgebra, seed: u64) -> Result<FieldTestResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ell = algebra.moduli().len();
    for retries_used in 0..=MAX_RETRIES {
        let weights = draw_weights(&mut rng, ell);
        let b: Vec<BigRational> = weights.iter().map(|c| BigRational::from_integer((*c).into())).collect();
        let generator = algebra.linear_form(&b)?;
        let minpoly = minimal_polynomial(algebra, &generator);
        if minpoly.len() - 1 < algebra.dim() {
            continue;
        }
        let factorization = factor_rational(&minpoly)?;
        let factor_degrees = factorization.degrees();
        if factor_degrees.iter().sum::<usize>() != algebra.dim() {
            return Err(Error::Invariant(format!(
                "minimal polynomial of degree {} has factors of degrees {factor_degrees:?}",
                algebra.dim()
            )));
        }
        return Ok(FieldTestResult {
            is_field: factor_degrees == [algebra.dim()],
            generator,
            weights,
            minpoly,
            factor_degrees,
            retries_used,
        });
    }
    Err(Error::OracleInconclusive(format!(
        "no generating element found in {} draws",
        MAX_RETRIES + 1
    )))
}

/// Whether `sum b_i x_i` generates the algebra. Meant for algebras that are fields.
pub fn verify_primitive_sum(algebra: &TensorAlgebra, b: &[BigRational]) -> Result<bool> {
    if b.iter().any(|c| c.is_zero()) {
        return Err(Error::Domain("weights of a primitive sum must be nonzero".into()));
    }
    let u = algebra.linear_form(b)?;
    Ok(minimal_polynomial(algebra, &u).len() - 1 == algebra.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::build_tower;
    use crate::polyfactor::{factor_over_z, IntPolynomial};

    fn algebra(raw: &[(i64, u64)]) -> TensorAlgebra {
        let raw: Vec<(BigRational, u64)> = raw
            .iter()
            .map(|(n, m)| (BigRational::from_integer((*n).into()), *m))
            .collect();
        build_algebra(&build_tower(&raw).unwrap(), DEFAULT_MAX_DIM).unwrap()
    }

    fn ones(n: usize) -> Vec<BigRational> {
        vec![BigRational::from_integer(1.into()); n]
    }

    #[test]
    fn field_test_examples() {
        let r = is_field(&algebra(&[(-1, 4), (2, 4)]), 7).unwrap();
        assert!(!r.is_field);
        assert_eq!(r.factor_degrees, vec![8, 8]);

        let r = is_field(&algebra(&[(2, 3), (4, 3)]), 0).unwrap();
        assert!(!r.is_field);
        assert_eq!(r.factor_degrees, vec![3, 6]);

        let a = algebra(&[(2, 3), (3, 3)]);
        let r = is_field(&a, 0).unwrap();
        assert!(r.is_field);
        assert_eq!(r.factor_degrees, vec![9]);
        assert!(a.evaluate(&r.minpoly, &r.generator).is_zero());

        let r = is_field(&algebra(&[(2, 2)]), 0).unwrap();
        assert!(r.is_field);
        assert_eq!(r.factor_degrees, vec![2]);
    }

    #[test]
    fn seeds_do_not_change_the_verdict() {
        let a = algebra(&[(-4, 4)]);
        let first = is_field(&a, 1).unwrap();
        assert_eq!(first.factor_degrees, vec![2, 2]);
        for seed in 2..6 {
            let r = is_field(&a, seed).unwrap();
            assert_eq!((r.is_field, &r.factor_degrees), (first.is_field, &first.factor_degrees));
        }
    }

    #[test]
    fn one_radical_matches_binomial_factorization() {
        for (n, m) in [(-4i64, 4u64), (9, 2), (72, 6), (-8, 3), (16, 4), (-27, 6)] {
            let r = is_field(&algebra(&[(n, m)]), 3).unwrap();
            let direct = factor_over_z(&IntPolynomial::binomial(m as usize, &n.into())).unwrap();
            assert_eq!(r.factor_degrees, direct.degrees(), "N = {n}, m = {m}");
        }
    }

    #[test]
    fn primitive_sums() {
        assert!(verify_primitive_sum(&algebra(&[(2, 2), (3, 2)]), &ones(2)).unwrap());
        assert!(verify_primitive_sum(&algebra(&[(2, 2)]), &ones(1)).unwrap());
        assert!(verify_primitive_sum(&algebra(&[(2, 3), (3, 3)]), &ones(2)).unwrap());
        // not a field: x + y with x^2 = y^2 = 2 is degenerate
        assert!(!verify_primitive_sum(&algebra(&[(2, 2), (2, 2)]), &ones(2)).unwrap());
    }
}
