//! Multiplicative independence of real positive radicals.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::gfp::Echelon;
use super::tower::{local_view, RadicalTower};
use crate::error::{Error, Result};

/// Largest `prod m_i` accepted by [`hasse_condition_brute_force`].
pub const BRUTE_FORCE_LIMIT: u128 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HasseOutcome {
    Holds,
    /// `prod N_i^(a_i / m_i)` is rational although some `m_i` does not divide `a_i`.
    Violated {
        exponents: Vec<u64>,
    },
}

fn require_positive(tower: &RadicalTower) -> Result<()> {
    if let Some(i) = tower.entries().iter().position(|r| r.radicand.is_negative()) {
        return Err(Error::Unsupported(format!(
            "radicand {} is negative; the condition is only decided for positive radicands",
            i + 1
        )));
    }
    Ok(())
}

/// Decides whether `prod N_i^(a_i/m_i)` (positive real roots, `0 <= a_i < m_i`)
/// is rational only for `a = 0`.
///
/// The exponents `a` with rational product form a finite abelian group; it is
/// nontrivial iff it has an element of some prime order `p | m`. Such elements
/// are `a_i = b_i m_i / p` with `b` in the GF(p)-kernel of the exponent vectors
/// of the `N_i` with `p | m_i`, so one elimination per prime decides the question.
pub fn hasse_condition(tower: &RadicalTower) -> Result<HasseOutcome> {
    require_positive(tower)?;
    let primes: Vec<u128> = tower
        .entries()
        .iter()
        .flat_map(|r| r.radicand.exponents().keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for &p in tower.prime_support() {
        let view = local_view(tower, p)?;
        let mut echelon = Echelon::new(p);
        for (k, n) in view.radicands.iter().enumerate() {
            let v: Vec<u64> = primes
                .iter()
                .map(|q| n.exponent(*q).rem_euclid(p as i64) as u64)
                .collect();
            if let Some(coeffs) = echelon.push(&v) {
                // sum_j (-c_j) v_j + v_k = 0 over GF(p)
                let mut exponents = vec![0u64; tower.ell()];
                for (j, c) in coeffs.iter().enumerate() {
                    let b = (p - c) % p;
                    exponents[view.indices[j]] = b * (tower.entries()[view.indices[j]].index / p);
                }
                exponents[view.indices[k]] = tower.entries()[view.indices[k]].index / p;
                return Ok(HasseOutcome::Violated { exponents });
            }
        }
    }
    Ok(HasseOutcome::Holds)
}

/// True when `prod N_i^(a_i m / m_i)` is an `m`-th power of a positive rational.
pub fn power_product_is_rational(tower: &RadicalTower, a: &[u64]) -> bool {
    let m = tower.lcm_m();
    let mut total: std::collections::BTreeMap<u128, i128> = Default::default();
    for (r, ai) in tower.entries().iter().zip(a) {
        let w = i128::from(*ai) * (m / u128::from(r.index)) as i128;
        for (q, e) in r.radicand.exponents() {
            *total.entry(*q).or_insert(0) += i128::from(*e) * w;
        }
    }
    total.values().all(|e| e.rem_euclid(m as i128) == 0)
}

/// Exhaustive check over every exponent vector, for small towers.
pub fn hasse_condition_brute_force(tower: &RadicalTower) -> Result<HasseOutcome> {
    require_positive(tower)?;
    if tower.product_degree() > BRUTE_FORCE_LIMIT {
        return Err(Error::Capacity(format!(
            "brute force needs prod m_i <= {BRUTE_FORCE_LIMIT}"
        )));
    }
    let radix: Vec<u64> = tower.entries().iter().map(|r| r.index).collect();
    let mut a = vec![0u64; radix.len()];
    loop {
        // odometer increment, first coordinate most significant
        let mut pos = radix.len();
        loop {
            if pos == 0 {
                return Ok(HasseOutcome::Holds);
            }
            pos -= 1;
            a[pos] += 1;
            if a[pos] < radix[pos] {
                break;
            }
            a[pos] = 0;
        }
        if power_product_is_rational(tower, &a) {
            return Ok(HasseOutcome::Violated { exponents: a });
        }
    }
}
