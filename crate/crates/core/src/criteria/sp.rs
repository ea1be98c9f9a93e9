//! The product sets over a local view: every `N_1^e_1 ... N_{k-1}^e_{k-1} N_k`
//! with `0 <= e_j < p`, for `k = 1..len`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::gfp::Echelon;
use super::tower::PrimeLocalView;
use crate::arith::{product_with_exponents, FactoredRational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpElement {
    pub value: FactoredRational,
    /// Exponents over view positions `0..=top_index`; the last entry is always 1.
    pub exponent_vector: Vec<u32>,
    /// View position of the factor with exponent exactly 1.
    pub top_index: usize,
}

/// Streams the product set in a fixed order: top position ascending, then
/// exponent vectors lexicographically (first coordinate most significant).
pub struct SpIter<'a> {
    view: &'a PrimeLocalView,
    top: usize,
    digits: Vec<u32>,
}

impl Iterator for SpIter<'_> {
    type Item = SpElement;

    fn next(&mut self) -> Option<SpElement> {
        if self.top >= self.view.len() {
            return None;
        }
        let mut exponent_vector = self.digits.clone();
        exponent_vector.push(1);
        let value = product_with_exponents(&self.view.radicands[..=self.top], &exponent_vector)
            .expect("lengths agree by construction");
        let item = SpElement {
            value,
            exponent_vector,
            top_index: self.top,
        };
        self.advance();
        Some(item)
    }
}

impl SpIter<'_> {
    fn advance(&mut self) {
        let p = self.view.p as u32;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < p {
                return;
            }
            *d = 0;
        }
        self.top += 1;
        self.digits = vec![0; self.top];
    }
}

pub fn enumerate_sp(view: &PrimeLocalView) -> SpIter<'_> {
    SpIter {
        view,
        top: 0,
        digits: Vec::new(),
    }
}

/// `1 + p + ... + p^(len-1)`, or `None` on overflow.
pub fn sp_size(view: &PrimeLocalView) -> Option<u128> {
    let p = u128::from(view.p);
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for k in 0..view.len() {
        total = total.checked_add(term)?;
        if k + 1 < view.len() {
            term = term.checked_mul(p)?;
        }
    }
    Some(total)
}

/// The first element of the product set (in [`enumerate_sp`] order) that is a
/// `p`-th power, with its root.
///
/// Computed by elimination over GF(p) on exponent vectors: the first position
/// whose vector depends on the earlier ones carries the first witness, and its
/// exponents are the unique dependency coefficients. Agrees element for
/// element with a scan of [`enumerate_sp`], at polynomial cost.
pub fn first_pth_power(view: &PrimeLocalView) -> Result<Option<(SpElement, FactoredRational)>> {
    let p = view.p;
    let primes: Vec<u128> = view
        .radicands
        .iter()
        .flat_map(|n| n.exponents().keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut echelon = Echelon::new(p);
    for (k, n) in view.radicands.iter().enumerate() {
        // -1 is a p-th power for odd p, so the sign only matters at p = 2.
        let mut v: Vec<u64> = Vec::with_capacity(primes.len() + 1);
        if p == 2 {
            v.push(u64::from(n.is_negative()));
        }
        v.extend(primes.iter().map(|q| n.exponent(*q).rem_euclid(p as i64) as u64));
        if let Some(coeffs) = echelon.push(&v) {
            // N_k = prod N_j^c_j (mod p-th powers), so prod N_j^(-c_j) * N_k is a p-th power.
            let mut exponent_vector: Vec<u32> = coeffs.iter().map(|c| ((p - c) % p) as u32).collect();
            exponent_vector.push(1);
            let value = product_with_exponents(&view.radicands[..=k], &exponent_vector)?;
            let root = value
                .pth_root(p)
                .ok_or_else(|| Error::Invariant(format!("elimination produced {value}, not a {p}-th power")))?;
            return Ok(Some((
                SpElement {
                    value,
                    exponent_vector,
                    top_index: k,
                },
                root,
            )));
        }
    }
    Ok(None)
}
