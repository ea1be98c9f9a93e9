//! Shared helpers for the integration tests, including a brute-force
//! reference decider that shares no code with the library's criteria.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

use radical_degree::criteria::{build_tower, RadicalTower};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn tower(raw: &[(i64, u64)]) -> RadicalTower {
    let raw: Vec<(BigRational, u64)> = raw.iter().map(|(n, m)| (q(*n), *m)).collect();
    build_tower(&raw).expect("valid tower")
}

pub fn rational_tower(raw: &[(BigRational, u64)]) -> RadicalTower {
    build_tower(raw).expect("valid tower")
}

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    if r.pow(k) == *n {
        Some(r)
    } else {
        None
    }
}

/// `Some(r)` with `r^k = x` in Q; for even `k` only nonnegative `x` qualify.
pub fn rational_root(x: &BigRational, k: u32) -> Option<BigRational> {
    if x.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return rational_root(&-x, k).map(|r| -r);
    }
    Some(BigRational::new(exact_root(x.numer(), k)?, exact_root(x.denom(), k)?))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn p_part(mut m: u64, p: u64) -> u64 {
    let mut part = 1;
    while m.is_multiple_of(p) {
        m /= p;
        part *= p;
    }
    part
}

/// Every element `N_{j_1}^{e_1} ... N_{j_{k-1}}^{e_{k-1}} N_{j_k}` with `0 <= e < p`,
/// together with its exponent vector over the given radicands.
pub fn product_set(radicands: &[BigRational], p: u64) -> Vec<(BigRational, Vec<u64>)> {
    let mut out = Vec::new();
    for top in 0..radicands.len() {
        let mut exps = vec![0u64; top];
        loop {
            let mut value = radicands[top].clone();
            for (n, e) in radicands.iter().zip(&exps) {
                for _ in 0..*e {
                    value *= n;
                }
            }
            let mut full = exps.clone();
            full.push(1);
            out.push((value, full));
            let Some(pos) = exps.iter().rposition(|e| *e + 1 < p) else {
                break;
            };
            exps[pos] += 1;
            for e in &mut exps[pos + 1..] {
                *e = 0;
            }
        }
    }
    out
}

/// Whether the radicands (all with `4 | m_i(2)` checked by the caller) are 2-defective.
fn two_defective(radicands: &[BigRational], local_m: &[u64]) -> bool {
    let minus_squares: Vec<_> = product_set(radicands, 2)
        .into_iter()
        .filter(|(v, _)| rational_root(&-v.clone(), 2).is_some())
        .collect();
    assert!(
        minus_squares.len() <= 1,
        "two elements of the form -d^2: {minus_squares:?}"
    );
    let Some((m, f)) = minus_squares.into_iter().next() else {
        return false;
    };
    let support: Vec<usize> = (0..f.len()).filter(|i| f[*i] == 1).collect();
    if support.iter().any(|i| !local_m[*i].is_multiple_of(4)) {
        return false;
    }
    let d = rational_root(&-m, 2).unwrap();
    let i = support[0];
    let others: Vec<usize> = (0..radicands.len()).filter(|j| *j != i).collect();
    for mask in 0u64..(1 << others.len()) {
        let mut prod = BigRational::from_integer(BigInt::from(2)) * &d;
        for (bit, j) in others.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                prod *= &radicands[*j];
            }
        }
        if rational_root(&prod, 2).is_some() || rational_root(&-prod, 2).is_some() {
            return true;
        }
    }
    false
}

/// Full degree by direct enumeration of every product set, prime by prime.
pub fn reference_full_degree(raw: &[(BigRational, u64)]) -> bool {
    let lcm = raw.iter().fold(1u64, |acc, (_, m)| num_integer::lcm(acc, *m));
    for p in prime_factors(lcm) {
        let (radicands, local_m): (Vec<BigRational>, Vec<u64>) = raw
            .iter()
            .filter(|(_, m)| m % p == 0)
            .map(|(n, m)| (n.clone(), p_part(*m, p)))
            .unzip();
        if product_set(&radicands, p)
            .iter()
            .any(|(v, _)| rational_root(v, p as u32).is_some())
        {
            return false;
        }
        if p == 2 && two_defective(&radicands, &local_m) {
            return false;
        }
    }
    true
}

pub fn reference_full_degree_int(raw: &[(i64, u64)]) -> bool {
    let raw: Vec<(BigRational, u64)> = raw.iter().map(|(n, m)| (q(*n), *m)).collect();
    reference_full_degree(&raw)
}

/// Product of integer polynomials, constant term first.
pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Random towers; roughly half get a planted multiplicative relation.
pub fn arb_tower(max_ell: usize, max_m: u64, max_abs_n: i64) -> impl Strategy<Value = Vec<(i64, u64)>> {
    let entry = ((-max_abs_n..=max_abs_n).prop_filter("nonzero", |n| *n != 0), 1..=max_m);
    (prop::collection::vec(entry, 1..=max_ell), 0usize..4, 1i64..=6).prop_map(|(mut entries, plant, c)| {
        let first = entries[0].0;
        match plant {
            0 => entries.push((first * c * c, entries[0].1)),
            1 => entries.push((-first * c * c, entries[0].1)),
            _ => {}
        }
        entries
    })
}

pub fn dim(raw: &[(i64, u64)]) -> u64 {
    raw.iter().map(|(_, m)| *m).product()
}
