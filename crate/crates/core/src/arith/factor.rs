//! Integer factorization for desk-scale inputs.
//!
//! Trial division removes every prime below [`TRIAL_DIVISION_LIMIT`]; whatever is
//! left is split with Brent's variant of Pollard rho and certified with
//! Miller-Rabin. The magnitude of the input is capped by [`Factorizer::max_abs`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const TRIAL_DIVISION_LIMIT: u128 = 1_000_000;

/// Default magnitude bound, 2^64.
pub const DEFAULT_MAX_ABS: u128 = 1 << 64;

/// Miller-Rabin bases. The first 13 primes give a deterministic answer below 3.3e24.
const MR_BASES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_DETERMINISTIC_BELOW: u128 = 3_317_044_064_679_887_385_961_981;
const MR_EXTRA_BASES: [u128; 7] = [43, 47, 53, 59, 61, 67, 71];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorizer {
    pub max_abs: u128,
    /// Iterations allowed per rho attempt.
    pub rho_iterations: u64,
    /// Number of polynomial constants tried before giving up.
    pub rho_attempts: u32,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer {
            max_abs: DEFAULT_MAX_ABS,
            rho_iterations: 1 << 22,
            rho_attempts: 24,
        }
    }
}

impl Factorizer {
    /// Factor `|n|` into primes; returns the sign separately (`true` for negative).
    pub fn factor_bigint(&self, n: &BigInt) -> Result<(bool, BTreeMap<u128, u32>)> {
        if n.is_zero() {
            return Err(Error::Domain("cannot factor zero".into()));
        }
        let magnitude = n
            .abs()
            .to_u128()
            .filter(|m| *m <= self.max_abs)
            .ok_or_else(|| Error::Capacity(format!("|{n}| exceeds the factorization bound {}", self.max_abs)))?;
        Ok((n.is_negative(), self.factor_u128(magnitude)?))
    }

    /// Factor a positive integer. `1` yields the empty map.
    pub fn factor_u128(&self, n: u128) -> Result<BTreeMap<u128, u32>> {
        if n == 0 {
            return Err(Error::Domain("cannot factor zero".into()));
        }
        if n > self.max_abs {
            return Err(Error::Capacity(format!(
                "{n} exceeds the factorization bound {}",
                self.max_abs
            )));
        }
        let mut out = BTreeMap::new();
        let mut rest = n;
        let mut d: u128 = 2;
        while d < TRIAL_DIVISION_LIMIT && d * d <= rest {
            while rest.is_multiple_of(d) {
                *out.entry(d).or_insert(0) += 1;
                rest /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            let mut stack = vec![rest];
            while let Some(x) = stack.pop() {
                if x == 1 {
                    continue;
                }
                if is_prime(x) {
                    *out.entry(x).or_insert(0) += 1;
                    continue;
                }
                let r = isqrt(x);
                if r * r == x {
                    stack.push(r);
                    stack.push(r);
                    continue;
                }
                let f = self.find_factor(x)?;
                stack.push(f);
                stack.push(x / f);
            }
        }
        Ok(out)
    }

    fn find_factor(&self, n: u128) -> Result<u128> {
        if n.is_multiple_of(2) {
            return Ok(2);
        }
        for c in 1..=u128::from(self.rho_attempts) {
            if let Some(f) = brent_rho(n, c, self.rho_iterations) {
                return Ok(f);
            }
        }
        Err(Error::Capacity(format!(
            "Pollard rho exhausted its budget on the composite {n}"
        )))
    }
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    if a >= n - b {
        a - (n - b)
    } else {
        a + b
    }
}

fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    if n <= u128::from(u64::MAX) {
        return (a % n) * (b % n) % n;
    }
    let (mut a, mut b) = (a % n, b % n);
    let mut acc = 0;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, n);
        }
        a = add_mod(a, a, n);
        b >>= 1;
    }
    acc
}

fn pow_mod(mut base: u128, mut exp: u128, n: u128) -> u128 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Miller-Rabin. Deterministic below 3.3e24, which covers the default bound.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let witness = |a: u128| -> bool {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            return false;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                return false;
            }
        }
        true
    };
    if MR_BASES.iter().any(|&a| witness(a)) {
        return false;
    }
    if n >= MR_DETERMINISTIC_BELOW {
        return !MR_EXTRA_BASES.iter().any(|&a| witness(a));
    }
    true
}

fn brent_rho(n: u128, c: u128, budget: u64) -> Option<u128> {
    let f = |x: u128| add_mod(mul_mod(x, x, n), c % n, n);
    let mut y: u128 = 2;
    let mut r: u64 = 1;
    let mut q: u128 = 1;
    let mut g: u128 = 1;
    let mut x = y;
    let mut ys = y;
    let m: u64 = 128;
    let mut spent: u64 = 0;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += m;
        }
        spent += r;
        if spent > budget {
            return None;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n && g != 1).then_some(g)
}
