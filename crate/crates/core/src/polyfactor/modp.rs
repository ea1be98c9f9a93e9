//! Polynomials over a prime field GF(p) with word-sized `p`, and their
//! complete factorization (distinct-degree splitting, then Cantor-Zassenhaus).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(p)) as u64
}

fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powm(a, p - 2, p)
}

impl PolyModP {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = PolyModP {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        out.trim();
        out
    }

    pub fn from_int(f: &IntPolynomial, p: u64) -> Self {
        let modulus = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                let r = ((c % &modulus) + &modulus) % &modulus;
                r.to_u64().expect("residue fits in u64")
            })
            .collect();
        Self::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn zero(p: u64) -> Self {
        PolyModP { p, coeffs: vec![] }
    }

    fn one(p: u64) -> Self {
        PolyModP { p, coeffs: vec![1] }
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Coefficients in `0..p`, lowest degree first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|x| mulm(*x, c, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n)
                .map(|i| (get(&self.coeffs, i) + get(&other.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n)
                .map(|i| (get(&self.coeffs, i) + self.p - get(&other.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = u128::from(self.p);
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + u128::from(*a) * u128::from(*b)) % p;
            }
        }
        Self::new(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial mod {}", self.p);
        let p = self.p;
        if self.degree() < divisor.degree() || self.is_zero() {
            return (Self::zero(p), self.clone());
        }
        let inv_lc = inv_mod(divisor.leading(), p);
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let q = mulm(rem[k + dd], inv_lc, p);
            if q == 0 {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mulm(q, *c, p)) % p;
            }
            quot[k] = q;
        }
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = inv_mod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| mulm(*c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).degree() == 0
    }

    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| BigInt::from(*c)).collect())
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) mod {}", self.to_int(), self.p)
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = PolyModP::x(p);
    let mut h = x.rem(&rest);
    let pe = BigUint::from(p);
    let mut d = 0;
    while rest.degree() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&pe, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            rest = rest.div_rem(&g).0.monic();
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest, deg));
    }
    out
}

fn random_poly(p: u64, below: usize, rng: &mut ChaCha8Rng) -> PolyModP {
    PolyModP::new(p, (0..below).map(|_| rng.gen_range(0..p)).collect())
}

/// Splits a monic squarefree product of irreducibles of degree `d` into its factors.
fn equal_degree(f: &PolyModP, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyModP> {
    if f.degree() == d {
        return vec![f.clone()];
    }
    let p = f.p;
    loop {
        let a = random_poly(p, f.degree(), rng);
        if a.degree() == 0 {
            continue;
        }
        let g = a.gcd(f);
        let candidate = if g.degree() > 0 {
            g
        } else if p == 2 {
            // trace map a + a^2 + ... + a^(2^(kd-1)) lands in GF(2) on each factor
            let two = BigUint::from(2u32);
            let mut term = a.rem(f);
            let mut trace = term.clone();
            for _ in 1..d {
                term = term.pow_mod(&two, f);
                trace = trace.add(&term);
            }
            trace.gcd(f)
        } else {
            let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod(&e, f).sub(&PolyModP::one(p));
            b.gcd(f)
        };
        if candidate.degree() > 0 && candidate.degree() < f.degree() {
            let other = f.div_rem(&candidate).0.monic();
            let mut out = equal_degree(&candidate, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Complete factorization of `f` modulo `p` into monic irreducibles, sorted.
///
/// `p` must not divide the leading coefficient and `f` must stay squarefree modulo `p`.
pub fn factor_mod_p(f: &IntPolynomial, p: u64) -> Result<Vec<PolyModP>> {
    let fp = PolyModP::from_int(f, p);
    if fp.degree() != f.degree() || f.is_zero() {
        return Err(Error::Contract(format!("{p} divides the leading coefficient of {f}")));
    }
    if !fp.is_squarefree() {
        return Err(Error::Domain(format!("{f} is not squarefree modulo {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ ((f.degree() as u64) << 32));
    let mut factors = Vec::new();
    for (g, d) in distinct_degree(&fp) {
        factors.extend(equal_degree(&g, d, &mut rng));
    }
    factors.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
    let product = factors
        .iter()
        .fold(PolyModP::one(p), |acc, g| acc.mul(g))
        .scale(fp.leading());
    if product != fp {
        return Err(Error::Invariant(format!(
            "modular factors of {f} mod {p} do not multiply back"
        )));
    }
    Ok(factors)
}

/// Degrees of the irreducible factors modulo `p` without splitting equal-degree
/// blocks: each block `(g, d)` contributes `deg g / d` copies of `d`.
pub fn factor_degrees_mod_p(f: &IntPolynomial, p: u64) -> Vec<usize> {
    let fp = PolyModP::from_int(f, p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&fp) {
        out.extend(std::iter::repeat_n(d, g.degree() / d));
    }
    out
}
