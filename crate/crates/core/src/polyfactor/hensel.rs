//! Multifactor Hensel lifting by a balanced factor tree and quadratic steps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::modp::PolyModP;

/// Dense polynomial with coefficients reduced into `0..modulus`.
type ModPoly = Vec<BigInt>;

fn reduce(mut f: ModPoly, m: &BigInt) -> ModPoly {
    for c in f.iter_mut() {
        *c = c.mod_floor(m);
    }
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ModPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    reduce(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
        m,
    )
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ModPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    reduce(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
        m,
    )
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(out, m)
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (ModPoly, ModPoly) {
    let dh = h.len() - 1;
    debug_assert!(h[dh].is_one());
    if a.len() <= dh {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - dh];
    for k in (0..quot.len()).rev() {
        let q = rem[k + dh].mod_floor(m);
        if q.is_zero() {
            continue;
        }
        for (j, c) in h.iter().enumerate() {
            rem[k + j] -= &q * c;
        }
        quot[k] = q;
    }
    rem.truncate(dh);
    (reduce(quot, m), reduce(rem, m))
}

fn from_modp(f: &PolyModP) -> ModPoly {
    f.coeffs().iter().map(|c| BigInt::from(*c)).collect()
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

/// One quadratic step: from `f = g h`, `s g + t h = 1` mod `m` to the same mod `m^2`.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (ModPoly, ModPoly, ModPoly, ModPoly) {
    let e = sub(f, &mul(g, h, m2), m2);
    let (q, r) = div_rem_monic(&mul(s, &e, m2), h, m2);
    let g_new = add(g, &add(&mul(t, &e, m2), &mul(&q, g, m2), m2), m2);
    let h_new = add(h, &r, m2);
    let b = sub(&add(&mul(s, &g_new, m2), &mul(t, &h_new, m2), m2), &[BigInt::one()], m2);
    let (c, d) = div_rem_monic(&mul(s, &b, m2), &h_new, m2);
    let s_new = sub(s, &d, m2);
    let t_new = sub(t, &add(&mul(t, &b, m2), &mul(&c, &g_new, m2), m2), m2);
    (g_new, h_new, s_new, t_new)
}

/// Lifts `f = lc(f) * prod factors (mod p)` to `f = lc(f) * prod lifted (mod p^(2^k))`
/// where `p^(2^k)` is the first such power reaching `target`. Returns the
/// monic lifted factors in the input order and the final modulus.
pub(crate) fn lift(f: &[BigInt], factors: &[PolyModP], target: &BigInt) -> (Vec<ModPoly>, BigInt) {
    let p = BigInt::from(factors[0].modulus());
    let mut modulus = p.clone();
    while &modulus < target {
        modulus = &modulus * &modulus;
    }
    let f = reduce(f.to_vec(), &modulus);
    let mut out = Vec::with_capacity(factors.len());
    lift_tree(&f, factors, &p, &modulus, &mut out);
    (out, modulus)
}

fn lift_tree(f: &[BigInt], factors: &[PolyModP], p: &BigInt, modulus: &BigInt, out: &mut Vec<ModPoly>) {
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero polynomial");
        let inv = inv_mod_big(lc, modulus);
        out.push(reduce(f.iter().map(|c| c * &inv).collect(), modulus));
        return;
    }
    let prime = factors[0].modulus();
    let split = factors.len() / 2;
    let lc_mod_p = f
        .last()
        .expect("nonzero polynomial")
        .mod_floor(p)
        .to_u64()
        .expect("residue fits in u64");
    let left = factors[..split]
        .iter()
        .fold(PolyModP::new(prime, vec![lc_mod_p]), |acc, g| acc.mul(g));
    let right = factors[split..]
        .iter()
        .fold(PolyModP::new(prime, vec![1]), |acc, g| acc.mul(g));
    let (one, s0, t0) = left.ext_gcd(&right);
    debug_assert_eq!(one.degree(), 0);

    let (mut g, mut h, mut s, mut t) = (from_modp(&left), from_modp(&right), from_modp(&s0), from_modp(&t0));
    let mut m = p.clone();
    while &m < modulus {
        let m2 = &m * &m;
        let fm = reduce(f.to_vec(), &m2);
        (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &m2);
        m = m2;
    }
    lift_tree(&g, &factors[..split], p, modulus, out);
    lift_tree(&h, &factors[split..], p, modulus, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfactor::modp::factor_mod_p;
    use crate::polyfactor::poly::IntPolynomial;

    #[test]
    fn lifted_factors_multiply_back() {
        // x^4 - 10x^2 + 1 mod 23 splits into linear factors.
        let f = IntPolynomial::from_i64(&[1, 0, -10, 0, 1]);
        for p in [23u64, 13, 7] {
            let factors = factor_mod_p(&f, p).unwrap();
            let target = BigInt::from(10u64).pow(30);
            let (lifted, m) = lift(f.coeffs(), &factors, &target);
            assert!(m >= target);
            let prod = lifted.iter().fold(vec![BigInt::one()], |acc, g| mul(&acc, g, &m));
            assert_eq!(prod, reduce(f.coeffs().to_vec(), &m));
        }
    }

    #[test]
    fn non_monic_input() {
        // 6x^2 + 5x + 1 = (2x + 1)(3x + 1)
        let f = IntPolynomial::from_i64(&[1, 5, 6]);
        let factors = factor_mod_p(&f, 7).unwrap();
        let target = BigInt::from(1000);
        let (lifted, m) = lift(f.coeffs(), &factors, &target);
        let prod = lifted.iter().fold(vec![BigInt::from(6)], |acc, g| mul(&acc, g, &m));
        assert_eq!(prod, reduce(f.coeffs().to_vec(), &m));
    }
}
