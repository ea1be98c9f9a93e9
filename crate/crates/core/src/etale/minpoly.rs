//! Minimal polynomials of algebra elements.
//!
//! The element is first rescaled into an integral model (radicands and
//! coefficients in Z), where its minimal polynomial is monic with integer
//! coefficients. Small algebras use fraction-free elimination on the Krylov
//! vectors; larger ones solve modulo word-sized primes, reconstruct by CRT and
//! check the result exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::algebra::{AlgebraElement, TensorAlgebra};
use crate::arith::is_prime;

/// Above this dimension the multi-modular path is used.
pub const EXACT_PATH_MAX_DIM: usize = 32;

/// `s * u` written on the basis `y^e` with `y_i = b_i x_i`, where `b_i` is the
/// denominator of `N_i`, so that `y_i^{m_i}` is an integer.
struct IntegralModel<'a> {
    algebra: &'a TensorAlgebra,
    coeffs: Vec<BigInt>,
    scale: BigInt,
    /// Integer wrap multipliers indexed by mask.
    wrap_factor: Vec<BigInt>,
    radicands: Vec<BigInt>,
}

impl<'a> IntegralModel<'a> {
    fn new(algebra: &'a TensorAlgebra, u: &AlgebraElement) -> Self {
        let moduli = algebra.moduli();
        let dens: Vec<BigInt> = algebra.radicands().iter().map(|n| n.denom().clone()).collect();
        let radicands: Vec<BigInt> = algebra
            .radicands()
            .iter()
            .zip(moduli)
            .map(|(n, m)| n.numer() * n.denom().pow(*m as u32 - 1))
            .collect();
        let basis = algebra.basis();
        let rescaled: Vec<BigRational> = u
            .coeffs()
            .iter()
            .zip(&basis)
            .map(|(c, e)| {
                let f = e
                    .iter()
                    .zip(&dens)
                    .fold(BigInt::one(), |acc, (x, b)| acc * b.pow(*x as u32));
                c / BigRational::from_integer(f)
            })
            .collect();
        let scale = rescaled.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = rescaled
            .iter()
            .map(|c| (c * BigRational::from_integer(scale.clone())).to_integer())
            .collect();
        let active = algebra.active();
        let wrap_factor = (0..1usize << active.len())
            .map(|mask| {
                active
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask & (1 << bit) != 0)
                    .fold(BigInt::one(), |acc, (_, i)| acc * &radicands[*i])
            })
            .collect();
        IntegralModel {
            algebra,
            coeffs,
            scale,
            wrap_factor,
            radicands,
        }
    }

    fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn multiply(&self, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim()];
        for (a, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (t, mask) = self.algebra.table(a, b);
                let term = x * y;
                out[t] += if mask == 0 {
                    term
                } else {
                    term * &self.wrap_factor[mask as usize]
                };
            }
        }
        out
    }

    fn multiply_mod(&self, u: &[u64], v: &[u64], wrap: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        for (a, x) in u.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (b, y) in v.iter().enumerate() {
                if *y == 0 {
                    continue;
                }
                let (t, mask) = self.algebra.table(a, b);
                let term = mul_mod(mul_mod(*x, *y, p), wrap[mask as usize], p);
                out[t] = (out[t] + term) % p;
            }
        }
        out
    }

    fn unit(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim()];
        v[0] = BigInt::one();
        v
    }

    /// Bound on the absolute value of any conjugate of the element.
    fn conjugate_bound(&self) -> BigInt {
        let size: BigInt = self.coeffs.iter().map(|c| c.abs()).sum();
        self.radicands
            .iter()
            .fold(size, |acc, n| acc * n.abs().max(BigInt::one()))
    }

    fn vanishes(&self, q: &[BigInt]) -> bool {
        let value = q.iter().rev().fold(vec![BigInt::zero(); self.dim()], |acc, c| {
            let mut next = self.multiply(&acc, &self.coeffs);
            next[0] += c;
            next
        });
        value.iter().all(|c| c.is_zero())
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut e, mut base, mut acc) = (p - 2, a % p, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Monic integer minimal polynomial of the integral element, lowest degree first.
fn exact_relation(model: &IntegralModel) -> Vec<BigInt> {
    // rows: (pivot, vector, tag) with tag recording the combination of powers
    let mut rows: Vec<(usize, Vec<BigInt>, Vec<BigInt>)> = Vec::new();
    let mut power = model.unit();
    for k in 0..=model.dim() {
        let mut w = power.clone();
        let mut tag = vec![BigInt::zero(); k + 1];
        tag[k] = BigInt::one();
        for (pivot, row, row_tag) in &rows {
            let c = w[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            let pv = &row[*pivot];
            for (x, r) in w.iter_mut().zip(row) {
                *x = &*x * pv - &c * r;
            }
            for (i, x) in tag.iter_mut().enumerate() {
                *x = &*x * pv - &c * row_tag.get(i).cloned().unwrap_or_default();
            }
            let g = w.iter().chain(tag.iter()).fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_one() && !g.is_zero() {
                w.iter_mut().chain(tag.iter_mut()).for_each(|x| *x /= &g);
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            Some(pivot) => rows.push((pivot, w, tag)),
            None => {
                let lead = tag[k].clone();
                return tag
                    .iter()
                    .map(|c| {
                        let (q, r) = c.div_rem(&lead);
                        debug_assert!(r.is_zero(), "minimal polynomial of an integral element is integral");
                        q
                    })
                    .collect();
            }
        }
        power = model.multiply(&power, &model.coeffs);
    }
    unreachable!("powers 1..u^dim are linearly dependent")
}

/// Monic minimal polynomial modulo `p`, lowest degree first.
fn modular_relation(model: &IntegralModel, p: u64) -> Vec<u64> {
    let big_p = BigInt::from(p);
    let reduce = |x: &BigInt| x.mod_floor(&big_p).to_u64().expect("residue fits");
    let u: Vec<u64> = model.coeffs.iter().map(reduce).collect();
    let wrap: Vec<u64> = model.wrap_factor.iter().map(reduce).collect();
    let dim = model.dim();
    let mut rows: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut power = vec![0u64; dim];
    power[0] = 1;
    for k in 0..=dim {
        let mut w = power.clone();
        let mut tag = vec![0u64; k + 1];
        tag[k] = 1;
        for (pivot, row, row_tag) in &rows {
            let c = w[*pivot];
            if c == 0 {
                continue;
            }
            // rows are normalized to pivot 1
            for (x, r) in w.iter_mut().zip(row) {
                *x = (*x + p - mul_mod(c, *r, p)) % p;
            }
            for (i, x) in tag.iter_mut().enumerate() {
                let r = row_tag.get(i).copied().unwrap_or(0);
                *x = (*x + p - mul_mod(c, r, p)) % p;
            }
        }
        match w.iter().position(|x| *x != 0) {
            Some(pivot) => {
                let inv = inv_mod(w[pivot], p);
                w.iter_mut()
                    .chain(tag.iter_mut())
                    .for_each(|x| *x = mul_mod(*x, inv, p));
                rows.push((pivot, w, tag));
            }
            None => {
                let inv = inv_mod(tag[k], p);
                return tag.iter().map(|x| mul_mod(*x, inv, p)).collect();
            }
        }
        power = model.multiply_mod(&power, &u, &wrap, p);
    }
    unreachable!("powers 1..u^dim are linearly dependent")
}

/// Primes just below 2^62, descending.
fn word_primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62))
        .rev()
        .step_by(2)
        .filter(|p| is_prime(u128::from(*p)))
}

fn multimodular_relation(model: &IntegralModel) -> Vec<BigInt> {
    let h = model.conjugate_bound();
    let mut residues: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut degree = 0;
    let mut modulus = BigInt::one();
    let mut primes = word_primes();
    let mut rounds = 0;
    loop {
        let p = primes.next().expect("infinitely many primes");
        let r = modular_relation(model, p);
        let k = r.len() - 1;
        // a modular degree below the true one marks an unlucky prime
        if k > degree {
            degree = k;
            residues.clear();
            modulus = BigInt::one();
        }
        if k < degree {
            continue;
        }
        residues.push((p, r));
        modulus *= p;
        let bound = (&h + 1u32).pow(degree as u32) * 2u32;
        if modulus <= bound {
            continue;
        }
        let q = crt(&residues, &modulus);
        if model.vanishes(&q) {
            return q;
        }
        rounds += 1;
        if rounds > 8 {
            return exact_relation(model);
        }
    }
}

fn crt(residues: &[(u64, Vec<u64>)], modulus: &BigInt) -> Vec<BigInt> {
    let len = residues[0].1.len();
    (0..len)
        .map(|j| {
            let mut x = BigInt::zero();
            let mut m = BigInt::one();
            for (p, r) in residues {
                let big_p = BigInt::from(*p);
                let current = x.mod_floor(&big_p).to_u64().expect("residue fits");
                let delta = (r[j] + p - current) % p;
                let m_mod = m.mod_floor(&big_p).to_u64().expect("residue fits");
                let t = mul_mod(delta, inv_mod(m_mod, *p), *p);
                x += &m * t;
                m *= *p;
            }
            if &x * 2 > *modulus {
                x - modulus
            } else {
                x
            }
        })
        .collect()
}

fn to_rational_minpoly(model: &IntegralModel, q: &[BigInt]) -> Vec<BigRational> {
    // minpoly of u from that of s*u: p(t) = q(s t) / s^k
    let k = q.len() - 1;
    let s = &model.scale;
    q.iter()
        .enumerate()
        .map(|(j, c)| BigRational::new(c * s.pow(j as u32), s.pow(k as u32)))
        .collect()
}

/// Monic minimal polynomial of `u` over Q, lowest degree first.
pub fn minimal_polynomial(algebra: &TensorAlgebra, u: &AlgebraElement) -> Vec<BigRational> {
    if algebra.dim() <= EXACT_PATH_MAX_DIM {
        minimal_polynomial_exact(algebra, u)
    } else {
        minimal_polynomial_multimodular(algebra, u)
    }
}

/// Fraction-free elimination over Z, independent of the algebra size.
pub fn minimal_polynomial_exact(algebra: &TensorAlgebra, u: &AlgebraElement) -> Vec<BigRational> {
    let model = IntegralModel::new(algebra, u);
    let q = exact_relation(&model);
    debug_assert!(model.vanishes(&q));
    to_rational_minpoly(&model, &q)
}

/// Modular elimination with CRT reconstruction, independent of the algebra size.
/// The reconstructed polynomial is checked to vanish at `u` exactly.
pub fn minimal_polynomial_multimodular(algebra: &TensorAlgebra, u: &AlgebraElement) -> Vec<BigRational> {
    let model = IntegralModel::new(algebra, u);
    let q = multimodular_relation(&model);
    to_rational_minpoly(&model, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::build_tower;
    use crate::etale::algebra::{build_algebra, MAX_DIM_LIMIT};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qs(c: &[i64]) -> Vec<BigRational> {
        c.iter().map(|x| q(*x, 1)).collect()
    }

    fn algebra(raw: &[(BigRational, u64)]) -> TensorAlgebra {
        build_algebra(&build_tower(raw).unwrap(), MAX_DIM_LIMIT).unwrap()
    }

    #[test]
    fn small_minimal_polynomials() {
        let a = algebra(&[(q(2, 1), 2)]);
        assert_eq!(minimal_polynomial(&a, &a.generator(0)), qs(&[-2, 0, 1]));
        assert_eq!(minimal_polynomial(&a, &a.one()), qs(&[-1, 1]));
        assert_eq!(minimal_polynomial(&a, &a.zero()), qs(&[0, 1]));

        let b = algebra(&[(q(2, 1), 2), (q(3, 1), 2)]);
        let s = b.linear_form(&qs(&[1, 1])).unwrap();
        assert_eq!(minimal_polynomial(&b, &s), qs(&[1, 0, -10, 0, 1]));
        assert_eq!(minimal_polynomial_multimodular(&b, &s), qs(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn rational_radicands_and_weights() {
        // x^2 = 1/2, u = x/3: u^2 = 1/18
        let a = algebra(&[(q(1, 2), 2)]);
        let u = a.scale(&a.generator(0), &q(1, 3));
        assert_eq!(minimal_polynomial(&a, &u), vec![q(-1, 18), q(0, 1), q(1, 1)]);
        // x^3 = 2/9
        let b = algebra(&[(q(2, 9), 3)]);
        let v = b.add(&b.generator(0), &b.one());
        let mp = minimal_polynomial(&b, &v);
        // (t - 1)^3 - 2/9
        assert_eq!(mp, vec![q(-11, 9), q(3, 1), q(-3, 1), q(1, 1)]);
        assert_eq!(minimal_polynomial_multimodular(&b, &v), mp);
        assert!(b.evaluate(&mp, &v).is_zero());
    }

    #[test]
    fn degenerate_elements_have_small_degree() {
        // x + y with x^2 = y^2 = 2 satisfies t (t^2 - 8)
        let a = algebra(&[(q(2, 1), 2), (q(2, 1), 2)]);
        let s = a.linear_form(&qs(&[1, 1])).unwrap();
        assert_eq!(minimal_polynomial(&a, &s), qs(&[0, -8, 0, 1]));
        assert_eq!(minimal_polynomial_multimodular(&a, &s), qs(&[0, -8, 0, 1]));
    }

    #[test]
    fn paths_agree_on_a_mixed_element() {
        let a = algebra(&[(q(-3, 2), 3), (q(5, 1), 4)]);
        let u = a
            .element((0..12).map(|i| q(i * 7 % 5 - 2, 1 + i % 3)).collect())
            .unwrap();
        let exact = minimal_polynomial_exact(&a, &u);
        assert_eq!(minimal_polynomial_multimodular(&a, &u), exact);
        assert!(a.evaluate(&exact, &u).is_zero());
    }
}
