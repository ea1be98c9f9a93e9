use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::criteria::RadicalTower;
use crate::error::{Error, Result};

/// Default cap on the algebra dimension.
pub const DEFAULT_MAX_DIM: usize = 32;

/// Largest dimension the oracle accepts even when the cap is raised.
pub const MAX_DIM_LIMIT: usize = 64;

/// The algebra `Q[x_1..x_l]/(x_i^{m_i} - N_i)` on the monomial basis
/// `x^e`, `0 <= e_i < m_i`, ordered lexicographically with `x_1` most significant.
#[derive(Debug, Clone)]
pub struct TensorAlgebra {
    tower: RadicalTower,
    moduli: Vec<u64>,
    radicands: Vec<BigRational>,
    dim: usize,
    /// Positions with `m_i >= 2`; only these can wrap during multiplication.
    active: Vec<usize>,
    /// Basis index of the product of basis elements `a` and `b`, at `a * dim + b`.
    target: Vec<u32>,
    /// Bitmask over `active` of the coordinates that wrapped in that product.
    wrap: Vec<u8>,
    wrap_factor: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: Vec<BigRational>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

pub fn build_algebra(tower: &RadicalTower, max_dim: usize) -> Result<TensorAlgebra> {
    if max_dim > MAX_DIM_LIMIT {
        return Err(Error::Capacity(format!(
            "dimension cap {max_dim} exceeds the supported limit {MAX_DIM_LIMIT}"
        )));
    }
    let product = tower.product_degree();
    if product > max_dim as u128 {
        return Err(Error::Capacity(format!(
            "algebra dimension {product} exceeds the cap {max_dim}"
        )));
    }
    let dim = product as usize;
    let moduli: Vec<u64> = tower.entries().iter().map(|r| r.index).collect();
    let radicands: Vec<BigRational> = tower.entries().iter().map(|r| r.radicand.to_rational()).collect();
    let active: Vec<usize> = (0..moduli.len()).filter(|i| moduli[*i] >= 2).collect();

    let exps: Vec<Vec<u64>> = (0..dim).map(|k| exponents_of(&moduli, k)).collect();
    let mut target = Vec::with_capacity(dim * dim);
    let mut wrap = Vec::with_capacity(dim * dim);
    for a in &exps {
        for b in &exps {
            let mut mask = 0u8;
            let mut idx = 0usize;
            for (i, m) in moduli.iter().enumerate() {
                let mut e = a[i] + b[i];
                if e >= *m {
                    e -= m;
                    let bit = active
                        .iter()
                        .position(|j| *j == i)
                        .expect("wrapping coordinate is active");
                    mask |= 1 << bit;
                }
                idx = idx * (*m as usize) + e as usize;
            }
            target.push(idx as u32);
            wrap.push(mask);
        }
    }
    let wrap_factor = (0..1usize << active.len())
        .map(|mask| {
            active
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .fold(BigRational::one(), |acc, (_, i)| acc * &radicands[*i])
        })
        .collect();
    Ok(TensorAlgebra {
        tower: tower.clone(),
        moduli,
        radicands,
        dim,
        active,
        target,
        wrap,
        wrap_factor,
    })
}

fn exponents_of(moduli: &[u64], mut index: usize) -> Vec<u64> {
    let mut out = vec![0; moduli.len()];
    for (i, m) in moduli.iter().enumerate().rev() {
        out[i] = (index % *m as usize) as u64;
        index /= *m as usize;
    }
    out
}

impl TensorAlgebra {
    pub fn tower(&self) -> &RadicalTower {
        &self.tower
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn radicands(&self) -> &[BigRational] {
        &self.radicands
    }

    /// Exponent vectors of the basis monomials, in basis order.
    pub fn basis(&self) -> Vec<Vec<u64>> {
        (0..self.dim).map(|k| exponents_of(&self.moduli, k)).collect()
    }

    pub(crate) fn active(&self) -> &[usize] {
        &self.active
    }

    /// Product-table entry for basis elements `a` and `b`: target index and wrap mask.
    pub(crate) fn table(&self, a: usize, b: usize) -> (usize, u8) {
        let k = a * self.dim + b;
        (self.target[k] as usize, self.wrap[k])
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: vec![BigRational::zero(); self.dim],
        }
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(BigRational::one())
    }

    pub fn scalar(&self, c: BigRational) -> AlgebraElement {
        let mut u = self.zero();
        u.coeffs[0] = c;
        u
    }

    pub fn element(&self, coeffs: Vec<BigRational>) -> Result<AlgebraElement> {
        if coeffs.len() != self.dim {
            return Err(Error::Contract(format!(
                "element has {} coefficients, algebra has dimension {}",
                coeffs.len(),
                self.dim
            )));
        }
        Ok(AlgebraElement { coeffs })
    }

    /// The class of `x_i` (0-based). For `m_i = 1` this is the scalar `N_i`.
    pub fn generator(&self, i: usize) -> AlgebraElement {
        if self.moduli[i] == 1 {
            return self.scalar(self.radicands[i].clone());
        }
        let mut e = vec![0; self.moduli.len()];
        e[i] = 1;
        let mut u = self.zero();
        u.coeffs[self.index_of(&e)] = BigRational::one();
        u
    }

    /// `sum b_i x_i`.
    pub fn linear_form(&self, b: &[BigRational]) -> Result<AlgebraElement> {
        if b.len() != self.moduli.len() {
            return Err(Error::Contract(format!(
                "{} weights for {} radicals",
                b.len(),
                self.moduli.len()
            )));
        }
        Ok(b.iter().enumerate().fold(self.zero(), |acc, (i, c)| {
            self.add(&acc, &self.scale(&self.generator(i), c))
        }))
    }

    fn index_of(&self, e: &[u64]) -> usize {
        e.iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (x, m)| acc * *m as usize + *x as usize)
    }

    pub fn add(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: u.coeffs.iter().zip(&v.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, u: &AlgebraElement, c: &BigRational) -> AlgebraElement {
        AlgebraElement {
            coeffs: u.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn multiply(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for (a, x) in u.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in v.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (t, mask) = self.table(a, b);
                let term = x * y;
                out.coeffs[t] += if mask == 0 {
                    term
                } else {
                    term * &self.wrap_factor[mask as usize]
                };
            }
        }
        out
    }

    /// Evaluates a polynomial (lowest degree first) at `u` by Horner's rule.
    pub fn evaluate(&self, poly: &[BigRational], u: &AlgebraElement) -> AlgebraElement {
        poly.iter().rev().fold(self.zero(), |acc, c| {
            let mut next = self.multiply(&acc, u);
            next.coeffs[0] += c;
            next
        })
    }

    /// Human-readable form such as `3*x1 - 2*x2^3 + 1/2`.
    pub fn format_element(&self, u: &AlgebraElement) -> String {
        let mut out = String::new();
        // by total degree, then x1 before x2
        let mut order: Vec<(usize, Vec<u64>)> = (0..self.dim).map(|k| (k, exponents_of(&self.moduli, k))).collect();
        order.sort_by(|(_, a), (_, b)| {
            let (da, db): (u64, u64) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        for (k, e) in order {
            let c = &u.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x > 0)
                .map(|(i, x)| {
                    if *x == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{x}", i + 1)
                    }
                })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            let magnitude = c.abs();
            if monomial.is_empty() {
                let _ = write!(out, "{magnitude}");
            } else if magnitude.is_one() {
                out.push_str(&monomial.join("*"));
            } else {
                let _ = write!(out, "{magnitude}*{}", monomial.join("*"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::build_tower;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn algebra(raw: &[(i64, u64)]) -> TensorAlgebra {
        let raw: Vec<(BigRational, u64)> = raw.iter().map(|(n, m)| (q(*n), *m)).collect();
        build_algebra(&build_tower(&raw).unwrap(), MAX_DIM_LIMIT).unwrap()
    }

    #[test]
    fn dimensions_and_basis() {
        let a = algebra(&[(2, 2)]);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis(), vec![vec![0], vec![1]]);
        assert_eq!(algebra(&[(-1, 4), (2, 4)]).dim(), 16);
        let b = algebra(&[(2, 3), (3, 3)]);
        assert_eq!(b.dim(), 9);
        assert_eq!(b.basis()[5], vec![1, 2]);
        let raw = vec![(q(2), 4), (q(3), 4), (q(5), 8)];
        assert!(matches!(
            build_algebra(&build_tower(&raw).unwrap(), 64),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn reduction_rule() {
        let a = algebra(&[(2, 2)]);
        let x = a.generator(0);
        assert_eq!(a.multiply(&x, &x), a.scalar(q(2)));
        let one_plus_x = a.add(&a.one(), &x);
        let sq = a.multiply(&one_plus_x, &one_plus_x);
        assert_eq!(sq.coeffs(), &[q(3), q(2)]);
        assert_eq!(a.multiply(&one_plus_x, &a.one()), one_plus_x);
    }

    #[test]
    fn products_in_two_variables() {
        let a = algebra(&[(-1, 4), (2, 4)]);
        let x = a.generator(0);
        let y = a.generator(1);
        let x4 = [&x, &x, &x].iter().fold(x.clone(), |acc, v| a.multiply(&acc, v));
        assert_eq!(x4, a.scalar(q(-1)));
        let xy = a.multiply(&x, &y);
        assert_eq!(a.multiply(&xy, &y), a.multiply(&x, &a.multiply(&y, &y)));
        assert_eq!(a.format_element(&a.add(&xy, &a.scale(&y, &q(-3)))), "-3*x2 + x1*x2");
    }

    #[test]
    fn trivial_index_is_a_scalar() {
        let a = algebra(&[(5, 1), (2, 2)]);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.generator(0), a.scalar(q(5)));
        assert_eq!(a.format_element(&a.linear_form(&[q(1), q(1)]).unwrap()), "5 + x2");
    }
}
