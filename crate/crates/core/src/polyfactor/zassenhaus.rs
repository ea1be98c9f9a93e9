use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::hensel::{lift, mul};
use super::modp::{factor_degrees_mod_p, factor_mod_p, PolyModP};
use super::poly::IntPolynomial;
use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Number of usable primes inspected before choosing one to lift with.
pub const CANDIDATE_PRIMES: usize = 25;

/// Subsets tried during recombination before giving up on a prime.
pub const RECOMBINATION_CAP: u64 = 1 << 20;

/// Hard stop on the prime search for polynomials whose reductions are rarely squarefree.
const PRIME_SEARCH_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationResult {
    pub unit: BigRational,
    /// Irreducible primitive factors with positive leading coefficient and
    /// their multiplicities, sorted by degree then coefficients.
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl FactorizationResult {
    /// Degrees of the irreducible factors, repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat_n(g.degree(), *e as usize))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1 && self.factors[0].0.degree() >= 1
    }

    /// `unit * prod factor^multiplicity` with rational coefficients.
    pub fn expand(&self) -> Vec<BigRational> {
        let prod = self
            .factors
            .iter()
            .fold(IntPolynomial::one(), |acc, (g, e)| acc.mul(&g.pow(*e)));
        prod.coeffs()
            .iter()
            .map(|c| &self.unit * BigRational::from_integer(c.clone()))
            .collect()
    }
}

/// Yun's squarefree decomposition of a primitive polynomial: pairwise coprime
/// squarefree parts `a_i` with `f = prod a_i^i` up to sign. Parts equal to 1 are omitted.
pub fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    assert!(
        f.degree() >= 1,
        "squarefree decomposition needs a nonconstant polynomial"
    );
    let f = f.primitive_part();
    let mut out = Vec::new();
    let d = f.derivative();
    let a0 = f.gcd(&d).primitive_part();
    let mut b = f.div_exact(&a0).expect("gcd divides f").primitive_part();
    let mut c = d.div_exact(&a0).expect("gcd divides f'");
    let mut i = 1;
    loop {
        let bd = b.derivative();
        let diff = c.sub(&bd);
        if diff.is_zero() {
            if b.degree() >= 1 {
                out.push((b, i));
            }
            break;
        }
        let a = b.gcd(&diff).primitive_part();
        if a.degree() >= 1 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides b").primitive_part();
        c = diff.div_exact(&a).expect("gcd divides the difference");
        i += 1;
        if b.degree() == 0 {
            break;
        }
    }
    out
}

/// Chosen auxiliary prime with the data gathered while choosing it.
struct PrimeChoice {
    /// Degrees that some factor of `f` could have, from all inspected primes.
    allowed: BTreeSet<usize>,
    ranked: Vec<(usize, u64)>,
}

fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for d in degrees {
        let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(shifted);
    }
    sums
}

fn is_good_prime(f: &IntPolynomial, p: u64) -> bool {
    let fp = PolyModP::from_int(f, p);
    fp.degree() == f.degree() && fp.is_squarefree()
}

fn choose_prime(f: &IntPolynomial) -> Result<PrimeChoice> {
    let n = f.degree();
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut ranked = Vec::new();
    let mut p = 3u64;
    while ranked.len() < CANDIDATE_PRIMES && p < PRIME_SEARCH_LIMIT {
        if is_prime(u128::from(p)) && is_good_prime(f, p) {
            let degrees = factor_degrees_mod_p(f, p);
            allowed = allowed.intersection(&subset_sums(&degrees)).copied().collect();
            ranked.push((degrees.len(), p));
            if degrees.len() == 1 {
                break;
            }
        }
        p += 2;
    }
    if ranked.is_empty() {
        return Err(Error::Capacity(format!(
            "no odd prime below {PRIME_SEARCH_LIMIT} keeps {f} squarefree"
        )));
    }
    ranked.sort();
    Ok(PrimeChoice { allowed, ranked })
}

/// Bound on the coefficients of any factor of `f`: `2^deg(f) * ||f||_2`.
fn factor_coefficient_bound(f: &IntPolynomial) -> BigInt {
    let norm = f.norm_squared().sqrt() + BigInt::one();
    norm << f.degree()
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Zassenhaus recombination for a primitive squarefree `f` with positive
/// leading coefficient, lifting with prime `p`.
fn factor_squarefree_with_prime(f: &IntPolynomial, p: u64, allowed: &BTreeSet<usize>) -> Result<Vec<IntPolynomial>> {
    let modular = factor_mod_p(f, p)?;
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let bound = factor_coefficient_bound(f) * f.leading().abs() * 2;
    let (lifted, modulus) = lift(f.coeffs(), &modular, &bound);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut tried: u64 = 0;
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let subset: Vec<usize> = combo.iter().map(|i| remaining[*i]).collect();
            let degree: usize = subset.iter().map(|i| lifted[*i].len() - 1).sum();
            if allowed.contains(&degree) {
                tried += 1;
                if tried > RECOMBINATION_CAP {
                    return Err(Error::Capacity(format!(
                        "recombination of {} modular factors mod {p} exceeded {RECOMBINATION_CAP} subsets",
                        lifted.len()
                    )));
                }
                let lc = current.leading();
                let constant_ok = {
                    // cheap filter on constant terms before building the product
                    let c0 = subset
                        .iter()
                        .fold(lc.clone(), |acc, i| (acc * &lifted[*i][0]).mod_floor(&modulus));
                    let c0 = symmetric(&c0, &modulus);
                    let f0 = current.coeff(0) * &lc;
                    c0.is_zero() || (f0 % &c0).is_zero()
                };
                if constant_ok {
                    let product = subset
                        .iter()
                        .fold(vec![lc.clone()], |acc, i| mul(&acc, &lifted[*i], &modulus));
                    let candidate =
                        IntPolynomial::new(product.iter().map(|c| symmetric(c, &modulus)).collect()).primitive_part();
                    if let Some(quotient) = current.div_exact(&candidate) {
                        found.push(candidate);
                        current = quotient.primitive_part();
                        let chosen: BTreeSet<usize> = combo.iter().copied().collect();
                        remaining = remaining
                            .iter()
                            .enumerate()
                            .filter(|(pos, _)| !chosen.contains(pos))
                            .map(|(_, i)| *i)
                            .collect();
                        continue 'outer;
                    }
                }
            }
            if !next_combination(&mut combo, remaining.len()) {
                break;
            }
        }
        size += 1;
    }
    if current.degree() >= 1 {
        found.push(current);
    }
    Ok(found)
}

fn canonical_sort(factors: &mut [(IntPolynomial, u32)]) {
    factors.sort_by(|(a, ea), (b, eb)| (a.degree(), a.coeffs(), ea).cmp(&(b.degree(), b.coeffs(), eb)));
}

/// Factors a primitive squarefree polynomial of degree >= 1 with positive
/// leading coefficient. `forced_prime` overrides the prime choice.
fn factor_squarefree(f: &IntPolynomial, forced_prime: Option<u64>) -> Result<Vec<IntPolynomial>> {
    if f.degree() == 1 {
        return Ok(vec![f.clone()]);
    }
    if let Some(p) = forced_prime {
        if !is_good_prime(f, p) {
            return Err(Error::Domain(format!("{p} is not a usable prime for {f}")));
        }
        let allowed = subset_sums(&factor_degrees_mod_p(f, p));
        return factor_squarefree_with_prime(f, p, &allowed);
    }
    let choice = choose_prime(f)?;
    if choice.allowed.iter().all(|d| *d == 0 || *d == f.degree()) {
        return Ok(vec![f.clone()]);
    }
    let mut last_err = None;
    for (_, p) in &choice.ranked {
        match factor_squarefree_with_prime(f, *p, &choice.allowed) {
            Ok(v) => return Ok(v),
            Err(e @ Error::Capacity(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one prime was ranked"))
}

fn factor_impl(f: &IntPolynomial, forced_prime: Option<u64>) -> Result<FactorizationResult> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::Domain(format!("cannot factor the constant {f}")));
    }
    let (content, prim) = f.content_and_primitive();
    let mut factors: Vec<(IntPolynomial, u32)> = Vec::new();

    // strip powers of x first so the constant-term filter always applies
    let zeros = prim.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        factors.push((IntPolynomial::x(), zeros as u32));
    }
    let rest = IntPolynomial::new(prim.coeffs()[zeros..].to_vec());
    if rest.degree() >= 1 {
        let parts = if (3..200u64)
            .step_by(2)
            .any(|p| is_prime(u128::from(p)) && is_good_prime(&rest, p))
        {
            vec![(rest.clone(), 1)]
        } else {
            squarefree_decomposition(&rest)
        };
        for (part, multiplicity) in parts {
            for g in factor_squarefree(&part, forced_prime)? {
                factors.push((g, multiplicity));
            }
        }
    }
    canonical_sort(&mut factors);
    let result = FactorizationResult {
        unit: BigRational::from_integer(content),
        factors,
    };
    let expanded = result.expand();
    let original: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    if expanded != original {
        return Err(Error::Invariant(format!("factors of {f} do not multiply back")));
    }
    Ok(result)
}

/// Complete factorization over Q of an integer polynomial of degree >= 1.
pub fn factor_over_z(f: &IntPolynomial) -> Result<FactorizationResult> {
    factor_impl(f, None)
}

/// Same as [`factor_over_z`] but lifting with the given prime.
pub fn factor_over_z_with_prime(f: &IntPolynomial, p: u64) -> Result<FactorizationResult> {
    factor_impl(f, Some(p))
}

/// Factorization of a polynomial with rational coefficients (given lowest degree first).
pub fn factor_rational(coeffs: &[BigRational]) -> Result<FactorizationResult> {
    let (g, scale) = IntPolynomial::from_rationals(coeffs);
    let mut result = factor_over_z(&g)?;
    result.unit *= scale;
    Ok(result)
}

pub fn is_irreducible_over_q(f: &IntPolynomial) -> Result<bool> {
    if f.degree() == 0 {
        return Err(Error::Domain("constants are neither irreducible nor reducible".into()));
    }
    Ok(factor_over_z(f)?.is_irreducible())
}

/// Usable auxiliary primes for `f`, best first (fewest modular factors).
pub fn ranked_primes(f: &IntPolynomial) -> Result<Vec<u64>> {
    Ok(choose_prime(&f.primitive_part())?
        .ranked
        .into_iter()
        .map(|(_, p)| p)
        .collect())
}
