use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::factor::Factorizer;
use crate::error::{Error, Result};

/// A nonzero rational number kept as a sign and a prime-to-exponent map.
///
/// Negative exponents encode the denominator. The map never stores a zero
/// exponent, so equality of values is equality of representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactoredRational {
    negative: bool,
    exponents: BTreeMap<u128, i64>,
}

impl FactoredRational {
    pub fn one() -> Self {
        FactoredRational {
            negative: false,
            exponents: BTreeMap::new(),
        }
    }

    pub fn minus_one() -> Self {
        FactoredRational {
            negative: true,
            exponents: BTreeMap::new(),
        }
    }

    /// Builds a value from a sign and exponents, dropping zero entries.
    ///
    /// Keys are trusted to be prime; use [`crate::arith::factor`] to build values from integers.
    pub fn from_parts(negative: bool, exponents: impl IntoIterator<Item = (u128, i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (p, e) in exponents {
            *map.entry(p).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        FactoredRational {
            negative,
            exponents: map,
        }
    }

    pub fn from_integer(n: &BigInt, factorizer: &Factorizer) -> Result<Self> {
        let (negative, map) = factorizer.factor_bigint(n)?;
        Ok(Self::from_parts(
            negative,
            map.into_iter().map(|(p, e)| (p, i64::from(e))),
        ))
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, factorizer: &Factorizer) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let n = Self::from_integer(num, factorizer)?;
        let d = Self::from_integer(den, factorizer)?;
        Ok(n.mul(&d.inv()))
    }

    /// `-1` for negative values, `+1` otherwise.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &BTreeMap<u128, i64> {
        &self.exponents
    }

    pub fn exponent(&self, p: u128) -> i64 {
        self.exponents.get(&p).copied().unwrap_or(0)
    }

    /// True when the value lies in Z (no negative exponents).
    pub fn is_integral(&self) -> bool {
        self.exponents.values().all(|e| *e > 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (p, e) in &other.exponents {
            let slot = exponents.entry(*p).or_insert(0);
            *slot += e;
        }
        exponents.retain(|_, e| *e != 0);
        FactoredRational {
            negative: self.negative ^ other.negative,
            exponents,
        }
    }

    pub fn inv(&self) -> Self {
        FactoredRational {
            negative: self.negative,
            exponents: self.exponents.iter().map(|(p, e)| (*p, -e)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        FactoredRational {
            negative: !self.negative,
            exponents: self.exponents.clone(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        FactoredRational {
            negative: self.negative && k % 2 != 0,
            exponents: self.exponents.iter().map(|(p, e)| (*p, e * k)).collect(),
        }
    }

    /// The exact value as a rational number.
    pub fn to_rational(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in &self.exponents {
            let factor = num_traits::pow(BigInt::from(*p), e.unsigned_abs() as usize);
            if *e > 0 {
                num *= factor;
            } else {
                den *= factor;
            }
        }
        if self.negative {
            num = -num;
        }
        BigRational::new(num, den)
    }

    /// The value as an integer, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integral().then(|| self.to_rational().to_integer())
    }

    /// Returns `r` with `r^p == self` when `self` is a `p`-th power.
    ///
    /// For odd `p` the sign is carried by the root; for `p = 2` the value must
    /// be positive. The same test serves `Z` and `Q`, because an integer that is
    /// a `p`-th power of a rational is the `p`-th power of an integer.
    pub fn pth_root(&self, p: u64) -> Option<Self> {
        assert!(p >= 2, "root index must be at least 2");
        let p = p as i64;
        if self.negative && p % 2 == 0 {
            return None;
        }
        if self.exponents.values().any(|e| e % p != 0) {
            return None;
        }
        Some(FactoredRational {
            negative: self.negative,
            exponents: self.exponents.iter().map(|(q, e)| (*q, e / p)).collect(),
        })
    }

    /// Returns the positive `d` with `self == -d^2`, if any.
    pub fn minus_square_root(&self) -> Option<Self> {
        if !self.negative {
            return None;
        }
        self.neg().pth_root(2)
    }

    /// Exponent parity vector over GF(2): the sign bit followed by exponents mod 2 at `primes`.
    pub(crate) fn parity_bits(&self, primes: &[u128]) -> Vec<u8> {
        std::iter::once(u8::from(self.negative))
            .chain(primes.iter().map(|p| (self.exponent(*p).rem_euclid(2)) as u8))
            .collect()
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.to_rational();
        if q.is_integer() {
            write!(f, "{}", q.numer())
        } else {
            write!(f, "{}/{}", q.numer(), q.denom())
        }
    }
}

/// Free-function form of [`FactoredRational::pth_root`].
pub fn in_dp(x: &FactoredRational, p: u64) -> Option<FactoredRational> {
    x.pth_root(p)
}

/// Free-function form of [`FactoredRational::minus_square_root`].
pub fn in_minus_d2(x: &FactoredRational) -> Option<FactoredRational> {
    x.minus_square_root()
}

/// `prod values[i]^exps[i]` in factored form.
pub fn product_with_exponents(values: &[FactoredRational], exps: &[u32]) -> Result<FactoredRational> {
    if values.len() != exps.len() {
        return Err(Error::Contract(format!(
            "{} values but {} exponents",
            values.len(),
            exps.len()
        )));
    }
    Ok(values
        .iter()
        .zip(exps)
        .filter(|(_, e)| **e != 0)
        .fold(FactoredRational::one(), |acc, (v, e)| acc.mul(&v.pow(i64::from(*e)))))
}

/// Factors a nonzero integer with the default factorizer.
pub fn factor(n: &BigInt) -> Result<FactoredRational> {
    FactoredRational::from_integer(n, &Factorizer::default())
}
