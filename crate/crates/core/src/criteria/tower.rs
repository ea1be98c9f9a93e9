use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{FactoredRational, Factorizer};
use crate::error::{Error, Result};

/// One radical: an `index`-th root of `radicand`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Radical {
    pub radicand: FactoredRational,
    pub index: u64,
}

/// The ordered input `(N_1, m_1), ..., (N_l, m_l)` with derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalTower {
    entries: Vec<Radical>,
    lcm: u128,
    product_degree: u128,
    prime_support: Vec<u64>,
}

/// Whether the ambient ring is Z (all radicands integral) or Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Z,
    Q,
}

impl RadicalTower {
    /// Builds a tower from radicands that are already factored.
    pub fn new(entries: Vec<Radical>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Domain("a tower needs at least one radical".into()));
        }
        let mut lcm: u128 = 1;
        let mut product_degree: u128 = 1;
        let mut primes = BTreeSet::new();
        let factorizer = Factorizer::default();
        for (i, r) in entries.iter().enumerate() {
            if r.index == 0 {
                return Err(Error::Domain(format!("radical {} has index 0", i + 1)));
            }
            let m = u128::from(r.index);
            lcm = lcm
                .checked_mul(m / lcm.gcd(&m))
                .ok_or_else(|| Error::Capacity("lcm of the indices overflows".into()))?;
            product_degree = product_degree
                .checked_mul(m)
                .ok_or_else(|| Error::Capacity("product of the indices overflows".into()))?;
            primes.extend(factorizer.factor_u128(m)?.into_keys().map(|p| p as u64));
        }
        Ok(RadicalTower {
            entries,
            lcm,
            product_degree,
            prime_support: primes.into_iter().collect(),
        })
    }

    pub fn entries(&self) -> &[Radical] {
        &self.entries
    }

    pub fn ell(&self) -> usize {
        self.entries.len()
    }

    pub fn lcm_m(&self) -> u128 {
        self.lcm
    }

    /// `m_1 * ... * m_l`.
    pub fn product_degree(&self) -> u128 {
        self.product_degree
    }

    /// Primes dividing the lcm of the indices, ascending.
    pub fn prime_support(&self) -> &[u64] {
        &self.prime_support
    }

    pub fn ambient(&self) -> Ambient {
        if self.entries.iter().all(|r| r.radicand.is_integral()) {
            Ambient::Z
        } else {
            Ambient::Q
        }
    }

    /// The tower with its entries reordered by `order` (a permutation of `0..l`).
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        Self::new(order.iter().map(|i| self.entries[*i].clone()).collect())
    }

    /// The tower restricted to the given positions, in the given order.
    pub fn subtower(&self, positions: &[usize]) -> Result<Self> {
        self.permuted(positions)
    }

    /// Restriction to `J(p)` with every index replaced by its `p`-part.
    pub fn p_part_tower(&self, p: u64) -> Result<Self> {
        let view = local_view(self, p)?;
        Self::new(
            view.indices
                .iter()
                .zip(&view.local_m)
                .map(|(i, m)| Radical {
                    radicand: self.entries[*i].radicand.clone(),
                    index: *m,
                })
                .collect(),
        )
    }
}

/// Factors and validates raw `(N, m)` pairs.
pub fn build_tower(raw: &[(BigRational, u64)]) -> Result<RadicalTower> {
    build_tower_with(raw, &Factorizer::default())
}

pub fn build_tower_with(raw: &[(BigRational, u64)], factorizer: &Factorizer) -> Result<RadicalTower> {
    let entries = raw
        .iter()
        .enumerate()
        .map(|(i, (n, m))| {
            if num_traits::Zero::is_zero(n) {
                return Err(Error::Domain(format!("radicand {} is zero", i + 1)));
            }
            if *m == 0 {
                return Err(Error::Domain(format!("radical {} has index 0", i + 1)));
            }
            Ok(Radical {
                radicand: FactoredRational::from_ratio(n.numer(), n.denom(), factorizer)?,
                index: *m,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    RadicalTower::new(entries)
}

/// The entries of a tower whose index is divisible by `p`, in their original
/// order, with the `p`-parts of their indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeLocalView {
    pub p: u64,
    /// Positions in the tower (0-based) of the entries with `p | m_i`.
    pub indices: Vec<usize>,
    /// `m_i(p)` for each position in `indices`.
    pub local_m: Vec<u64>,
    pub radicands: Vec<FactoredRational>,
}

impl PrimeLocalView {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Builds a view directly from radicands whose indices are all powers of `p`.
    pub fn from_radicands(p: u64, radicands: Vec<FactoredRational>, local_m: Vec<u64>) -> Self {
        PrimeLocalView {
            p,
            indices: (0..radicands.len()).collect(),
            local_m,
            radicands,
        }
    }
}

pub fn p_part(m: u64, p: u64) -> u64 {
    let mut part = 1;
    let mut rest = m;
    while rest.is_multiple_of(p) {
        rest /= p;
        part *= p;
    }
    part
}

pub fn local_view(tower: &RadicalTower, p: u64) -> Result<PrimeLocalView> {
    if !tower.prime_support.contains(&p) {
        return Err(Error::Domain(format!("{p} does not divide any index of the tower")));
    }
    let mut view = PrimeLocalView {
        p,
        indices: Vec::new(),
        local_m: Vec::new(),
        radicands: Vec::new(),
    };
    for (i, r) in tower.entries.iter().enumerate() {
        if r.index % p == 0 {
            view.indices.push(i);
            view.local_m.push(p_part(r.index, p));
            view.radicands.push(r.radicand.clone());
        }
    }
    Ok(view)
}
