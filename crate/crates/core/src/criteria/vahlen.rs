use serde::{Deserialize, Serialize};

use crate::arith::{FactoredRational, Factorizer};
use crate::error::{Error, Result};

/// Why `X^n - a` factors over Q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum ReducibleClause {
    /// `a = root^p` for a prime `p | n`.
    PthPower { p: u64, root: FactoredRational },
    /// `4 | n` and `a = -4 c^4`.
    MinusFourFourthPower { c: FactoredRational },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BinomialVerdict {
    Irreducible,
    Reducible(ReducibleClause),
}

impl BinomialVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, BinomialVerdict::Irreducible)
    }
}

/// Vahlen-Capelli: `X^n - a` is irreducible over Q iff `a` is not a `p`-th
/// power for any prime `p | n` and, when `4 | n`, `a` is not of the form `-4c^4`.
pub fn vahlen_capelli(n: u64, a: &FactoredRational) -> Result<BinomialVerdict> {
    if n == 0 {
        return Err(Error::Domain("binomial degree must be positive".into()));
    }
    let primes = Factorizer::default().factor_u128(u128::from(n))?;
    for p in primes.keys() {
        let p = *p as u64;
        if let Some(root) = a.pth_root(p) {
            return Ok(BinomialVerdict::Reducible(ReducibleClause::PthPower { p, root }));
        }
    }
    if n.is_multiple_of(4) {
        // a = -4c^4  <=>  -a/4 is a fourth power
        let quarter = FactoredRational::from_parts(false, [(2, -2)]);
        if let Some(c) = a.neg().mul(&quarter).pth_root(4) {
            return Ok(BinomialVerdict::Reducible(ReducibleClause::MinusFourFourthPower { c }));
        }
    }
    Ok(BinomialVerdict::Irreducible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor;

    fn fr(n: i64) -> FactoredRational {
        factor(&n.into()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            vahlen_capelli(4, &fr(-4)).unwrap(),
            BinomialVerdict::Reducible(ReducibleClause::MinusFourFourthPower { c: fr(1) })
        );
        assert_eq!(
            vahlen_capelli(2, &fr(9)).unwrap(),
            BinomialVerdict::Reducible(ReducibleClause::PthPower { p: 2, root: fr(3) })
        );
        assert!(vahlen_capelli(6, &fr(72)).unwrap().is_irreducible());
        assert!(matches!(vahlen_capelli(0, &fr(2)), Err(Error::Domain(_))));
    }

    #[test]
    fn degree_one_is_always_irreducible() {
        assert!(vahlen_capelli(1, &fr(1)).unwrap().is_irreducible());
        assert!(vahlen_capelli(1, &fr(-64)).unwrap().is_irreducible());
    }

    #[test]
    fn minus_four_c_to_the_fourth() {
        // -4 * 3^4 = -324; X^8 + 324 factors through X^4 + 324.
        let v = vahlen_capelli(8, &fr(-324)).unwrap();
        assert_eq!(
            v,
            BinomialVerdict::Reducible(ReducibleClause::MinusFourFourthPower { c: fr(3) })
        );
        // -64 = -4 * 2^4 is not a square, so only the second clause fires.
        let v = vahlen_capelli(8, &fr(-64)).unwrap();
        assert_eq!(
            v,
            BinomialVerdict::Reducible(ReducibleClause::MinusFourFourthPower { c: fr(2) })
        );
        assert!(vahlen_capelli(2, &fr(-4)).unwrap().is_irreducible());
    }
}
