use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// One radical on the command line, `N:m` with `N` an integer or `num/den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalToken {
    pub radicand: BigRational,
    pub index: u64,
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `-12`, `7`, `3/4`, `-5/9`. No `+`, whitespace or exponents.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let unsigned = text.strip_prefix('-').unwrap_or(text);
    let (num, den) = match unsigned.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (unsigned, None),
    };
    if !is_digits(num) || den.is_some_and(|d| !is_digits(d)) {
        return Err(Error::Parse(format!(
            "'{text}' is not an integer or a fraction num/den"
        )));
    }
    let mut n = BigInt::from_str(num).expect("digits parse");
    if unsigned.len() != text.len() {
        n = -n;
    }
    let d = den.map_or_else(|| BigInt::from(1), |d| BigInt::from_str(d).expect("digits parse"));
    if d.is_zero() {
        return Err(Error::Parse(format!("'{text}' has a zero denominator")));
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for RadicalToken {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (n, m) = text
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("'{text}' is not of the form N:m")))?;
        let radicand = parse_rational(n)?;
        if !is_digits(m) {
            return Err(Error::Parse(format!(
                "index '{m}' in '{text}' is not a nonnegative integer"
            )));
        }
        let index = m
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("index '{m}' in '{text}' is too large")))?;
        if index == 0 {
            return Err(Error::Domain(format!("index 0 in '{text}'")));
        }
        if radicand.is_zero() {
            return Err(Error::Domain(format!("radicand 0 in '{text}'")));
        }
        Ok(RadicalToken { radicand, index })
    }
}

impl fmt::Display for RadicalToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.radicand, self.index)
    }
}
