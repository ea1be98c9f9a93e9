//! Exact integer and rational arithmetic in factored form, and the power-class
//! tests `x in D^p` and `x in -D^2`.

mod factor;
mod rational;

pub use factor::{is_prime, isqrt, Factorizer, DEFAULT_MAX_ABS, TRIAL_DIVISION_LIMIT};
pub use rational::{factor, in_dp, in_minus_d2, product_with_exponents, FactoredRational};
