//! Factorization of univariate polynomials over Q.
//!
//! Squarefree parts come from Yun's algorithm. Each part is factored modulo a
//! small prime (distinct-degree then Cantor-Zassenhaus), lifted with Hensel's
//! lemma and recombined by trial division over Z.

mod hensel;
mod modp;
mod poly;
mod zassenhaus;

pub use modp::{factor_degrees_mod_p, factor_mod_p, PolyModP};
pub use poly::IntPolynomial;
pub use zassenhaus::{
    factor_over_z, factor_over_z_with_prime, factor_rational, is_irreducible_over_q, ranked_primes,
    squarefree_decomposition, FactorizationResult, CANDIDATE_PRIMES, RECOMBINATION_CAP,
};
