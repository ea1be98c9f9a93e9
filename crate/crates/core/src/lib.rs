//! Degree criteria for repeated radical extensions of Q.
//!
//! [`criteria`] decides whether adjoining `N_i^(1/m_i)` for every `i` gives an
//! extension of degree `m_1 * ... * m_l`. [`etale`] answers the same question
//! independently by testing whether `Q[x_1..x_l]/(x_i^m_i - N_i)` is a field,
//! using the factorization engine in [`polyfactor`]. [`fuzz`] cross-checks the
//! two on random towers, and [`cli`] wraps everything in a command-line tool.

pub mod arith;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod etale;
pub mod fuzz;
pub mod polyfactor;

pub use error::{Error, Result};
