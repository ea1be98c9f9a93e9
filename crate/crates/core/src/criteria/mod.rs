//! Exact decision of whether `Q[N_1^(1/m_1), ..., N_l^(1/m_l)]` has degree
//! `m_1 * ... * m_l`.
//!
//! The question splits over the primes `p | lcm(m_i)`. At an odd prime it comes
//! down to whether some product `N_1^e_1 ... N_{k-1}^e_{k-1} N_k` (`0 <= e_j < p`)
//! over the radicals with `p | m_i` is a `p`-th power. At `p = 2` there is one
//! extra obstruction, the 2-defective configuration, found by [`find_defect`].

mod decision;
mod gfp;
mod hasse;
mod sp;
mod tower;
mod vahlen;
mod verify;

pub use decision::{
    decide, find_defect, odd_prime_verdict, prime_two_verdict, DecisionReport, DefectDatum, LocalVerdict, PowerWitness,
    PrimeReport, SquareWitness, MAX_DEFECT_SCAN_LEN,
};
pub use hasse::{
    hasse_condition, hasse_condition_brute_force, power_product_is_rational, HasseOutcome, BRUTE_FORCE_LIMIT,
};
pub use sp::{enumerate_sp, first_pth_power, sp_size, SpElement, SpIter};
pub use tower::{build_tower, build_tower_with, local_view, p_part, Ambient, PrimeLocalView, Radical, RadicalTower};
pub use vahlen::{vahlen_capelli, BinomialVerdict, ReducibleClause};
pub use verify::verify_report;
