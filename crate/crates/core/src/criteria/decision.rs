//! Per-prime verdicts and the overall full-degree decision.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::sp::{enumerate_sp, first_pth_power, SpElement};
use super::tower::{local_view, PrimeLocalView, RadicalTower};
use crate::arith::{product_with_exponents, FactoredRational};
use crate::error::{Error, Result};

/// Largest view length for which the product set over `p = 2` is scanned in full.
pub const MAX_DEFECT_SCAN_LEN: usize = 20;

/// A product-set element that is a `p`-th power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerWitness {
    pub element: SpElement,
    pub root: FactoredRational,
}

/// A choice of sign and exponents that makes `sign * 2d * prod_{j != i} N_j^e_j` a square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareWitness {
    /// View position `i` that is left out of the product.
    pub pivot: usize,
    /// Exponents over all view positions; the entry at `pivot` is always 0.
    pub exponents: Vec<u8>,
    pub sign: i8,
    pub square: FactoredRational,
    pub square_root: FactoredRational,
}

/// The unique element `M = -d^2` of the product set over `p = 2` and what it implies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectDatum {
    pub m: FactoredRational,
    /// 0/1 exponents over view positions with `M = prod N_i^f_i`.
    pub f: Vec<u8>,
    /// View positions with `f_i = 1`, ascending.
    pub m_sharp: Vec<usize>,
    pub d: FactoredRational,
    /// True when `4 | m_i(2)` for every position in `m_sharp`.
    pub support_divisible_by_four: bool,
    pub square_witness: Option<SquareWitness>,
    pub defective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalVerdict {
    Pass,
    PowerWitness(PowerWitness),
    Defect(DefectDatum),
}

impl LocalVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, LocalVerdict::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeReport {
    pub p: u64,
    /// Tower positions (0-based) of the entries with `p | m_i`.
    pub indices: Vec<usize>,
    pub local_m: Vec<u64>,
    pub verdict: LocalVerdict,
    /// At `p = 2`: the element `-d^2` when it exists but is not defective.
    pub near_defect: Option<DefectDatum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub full_degree: bool,
    pub product_degree: u128,
    pub per_prime: Vec<PrimeReport>,
    pub notes: Vec<String>,
}

/// Decision at an odd prime: passes iff no product-set element is a `p`-th power.
pub fn odd_prime_verdict(view: &PrimeLocalView) -> Result<LocalVerdict> {
    if view.p.is_multiple_of(2) {
        return Err(Error::Contract(format!("odd-prime verdict called with p = {}", view.p)));
    }
    power_verdict(view)
}

fn power_verdict(view: &PrimeLocalView) -> Result<LocalVerdict> {
    Ok(match first_pth_power(view)? {
        Some((element, root)) => LocalVerdict::PowerWitness(PowerWitness { element, root }),
        None => LocalVerdict::Pass,
    })
}

/// Exponents `f` with `target = prod N_i^f_i` modulo squares, solved over GF(2).
///
/// Requires the parity vectors of the radicands to be independent, which holds
/// when no product-set element is a square.
fn solve_parity(view: &PrimeLocalView, target: &FactoredRational) -> Option<Vec<u8>> {
    let primes: Vec<u128> = view
        .radicands
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|n| n.exponents().keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let columns: Vec<Vec<u8>> = view.radicands.iter().map(|n| n.parity_bits(&primes)).collect();
    let rhs = target.parity_bits(&primes);
    let rows = rhs.len();
    let cols = columns.len();
    // augmented matrix, row-major
    let mut a: Vec<Vec<u8>> = (0..rows)
        .map(|r| {
            let mut row: Vec<u8> = columns.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|i| a[*i][c] == 1) else {
            continue;
        };
        a.swap(r, pr);
        for i in 0..rows {
            if i != r && a[i][c] == 1 {
                let src = a[r].clone();
                a[i].iter_mut().zip(&src).for_each(|(x, y)| *x ^= y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != cols || a[r..].iter().any(|row| row[cols] == 1) {
        return None;
    }
    let mut f = vec![0u8; cols];
    for (row, c) in pivots.iter().enumerate() {
        f[*c] = a[row][cols];
    }
    Some(f)
}

fn square_witness_for(view: &PrimeLocalView, pivot: usize, two_d: &FactoredRational) -> Option<SquareWitness> {
    let others: Vec<usize> = (0..view.len()).filter(|j| *j != pivot).collect();
    for mask in 0u64..(1u64 << others.len()) {
        let mut exponents = vec![0u8; view.len()];
        for (bit, j) in others.iter().enumerate() {
            exponents[*j] = ((mask >> bit) & 1) as u8;
        }
        let exps: Vec<u32> = exponents.iter().map(|e| u32::from(*e)).collect();
        let product = product_with_exponents(&view.radicands, &exps)
            .expect("lengths agree by construction")
            .mul(two_d);
        for sign in [1i8, -1] {
            let candidate = if sign < 0 { product.neg() } else { product.clone() };
            if let Some(root) = candidate.pth_root(2) {
                return Some(SquareWitness {
                    pivot,
                    exponents,
                    sign,
                    square: candidate,
                    square_root: root,
                });
            }
        }
    }
    None
}

/// Looks for the element `-d^2` of the product set over `p = 2`.
///
/// The caller must have checked that no element is a square. Returns `None`
/// when no element is minus a square. The scan is exhaustive so the uniqueness
/// of that element is checked on every call.
pub fn find_defect(view: &PrimeLocalView) -> Result<Option<DefectDatum>> {
    if view.p != 2 {
        return Err(Error::Contract(format!("find_defect called with p = {}", view.p)));
    }
    if view.len() > MAX_DEFECT_SCAN_LEN {
        return Err(Error::Capacity(format!(
            "{} radicals with even index exceed the scan limit of {MAX_DEFECT_SCAN_LEN}",
            view.len()
        )));
    }
    let mut found: Vec<(SpElement, FactoredRational)> = Vec::new();
    for element in enumerate_sp(view) {
        if element.value.pth_root(2).is_some() {
            return Err(Error::Contract(format!(
                "find_defect requires no square in the product set, found {}",
                element.value
            )));
        }
        if let Some(d) = element.value.minus_square_root() {
            found.push((element, d));
        }
    }
    if found.len() > 1 {
        return Err(Error::Invariant(format!(
            "{} and {} are both minus a square although no product is a square",
            found[0].0.value, found[1].0.value
        )));
    }
    let Some((element, d)) = found.pop() else {
        return Ok(None);
    };

    let mut f: Vec<u8> = element.exponent_vector.iter().map(|e| *e as u8).collect();
    f.resize(view.len(), 0);
    let rederived = solve_parity(view, &element.value);
    if rederived.as_ref() != Some(&f) {
        return Err(Error::Invariant(format!(
            "exponents of {} are not uniquely determined (scan {:?}, elimination {:?})",
            element.value, f, rederived
        )));
    }
    let m_sharp: Vec<usize> = (0..view.len()).filter(|i| f[*i] == 1).collect();
    let support_divisible_by_four = m_sharp.iter().all(|i| view.local_m[*i].is_multiple_of(4));

    let two_d = d.mul(&FactoredRational::from_parts(false, [(2, 1)]));
    let square_witness = square_witness_for(view, m_sharp[0], &two_d);
    for other in &m_sharp[1..] {
        if square_witness_for(view, *other, &two_d).is_some() != square_witness.is_some() {
            return Err(Error::Invariant(format!(
                "square search differs between positions {} and {other}",
                m_sharp[0]
            )));
        }
    }
    let defective = support_divisible_by_four && square_witness.is_some();
    Ok(Some(DefectDatum {
        m: element.value,
        f,
        m_sharp,
        d,
        support_divisible_by_four,
        square_witness,
        defective,
    }))
}

/// Decision at `p = 2`. Besides the verdict, returns the non-defective `-d^2`
/// element when one exists.
pub fn prime_two_verdict(view: &PrimeLocalView) -> Result<(LocalVerdict, Option<DefectDatum>)> {
    if view.p != 2 {
        return Err(Error::Contract(format!("prime-two verdict called with p = {}", view.p)));
    }
    let verdict = power_verdict(view)?;
    if !verdict.passes() {
        return Ok((verdict, None));
    }
    Ok(match find_defect(view)? {
        Some(datum) if datum.defective => (LocalVerdict::Defect(datum), None),
        other => (LocalVerdict::Pass, other),
    })
}

/// Decides whether the tower has degree `m_1 * ... * m_l` over Q, prime by prime.
pub fn decide(tower: &RadicalTower) -> Result<DecisionReport> {
    let mut per_prime = Vec::new();
    let mut notes = Vec::new();
    for &p in tower.prime_support() {
        let view = local_view(tower, p)?;
        let (verdict, near_defect) = if p == 2 {
            prime_two_verdict(&view)?
        } else {
            (odd_prime_verdict(&view)?, None)
        };
        notes.push(explain(&view, &verdict, near_defect.as_ref()));
        per_prime.push(PrimeReport {
            p,
            indices: view.indices.clone(),
            local_m: view.local_m.clone(),
            verdict,
            near_defect,
        });
    }
    if per_prime.is_empty() {
        notes.push("every index is 1: the tower is Q itself and has degree 1".into());
    }
    Ok(DecisionReport {
        full_degree: per_prime.iter().all(|r| r.verdict.passes()),
        product_degree: tower.product_degree(),
        per_prime,
        notes,
    })
}

fn positions(view: &PrimeLocalView, local: &[usize]) -> String {
    let v: Vec<String> = local.iter().map(|i| (view.indices[*i] + 1).to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn explain(view: &PrimeLocalView, verdict: &LocalVerdict, near: Option<&DefectDatum>) -> String {
    let p = view.p;
    match verdict {
        LocalVerdict::PowerWitness(w) => format!(
            "p = {p}: the product {} with exponents {:?} over radicals {} is the {p}-th power of {}; the degree drops",
            w.element.value,
            w.element.exponent_vector,
            positions(view, &(0..=w.element.top_index).collect::<Vec<_>>()),
            w.root
        ),
        LocalVerdict::Defect(d) => {
            let w = d.square_witness.as_ref().expect("defective data carry a witness");
            format!(
                "p = 2: no product is a square, but M = {} = -({})^2 with support {}, every index there divisible by 4, \
                 and {}2*{} times the product over exponents {:?} (each in {{0,1}}) is the square of {}; the tower is 2-defective and the degree drops",
                d.m,
                d.d,
                positions(view, &d.m_sharp),
                if w.sign < 0 { "-" } else { "+" },
                d.d,
                w.exponents,
                w.square_root
            )
        }
        LocalVerdict::Pass => match near {
            Some(d) if !d.support_divisible_by_four => format!(
                "p = 2: M = {} = -({})^2 lies in the product set, but some index on its support {} is not divisible by 4; passes",
                d.m,
                d.d,
                positions(view, &d.m_sharp)
            ),
            Some(d) => format!(
                "p = 2: M = {} = -({})^2 lies in the product set, but no sign and exponents in {{0,1}} make +-2*{} times a product of the other radicands a square; passes",
                d.m, d.d, d.d
            ),
            None => format!(
                "p = {p}: none of the products over radicals {} is a {p}-th power{}; passes",
                positions(view, &(0..view.len()).collect::<Vec<_>>()),
                if p == 2 { " or minus a square" } else { "" }
            ),
        },
    }
}
