//! Independent re-check of the witnesses carried by a [`DecisionReport`].

use super::decision::{DecisionReport, DefectDatum, LocalVerdict, PowerWitness};
use super::tower::RadicalTower;
use crate::arith::{product_with_exponents, FactoredRational};
use crate::error::{Error, Result};

fn fail(msg: String) -> Error {
    Error::Invariant(msg)
}

fn check_power(radicands: &[FactoredRational], p: u64, w: &PowerWitness) -> Result<()> {
    let e = &w.element;
    if e.exponent_vector.len() != e.top_index + 1 || e.exponent_vector.last() != Some(&1) {
        return Err(fail(format!("malformed exponent vector {:?}", e.exponent_vector)));
    }
    if e.exponent_vector.iter().any(|x| u64::from(*x) >= p) {
        return Err(fail(format!("exponent vector {:?} leaves 0..{p}", e.exponent_vector)));
    }
    let value = product_with_exponents(&radicands[..=e.top_index], &e.exponent_vector)?;
    if value != e.value {
        return Err(fail(format!(
            "witness value {} does not match its exponents ({value})",
            e.value
        )));
    }
    if w.root.pow(p as i64) != value {
        return Err(fail(format!("{} is not the {p}-th power of {}", value, w.root)));
    }
    Ok(())
}

fn check_defect(radicands: &[FactoredRational], local_m: &[u64], d: &DefectDatum) -> Result<()> {
    let f: Vec<u32> = d.f.iter().map(|x| u32::from(*x)).collect();
    if f.len() != radicands.len() || product_with_exponents(radicands, &f)? != d.m {
        return Err(fail(format!("M = {} is not the product given by f = {:?}", d.m, d.f)));
    }
    if d.d.pow(2).neg() != d.m || d.d.is_negative() {
        return Err(fail(format!("M = {} is not -({})^2", d.m, d.d)));
    }
    let sharp: Vec<usize> = (0..f.len()).filter(|i| f[*i] == 1).collect();
    if sharp != d.m_sharp || sharp.is_empty() {
        return Err(fail(format!("support {:?} does not match f = {:?}", d.m_sharp, d.f)));
    }
    let by_four = sharp.iter().all(|i| local_m[*i].is_multiple_of(4));
    if by_four != d.support_divisible_by_four {
        return Err(fail("divisibility flag on the support is wrong".into()));
    }
    if let Some(w) = &d.square_witness {
        if !sharp.contains(&w.pivot) || w.exponents.get(w.pivot) != Some(&0) || w.exponents.len() != radicands.len() {
            return Err(fail(format!(
                "square witness exponents {:?} around position {}",
                w.exponents, w.pivot
            )));
        }
        if w.sign != 1 && w.sign != -1 {
            return Err(fail(format!("sign {} is not +-1", w.sign)));
        }
        let e: Vec<u32> = w.exponents.iter().map(|x| u32::from(*x)).collect();
        let two = FactoredRational::from_parts(false, [(2, 1)]);
        let mut square = two.mul(&d.d).mul(&product_with_exponents(radicands, &e)?);
        if w.sign < 0 {
            square = square.neg();
        }
        if square != w.square || w.square_root.pow(2) != square {
            return Err(fail(format!("{} is not the square of {}", w.square, w.square_root)));
        }
    }
    if d.defective != (by_four && d.square_witness.is_some()) {
        return Err(fail("defect flag disagrees with its conditions".into()));
    }
    Ok(())
}

/// Recomputes every witness in `report` from the tower alone. Returns an
/// invariant error describing the first inconsistency.
pub fn verify_report(tower: &RadicalTower, report: &DecisionReport) -> Result<()> {
    if report.product_degree != tower.product_degree() {
        return Err(fail("product degree mismatch".into()));
    }
    let primes: Vec<u64> = report.per_prime.iter().map(|r| r.p).collect();
    if primes != tower.prime_support() {
        return Err(fail(format!(
            "report covers primes {primes:?}, tower needs {:?}",
            tower.prime_support()
        )));
    }
    for r in &report.per_prime {
        let radicands: Vec<FactoredRational> = r.indices.iter().map(|i| tower.entries()[*i].radicand.clone()).collect();
        match &r.verdict {
            LocalVerdict::Pass => {}
            LocalVerdict::PowerWitness(w) => check_power(&radicands, r.p, w)?,
            LocalVerdict::Defect(d) => {
                if r.p != 2 || !d.defective {
                    return Err(fail(format!("defect reported at p = {} without defectiveness", r.p)));
                }
                check_defect(&radicands, &r.local_m, d)?;
            }
        }
        if let Some(d) = &r.near_defect {
            if d.defective {
                return Err(fail("a passing prime carries a defective datum".into()));
            }
            check_defect(&radicands, &r.local_m, d)?;
        }
    }
    if report.full_degree != report.per_prime.iter().all(|r| r.verdict.passes()) {
        return Err(fail("overall verdict disagrees with the per-prime verdicts".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{build_tower, decide};
    use num_rational::BigRational;

    fn tower(raw: &[(i64, u64)]) -> RadicalTower {
        let raw: Vec<_> = raw
            .iter()
            .map(|(n, m)| (BigRational::from_integer((*n).into()), *m))
            .collect();
        build_tower(&raw).unwrap()
    }

    #[test]
    fn reports_verify() {
        for raw in [
            vec![(-1, 4), (2, 4)],
            vec![(8, 3)],
            vec![(6, 4), (15, 4), (-10, 4)],
            vec![(6, 4), (15, 4), (-10, 2)],
            vec![(-4, 4)],
            vec![(2, 3), (4, 3)],
        ] {
            let t = tower(&raw);
            verify_report(&t, &decide(&t).unwrap()).unwrap();
        }
    }

    #[test]
    fn tampering_is_caught() {
        let t = tower(&[(2, 3), (4, 3)]);
        let mut report = decide(&t).unwrap();
        if let LocalVerdict::PowerWitness(w) = &mut report.per_prime[0].verdict {
            w.root = w.root.mul(&w.root);
        } else {
            panic!("expected a cube witness");
        }
        assert!(matches!(verify_report(&t, &report), Err(Error::Invariant(_))));

        let t = tower(&[(-4, 4)]);
        let mut report = decide(&t).unwrap();
        report.full_degree = true;
        assert!(verify_report(&t, &report).is_err());
    }
}
