//! The structured output document. Field names are a compatibility contract.
//! Rationals are rendered as strings (`"-5/9"`), positions are 1-based.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::FactoredRational;
use crate::criteria::{
    BinomialVerdict, DecisionReport, DefectDatum, LocalVerdict, PrimeReport, RadicalTower, ReducibleClause,
};
use crate::etale::{FieldTestResult, TensorAlgebra};
use crate::fuzz::{FuzzSummary, InstanceOutcome};
use crate::polyfactor::{FactorizationResult, IntPolynomial};

pub const TOOL: &str = "radical-degree";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct InputEntry {
    pub position: usize,
    pub radicand: String,
    pub index: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerWitnessDoc {
    pub value: String,
    /// Positions of the radicands in the product, with their exponents.
    pub positions: Vec<usize>,
    pub exponents: Vec<u32>,
    pub root: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SquareWitnessDoc {
    /// Position left out of the product.
    pub position: usize,
    /// Exponent (0 or 1) for each position of the prime's view.
    pub exponents: Vec<u8>,
    pub sign: i8,
    pub square: String,
    pub square_root: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DefectDoc {
    pub m: String,
    /// Exponent (0 or 1) for each position of the prime's view.
    pub f: Vec<u8>,
    pub m_sharp: Vec<usize>,
    pub d: String,
    pub support_divisible_by_four: bool,
    pub square_witness: Option<SquareWitnessDoc>,
    pub defective: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictDoc {
    Pass,
    PowerWitness(PowerWitnessDoc),
    Defect(DefectDoc),
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeDoc {
    pub p: u64,
    pub positions: Vec<usize>,
    pub local_m: Vec<u64>,
    pub verdict: VerdictDoc,
    pub near_defect: Option<DefectDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleDoc {
    pub dim: usize,
    pub is_field: bool,
    pub factor_degrees: Vec<usize>,
    pub generator: String,
    pub weights: Vec<i64>,
    /// Coefficients of the monic minimal polynomial, constant term first.
    pub minpoly: Vec<String>,
    pub minpoly_text: String,
    pub retries_used: u32,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub input: Vec<InputEntry>,
    pub ambient: crate::criteria::Ambient,
    pub product_degree: u128,
    pub lcm: u128,
    pub prime_support: Vec<u64>,
    pub full_degree: bool,
    pub per_prime: Vec<PrimeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
    pub notes: Vec<String>,
}

fn s(x: &FactoredRational) -> String {
    x.to_string()
}

fn defect_doc(r: &PrimeReport, d: &DefectDatum) -> DefectDoc {
    DefectDoc {
        m: s(&d.m),
        f: d.f.clone(),
        m_sharp: d.m_sharp.iter().map(|i| r.indices[*i] + 1).collect(),
        d: s(&d.d),
        support_divisible_by_four: d.support_divisible_by_four,
        square_witness: d.square_witness.as_ref().map(|w| SquareWitnessDoc {
            position: r.indices[w.pivot] + 1,
            exponents: w.exponents.clone(),
            sign: w.sign,
            square: s(&w.square),
            square_root: s(&w.square_root),
        }),
        defective: d.defective,
    }
}

fn prime_doc(r: &PrimeReport) -> PrimeDoc {
    let verdict = match &r.verdict {
        LocalVerdict::Pass => VerdictDoc::Pass,
        LocalVerdict::PowerWitness(w) => VerdictDoc::PowerWitness(PowerWitnessDoc {
            value: s(&w.element.value),
            positions: r.indices[..=w.element.top_index].iter().map(|i| i + 1).collect(),
            exponents: w.element.exponent_vector.clone(),
            root: s(&w.root),
        }),
        LocalVerdict::Defect(d) => VerdictDoc::Defect(defect_doc(r, d)),
    };
    PrimeDoc {
        p: r.p,
        positions: r.indices.iter().map(|i| i + 1).collect(),
        local_m: r.local_m.clone(),
        verdict,
        near_defect: r.near_defect.as_ref().map(|d| defect_doc(r, d)),
    }
}

pub fn report_document(
    command: &'static str,
    seed: u64,
    tower: &RadicalTower,
    report: &DecisionReport,
    oracle: Option<OracleDoc>,
) -> ReportDocument {
    ReportDocument {
        tool: TOOL,
        version: VERSION,
        command,
        seed,
        input: tower
            .entries()
            .iter()
            .enumerate()
            .map(|(i, r)| InputEntry {
                position: i + 1,
                radicand: s(&r.radicand),
                index: r.index,
            })
            .collect(),
        ambient: tower.ambient(),
        product_degree: report.product_degree,
        lcm: tower.lcm_m(),
        prime_support: tower.prime_support().to_vec(),
        full_degree: report.full_degree,
        per_prime: report.per_prime.iter().map(prime_doc).collect(),
        oracle,
        notes: report.notes.clone(),
    }
}

/// `t^4 - 10*t^2 + 1/2` style rendering, highest degree first.
pub fn rational_poly_text(coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let magnitude = c.abs();
        let show = i == 0 || !magnitude.is_one();
        if show {
            out.push_str(&magnitude.to_string());
        }
        match (i, show) {
            (0, _) => {}
            (1, true) => out.push_str(&format!("*{var}")),
            (1, false) => out.push_str(var),
            (_, true) => out.push_str(&format!("*{var}^{i}")),
            (_, false) => out.push_str(&format!("{var}^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn oracle_doc(algebra: &TensorAlgebra, result: &FieldTestResult, agrees: bool) -> OracleDoc {
    OracleDoc {
        dim: algebra.dim(),
        is_field: result.is_field,
        factor_degrees: result.factor_degrees.clone(),
        generator: algebra.format_element(&result.generator),
        weights: result.weights.clone(),
        minpoly: result.minpoly.iter().map(|c| c.to_string()).collect(),
        minpoly_text: rational_poly_text(&result.minpoly, "t"),
        retries_used: result.retries_used,
        agrees,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorDoc {
    pub polynomial: String,
    /// Constant term first.
    pub coefficients: Vec<String>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationDoc {
    pub unit: String,
    pub factors: Vec<FactorDoc>,
    pub irreducible: bool,
    pub agrees: bool,
}

/// Why `x^n - a` is reducible: `a = root^p` for a prime `p | n`, or `a = -4 c^4` with `4 | n`.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum ClauseDoc {
    PthPower { p: u64, root: String },
    MinusFourFourthPower { c: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct IrredDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub n: u64,
    pub a: String,
    pub polynomial: String,
    pub irreducible: bool,
    pub clause: Option<ClauseDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization: Option<FactorizationDoc>,
}

fn factor_doc(g: &IntPolynomial, e: u32) -> FactorDoc {
    FactorDoc {
        polynomial: g.to_string(),
        coefficients: g.coeffs().iter().map(|c| c.to_string()).collect(),
        multiplicity: e,
    }
}

pub fn irred_document(
    n: u64,
    a: &BigRational,
    binomial: &[BigRational],
    verdict: &BinomialVerdict,
    factorization: Option<&FactorizationResult>,
) -> IrredDocument {
    let clause = match verdict {
        BinomialVerdict::Irreducible => None,
        BinomialVerdict::Reducible(ReducibleClause::PthPower { p, root }) => {
            Some(ClauseDoc::PthPower { p: *p, root: s(root) })
        }
        BinomialVerdict::Reducible(ReducibleClause::MinusFourFourthPower { c }) => {
            Some(ClauseDoc::MinusFourFourthPower { c: s(c) })
        }
    };
    IrredDocument {
        tool: TOOL,
        version: VERSION,
        command: "irred",
        n,
        a: a.to_string(),
        polynomial: rational_poly_text(binomial, "x"),
        irreducible: verdict.is_irreducible(),
        clause,
        factorization: factorization.map(|f| FactorizationDoc {
            unit: f.unit.to_string(),
            factors: f.factors.iter().map(|(g, e)| factor_doc(g, *e)).collect(),
            irreducible: f.is_irreducible(),
            agrees: f.is_irreducible() == verdict.is_irreducible(),
        }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureDoc {
    pub index: usize,
    pub instance_seed: u64,
    pub tokens: String,
    pub check: String,
    pub detail: String,
    pub reproducer: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub count: usize,
    pub max_ell: usize,
    pub max_m: u64,
    pub max_abs_n: i64,
    pub max_dim: usize,
    pub primitive_sums: bool,
    pub instances: usize,
    pub agreements: usize,
    pub full_degree: usize,
    pub defective: usize,
    pub planted: usize,
    pub primitive_sums_checked: usize,
    pub failure: Option<FailureDoc>,
}

pub fn fuzz_document(summary: &FuzzSummary, reproducer: impl Fn(&InstanceOutcome) -> Vec<String>) -> FuzzDocument {
    let c = &summary.config;
    FuzzDocument {
        tool: TOOL,
        version: VERSION,
        command: "fuzz",
        seed: c.seed,
        count: c.count,
        max_ell: c.max_ell,
        max_m: c.max_m,
        max_abs_n: c.max_abs_n,
        max_dim: c.max_dim,
        primitive_sums: c.primitive_sums,
        instances: summary.instances,
        agreements: summary.agreements,
        full_degree: summary.full_degree,
        defective: summary.defective,
        planted: summary.planted,
        primitive_sums_checked: summary.primitive_sums_checked,
        failure: summary.first_failure.as_ref().map(|o| {
            let (check, detail) = o.failure.clone().expect("failing outcome");
            FailureDoc {
                index: o.instance.index,
                instance_seed: o.instance.seed,
                tokens: o.instance.tokens(),
                check,
                detail,
                reproducer: reproducer(o),
            }
        }),
    }
}
