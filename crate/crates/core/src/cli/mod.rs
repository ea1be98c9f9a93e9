//! Command-line front end: `check`, `oracle`, `fuzz` and `irred`.
//!
//! Exit codes: 0 ok, 1 input error, 2 `--assert-full` failed, 3 criterion and
//! oracle disagree (or an internal check failed), 4 fuzz mismatch.

mod report;
mod token;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use report::{
    fuzz_document, irred_document, oracle_doc, rational_poly_text, report_document, ClauseDoc, DefectDoc, FactorDoc,
    FactorizationDoc, FailureDoc, FuzzDocument, InputEntry, IrredDocument, OracleDoc, PowerWitnessDoc, PrimeDoc,
    ReportDocument, SquareWitnessDoc, VerdictDoc, TOOL, VERSION,
};
pub use token::{parse_rational, RadicalToken};

use crate::arith::{FactoredRational, Factorizer};
use crate::criteria::{build_tower, decide, local_view, vahlen_capelli, verify_report, RadicalTower};
use crate::error::{Error, Result};
use crate::etale::{build_algebra, is_field, DEFAULT_MAX_DIM, EXACT_PATH_MAX_DIM};
use crate::fuzz::{self, FuzzConfig};
use crate::polyfactor::factor_rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_ASSERT_FULL: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;
pub const EXIT_FUZZ_MISMATCH: i32 = 4;

/// Longest prime view accepted at `p = 2` and at odd `p`.
pub const MAX_VIEW_LEN_TWO: usize = 12;
pub const MAX_VIEW_LEN_ODD: usize = 8;

#[derive(Debug, Parser)]
#[command(
    name = "radical-degree",
    version,
    about = "Degree of Q(N_1^(1/m_1), ..., N_l^(1/m_l)) over Q"
)]
pub struct Cli {
    /// Print only the structured JSON document.
    #[arg(long, global = true)]
    pub json: bool,
    /// Explain the verdict in prose on standard error.
    #[arg(long, global = true)]
    pub explain: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest algebra dimension the oracle builds (at most 64).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the tower has degree m_1 * ... * m_l.
    Check {
        /// Radicals as N:m, e.g. -1:4 2:4 or 3/4:3.
        #[arg(required = true, allow_hyphen_values = true)]
        tokens: Vec<String>,
        /// Exit with code 2 unless the degree is full.
        #[arg(long)]
        assert_full: bool,
    },
    /// Decide with the criteria and confirm by computing in the quotient algebra.
    Oracle {
        #[arg(required = true, allow_hyphen_values = true)]
        tokens: Vec<String>,
    },
    /// Compare criteria and oracle on random towers.
    Fuzz(FuzzArgs),
    /// Irreducibility of x^n - a over Q.
    Irred {
        n: u64,
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Also factor x^n - a and check agreement.
        #[arg(long)]
        factor: bool,
    },
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 3)]
    pub max_ell: usize,
    #[arg(long, default_value_t = 8)]
    pub max_m: u64,
    #[arg(long, default_value_t = 30)]
    pub max_abs_n: i64,
    /// Also check that x_1 + ... + x_l generates every full-degree instance.
    #[arg(long)]
    pub primitive: bool,
    /// Run only the instance with this instance seed.
    #[arg(long)]
    pub replay: Option<u64>,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) | Error::OracleInconclusive(_) => EXIT_DISAGREEMENT,
        _ => EXIT_INPUT,
    }
}

const SUBCOMMANDS: [&str; 4] = ["check", "oracle", "fuzz", "irred"];
const VALUE_FLAGS: [&str; 7] = [
    "--seed",
    "--max-dim",
    "--count",
    "--max-ell",
    "--max-m",
    "--max-abs-n",
    "--replay",
];

/// Moves flags in front of the positional arguments of the subcommand and
/// separates them with `--`, so that tokens such as `-1:4` are never read as flags.
fn normalize_args(args: Vec<OsString>) -> Vec<OsString> {
    let text: Vec<Option<&str>> = args.iter().map(|a| a.to_str()).collect();
    if text.iter().any(|t| t.is_none() || *t == Some("--")) {
        return args;
    }
    let text: Vec<&str> = text.into_iter().map(|t| t.unwrap()).collect();
    let mut i = 1;
    while i < text.len() && !SUBCOMMANDS.contains(&text[i]) {
        i += if VALUE_FLAGS.contains(&text[i]) { 2 } else { 1 };
    }
    if i >= text.len() {
        return args;
    }
    let mut flags = Vec::new();
    let mut positionals = Vec::new();
    let mut j = i + 1;
    while j < text.len() {
        let a = text[j];
        let negative_token = a.starts_with('-') && a[1..].starts_with(|c: char| c.is_ascii_digit());
        if a.starts_with('-') && !negative_token {
            flags.push(a);
            if VALUE_FLAGS.contains(&a) && j + 1 < text.len() {
                flags.push(text[j + 1]);
                j += 1;
            }
        } else {
            positionals.push(a);
        }
        j += 1;
    }
    let mut out: Vec<OsString> = text[..=i].iter().map(OsString::from).collect();
    out.extend(flags.into_iter().map(OsString::from));
    if !positionals.is_empty() {
        out.push("--".into());
        out.extend(positionals.into_iter().map(OsString::from));
    }
    out
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = normalize_args(args.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    match execute(&cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn parse_tower(tokens: &[String]) -> Result<RadicalTower> {
    let raw = tokens
        .iter()
        .map(|t| t.parse::<RadicalToken>().map(|t| (t.radicand, t.index)))
        .collect::<Result<Vec<_>>>()?;
    let tower = build_tower(&raw)?;
    for &p in tower.prime_support() {
        let len = local_view(&tower, p)?.len();
        let cap = if p == 2 { MAX_VIEW_LEN_TWO } else { MAX_VIEW_LEN_ODD };
        if len > cap {
            return Err(Error::Capacity(format!(
                "{len} radicals have index divisible by {p}; at most {cap} are accepted"
            )));
        }
    }
    Ok(tower)
}

/// The document printed by `check` for the given tokens.
pub fn check_report(tokens: &[String], seed: u64) -> Result<ReportDocument> {
    let tower = parse_tower(tokens)?;
    let report = decide(&tower)?;
    verify_report(&tower, &report)?;
    Ok(report_document("check", seed, &tower, &report, None))
}

/// The document printed by `oracle`: the decision plus the field test.
pub fn oracle_report(tokens: &[String], seed: u64, max_dim: usize) -> Result<ReportDocument> {
    let tower = parse_tower(tokens)?;
    let report = decide(&tower)?;
    verify_report(&tower, &report)?;
    let algebra = build_algebra(&tower, max_dim)?;
    let result = is_field(&algebra, seed)?;
    if !algebra.evaluate(&result.minpoly, &result.generator).is_zero() {
        return Err(Error::Invariant("oracle minimal polynomial does not vanish".into()));
    }
    let agrees = result.is_field == report.full_degree;
    Ok(report_document(
        "oracle",
        seed,
        &tower,
        &report,
        Some(oracle_doc(&algebra, &result, agrees)),
    ))
}

/// Runs the fuzz harness, or replays the single instance with seed `replay`.
pub fn fuzz_report(config: &FuzzConfig, replay: Option<u64>) -> Result<FuzzDocument> {
    if config.max_ell == 0 || config.max_m == 0 || config.max_abs_n <= 0 {
        return Err(Error::Domain(
            "--max-ell, --max-m and --max-abs-n must be positive".into(),
        ));
    }
    if config.max_dim > crate::etale::MAX_DIM_LIMIT {
        return Err(Error::Capacity(format!(
            "--max-dim {} exceeds {}",
            config.max_dim,
            crate::etale::MAX_DIM_LIMIT
        )));
    }
    let (summary, _) = match replay {
        Some(seed) => fuzz::replay(config, seed),
        None => fuzz::run(config),
    };
    Ok(fuzz_document(&summary, |o| fuzz::reproducer(config, o)))
}

/// The document printed by `irred`; `a` uses the radicand grammar.
pub fn irred_report(n: u64, a: &str, factor: bool) -> Result<IrredDocument> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let a = parse_rational(a)?;
    if a.is_zero() {
        return Err(Error::Domain("a must be nonzero".into()));
    }
    let fa = FactoredRational::from_ratio(a.numer(), a.denom(), &Factorizer::default())?;
    let verdict = vahlen_capelli(n, &fa)?;
    let len = usize::try_from(n).map_err(|_| Error::Capacity("n is too large".into()))?;
    let mut binomial = vec![BigRational::zero(); len + 1];
    binomial[0] = -a.clone();
    binomial[len] = BigRational::one();
    let factorization = if factor {
        Some(factor_rational(&binomial)?)
    } else {
        None
    };
    if let Some(f) = &factorization {
        // factor degrees divide the order of the splitting field's Galois group, which divides n * phi(n)
        let phi: u128 = Factorizer::default()
            .factor_u128(u128::from(n))?
            .iter()
            .map(|(p, e)| (p - 1) * p.pow(e - 1))
            .product();
        let bound = u128::from(n) * phi;
        if let Some(d) = f.degrees().into_iter().find(|d| !bound.is_multiple_of(*d as u128)) {
            return Err(Error::Invariant(format!(
                "factor of degree {d} does not divide n * phi(n) = {bound}"
            )));
        }
    }
    Ok(irred_document(n, &a, &binomial, &verdict, factorization.as_ref()))
}

fn emit_json<T: serde::Serialize>(io: &mut Io, doc: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(doc).map_err(|e| Error::Invariant(e.to_string()))?;
    let _ = writeln!(io.out, "{text}");
    Ok(())
}

fn execute(cli: &Cli, io: &mut Io) -> Result<i32> {
    match &cli.command {
        Command::Check { tokens, assert_full } => {
            let doc = check_report(tokens, cli.seed)?;
            print_report(cli, io, &doc)?;
            Ok(if *assert_full && !doc.full_degree {
                EXIT_ASSERT_FULL
            } else {
                EXIT_OK
            })
        }
        Command::Oracle { tokens } => {
            let product: u128 = tokens
                .iter()
                .filter_map(|t| t.parse::<RadicalToken>().ok())
                .fold(1u128, |acc, t| acc.saturating_mul(u128::from(t.index)));
            if cli.max_dim > EXACT_PATH_MAX_DIM && product > EXACT_PATH_MAX_DIM as u128 {
                let _ = writeln!(
                    io.err,
                    "warning: dimension {product} is above {EXACT_PATH_MAX_DIM}; using multi-modular elimination, this can take minutes"
                );
            }
            let doc = oracle_report(tokens, cli.seed, cli.max_dim)?;
            print_report(cli, io, &doc)?;
            let agrees = doc.oracle.as_ref().is_some_and(|o| o.agrees);
            Ok(if agrees { EXIT_OK } else { EXIT_DISAGREEMENT })
        }
        Command::Fuzz(args) => {
            let config = FuzzConfig {
                count: args.count,
                max_ell: args.max_ell,
                max_m: args.max_m,
                max_abs_n: args.max_abs_n,
                max_dim: cli.max_dim,
                seed: cli.seed,
                primitive_sums: args.primitive,
            };
            let doc = fuzz_report(&config, args.replay)?;
            if cli.json {
                emit_json(io, &doc)?;
            } else {
                let _ = writeln!(
                    io.out,
                    "{} instances, {} agreements ({} full degree, {} 2-defective, {} planted relations, {} primitive sums checked)",
                    doc.instances, doc.agreements, doc.full_degree, doc.defective, doc.planted, doc.primitive_sums_checked
                );
            }
            if let Some(f) = &doc.failure {
                let _ = writeln!(
                    io.err,
                    "mismatch at instance {} ({}): {} check failed: {}",
                    f.index, f.tokens, f.check, f.detail
                );
                let _ = writeln!(io.err, "reproduce with:");
                for line in &f.reproducer {
                    let _ = writeln!(io.err, "  {line}");
                }
                return Ok(EXIT_FUZZ_MISMATCH);
            }
            Ok(EXIT_OK)
        }
        Command::Irred { n, a, factor } => {
            let doc = irred_report(*n, a, *factor)?;
            if cli.json {
                emit_json(io, &doc)?;
            } else {
                let reason = match &doc.clause {
                    None => String::new(),
                    Some(ClauseDoc::PthPower { p, root }) => format!(" (a = ({root})^{p})"),
                    Some(ClauseDoc::MinusFourFourthPower { c }) => format!(" (a = -4*({c})^4)"),
                };
                let word = if doc.irreducible { "irreducible" } else { "reducible" };
                let _ = writeln!(io.out, "{}: {word}{reason}", doc.polynomial);
                if let Some(f) = &doc.factorization {
                    let parts: Vec<String> = f
                        .factors
                        .iter()
                        .map(|g| {
                            if g.multiplicity == 1 {
                                format!("({})", g.polynomial)
                            } else {
                                format!("({})^{}", g.polynomial, g.multiplicity)
                            }
                        })
                        .collect();
                    let unit = if f.unit == "1" {
                        String::new()
                    } else {
                        format!("{} * ", f.unit)
                    };
                    let _ = writeln!(io.out, "factors: {unit}{}", parts.join(" * "));
                }
            }
            if cli.explain {
                let _ = writeln!(
                    io.err,
                    "x^n - a is irreducible over Q iff a is not a p-th power for any prime p dividing n, and, when 4 divides n, a is not -4c^4"
                );
            }
            match &doc.factorization {
                Some(f) if !f.agrees => Ok(EXIT_DISAGREEMENT),
                _ => Ok(EXIT_OK),
            }
        }
    }
}

fn print_report(cli: &Cli, io: &mut Io, doc: &ReportDocument) -> Result<()> {
    if cli.json {
        emit_json(io, doc)?;
    } else {
        let tokens: Vec<String> = doc
            .input
            .iter()
            .map(|e| format!("{}:{}", e.radicand, e.index))
            .collect();
        let _ = writeln!(io.out, "tower: {}", tokens.join(" "));
        let _ = writeln!(
            io.out,
            "full degree: {} (m_1 * ... * m_l = {})",
            if doc.full_degree { "yes" } else { "no" },
            doc.product_degree
        );
        for p in &doc.per_prime {
            let line = match &p.verdict {
                report::VerdictDoc::Pass => "passes".to_string(),
                report::VerdictDoc::PowerWitness(w) => format!(
                    "{} = ({})^{} is a product of radicands at positions {:?} with exponents {:?}",
                    w.value, w.root, p.p, w.positions, w.exponents
                ),
                report::VerdictDoc::Defect(d) => {
                    format!("2-defective: M = {} = -({})^2 on positions {:?}", d.m, d.d, d.m_sharp)
                }
            };
            let _ = writeln!(io.out, "  p = {}: {line}", p.p);
        }
        if let Some(o) = &doc.oracle {
            let _ = writeln!(
                io.out,
                "oracle: {} (dimension {}, factor degrees {:?}, {})",
                if o.is_field { "field" } else { "not a field" },
                o.dim,
                o.factor_degrees,
                if o.agrees { "agrees" } else { "DISAGREES" }
            );
            let _ = writeln!(io.out, "  minimal polynomial of {}: {}", o.generator, o.minpoly_text);
        }
    }
    if cli.explain {
        for note in &doc.notes {
            let _ = writeln!(io.err, "{note}");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("radical-degree").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn negative_tokens_parse() {
        let (code, out, _) = call(&["check", "-1:4", "2:4"]);
        assert_eq!(code, 0);
        assert!(out.contains("full degree: no"), "{out}");
        let (code, _, _) = call(&["check", "-1:4", "2:4", "--assert-full"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["--json", "check", "6:4", "15:4", "-10:2", "--assert-full"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn flags_move_before_tokens() {
        let v = |xs: &[&str]| xs.iter().map(OsString::from).collect::<Vec<_>>();
        assert_eq!(
            normalize_args(v(&["rd", "--seed", "7", "oracle", "-1:4", "--max-dim", "16", "2:4"])),
            v(&["rd", "--seed", "7", "oracle", "--max-dim", "16", "--", "-1:4", "2:4"])
        );
        assert_eq!(
            normalize_args(v(&["rd", "irred", "4", "-4", "--factor"])),
            v(&["rd", "irred", "--factor", "--", "4", "-4"])
        );
        assert_eq!(
            normalize_args(v(&["rd", "fuzz", "--count", "0"])),
            v(&["rd", "fuzz", "--count", "0"])
        );
    }

    #[test]
    fn input_errors_exit_one() {
        assert_eq!(call(&["check", "0:3"]).0, 1);
        assert_eq!(call(&["check", "2:0"]).0, 1);
        assert_eq!(call(&["check", "2"]).0, 1);
        assert_eq!(call(&["check"]).0, 1);
        assert_eq!(call(&["irred", "4", "0"]).0, 1);
        assert_eq!(call(&["--max-dim", "8", "oracle", "2:4", "3:4"]).0, 1);
        assert_eq!(call(&["frobnicate"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn irred_output() {
        let (code, out, _) = call(&["irred", "4", "-4", "--factor"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "x^4 + 4: reducible (a = -4*(1)^4)\nfactors: (x^2 - 2*x + 2) * (x^2 + 2*x + 2)\n"
        );
    }
}
