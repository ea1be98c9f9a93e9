//! Acceptance suite. Prints one PASS/FAIL line per criterion with its time
//! budget and exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{q, tower};
use radical_degree::arith::factor;
use radical_degree::cli::{check_report, oracle_report, ReportDocument, VerdictDoc};
use radical_degree::criteria::{decide, vahlen_capelli, RadicalTower};
use radical_degree::etale::{build_algebra, verify_primitive_sum};
use radical_degree::fuzz::{self, FuzzConfig, FuzzInstance};
use radical_degree::polyfactor::{is_irreducible_over_q, IntPolynomial};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn tokens(t: &[&str]) -> Vec<String> {
    t.iter().map(|s| s.to_string()).collect()
}

fn check(t: &[&str]) -> Result<ReportDocument, String> {
    check_report(&tokens(t), 0).map_err(|e| e.to_string())
}

fn oracle(t: &[&str], seed: u64, max_dim: usize) -> Result<ReportDocument, String> {
    oracle_report(&tokens(t), seed, max_dim).map_err(|e| e.to_string())
}

fn degrees(doc: &ReportDocument) -> Vec<usize> {
    doc.oracle
        .as_ref()
        .map(|o| o.factor_degrees.clone())
        .unwrap_or_default()
}

fn is_field(doc: &ReportDocument) -> bool {
    doc.oracle.as_ref().is_some_and(|o| o.is_field)
}

fn agrees(doc: &ReportDocument) -> bool {
    doc.oracle.as_ref().is_some_and(|o| o.agrees)
}

fn classic_counterexample() -> Outcome {
    let c = check(&["-1:4", "2:4"])?;
    ensure(!c.full_degree, "check -1:4 2:4 reports full degree")?;
    let o = oracle(&["-1:4", "2:4"], 7, 32)?;
    ensure(!is_field(&o), "oracle reports a field")?;
    ensure(degrees(&o) == [8, 8], format!("factor degrees {:?}", degrees(&o)))?;
    Ok("not full; oracle factor degrees [8, 8], so the degree is 8".into())
}

fn odd_prime_desk_case() -> Outcome {
    ensure(check(&["2:3", "3:3"])?.full_degree, "2:3 3:3 not full")?;
    let o = oracle(&["2:3", "3:3"], 0, 32)?;
    ensure(
        is_field(&o) && o.oracle.as_ref().unwrap().dim == 9,
        "2:3 3:3 oracle is not a field of dim 9",
    )?;
    let c = check(&["2:3", "4:3"])?;
    ensure(!c.full_degree, "2:3 4:3 full")?;
    match &c.per_prime[0].verdict {
        VerdictDoc::PowerWitness(w) => ensure(
            w.value == "8" && w.root == "2",
            format!("witness {} root {}", w.value, w.root),
        )?,
        v => return Err(format!("unexpected verdict {v:?}")),
    }
    let o = oracle(&["2:3", "4:3"], 0, 32)?;
    ensure(degrees(&o) == [3, 6], format!("factor degrees {:?}", degrees(&o)))?;
    Ok("2:3 3:3 full (field of dim 9); 2:3 4:3 blocked by 8 = 2^3, degrees [3, 6]".into())
}

fn minimal_defective_pair() -> Outcome {
    let c = check(&["-4:4"])?;
    ensure(!c.full_degree, "-4:4 full")?;
    match &c.per_prime[0].verdict {
        VerdictDoc::Defect(d) => {
            let w = d.square_witness.as_ref().ok_or("no square witness")?;
            ensure(
                d.d == "2" && w.sign == 1 && w.square == "4",
                format!("d = {}, witness {}", d.d, w.square),
            )?;
        }
        v => return Err(format!("unexpected verdict {v:?}")),
    }
    ensure(check(&["-1:4"])?.full_degree, "-1:4 not full")?;
    for t in [["-4:4"], ["-1:4"]] {
        let o = oracle(&t, 0, 32)?;
        ensure(
            agrees(&o) && o.oracle.as_ref().unwrap().dim == 4,
            format!("oracle disagrees on {}", t[0]),
        )?;
    }
    Ok("-4:4 defective with d = 2 and 2d = 4 a square; -1:4 full; oracle agrees at dim 4".into())
}

fn triple_family() -> Outcome {
    let full = ["6:4", "15:4", "-10:2"];
    ensure(check(&full)?.full_degree, "6:4 15:4 -10:2 not full")?;
    let start = Instant::now();
    let o = oracle(&full, 0, 32)?;
    ensure(is_field(&o) && agrees(&o), "oracle does not confirm a field at dim 32")?;
    ensure(
        start.elapsed() <= Duration::from_secs(120),
        "dim 32 oracle over its 120 s budget",
    )?;
    let blocked = ["6:4", "15:4", "-10:4"];
    let c = check(&blocked)?;
    ensure(!c.full_degree, "6:4 15:4 -10:4 full")?;
    match &c.per_prime[0].verdict {
        VerdictDoc::Defect(d) => ensure(d.m == "-900" && d.d == "30", format!("M = {}, d = {}", d.m, d.d))?,
        v => return Err(format!("unexpected verdict {v:?}")),
    }
    // +-2A = +-4 is a square, so the clause protecting full degree fails
    ensure(
        factor(&BigInt::from(4)).unwrap().pth_root(2).is_some(),
        "2A = 4 not a square",
    )?;
    let big = oracle(&blocked, 0, 64)?;
    ensure(!is_field(&big) && agrees(&big), "oracle disagrees at dim 64")?;
    Ok(format!(
        "full at dim 32 (oracle field); blocked at dim 64 with M = -900, d = 30 (oracle degrees {:?})",
        degrees(&big)
    ))
}

fn binomial_exhaustive() -> Outcome {
    let mut checked = 0;
    for n in 2..=12u64 {
        for a in -50i64..=50 {
            if a == 0 {
                continue;
            }
            let vc = vahlen_capelli(n, &factor(&BigInt::from(a)).unwrap()).map_err(|e| e.to_string())?;
            let direct = is_irreducible_over_q(&IntPolynomial::binomial(n as usize, &BigInt::from(a)))
                .map_err(|e| e.to_string())?;
            ensure(vc.is_irreducible() == direct, format!("mismatch at x^{n} - ({a})"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} binomials, 0 mismatches"))
}

fn fuzz_config() -> FuzzConfig {
    FuzzConfig {
        count: 500,
        max_ell: 3,
        max_m: 8,
        max_abs_n: 30,
        max_dim: 24,
        seed: 1,
        primitive_sums: false,
    }
}

fn fuzz_equivalence(full_degree: &mut Vec<FuzzInstance>) -> Outcome {
    let (summary, outcomes) = fuzz::run(&fuzz_config());
    if let Some(f) = &summary.first_failure {
        let (check, detail) = f.failure.clone().unwrap_or_default();
        return Err(format!(
            "instance {} ({}): {check}: {detail}",
            f.instance.index,
            f.instance.tokens()
        ));
    }
    ensure(summary.agreements == 500, format!("{} agreements", summary.agreements))?;
    full_degree.extend(outcomes.into_iter().filter(|o| o.full_degree).map(|o| o.instance));
    Ok(format!(
        "500 agreements ({} full degree, {} 2-defective, {} planted)",
        summary.full_degree, summary.defective, summary.planted
    ))
}

fn raw(instance: &FuzzInstance) -> Vec<(BigRational, u64)> {
    instance.radicals.iter().map(|(n, m)| (q(*n), *m)).collect()
}

fn full(t: &RadicalTower) -> Result<bool, String> {
    decide(t).map(|r| r.full_degree).map_err(|e| e.to_string())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut v = p.clone();
            v.insert(i, n - 1);
            out.push(v);
        }
    }
    out
}

fn property_suite() -> Outcome {
    let config = FuzzConfig {
        count: 200,
        max_ell: 4,
        max_m: 12,
        max_abs_n: 40,
        max_dim: 1 << 20,
        seed: 2024,
        primitive_sums: false,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut counts = [0usize; 6];
    for index in 0..config.count {
        let instance = fuzz::generate_instance(&config, index, fuzz::instance_seed(config.seed, index));
        let ints: Vec<(i64, u64)> = instance.radicals.clone();
        let t = tower(&ints);
        let label = instance.tokens();
        // the uniqueness assertion for -d^2 lives inside decide and surfaces as an error
        let base = full(&t).map_err(|e| format!("{label}: {e}"))?;
        counts[5] += 1;

        for order in permutations(t.ell()) {
            ensure(
                full(&t.permuted(&order).unwrap())? == base,
                format!("{label}: permutation {order:?}"),
            )?;
        }
        counts[0] += 1;

        let i = rng.gen_range(0..t.ell());
        let c: i64 = *[-3, -2, 2, 3].choose(&mut rng).unwrap();
        let mut scaled = raw(&instance);
        scaled[i].0 *= BigRational::from_integer(BigInt::from(c).pow(ints[i].1 as u32));
        ensure(
            full(&common::rational_tower(&scaled))? == base,
            format!("{label}: scaling entry {} by {c}", i + 1),
        )?;
        counts[1] += 1;

        let split = t
            .prime_support()
            .iter()
            .map(|p| full(&t.p_part_tower(*p).unwrap()))
            .collect::<Result<Vec<_>, _>>()?;
        ensure(split.iter().all(|b| *b) == base, format!("{label}: prime parts"))?;
        counts[4] += 1;

        if base {
            for mask in 1u32..(1 << t.ell()) {
                let keep: Vec<usize> = (0..t.ell()).filter(|j| mask >> j & 1 == 1).collect();
                ensure(
                    full(&t.subtower(&keep).unwrap())?,
                    format!("{label}: subtower {keep:?}"),
                )?;
            }
            counts[2] += 1;
            for (j, (_, m)) in ints.iter().enumerate() {
                for d in (1..*m).filter(|d| m % d == 0) {
                    let mut reduced = ints.clone();
                    reduced[j].1 = d;
                    ensure(full(&tower(&reduced))?, format!("{label}: m_{} -> {d}", j + 1))?;
                }
            }
            counts[3] += 1;
        }
    }
    Ok(format!(
        "permutation {}, scaling {}, subtower {}, divisor {}, prime parts {}, -d^2 uniqueness {} instances",
        counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
    ))
}

fn primitive_element(instances: &[FuzzInstance]) -> Outcome {
    ensure(!instances.is_empty(), "no full-degree instances from the fuzz run")?;
    for instance in instances {
        let t = tower(&instance.radicals);
        let algebra = build_algebra(&t, 24).map_err(|e| e.to_string())?;
        let ones = vec![q(1); t.ell()];
        let ok = verify_primitive_sum(&algebra, &ones).map_err(|e| e.to_string())?;
        ensure(
            ok,
            format!("x_1 + ... + x_l does not generate for {}", instance.tokens()),
        )?;
    }
    Ok(format!("{} full-degree instances, all sums primitive", instances.len()))
}

fn report(number: usize, name: &str, budget: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let (status, detail) = match outcome {
        Ok(d) if elapsed <= budget => ("PASS", d),
        Ok(d) => ("FAIL", format!("{d}; over the time budget")),
        Err(e) => ("FAIL", e),
    };
    println!(
        "{status} {number}. {name}: {detail} [{:.2} s, budget {} s]",
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    status == "PASS"
}

fn main() {
    let secs = Duration::from_secs;
    let mut full_instances = Vec::new();
    let results = [
        report(1, "classic counterexample", secs(1), classic_counterexample),
        report(2, "odd prime desk case", secs(5), odd_prime_desk_case),
        report(3, "minimal 2-defective pair", secs(1), minimal_defective_pair),
        report(
            4,
            "family 6:4 15:4 -10:m with (A, B, C) = (2, 3, 5)",
            secs(15 * 60),
            triple_family,
        ),
        report(5, "binomial criterion, exhaustive", secs(120), binomial_exhaustive),
        report(6, "fuzz equivalence", secs(600), || {
            fuzz_equivalence(&mut full_instances)
        }),
        report(7, "property suite", secs(300), property_suite),
        report(8, "primitive element", secs(300), || primitive_element(&full_instances)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
