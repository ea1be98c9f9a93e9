//! Randomized cross-check of the decision procedure against the field oracle.
//!
//! Every instance gets its own seed derived from the master seed and its
//! index, so any instance can be replayed alone. Half of the instances carry a
//! planted multiplicative relation; uniform radicands almost never reach the
//! `-d^2` branch at `p = 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factor, FactoredRational};
use crate::criteria::{build_tower, decide, verify_report, Radical, RadicalTower};
use crate::error::{Error, Result};
use crate::etale::{build_algebra, is_field, verify_primitive_sum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub count: usize,
    pub max_ell: usize,
    pub max_m: u64,
    pub max_abs_n: i64,
    pub max_dim: usize,
    pub seed: u64,
    /// Also check that `x_1 + ... + x_l` generates every full-degree instance.
    pub primitive_sums: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            count: 100,
            max_ell: 3,
            max_m: 8,
            max_abs_n: 30,
            max_dim: 24,
            seed: 0,
            primitive_sums: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Plant {
    Square,
    MinusSquare,
    ProductTriple,
    MinusFourFourthPower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzInstance {
    pub index: usize,
    pub seed: u64,
    pub radicals: Vec<(i64, u64)>,
    pub plant: Option<Plant>,
}

impl FuzzInstance {
    /// Tokens in the CLI grammar, e.g. `-1:4 2:4`.
    pub fn tokens(&self) -> String {
        let t: Vec<String> = self.radicals.iter().map(|(n, m)| format!("{n}:{m}")).collect();
        t.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceOutcome {
    pub instance: FuzzInstance,
    pub full_degree: bool,
    pub defect: bool,
    /// Name of the first failed check, with details.
    pub failure: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub config: FuzzConfig,
    pub instances: usize,
    pub agreements: usize,
    pub full_degree: usize,
    pub defective: usize,
    pub planted: usize,
    pub primitive_sums_checked: usize,
    pub first_failure: Option<InstanceOutcome>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Seed of instance `index` under `master`.
pub fn instance_seed(master: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index as u64);
    rng.next_u64()
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}

/// Shrinks the largest index to its largest proper divisor until the product fits.
fn fit_dimension(ms: &mut [u64], max_dim: usize) {
    while ms.iter().product::<u64>() > max_dim as u64 {
        let (i, m) = ms
            .iter()
            .enumerate()
            .max_by_key(|(_, m)| **m)
            .map(|(i, m)| (i, *m))
            .unwrap();
        ms[i] = (1..m).rev().find(|d| m % d == 0).unwrap_or(1);
    }
}

/// Deterministic instance generation from its own seed.
pub fn generate_instance(config: &FuzzConfig, index: usize, seed: u64) -> FuzzInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_ell = config.max_ell.max(1);
    let max_m = config.max_m.max(1);
    let bound = config.max_abs_n.max(1);
    let ell = rng.gen_range(1..=max_ell);
    let mut ns: Vec<i64> = (0..ell).map(|_| nonzero(&mut rng, bound)).collect();
    let mut ms: Vec<u64> = (0..ell)
        .map(|_| {
            if rng.gen_ratio(1, 8) {
                1
            } else {
                rng.gen_range(1..=max_m)
            }
        })
        .collect();

    let plant = if rng.gen_bool(0.5) {
        Some(
            *[
                Plant::Square,
                Plant::MinusSquare,
                Plant::ProductTriple,
                Plant::MinusFourFourthPower,
            ]
            .choose(&mut rng)
            .unwrap(),
        )
    } else {
        None
    };
    let even = |m: u64, rng: &mut ChaCha8Rng| -> u64 {
        let choices: Vec<u64> = (2..=max_m.max(2)).step_by(2).collect();
        if m.is_multiple_of(2) {
            m
        } else {
            *choices.choose(rng).unwrap()
        }
    };
    match plant {
        Some(Plant::Square) | Some(Plant::MinusSquare) => {
            let k = rng.gen_range(0..ell);
            let c = rng.gen_range(1..=3i64);
            let mut value = c * c;
            if plant == Some(Plant::MinusSquare) {
                value = -value;
            }
            for j in 0..k {
                if rng.gen_bool(0.5) && (value * ns[j]).abs() <= 4 * bound * bound {
                    value *= ns[j];
                    ms[j] = even(ms[j], &mut rng);
                }
            }
            ns[k] = value;
            ms[k] = if plant == Some(Plant::MinusSquare) && max_m >= 4 {
                4
            } else {
                even(ms[k], &mut rng)
            };
        }
        Some(Plant::ProductTriple) => {
            let small = [2i64, 3, 5, 6, 7, 10, 11];
            let a = *small.choose(&mut rng).unwrap();
            let b = *small.choose(&mut rng).unwrap();
            let c = *small.choose(&mut rng).unwrap();
            ns = vec![a * b, b * c, -c * a];
            ms = (0..3)
                .map(|_| if max_m >= 4 && rng.gen_bool(0.6) { 4 } else { 2 })
                .collect();
            ns.truncate(max_ell.max(1));
            ms.truncate(ns.len());
        }
        Some(Plant::MinusFourFourthPower) => {
            let k = rng.gen_range(0..ell);
            let c = rng.gen_range(1..=2i64);
            ns[k] = -4 * c.pow(4);
            ms[k] = if max_m >= 8 && rng.gen_bool(0.3) {
                8
            } else {
                4.min(max_m)
            };
        }
        None => {}
    }
    for m in ms.iter_mut() {
        *m = (*m).min(max_m);
    }
    fit_dimension(&mut ms, config.max_dim.max(1));
    FuzzInstance {
        index,
        seed,
        radicals: ns.into_iter().zip(ms).collect(),
        plant,
    }
}

fn tower_of(instance: &FuzzInstance) -> Result<RadicalTower> {
    let raw: Vec<(BigRational, u64)> = instance
        .radicals
        .iter()
        .map(|(n, m)| (BigRational::from_integer((*n).into()), *m))
        .collect();
    build_tower(&raw)
}

fn full(tower: &RadicalTower) -> Result<bool> {
    Ok(decide(tower)?.full_degree)
}

struct Failure(String, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure("error".into(), e.to_string())
    }
}

fn expect(check: &str, ok: bool, detail: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure(check.into(), detail()))
    }
}

fn run_checks(config: &FuzzConfig, instance: &FuzzInstance, outcome: &mut InstanceOutcome) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(instance.seed ^ 0x5eed);
    let tower = tower_of(instance)?;
    let report = decide(&tower)?;
    outcome.full_degree = report.full_degree;
    outcome.defect = report
        .per_prime
        .iter()
        .any(|r| matches!(r.verdict, crate::criteria::LocalVerdict::Defect(_)));
    verify_report(&tower, &report).map_err(|e| Failure("witness".into(), e.to_string()))?;

    let algebra = build_algebra(&tower, config.max_dim)?;
    let oracle = is_field(&algebra, instance.seed)?;
    expect("oracle", oracle.is_field == report.full_degree, || {
        format!(
            "criterion says full_degree={}, oracle says is_field={} with factor degrees {:?}",
            report.full_degree, oracle.is_field, oracle.factor_degrees
        )
    })?;

    let ell = tower.ell();
    let mut order: Vec<usize> = (0..ell).collect();
    order.shuffle(&mut rng);
    let permuted = full(&tower.permuted(&order)?)?;
    expect("permutation", permuted == report.full_degree, || {
        format!("order {order:?} gives {permuted}")
    })?;

    let i = rng.gen_range(0..ell);
    let c = nonzero(&mut rng, 3);
    let scaled = scale_entry(&tower, i, c)?;
    let scaled_full = full(&scaled)?;
    expect("scaling", scaled_full == report.full_degree, || {
        format!("N_{} times {c}^{} gives {scaled_full}", i + 1, tower.entries()[i].index)
    })?;

    let mut split = true;
    for &p in tower.prime_support() {
        split &= full(&tower.p_part_tower(p)?)?;
    }
    expect("prime_parts", split == report.full_degree, || {
        format!("prime-part verdicts combine to {split}")
    })?;

    if report.full_degree {
        let keep: Vec<usize> = (0..ell).filter(|_| rng.gen_bool(0.6)).collect();
        if !keep.is_empty() {
            let sub = full(&tower.subtower(&keep)?)?;
            expect("subtower", sub, || format!("positions {keep:?} lose full degree"))?;
        }
        let j = rng.gen_range(0..ell);
        let m = tower.entries()[j].index;
        let divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
        let d = *divisors.choose(&mut rng).unwrap();
        let mut entries = tower.entries().to_vec();
        entries[j].index = d;
        let reduced = full(&RadicalTower::new(entries)?)?;
        expect("divisor", reduced, || {
            format!("m_{} = {m} replaced by {d} loses full degree", j + 1)
        })?;

        if config.primitive_sums {
            let ones = vec![BigRational::from_integer(BigInt::from(1)); ell];
            let ok = verify_primitive_sum(&algebra, &ones)?;
            expect("primitive_sum", ok, || "x_1 + ... + x_l does not generate".into())?;
        }
    }
    Ok(())
}

fn scale_entry(tower: &RadicalTower, i: usize, c: i64) -> Result<RadicalTower> {
    let mut entries: Vec<Radical> = tower.entries().to_vec();
    let cf: FactoredRational = factor(&c.into())?;
    entries[i].radicand = entries[i].radicand.mul(&cf.pow(entries[i].index as i64));
    RadicalTower::new(entries)
}

/// Runs every check on one instance.
pub fn run_instance(config: &FuzzConfig, instance: FuzzInstance) -> InstanceOutcome {
    let mut outcome = InstanceOutcome {
        instance: instance.clone(),
        full_degree: false,
        defect: false,
        failure: None,
    };
    if let Err(Failure(check, detail)) = run_checks(config, &instance, &mut outcome) {
        outcome.failure = Some((check, detail));
    }
    outcome
}

/// Runs `config.count` instances on the rayon pool; results are in index order.
pub fn run(config: &FuzzConfig) -> (FuzzSummary, Vec<InstanceOutcome>) {
    let outcomes: Vec<InstanceOutcome> = (0..config.count)
        .into_par_iter()
        .map(|i| run_instance(config, generate_instance(config, i, instance_seed(config.seed, i))))
        .collect();
    (summarize(config, &outcomes), outcomes)
}

/// Replays the single instance with the given instance seed.
pub fn replay(config: &FuzzConfig, seed: u64) -> (FuzzSummary, Vec<InstanceOutcome>) {
    let outcomes = vec![run_instance(config, generate_instance(config, 0, seed))];
    (summarize(config, &outcomes), outcomes)
}

fn summarize(config: &FuzzConfig, outcomes: &[InstanceOutcome]) -> FuzzSummary {
    let failure = outcomes.iter().find(|o| o.failure.is_some()).cloned();
    let clean = outcomes.iter().filter(|o| o.failure.is_none());
    FuzzSummary {
        config: *config,
        instances: outcomes.len(),
        agreements: clean.clone().count(),
        full_degree: clean.clone().filter(|o| o.full_degree).count(),
        defective: clean.clone().filter(|o| o.defect).count(),
        planted: outcomes.iter().filter(|o| o.instance.plant.is_some()).count(),
        primitive_sums_checked: if config.primitive_sums {
            clean.filter(|o| o.full_degree).count()
        } else {
            0
        },
        first_failure: failure,
    }
}

/// Shell commands that reproduce a failing instance.
pub fn reproducer(config: &FuzzConfig, outcome: &InstanceOutcome) -> Vec<String> {
    let i = &outcome.instance;
    vec![
        format!(
            "radical-degree fuzz --replay {} --max-ell {} --max-m {} --max-abs-n {} --max-dim {}{}",
            i.seed,
            config.max_ell,
            config.max_m,
            config.max_abs_n,
            config.max_dim,
            if config.primitive_sums { " --primitive" } else { "" }
        ),
        format!(
            "radical-degree --seed {} --max-dim {} oracle {}",
            i.seed,
            config.max_dim,
            i.tokens()
        ),
    ]
}
