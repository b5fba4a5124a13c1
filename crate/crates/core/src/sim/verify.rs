//! Adder verification against integer addition.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{check_ancillas_clean, run_lanes, AndSemantics, SimError};
use crate::adders::{AdderBuild, Construction};
use crate::circuit::{CircuitError, QubitId};

/// Largest `n` accepted by [`verify_adder_exhaustive`] (4^n cases).
pub const MAX_EXHAUSTIVE_BITS: usize = 12;

pub trait AdderBuilder {
    fn build(&self, n: usize) -> Result<AdderBuild, CircuitError>;
}

impl AdderBuilder for Construction {
    fn build(&self, n: usize) -> Result<AdderBuild, CircuitError> {
        Construction::build(self, n)
    }
}

impl<F> AdderBuilder for F
where
    F: Fn(usize) -> Result<AdderBuild, CircuitError>,
{
    fn build(&self, n: usize) -> Result<AdderBuild, CircuitError> {
        self(n)
    }
}

#[derive(Debug, Error)]
pub enum VerificationError {
    #[error("exhaustive verification supports 1 <= n <= {MAX_EXHAUSTIVE_BITS}, got {0}")]
    SizeTooLarge(usize),
    #[error("register size must be at least 1")]
    ZeroWidth,
    #[error("at least one trial is required")]
    NoTrials,
    #[error("building the adder failed: {0}")]
    Build(#[from] CircuitError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub a: BigUint,
    pub b: BigUint,
    pub carry_in: bool,
    pub expected: BigUint,
    /// Sum register contents, absent when simulation itself failed.
    pub actual: Option<BigUint>,
    /// Simulation fault or clobbered input, if any.
    pub fault: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationResult {
    pub passed: bool,
    pub cases_checked: u64,
    pub counterexample: Option<Counterexample>,
}

impl std::fmt::Display for VerificationResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict}: {} cases checked", self.cases_checked)?;
        if let Some(cx) = &self.counterexample {
            write!(
                f,
                "; counterexample a={} b={} carry_in={} expected={}",
                cx.a, cx.b, cx.carry_in as u8, cx.expected
            )?;
            match &cx.actual {
                Some(v) => write!(f, " actual={v}")?,
                None => write!(f, " actual=<none>")?,
            }
            if let Some(fault) = &cx.fault {
                write!(f, " ({fault})")?;
            }
        }
        Ok(())
    }
}

/// Little-endian bits of up to 64 lanes written into bit-sliced words.
fn load_lanes(words: &mut [u64], reg: &[QubitId], values: &[BigUint]) {
    for (k, &q) in reg.iter().enumerate() {
        let mut w = 0u64;
        for (lane, v) in values.iter().enumerate() {
            w |= (v.bit(k as u64) as u64) << lane;
        }
        words[q.index()] = w;
    }
}

fn read_lane(words: &[u64], reg: &[QubitId], lane: usize) -> BigUint {
    let mut v = BigUint::default();
    for (k, &q) in reg.iter().enumerate() {
        if words[q.index()] >> lane & 1 == 1 {
            v.set_bit(k as u64, true);
        }
    }
    v
}

/// Checks a batch of at most 64 cases; returns the first failure in order.
fn check_batch(build: &AdderBuild, cases: &[(BigUint, BigUint)]) -> Option<Counterexample> {
    let n = build.n();
    let c = &build.circuit;
    let active = if cases.len() == 64 {
        !0
    } else {
        (1u64 << cases.len()) - 1
    };
    let mut words = vec![0u64; c.qubit_count()];
    let a_vals: Vec<BigUint> = cases.iter().map(|(a, _)| a.clone()).collect();
    let b_vals: Vec<BigUint> = cases.iter().map(|(_, b)| b.clone()).collect();
    load_lanes(&mut words, &build.a, &a_vals);
    load_lanes(&mut words, &build.b, &b_vals);

    let sum_bits = if build.is_in_place() { n } else { build.out.len() };
    let modulus = BigUint::from(1u8) << sum_bits;
    let expected = |lane: usize| (&cases[lane].0 + &cases[lane].1) % &modulus;
    let counterexample = |lane: usize, actual: Option<BigUint>, fault: Option<String>| Counterexample {
        a: cases[lane].0.clone(),
        b: cases[lane].1.clone(),
        carry_in: false,
        expected: expected(lane),
        actual,
        fault,
    };

    let sim = run_lanes(c.gates(), &mut words, active, AndSemantics::Strict)
        .and_then(|_| check_ancillas_clean(c, &words, active));
    if let Err(e) = sim {
        let lane = (e.lanes() & active).trailing_zeros() as usize;
        let actual = match e {
            SimError::DirtyAncilla { .. } => Some(read_lane(&words, &build.out, lane)),
            _ => None,
        };
        return Some(counterexample(lane, actual, Some(e.to_string())));
    }
    for (lane, case) in cases.iter().enumerate() {
        let actual = read_lane(&words, &build.out, lane);
        if actual != expected(lane) {
            return Some(counterexample(lane, Some(actual), None));
        }
        if read_lane(&words, &build.a, lane) != case.0 {
            return Some(counterexample(lane, Some(actual), Some("input a was modified".into())));
        }
        if !build.is_in_place() && read_lane(&words, &build.b, lane) != case.1 {
            return Some(counterexample(lane, Some(actual), Some("input b was modified".into())));
        }
    }
    None
}

fn run_cases(build: &AdderBuild, cases: impl Iterator<Item = (BigUint, BigUint)>) -> VerificationResult {
    let mut checked = 0u64;
    let mut batch = Vec::with_capacity(64);
    let mut cases = cases.peekable();
    while cases.peek().is_some() {
        batch.clear();
        batch.extend(cases.by_ref().take(64));
        if let Some(cx) = check_batch(build, &batch) {
            return VerificationResult {
                passed: false,
                cases_checked: checked + batch.len() as u64,
                counterexample: Some(cx),
            };
        }
        checked += batch.len() as u64;
    }
    VerificationResult {
        passed: true,
        cases_checked: checked,
        counterexample: None,
    }
}

/// Builds the adder once and checks every `(a, b)` in `[0, 2^n)^2`.
///
/// Out-of-place builds must produce `a + b` (mod `2^|out|`) and preserve both
/// inputs; in-place builds must leave `a + b mod 2^n` in `b` and preserve `a`.
/// Every ancilla must end clean.
pub fn verify_adder_exhaustive(
    builder: &(impl AdderBuilder + ?Sized),
    n: usize,
) -> Result<VerificationResult, VerificationError> {
    if n == 0 {
        return Err(VerificationError::ZeroWidth);
    }
    if n > MAX_EXHAUSTIVE_BITS {
        return Err(VerificationError::SizeTooLarge(n));
    }
    let build = builder.build(n)?;
    let side = 1u64 << n;
    let cases = (0..side * side).map(|i| (BigUint::from(i >> n), BigUint::from(i & (side - 1))));
    Ok(run_cases(&build, cases))
}

fn random_value(rng: &mut ChaCha8Rng, n: usize) -> BigUint {
    let mut v = BigUint::default();
    for k in 0..n {
        if rng.gen::<bool>() {
            v.set_bit(k as u64, true);
        }
    }
    v
}

/// Checks `trials` pseudorandom pairs drawn from a ChaCha8 stream seeded with
/// `seed`; the case list depends only on `(n, trials, seed)`.
pub fn verify_adder_random(
    builder: &(impl AdderBuilder + ?Sized),
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<VerificationResult, VerificationError> {
    if n == 0 {
        return Err(VerificationError::ZeroWidth);
    }
    if trials == 0 {
        return Err(VerificationError::NoTrials);
    }
    let build = builder.build(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = (0..trials).map(move |_| {
        let a = random_value(&mut rng, n);
        let b = random_value(&mut rng, n);
        (a, b)
    });
    Ok(run_cases(&build, cases))
}
