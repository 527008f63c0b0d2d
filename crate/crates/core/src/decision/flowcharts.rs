//! The oracle-relative decision procedures, with step transcripts.

use serde::Serialize;

use super::encoding::{factorize, theta};
use super::oracle::{Answer, FiniteSetEnumerator, SolvabilityOracle};
use crate::bounds::conjecture1_bound;
use crate::error::{Error, Result};
use crate::lowering::lower_to_g_rationals;
use crate::polynomials::{height_excess_equation, multiplicity_equation, pad_zero_variable, Poly, TransformCaps};
use crate::rationals::{count_rationals, Rat, RatTuple, DEFAULT_BIT_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum Event {
    Query { equation: String, answer: Answer },
    TryTuple { k: u64, tuple: String, root: bool },
    Compare { index: u64, matched: bool },
    Factor { i: u64, exponents: Vec<u32> },
    Evaluate { point: String, root: bool },
    Verdict { verdict: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub step: u64,
    #[serde(flatten)]
    pub event: Event,
}

/// A verdict with the steps that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Run<V> {
    pub verdict: V,
    pub queries: usize,
    pub transcript: Vec<Step>,
}

impl<V> Run<V> {
    /// The transcript as line-delimited JSON.
    pub fn transcript_jsonl(&self) -> String {
        self.transcript
            .iter()
            .map(|s| serde_json::to_string(s).expect("plain data") + "\n")
            .collect()
    }
}

struct Log(Vec<Step>);

impl Log {
    fn push(&mut self, event: Event) {
        let step = self.0.len() as u64 + 1;
        self.0.push(Step { step, event });
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Finiteness {
    Finite,
    Infinite,
    Unknown,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Solvability {
    Solvable { at: u64 },
    Unsolvable { at: u64 },
    Unknown,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FiniteSemi {
    FinitelyMany { m: u64 },
    Unknown,
}

fn query(oracle: &mut dyn SolvabilityOracle, log: &mut Log, e: &Poly) -> Answer {
    let answer = oracle.query(e);
    log.push(Event::Query { equation: e.to_string(), answer });
    answer
}

/// Largest height bound the conjectural provider will count rationals up to.
pub const PROVIDER_MAX_HEIGHT: u64 = 1 << 16;

/// `b = |Q_B|^p + 1`, with `B` the conditional height bound of the rational
/// lowering of `d`. Refuses when `B` is too large to count below.
pub fn conjectural_b(d: &Poly) -> Result<u64> {
    let n = lower_to_g_rationals(d)?.n();
    let bound = conjecture1_bound(n)
        .materialize(DEFAULT_BIT_BUDGET)
        .and_then(|b| u64::try_from(b).ok())
        .filter(|&b| b <= PROVIDER_MAX_HEIGHT)
        .ok_or_else(|| Error::BoundNotMaterializable(format!("conjectural bound for n = {n}")))?;
    count_rationals(bound)
        .checked_pow(d.arity() as u32)
        .and_then(|c| c.checked_add(1))
        .ok_or_else(|| Error::BoundNotMaterializable("|Q_B|^p overflows".into()))
}

/// Finiteness with one query: `D` has at least `b` rational solutions iff
/// the multiplicity equation is solvable, and `b` exceeds every finite count.
pub fn flowchart4_finiteness(d: &Poly, b: usize, oracle: &mut dyn SolvabilityOracle) -> Result<Run<Finiteness>> {
    let e = multiplicity_equation(d, b, &TransformCaps::default())?;
    let before = oracle.queries();
    let mut log = Log(vec![]);
    let verdict = match query(oracle, &mut log, &e) {
        Answer::Yes => Finiteness::Infinite,
        Answer::No => Finiteness::Finite,
        Answer::Unknown => Finiteness::Unknown,
    };
    log.push(Event::Verdict { verdict: format!("{verdict:?}").to_lowercase() });
    Ok(Run { verdict, queries: oracle.queries() - before, transcript: log.0 })
}

/// Rational solvability from an enumeration of the equations with finitely
/// many rational solutions: alternately tries the tuple `θ(k)` as a root and
/// compares the `k`-th enumerated equation with the padded `D + 0·x_{p+1}`.
pub fn flowchart5_solvability(
    d: &Poly,
    en: &mut dyn FiniteSetEnumerator,
    step_budget: u64,
) -> Result<Run<Solvability>> {
    let w = pad_zero_variable(d);
    let mut log = Log(vec![]);
    let mut verdict = Solvability::Unknown;
    for s in 0..step_budget {
        let k = s / 2;
        if s % 2 == 0 {
            let t = theta(k);
            let root = t.len() == d.arity() && d.eval(t.entries())?.is_zero();
            log.push(Event::TryTuple { k, tuple: t.to_string(), root });
            if root {
                verdict = Solvability::Solvable { at: k };
                break;
            }
        } else {
            let matched = en.equation(k).is_some_and(|e| e == w);
            log.push(Event::Compare { index: k, matched });
            if matched {
                verdict = Solvability::Unsolvable { at: k };
                break;
            }
        }
    }
    push_verdict(&mut log, &verdict);
    Ok(Run { verdict, queries: 0, transcript: log.0 })
}

/// Stops once the oracle reports that no solution has a coordinate of height
/// above `m`; then all solutions lie in the finite grid `Q_m^p`.
pub fn flowchart6_finiteness_semidecide(
    d: &Poly,
    oracle: &mut dyn SolvabilityOracle,
    m_budget: u64,
) -> Result<Run<FiniteSemi>> {
    let before = oracle.queries();
    let mut log = Log(vec![]);
    let mut verdict = FiniteSemi::Unknown;
    for m in 1..=m_budget {
        let e = height_excess_equation(d, m, &TransformCaps::default())?;
        match query(oracle, &mut log, &e) {
            Answer::No => {
                verdict = FiniteSemi::FinitelyMany { m };
                break;
            }
            Answer::Yes => continue,
            Answer::Unknown => break,
        }
    }
    push_verdict(&mut log, &verdict);
    Ok(Run { verdict, queries: oracle.queries() - before, transcript: log.0 })
}

/// Non-negative integer solvability from an enumeration `S_2, S_3, …` of
/// the equations with finitely many such solutions. For each `i`: stop with
/// "unsolvable" if `S_i` is `D + 0·x_{p+1}`; otherwise write
/// `i = B_1^{b_1}⋯B_n^{b_n}` with primes `B_1 < … < B_n` and stop with
/// "solvable" if `p ≤ n` and `D(b_1 − 1, …, b_p − 1) = 0`.
pub fn flowchart7_nonneg_solvability(
    d: &Poly,
    en: &mut dyn FiniteSetEnumerator,
    i_budget: u64,
) -> Result<Run<Solvability>> {
    let w = pad_zero_variable(d);
    let p = d.arity();
    let mut log = Log(vec![]);
    let mut verdict = Solvability::Unknown;
    for i in 2..=i_budget {
        let matched = en.equation(i).is_some_and(|e| e == w);
        log.push(Event::Compare { index: i, matched });
        if matched {
            verdict = Solvability::Unsolvable { at: i };
            break;
        }
        let exponents: Vec<u32> = factorize(i).into_values().collect();
        log.push(Event::Factor { i, exponents: exponents.clone() });
        if p > exponents.len() {
            continue;
        }
        let point: Vec<Rat> = exponents[..p].iter().map(|&b| Rat::from_int(b as i64 - 1)).collect();
        let root = d.eval(&point)?.is_zero();
        log.push(Event::Evaluate { point: RatTuple::new(point).to_string(), root });
        if root {
            verdict = Solvability::Solvable { at: i };
            break;
        }
    }
    push_verdict(&mut log, &verdict);
    Ok(Run { verdict, queries: 0, transcript: log.0 })
}

fn push_verdict<V: Serialize>(log: &mut Log, v: &V) {
    let j = serde_json::to_value(v).expect("plain data");
    let name = j.get("verdict").and_then(|x| x.as_str()).unwrap_or("unknown").to_string();
    log.push(Event::Verdict { verdict: name });
}
