//! Lowering passes: polynomial equation → `E_n` system → `G_n` system, with a
//! witness map that produces the unique extension of every base solution.

mod builder;
mod derive;
mod disjunction;
mod gadgets;
mod nonneg;
mod passes;
mod to_e;
mod witness;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ir::{System, SystemJson};
use crate::polynomials::Poly;
use crate::rationals::{Rat, RatTuple};

pub use derive::derive_witness;
pub use disjunction::{lower_e_to_g_field_disjunction, Branch, Disjunction};
pub use gadgets::{
    nonneg_add_gadget, one_elimination, rational_add_gadget, ring_add_gadget, Gadget,
};
pub use nonneg::lower_to_g_nonneg;
pub use passes::{
    lower_e_to_g_rationals, lower_e_to_g_ring, lower_to_g_rationals, lower_to_g_ring,
};
pub use to_e::{condition3_bound, lower_to_e};
pub use witness::{Expr, WitnessJson, WitnessMap};

/// The domain over which a lowering preserves solutions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Every commutative ring extending the integers, and the naturals.
    Ring,
    Rationals,
    NonnegRationals,
    FieldDisjunction,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Ring => "ring",
            Regime::Rationals => "rationals",
            Regime::NonnegRationals => "nonneg_rationals",
            Regime::FieldDisjunction => "field_disjunction",
        })
    }
}

/// What the base variables of a lowered program are supposed to solve.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Source {
    Equation(Poly),
    System(System),
}

impl Source {
    pub fn arity(&self) -> usize {
        match self {
            Source::Equation(d) => d.arity(),
            Source::System(s) => s.n(),
        }
    }

    pub fn holds(&self, base: &[Rat]) -> Result<bool> {
        match self {
            Source::Equation(d) => Ok(d.eval(base)?.is_zero()),
            Source::System(s) => s.eval(base),
        }
    }
}

/// A system together with the witness map realizing its unique-extension
/// property over `regime`.
#[derive(Clone, Debug)]
pub struct LoweredProgram {
    pub system: System,
    pub base_arity: usize,
    pub witness: WitnessMap,
    pub regime: Regime,
    pub source: Source,
    /// Names of the passes applied, in order.
    pub passes: Vec<String>,
}

impl LoweredProgram {
    pub fn n(&self) -> usize {
        self.system.n()
    }

    /// Runs the witness map without checking that `base` solves the source.
    pub fn candidate_extension(&self, base: &[Rat]) -> Option<Vec<Rat>> {
        if base.len() != self.base_arity {
            return None;
        }
        self.witness.evaluate(base, self.n())
    }

    pub fn to_json_value(&self) -> LoweredJson {
        let source = match &self.source {
            Source::Equation(d) => SourceJson::Equation(d.to_string()),
            Source::System(s) => SourceJson::System(s.to_json_value()),
        };
        LoweredJson {
            system: self.system.to_json_value(),
            base_arity: self.base_arity,
            regime: self.regime,
            witness: self.witness.to_json_value(),
            passes: self.passes.clone(),
            source,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoweredJson {
    #[serde(flatten)]
    pub system: SystemJson,
    pub base_arity: usize,
    pub regime: Regime,
    pub witness: Vec<WitnessJson>,
    pub passes: Vec<String>,
    pub source: SourceJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceJson {
    Equation(String),
    System(SystemJson),
}

/// The full solution of `P.system` extending `base`.
pub fn witness_extension(p: &LoweredProgram, base: &RatTuple) -> Result<RatTuple> {
    let b = base.entries();
    if b.len() != p.base_arity {
        return Err(Error::ArityMismatch { expected: p.base_arity, got: b.len() });
    }
    if p.regime == Regime::NonnegRationals {
        if let Some(i) = b.iter().position(Rat::is_negative) {
            return Err(Error::DomainViolation(format!(
                "x{} = {} is negative in the non-negative regime",
                i + 1,
                b[i]
            )));
        }
    }
    if !p.source.holds(b)? {
        return Err(Error::NotASolution);
    }
    let full = p
        .candidate_extension(b)
        .ok_or_else(|| Error::DomainViolation("witness divides by zero".into()))?;
    if !p.system.eval(&full)? {
        return Err(Error::SystemMismatch(
            "the witness extension does not satisfy the system".into(),
        ));
    }
    Ok(RatTuple::new(full))
}

/// Runs `second` (whose source is the system of `first`) after `first`.
pub fn compose(first: &LoweredProgram, second: &LoweredProgram) -> Result<LoweredProgram> {
    match &second.source {
        Source::System(s) if *s == first.system => {}
        _ => {
            return Err(Error::SystemMismatch(
                "the second pass does not start from the first pass's system".into(),
            ))
        }
    }
    let mut witness = first.witness.clone();
    witness.extend(&second.witness);
    let mut passes = first.passes.clone();
    passes.extend(second.passes.iter().cloned());
    Ok(LoweredProgram {
        system: second.system.clone(),
        base_arity: first.base_arity,
        witness,
        regime: second.regime,
        source: first.source.clone(),
        passes,
    })
}
