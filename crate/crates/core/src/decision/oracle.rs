//! Oracles for solvability and enumerations of equations, with mock
//! implementations that answer only what they can verify.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomials::{parse_polynomial, Poly, PolyJson};
use crate::rationals::RatTuple;
use crate::solver::{find_root, RootSpace};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

/// Decides whether an equation has a solution in some fixed domain.
pub trait SolvabilityOracle {
    fn query(&mut self, d: &Poly) -> Answer;
    /// Queries answered so far.
    fn queries(&self) -> usize;
}

/// A computable sequence of equations with finitely many solutions.
pub trait FiniteSetEnumerator {
    /// The equation at position `i`, or `None` past the end of a finite mock.
    fn equation(&mut self, i: u64) -> Option<Poly>;
}

/// A fixed list of equations; position `first + j` holds `equations[j]`.
#[derive(Clone, Debug)]
pub struct ListEnumerator {
    pub first: u64,
    pub equations: Vec<Poly>,
}

impl FiniteSetEnumerator for ListEnumerator {
    fn equation(&mut self, i: u64) -> Option<Poly> {
        let j = i.checked_sub(self.first)?;
        self.equations.get(usize::try_from(j).ok()?).cloned()
    }
}

/// An equation given inline or as canonical polynomial JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EquationSpec {
    Text(String),
    Json(PolyJson),
}

impl EquationSpec {
    pub fn to_poly(&self) -> Result<Poly> {
        match self {
            EquationSpec::Text(s) => parse_polynomial(s),
            EquationSpec::Json(j) => Poly::from_json_value(j),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableEntry {
    pub equation: EquationSpec,
    pub answer: Answer,
    /// Required for `yes`: a root that is checked when the oracle is built.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<RatTuple>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    #[default]
    RationalSolvability,
    NonnegIntegerSolvability,
}

/// Mock oracle configuration, as read from a JSON file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleConfig {
    #[serde(default)]
    pub kind: OracleKind,
    #[serde(default)]
    pub table: Vec<TableEntry>,
    #[serde(default = "default_search_height")]
    pub search_height: u64,
    #[serde(default = "default_max_points")]
    pub max_points: u64,
    /// Equations listed by the finite-set enumerator, from position `enumerator_first`.
    #[serde(default)]
    pub enumerator: Vec<EquationSpec>,
    #[serde(default)]
    pub enumerator_first: u64,
}

fn default_search_height() -> u64 {
    4
}

fn default_max_points() -> u64 {
    2_000_000
}

impl OracleConfig {
    pub fn from_json(text: &str) -> Result<OracleConfig> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("oracle config: {e}")))
    }

    pub fn enumerator(&self) -> Result<ListEnumerator> {
        Ok(ListEnumerator {
            first: self.enumerator_first,
            equations: self.enumerator.iter().map(EquationSpec::to_poly).collect::<Result<_>>()?,
        })
    }
}

/// Query order: table entry, then a bounded root search, then `Unknown`.
#[derive(Clone, Debug)]
pub struct MockOracle {
    table: HashMap<Poly, Answer>,
    space: RootSpace,
    search_height: u64,
    max_points: u64,
    queries: usize,
}

impl MockOracle {
    pub fn new(config: &OracleConfig) -> Result<MockOracle> {
        let space = match config.kind {
            OracleKind::RationalSolvability => RootSpace::Rationals,
            OracleKind::NonnegIntegerSolvability => RootSpace::NonnegIntegers,
        };
        let mut table = HashMap::new();
        for e in &config.table {
            let d = e.equation.to_poly()?;
            if e.answer == Answer::Yes {
                let ok = match &e.root {
                    Some(r) => in_space(r, space) && d.eval(r.entries())?.is_zero(),
                    None => false,
                };
                if !ok {
                    return Err(Error::Invalid(format!("table answers yes for {d} without a valid root")));
                }
            }
            table.insert(d, e.answer);
        }
        Ok(MockOracle {
            table,
            space,
            search_height: config.search_height,
            max_points: config.max_points,
            queries: 0,
        })
    }

    pub fn search_only(search_height: u64) -> MockOracle {
        MockOracle::new(&OracleConfig {
            kind: OracleKind::RationalSolvability,
            table: vec![],
            search_height,
            max_points: default_max_points(),
            enumerator: vec![],
            enumerator_first: 0,
        })
        .expect("empty table")
    }
}

fn in_space(r: &RatTuple, space: RootSpace) -> bool {
    match space {
        RootSpace::Rationals => true,
        RootSpace::NonnegIntegers => r.entries().iter().all(|x| x.is_integer() && !x.is_negative()),
    }
}

impl SolvabilityOracle for MockOracle {
    fn query(&mut self, d: &Poly) -> Answer {
        self.queries += 1;
        if let Some(a) = self.table.get(d) {
            return *a;
        }
        match find_root(d, self.space, self.search_height, self.max_points) {
            Ok(Some(_)) => Answer::Yes,
            _ => Answer::Unknown,
        }
    }

    fn queries(&self) -> usize {
        self.queries
    }
}
