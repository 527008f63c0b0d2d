//! Witness maps: straight-line programs giving each auxiliary variable as a
//! function of the base variables and earlier auxiliaries.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomials::Poly;
use crate::rationals::Rat;

/// One definition step. Operands are variable indices (zero-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    One,
    Copy(usize),
    Succ(usize),
    Pred(usize),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    Div(usize, usize),
}

impl Expr {
    fn operands(&self) -> Vec<usize> {
        match *self {
            Expr::One => vec![],
            Expr::Copy(a) | Expr::Succ(a) | Expr::Pred(a) => vec![a],
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => vec![a, b],
        }
    }

    /// Prefix notation with one-based variable names, e.g. `(* x1 x3)`.
    pub fn to_prefix(&self) -> String {
        let v = |i: usize| format!("x{}", i + 1);
        match *self {
            Expr::One => "1".into(),
            Expr::Copy(a) => v(a),
            Expr::Succ(a) => format!("(+ {} 1)", v(a)),
            Expr::Pred(a) => format!("(- {} 1)", v(a)),
            Expr::Add(a, b) => format!("(+ {} {})", v(a), v(b)),
            Expr::Sub(a, b) => format!("(- {} {})", v(a), v(b)),
            Expr::Mul(a, b) => format!("(* {} {})", v(a), v(b)),
            Expr::Div(a, b) => format!("(/ {} {})", v(a), v(b)),
        }
    }

    pub fn from_prefix(text: &str) -> Result<Expr> {
        let bad = || Error::Invalid(format!("bad witness expression `{text}`"));
        let var = |s: &str| -> Result<usize> {
            s.strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(|i| i - 1)
                .ok_or_else(bad)
        };
        let t = text.trim();
        if t == "1" {
            return Ok(Expr::One);
        }
        if !t.starts_with('(') {
            return Ok(Expr::Copy(var(t)?));
        }
        let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split_whitespace().collect();
        match parts.as_slice() {
            ["+", a, "1"] => Ok(Expr::Succ(var(a)?)),
            ["-", a, "1"] => Ok(Expr::Pred(var(a)?)),
            ["+", a, b] => Ok(Expr::Add(var(a)?, var(b)?)),
            ["-", a, b] => Ok(Expr::Sub(var(a)?, var(b)?)),
            ["*", a, b] => Ok(Expr::Mul(var(a)?, var(b)?)),
            ["/", a, b] => Ok(Expr::Div(var(a)?, var(b)?)),
            _ => Err(bad()),
        }
    }

    fn eval(&self, vals: &[Option<Rat>]) -> Option<Rat> {
        let g = |i: usize| vals[i].as_ref();
        Some(match *self {
            Expr::One => Rat::one(),
            Expr::Copy(a) => g(a)?.clone(),
            Expr::Succ(a) => g(a)? + &Rat::one(),
            Expr::Pred(a) => g(a)? - &Rat::one(),
            Expr::Add(a, b) => g(a)? + g(b)?,
            Expr::Sub(a, b) => g(a)? - g(b)?,
            Expr::Mul(a, b) => g(a)? * g(b)?,
            Expr::Div(a, b) => {
                let d = g(b)?;
                if d.is_zero() {
                    return None;
                }
                g(a)? / d
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_prefix())
    }
}

/// Definitions for variables `base_arity..n`, in evaluation order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WitnessMap {
    defs: Vec<(usize, Expr)>,
}

impl WitnessMap {
    pub fn new() -> Self {
        WitnessMap::default()
    }

    pub fn push(&mut self, var: usize, e: Expr) {
        self.defs.push((var, e));
    }

    pub fn extend(&mut self, other: &WitnessMap) {
        self.defs.extend(other.defs.iter().copied());
    }

    pub fn defs(&self) -> &[(usize, Expr)] {
        &self.defs
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    pub fn uses_division(&self) -> bool {
        self.defs.iter().any(|(_, e)| matches!(e, Expr::Div(..)))
    }

    pub fn definition(&self, var: usize) -> Option<Expr> {
        self.defs.iter().find(|(v, _)| *v == var).map(|(_, e)| *e)
    }

    /// Checks that every variable in `base_arity..n` is defined exactly once,
    /// after all of its operands.
    pub fn validate(&self, base_arity: usize, n: usize) -> Result<()> {
        let mut defined = vec![false; n];
        defined[..base_arity].iter_mut().for_each(|d| *d = true);
        for (v, e) in &self.defs {
            if *v >= n || defined[*v] {
                return Err(Error::Invalid(format!("witness redefines or overruns x{}", v + 1)));
            }
            if let Some(op) = e.operands().into_iter().find(|&o| o >= n || !defined[o]) {
                return Err(Error::Invalid(format!(
                    "witness for x{} uses x{} before it is defined",
                    v + 1,
                    op + 1
                )));
            }
            defined[*v] = true;
        }
        match defined.iter().position(|d| !d) {
            Some(v) => Err(Error::Invalid(format!("x{} has no witness", v + 1))),
            None => Ok(()),
        }
    }

    /// Runs the program from `base`. `None` if a division by zero occurs.
    pub fn evaluate(&self, base: &[Rat], n: usize) -> Option<Vec<Rat>> {
        let mut vals: Vec<Option<Rat>> = vec![None; n];
        for (i, b) in base.iter().enumerate() {
            vals[i] = Some(b.clone());
        }
        for (v, e) in &self.defs {
            vals[*v] = Some(e.eval(&vals)?);
        }
        vals.into_iter().collect()
    }

    /// The witness of `var` as a polynomial in the base variables, when the
    /// program reaching it is division-free and its degree stays below `max_degree`.
    pub fn expand(&self, var: usize, base_arity: usize, max_degree: u64) -> Option<Poly> {
        if var < base_arity {
            return Some(Poly::var(var, base_arity));
        }
        let pos = self.defs.iter().position(|(v, _)| *v == var)?;
        let mut all = self.expand_prefix(pos + 1, base_arity, max_degree);
        all.remove(&var)
    }

    /// Expansions of every variable whose witness is polynomial of degree at
    /// most `max_degree`, base variables included.
    pub fn expand_all(&self, base_arity: usize, max_degree: u64) -> HashMap<usize, Poly> {
        self.expand_prefix(self.defs.len(), base_arity, max_degree)
    }

    fn expand_prefix(&self, len: usize, base_arity: usize, max_degree: u64) -> HashMap<usize, Poly> {
        let mut memo: HashMap<usize, Poly> = HashMap::new();
        for i in 0..base_arity {
            memo.insert(i, Poly::var(i, base_arity));
        }
        for (v, e) in &self.defs[..len] {
            let get = |i: usize| memo.get(&i).cloned();
            let p = match *e {
                Expr::One => Some(Poly::constant(1, base_arity)),
                Expr::Copy(a) => get(a),
                Expr::Succ(a) => get(a).map(|x| x.add(&Poly::constant(1, base_arity))),
                Expr::Pred(a) => get(a).map(|x| x.sub(&Poly::constant(1, base_arity))),
                Expr::Add(a, b) => get(a).zip(get(b)).map(|(x, y)| x.add(&y)),
                Expr::Sub(a, b) => get(a).zip(get(b)).map(|(x, y)| x.sub(&y)),
                Expr::Mul(a, b) => get(a).zip(get(b)).and_then(|(x, y)| {
                    (x.total_degree() + y.total_degree() <= max_degree).then(|| x.mul(&y))
                }),
                Expr::Div(..) => None,
            };
            if let Some(p) = p {
                memo.insert(*v, p);
            }
        }
        memo
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub var: usize,
    pub expr: String,
}

impl WitnessMap {
    pub fn to_json_value(&self) -> Vec<WitnessJson> {
        self.defs
            .iter()
            .map(|(v, e)| WitnessJson { var: v + 1, expr: e.to_prefix() })
            .collect()
    }

    pub fn from_json_value(v: &[WitnessJson]) -> Result<WitnessMap> {
        let mut w = WitnessMap::new();
        for d in v {
            if d.var == 0 {
                return Err(Error::Invalid("witness variables are numbered from 1".into()));
            }
            w.push(d.var - 1, Expr::from_prefix(&d.expr)?);
        }
        Ok(w)
    }
}
