//! `E_n` → a disjunction of `G` systems, valid over every field: each
//! `x_i + x_j = x_k` is split on whether `x_j = 0`.

use serde::Serialize;

use super::gadgets::one_elimination;
use super::witness::{Expr, WitnessMap, WitnessJson};
use crate::error::{Error, Result};
use crate::ir::{Atom, System, SystemJson};
use crate::rationals::Rat;

/// Largest number of additions split (the output has `2^m` branches).
const MAX_SPLIT: usize = 16;

/// One disjunct together with the forced values of its new variables.
#[derive(Clone, Debug)]
pub struct Branch {
    pub system: System,
    pub base_arity: usize,
    pub witness: WitnessMap,
}

impl Branch {
    /// Whether some extension of `base` solves the branch. The new variables
    /// are forced by the base values, so it suffices to test the witness.
    pub fn satisfiable_at(&self, base: &[Rat]) -> Result<bool> {
        if base.len() != self.base_arity {
            return Err(Error::ArityMismatch { expected: self.base_arity, got: base.len() });
        }
        match self.witness.evaluate(base, self.system.n()) {
            Some(full) => self.system.eval(&full),
            None => Ok(false),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Disjunction {
    pub branches: Vec<Branch>,
    /// Number of additions split.
    pub m: usize,
}

impl Disjunction {
    pub fn satisfiable_at(&self, base: &[Rat]) -> Result<bool> {
        for b in &self.branches {
            if b.satisfiable_at(base)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn to_json_value(&self) -> DisjunctionJson {
        DisjunctionJson {
            m: self.m,
            branches: self
                .branches
                .iter()
                .map(|b| BranchJson {
                    system: b.system.to_json_value(),
                    base_arity: b.base_arity,
                    witness: b.witness.to_json_value(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DisjunctionJson {
    pub m: usize,
    pub branches: Vec<BranchJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchJson {
    #[serde(flatten)]
    pub system: SystemJson,
    pub base_arity: usize,
    pub witness: Vec<WitnessJson>,
}

struct Alloc {
    n: usize,
    witness: WitnessMap,
    atoms: Vec<Atom>,
}

impl Alloc {
    fn fresh(&mut self, e: Expr) -> usize {
        let v = self.n;
        self.n += 1;
        self.witness.push(v, e);
        v
    }
}

/// `x_j = 0` case: `x_i + 1 = y, x_k + 1 = y, x_j + 1 = z, z·x_j = x_j`.
fn zero_case(al: &mut Alloc, i: usize, j: usize, k: usize) {
    let y = al.fresh(Expr::Succ(i));
    let z = al.fresh(Expr::Succ(j));
    al.atoms.extend([Atom::Succ(i, y), Atom::Succ(k, y), Atom::Succ(j, z), Atom::Mul(z, j, j)]);
}

/// `x_j ≠ 0` case: `t·x_j = x_i, t + 1 = w, w·x_j = x_k, x_j + 1 = s, r·x_j = s`.
fn nonzero_case(al: &mut Alloc, i: usize, j: usize, k: usize) {
    let t = al.fresh(Expr::Div(i, j));
    let w = al.fresh(Expr::Succ(t));
    let s = al.fresh(Expr::Succ(j));
    let r = al.fresh(Expr::Div(s, j));
    al.atoms.extend([
        Atom::Mul(t, j, i),
        Atom::Succ(t, w),
        Atom::Mul(w, j, k),
        Atom::Succ(j, s),
        Atom::Mul(r, j, s),
    ]);
}

/// Splits every addition of `s` into its two cases. Branch `b` takes the
/// `x_j = 0` case for the additions whose bit in `b` is clear.
pub fn lower_e_to_g_field_disjunction(s: &System) -> Result<Disjunction> {
    let (t, ones) = one_elimination(s);
    let adds: Vec<(usize, usize, usize)> = t
        .atoms()
        .filter_map(|a| match *a {
            Atom::Add(i, j, k) => Some((i, j, k)),
            _ => None,
        })
        .collect();
    let m = adds.len();
    if m > MAX_SPLIT {
        return Err(Error::CapExceeded(format!("{m} additions give 2^{m} branches")));
    }
    let rest: Vec<Atom> = t.atoms().filter(|a| !matches!(a, Atom::Add(..))).copied().collect();
    let mut branches = Vec::with_capacity(1 << m);
    for mask in 0usize..1 << m {
        let mut al = Alloc { n: t.n(), witness: ones.witness.clone(), atoms: rest.clone() };
        for (b, &(i, j, k)) in adds.iter().enumerate() {
            if mask >> b & 1 == 0 {
                zero_case(&mut al, i, j, k);
            } else {
                nonzero_case(&mut al, i, j, k);
            }
        }
        branches.push(Branch {
            system: System::from_atoms(al.n, al.atoms)?,
            base_arity: s.n(),
            witness: al.witness,
        });
    }
    Ok(Disjunction { branches, m })
}
