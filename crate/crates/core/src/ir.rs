//! Constraint systems over the atoms `1 = x_k`, `x_i + x_j = x_k`,
//! `x_i + 1 = x_k` and `x_i · x_j = x_k`.
//!
//! Indices are zero-based in memory and one-based in text and JSON.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rationals::Rat;

/// One constraint. The derived order (variant, then indices) is the
/// canonical listing order: `succ` atoms precede `mul` atoms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    One(usize),
    Add(usize, usize, usize),
    Succ(usize, usize),
    Mul(usize, usize, usize),
}

impl Atom {
    /// Orders the operands of commutative atoms so that `i ≤ j`.
    pub fn canonical(self) -> Atom {
        match self {
            Atom::Add(i, j, k) if i > j => Atom::Add(j, i, k),
            Atom::Mul(i, j, k) if i > j => Atom::Mul(j, i, k),
            a => a,
        }
    }

    pub fn max_index(&self) -> usize {
        match *self {
            Atom::One(k) => k,
            Atom::Succ(i, k) => i.max(k),
            Atom::Add(i, j, k) | Atom::Mul(i, j, k) => i.max(j).max(k),
        }
    }

    /// The variable the atom defines when read left to right.
    pub fn target(&self) -> usize {
        match *self {
            Atom::One(k) | Atom::Succ(_, k) | Atom::Add(_, _, k) | Atom::Mul(_, _, k) => k,
        }
    }

    pub fn is_g(&self) -> bool {
        matches!(self, Atom::Succ(..) | Atom::Mul(..))
    }

    pub fn is_e(&self) -> bool {
        matches!(self, Atom::One(_) | Atom::Add(..) | Atom::Mul(..))
    }

    /// `lhs − rhs` of the atom at `x`.
    pub fn residual(&self, x: &[Rat]) -> Rat {
        match *self {
            Atom::One(k) => Rat::one() - &x[k],
            Atom::Succ(i, k) => &x[i] + &Rat::one() - &x[k],
            Atom::Add(i, j, k) => &x[i] + &x[j] - &x[k],
            Atom::Mul(i, j, k) => &x[i] * &x[j] - &x[k],
        }
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        match *self {
            Atom::One(k) => x[k] == Rat::one(),
            Atom::Succ(i, k) => &x[i] + &Rat::one() == x[k],
            Atom::Add(i, j, k) => &x[i] + &x[j] == x[k],
            Atom::Mul(i, j, k) => &x[i] * &x[j] == x[k],
        }
    }

    /// `lhs − rhs` in floating point.
    pub fn residual_f64(&self, x: &[f64]) -> f64 {
        match *self {
            Atom::One(k) => 1.0 - x[k],
            Atom::Succ(i, k) => x[i] + 1.0 - x[k],
            Atom::Add(i, j, k) => x[i] + x[j] - x[k],
            Atom::Mul(i, j, k) => x[i] * x[j] - x[k],
        }
    }

    /// Applies `f` to every index.
    pub fn map_indices(self, f: impl Fn(usize) -> usize) -> Atom {
        match self {
            Atom::One(k) => Atom::One(f(k)),
            Atom::Succ(i, k) => Atom::Succ(f(i), f(k)),
            Atom::Add(i, j, k) => Atom::Add(f(i), f(j), f(k)),
            Atom::Mul(i, j, k) => Atom::Mul(f(i), f(j), f(k)),
        }
        .canonical()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::One(k) => write!(f, "1 = x{}", k + 1),
            Atom::Succ(i, k) => write!(f, "x{} + 1 = x{}", i + 1, k + 1),
            Atom::Add(i, j, k) => write!(f, "x{} + x{} = x{}", i + 1, j + 1, k + 1),
            Atom::Mul(i, j, k) => write!(f, "x{} * x{} = x{}", i + 1, j + 1, k + 1),
        }
    }
}

/// A finite set of atoms over `x1..xn`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct System {
    n: usize,
    atoms: BTreeSet<Atom>,
}

impl System {
    pub fn new(n: usize) -> Self {
        System { n, atoms: BTreeSet::new() }
    }

    pub fn from_atoms(n: usize, atoms: impl IntoIterator<Item = Atom>) -> Result<Self> {
        let mut s = System::new(n);
        for a in atoms {
            s.insert(a)?;
        }
        Ok(s)
    }

    /// Adds an atom; returns whether it was new.
    pub fn insert(&mut self, a: Atom) -> Result<bool> {
        if a.max_index() >= self.n {
            return Err(Error::Invalid(format!(
                "atom `{a}` refers past x{} of a system over {} variables",
                a.max_index() + 1,
                self.n
            )));
        }
        Ok(self.atoms.insert(a.canonical()))
    }

    pub fn remove(&mut self, a: &Atom) -> bool {
        self.atoms.remove(&a.canonical())
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.atoms.contains(&a.canonical())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> + Clone {
        self.atoms.iter()
    }

    /// Widens the variable range without touching the atoms.
    pub fn with_arity(&self, n: usize) -> System {
        assert!(n >= self.n);
        System { n, atoms: self.atoms.clone() }
    }

    pub fn union(&self, other: &System) -> System {
        let mut out = self.with_arity(self.n.max(other.n));
        out.atoms.extend(other.atoms.iter().copied());
        out
    }

    pub fn in_e_language(&self) -> bool {
        self.atoms.iter().all(Atom::is_e)
    }

    pub fn in_g_language(&self) -> bool {
        self.atoms.iter().all(Atom::is_g)
    }

    /// True iff every atom holds at `x`.
    pub fn eval(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, got: x.len() });
        }
        Ok(self.atoms.iter().all(|a| a.holds(x)))
    }

    pub fn to_json_value(&self) -> SystemJson {
        SystemJson {
            n: self.n,
            constraints: self.atoms.iter().map(AtomJson::from).collect(),
        }
    }

    pub fn from_json_value(v: &SystemJson) -> Result<System> {
        let atoms = v
            .constraints
            .iter()
            .map(AtomJson::to_atom)
            .collect::<Result<Vec<_>>>()?;
        System::from_atoms(v.n, atoms)
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        for a in &self.atoms {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub n: usize,
    pub constraints: Vec<AtomJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<usize>,
    pub k: usize,
}

impl From<&Atom> for AtomJson {
    fn from(a: &Atom) -> Self {
        let mk = |op: &str, i: Option<usize>, j: Option<usize>, k: usize| AtomJson {
            op: op.to_string(),
            i: i.map(|v| v + 1),
            j: j.map(|v| v + 1),
            k: k + 1,
        };
        match *a {
            Atom::One(k) => mk("one", None, None, k),
            Atom::Succ(i, k) => mk("succ", Some(i), None, k),
            Atom::Add(i, j, k) => mk("add", Some(i), Some(j), k),
            Atom::Mul(i, j, k) => mk("mul", Some(i), Some(j), k),
        }
    }
}

impl AtomJson {
    pub fn to_atom(&self) -> Result<Atom> {
        let idx = |v: Option<usize>, name: &str| -> Result<usize> {
            match v {
                Some(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::Invalid(format!("`{}` needs index {name} >= 1", self.op))),
            }
        };
        let k = idx(Some(self.k), "k")?;
        Ok(match self.op.as_str() {
            "one" => Atom::One(k),
            "succ" => Atom::Succ(idx(self.i, "i")?, k),
            "add" => Atom::Add(idx(self.i, "i")?, idx(self.j, "j")?, k),
            "mul" => Atom::Mul(idx(self.i, "i")?, idx(self.j, "j")?, k),
            other => return Err(Error::Invalid(format!("unknown constraint op `{other}`"))),
        })
    }
}

impl Serialize for System {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for System {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = SystemJson::deserialize(d)?;
        System::from_json_value(&v).map_err(serde::de::Error::custom)
    }
}

/// `{x1·x1 = x1, x1 + 1 = x2, x1·x2 = x2} ∪ {x_i·x_i = x_{i+1} : 2 ≤ i < n}`.
/// Its only solution is `(1, 2, 4, 16, …, 2^(2^(n−2)))`.
pub fn chain_system(n: usize) -> Result<System> {
    if n < 2 {
        return Err(Error::BadArity(n));
    }
    let mut atoms = vec![Atom::Mul(0, 0, 0), Atom::Succ(0, 1), Atom::Mul(0, 1, 1)];
    for i in 1..n - 1 {
        atoms.push(Atom::Mul(i, i, i + 1));
    }
    System::from_atoms(n, atoms)
}

/// Every atom of `G_n` with `Mul` operands ordered `i ≤ j`, in canonical order.
pub fn g_atoms(n: usize) -> Vec<Atom> {
    let mut out = Vec::new();
    for i in 0..n {
        for k in 0..n {
            out.push(Atom::Succ(i, k));
        }
    }
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                out.push(Atom::Mul(i, j, k));
            }
        }
    }
    out.sort();
    out
}

/// Largest `n` for which [`enumerate_subsystems`] lists all subsets.
pub const EXHAUSTIVE_SUBSYSTEM_MAX_N: usize = 2;

/// All `2^|G_n|` subsystems, in order of their bitmask over [`g_atoms`].
pub fn enumerate_subsystems(n: usize) -> Result<Vec<System>> {
    if n == 0 {
        return Err(Error::BadArity(0));
    }
    if n > EXHAUSTIVE_SUBSYSTEM_MAX_N {
        return Err(Error::TooLargeForExhaustive(format!(
            "G_{n} has {} atoms",
            g_atoms(n).len()
        )));
    }
    let atoms = g_atoms(n);
    let count = 1u64 << atoms.len();
    Ok((0..count).map(|mask| subset(n, &atoms, mask)).collect())
}

fn subset(n: usize, atoms: &[Atom], mask: u64) -> System {
    let mut s = System::new(n);
    for (b, a) in atoms.iter().enumerate() {
        if mask >> b & 1 == 1 {
            s.atoms.insert(*a);
        }
    }
    s
}

/// `count` pseudorandom subsystems of `G_n`; each atom is kept with
/// probability `density`.
pub fn sample_subsystems(n: usize, count: usize, density: f64, seed: u64) -> Result<Vec<System>> {
    if n == 0 {
        return Err(Error::BadArity(0));
    }
    let atoms = g_atoms(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let mut s = System::new(n);
            for a in &atoms {
                if rng.gen_bool(density) {
                    s.atoms.insert(*a);
                }
            }
            s
        })
        .collect())
}
