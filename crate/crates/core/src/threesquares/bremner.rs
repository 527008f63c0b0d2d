//! Systems in `G_27` (case 1) and `G_28` (case 2) equivalent to
//! `x³ + y³ = 4981` together with `x³/y³` (or `2·x³/y³`) `= r²(s²(t² + 1) + 1)`.
//! Each variable stands for one expression over `x, y, r, s, t`, pinned by a
//! single atom; quotients become products with the quotient variable.
//!
//! No rational point of feasible height is known, so the chain is checked
//! on real points of the curve.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ir::{Atom, System};
use crate::rationals::Rat;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Sym(char),
    Const(Rat),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Values for the free symbols `x, y, r, s, t`.
#[derive(Clone, Copy, Debug)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
    pub r: T,
    pub s: T,
    pub t: T,
}

impl<T: Clone> Point<T> {
    fn get(&self, c: char) -> T {
        match c {
            'x' => self.x.clone(),
            'y' => self.y.clone(),
            'r' => self.r.clone(),
            's' => self.s.clone(),
            't' => self.t.clone(),
            _ => unreachable!("unknown symbol {c}"),
        }
    }
}

impl Expr {
    pub fn eval_f64(&self, p: &Point<f64>) -> f64 {
        match self {
            Expr::Sym(c) => p.get(*c),
            Expr::Const(v) => v.to_f64(),
            Expr::Add(a, b) => a.eval_f64(p) + b.eval_f64(p),
            Expr::Mul(a, b) => a.eval_f64(p) * b.eval_f64(p),
            Expr::Div(a, b) => a.eval_f64(p) / b.eval_f64(p),
            Expr::Pow(a, e) => a.eval_f64(p).powi(*e as i32),
        }
    }

    /// `None` on division by zero.
    pub fn eval_exact(&self, p: &Point<Rat>) -> Option<Rat> {
        Some(match self {
            Expr::Sym(c) => p.get(*c),
            Expr::Const(v) => v.clone(),
            Expr::Add(a, b) => a.eval_exact(p)? + b.eval_exact(p)?,
            Expr::Mul(a, b) => a.eval_exact(p)? * b.eval_exact(p)?,
            Expr::Div(a, b) => {
                let d = b.eval_exact(p)?;
                if d.is_zero() {
                    return None;
                }
                a.eval_exact(p)? / d
            }
            Expr::Pow(a, e) => a.eval_exact(p)?.pow(*e),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sym(c) => write!(f, "{c}"),
            Expr::Const(v) => write!(f, "{v}"),
            Expr::Add(a, b) => write!(f, "(+ {a} {b})"),
            Expr::Mul(a, b) => write!(f, "(* {a} {b})"),
            Expr::Div(a, b) => write!(f, "(/ {a} {b})"),
            Expr::Pow(a, e) => write!(f, "(^ {a} {e})"),
        }
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn sym(c: char) -> Expr {
    Expr::Sym(c)
}

fn num(n: i64, d: i64) -> Expr {
    Expr::Const(Rat::new(n, d).expect("nonzero denominator"))
}

fn add(a: &Expr, b: Expr) -> Expr {
    Expr::Add(Box::new(a.clone()), Box::new(b))
}

fn mul(a: Expr, b: &Expr) -> Expr {
    Expr::Mul(Box::new(a), Box::new(b.clone()))
}

fn div(a: &Expr, b: &Expr) -> Expr {
    Expr::Div(Box::new(a.clone()), Box::new(b.clone()))
}

fn pow(a: &Expr, e: u32) -> Expr {
    Expr::Pow(Box::new(a.clone()), e)
}

#[derive(Clone, Debug, Serialize)]
pub struct BremnerSystem {
    pub case_id: u8,
    pub system: System,
    /// The expression for each variable, zero-based.
    pub expr_map: Vec<Expr>,
    /// The two atoms that tie the chain to the curve and to `H(r, s, t)`;
    /// every other atom is an identity in `x, y, r, s, t`.
    #[serde(skip)]
    pub ties: [Atom; 2],
}

#[derive(Default)]
struct Builder {
    exprs: Vec<Expr>,
    atoms: Vec<Atom>,
}

impl Builder {
    fn var(&mut self, e: Expr) -> usize {
        self.exprs.push(e);
        self.exprs.len() - 1
    }

    fn e(&self, i: usize) -> &Expr {
        &self.exprs[i]
    }

    /// A new variable `v_i · v_j`, described by `e`.
    fn mul(&mut self, i: usize, j: usize, e: Expr) -> usize {
        let k = self.var(e);
        self.atoms.push(Atom::Mul(i, j, k));
        k
    }

    fn succ(&mut self, i: usize) -> usize {
        let k = self.var(add(&self.exprs[i], num(1, 1)));
        self.atoms.push(Atom::Succ(i, k));
        k
    }
}

pub fn bremner_system(case_id: u8) -> Result<BremnerSystem> {
    if case_id != 1 && case_id != 2 {
        return Err(Error::Invalid(format!("case must be 1 or 2, got {case_id}")));
    }
    let mut b = Builder::default();
    let x = b.var(sym('x'));
    let y = b.var(sym('y'));
    let x2 = b.mul(x, x, pow(&sym('x'), 2));
    let x3 = b.mul(x2, x, pow(&sym('x'), 3));
    let y2 = b.mul(y, y, pow(&sym('y'), 2));
    let y3 = b.mul(y2, y, pow(&sym('y'), 3));
    // the quotient is pinned by q · y³ = x³
    let q = b.var(div(b.e(x3), b.e(y3)));
    b.atoms.push(Atom::Mul(q, y3, x3));
    let two_q_slot = b.exprs.len();
    if case_id == 2 {
        // filled in once 2 exists; the position follows the expression list
        b.var(Expr::Const(Rat::zero()));
    }
    let q1 = b.succ(q);

    let one = b.var(num(1, 1));
    b.atoms.push(Atom::Mul(one, one, one));
    let two = b.succ(one);
    b.exprs[two] = num(2, 1);
    // rules out 1 = 0, which would make 2 = 1
    b.atoms.push(Atom::Mul(one, two, two));
    let four = b.mul(two, two, num(4, 1));
    let sixteen = b.mul(four, four, num(16, 1));
    let c17 = b.succ(sixteen);
    b.exprs[c17] = num(17, 1);
    let c289 = b.mul(c17, c17, num(289, 1));
    let c289_4 = b.var(num(289, 4));
    b.atoms.push(Atom::Mul(four, c289_4, c289));
    let c293_4 = b.succ(c289_4);
    let c293 = b.mul(four, c293_4, num(293, 1));
    let c4981 = b.mul(c17, c293, num(4981, 1));

    let t = b.var(sym('t'));
    let t2 = b.mul(t, t, pow(&sym('t'), 2));
    let t21 = b.succ(t2);
    let s = b.var(sym('s'));
    let s2 = b.mul(s, s, pow(&sym('s'), 2));
    let s2t = b.mul(s2, t21, mul(pow(&sym('s'), 2), b.e(t21)));
    let s2t1 = b.succ(s2t);
    let r = b.var(sym('r'));
    let r2 = b.mul(r, r, pow(&sym('r'), 2));

    let lhs = if case_id == 2 {
        b.exprs[two_q_slot] = mul(num(2, 1), b.e(q));
        b.atoms.push(Atom::Mul(two, q, two_q_slot));
        two_q_slot
    } else {
        q
    };
    let ties = [Atom::Mul(q1, y3, c4981).canonical(), Atom::Mul(r2, s2t1, lhs).canonical()];
    b.atoms.extend(ties);
    let system = System::from_atoms(b.exprs.len(), b.atoms)?;
    Ok(BremnerSystem { case_id, system, expr_map: b.exprs, ties })
}

impl BremnerSystem {
    pub fn arity(&self) -> usize {
        self.system.n()
    }

    /// A copy with the target of the first non-tie product moved to another
    /// variable; its identity breaks.
    pub fn corrupted(&self) -> BremnerSystem {
        let mut atoms: Vec<Atom> = self.system.atoms().copied().collect();
        let pos = atoms
            .iter()
            .position(|a| matches!(a, Atom::Mul(i, j, k) if i != k && j != k) && !self.ties.contains(a))
            .expect("the chain has products");
        if let Atom::Mul(i, j, k) = atoms[pos] {
            atoms[pos] = Atom::Mul(i, j, (k + 1) % self.arity());
        }
        BremnerSystem {
            system: System::from_atoms(self.arity(), atoms).expect("indices in range"),
            ..self.clone()
        }
    }

    /// Every constraint is `x_i + 1 = x_k` or `x_i · x_j = x_k`, the arity
    /// matches the case and each variable has an expression.
    pub fn structural_ok(&self) -> bool {
        let arity = if self.case_id == 1 { 27 } else { 28 };
        self.system.in_g_language() && self.arity() == arity && self.expr_map.len() == arity
    }

    /// Exact check at a rational point off the curve: every atom except the
    /// two ties holds as an identity.
    pub fn identities_hold(&self, p: &Point<Rat>) -> bool {
        let vals: Option<Vec<Rat>> = self.expr_map.iter().map(|e| e.eval_exact(p)).collect();
        let Some(vals) = vals else { return false };
        self.system.atoms().filter(|a| !self.ties.contains(a)).all(|a| a.holds(&vals))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BremnerReport {
    pub case_id: u8,
    pub arity: usize,
    pub constraints: usize,
    pub samples: usize,
    pub tol: f64,
    pub structural_ok: bool,
    pub identities_exact: bool,
    /// Largest of `|lhs − rhs| / max(1, |rhs|)` over samples and constraints.
    pub max_residual: f64,
    /// The constraint attaining `max_residual`, one-based.
    pub worst_constraint: String,
    pub passed: bool,
}

/// Samples real `x ∈ (1, 17)`, sets `y = ∛(4981 − x³)`, `r = √v`, `s = t = 0`
/// with `v` the case's left-hand side, and evaluates every constraint.
pub fn verify_bremner(bs: &BremnerSystem, samples: usize, tol: f64, seed: u64) -> Result<BremnerReport> {
    if !(tol > 0.0) {
        return Err(Error::DomainViolation(format!("tolerance {tol} is not positive")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual = 0.0f64;
    let mut worst = None;
    for _ in 0..samples {
        let x: f64 = rng.gen_range(1.0..17.0);
        let y = (4981.0 - x.powi(3)).cbrt();
        let v = x.powi(3) / y.powi(3) * if bs.case_id == 2 { 2.0 } else { 1.0 };
        let p = Point { x, y, r: v.sqrt(), s: 0.0, t: 0.0 };
        let vals: Vec<f64> = bs.expr_map.iter().map(|e| e.eval_f64(&p)).collect();
        for a in bs.system.atoms() {
            let rel = a.residual_f64(&vals).abs() / vals[a.target()].abs().max(1.0);
            if !(rel <= max_residual) {
                max_residual = rel;
                worst = Some(*a);
            }
        }
    }
    let off_curve = Point {
        x: Rat::new(3, 2)?,
        y: Rat::new(-5, 7)?,
        r: Rat::new(2, 3)?,
        s: Rat::new(-1, 4)?,
        t: Rat::new(5, 3)?,
    };
    let structural_ok = bs.structural_ok();
    let identities_exact = bs.identities_hold(&off_curve);
    Ok(BremnerReport {
        case_id: bs.case_id,
        arity: bs.arity(),
        constraints: bs.system.len(),
        samples,
        tol,
        structural_ok,
        identities_exact,
        max_residual,
        worst_constraint: worst.map(|a| a.to_string()).unwrap_or_default(),
        passed: structural_ok && identities_exact && max_residual < tol,
    })
}
