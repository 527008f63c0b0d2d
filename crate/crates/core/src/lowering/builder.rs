//! Bottom-up construction of positive-coefficient polynomials as chains of
//! atoms, sharing every repeated subterm.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::gadgets::nonneg_add_gadget;
use super::witness::{Expr, WitnessMap};
use crate::ir::Atom;
use crate::polynomials::Poly;

/// An operation whose result has not been given a variable yet.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Op {
    One,
    Succ(usize),
    Add(usize, usize),
    Mul(usize, usize),
}

/// The value of a side: either an existing variable or a pending operation.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Top {
    Var(usize),
    Op(Op),
}

/// Which atoms the builder may emit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Target {
    /// `1 = x`, `x + y = z`, `x · y = z`.
    E,
    /// `x + 1 = y`, `x · y = z`; sums go through the non-negative gadget.
    GNonneg,
}

pub(crate) struct Builder {
    pub n: usize,
    pub atoms: Vec<Atom>,
    pub witness: WitnessMap,
    target: Target,
    memo: HashMap<Op, usize>,
}

impl Builder {
    pub fn new(base_arity: usize, target: Target) -> Self {
        Builder {
            n: base_arity,
            atoms: Vec::new(),
            witness: WitnessMap::new(),
            target,
            memo: HashMap::new(),
        }
    }

    pub fn fresh(&mut self, e: Expr) -> usize {
        let v = self.n;
        self.n += 1;
        self.witness.push(v, e);
        v
    }

    /// The variable holding `op`, creating it on first use.
    pub fn node(&mut self, op: Op) -> usize {
        let op = normalize(op);
        if let Some(&v) = self.memo.get(&op) {
            return v;
        }
        let v = match op {
            Op::One => self.fresh(Expr::One),
            Op::Succ(a) => self.fresh(Expr::Succ(a)),
            Op::Add(a, b) => self.fresh(Expr::Add(a, b)),
            Op::Mul(a, b) => self.fresh(Expr::Mul(a, b)),
        };
        self.emit(op, v);
        self.memo.insert(op, v);
        v
    }

    /// Constrains `op` to equal the existing variable `target`.
    pub fn emit(&mut self, op: Op, target: usize) {
        match (self.target, normalize(op)) {
            (Target::E, Op::One) => self.atoms.push(Atom::One(target)),
            (Target::E, Op::Add(a, b)) => self.atoms.push(Atom::Add(a, b, target)),
            (_, Op::Mul(a, b)) => self.atoms.push(Atom::Mul(a, b, target)),
            (Target::GNonneg, Op::Succ(a)) => self.atoms.push(Atom::Succ(a, target)),
            (Target::GNonneg, Op::Add(a, b)) => {
                let mut n = self.n;
                let g = nonneg_add_gadget(a, b, target, &mut n);
                self.n = n;
                self.atoms.extend(g.atoms);
                self.witness.extend(&g.witness);
            }
            (Target::E, Op::Succ(a)) => {
                let one = self.node(Op::One);
                self.atoms.push(Atom::Add(a, one, target));
            }
            (Target::GNonneg, Op::One) => panic!("no constant atom in the non-negative target"),
        }
    }

    pub fn materialize(&mut self, t: Top) -> usize {
        match t {
            Top::Var(v) => v,
            Top::Op(op) => self.node(op),
        }
    }

    /// `x_i^e`, `e ≥ 1`, as the chain `x_i, x_i², …`.
    pub fn power(&mut self, i: usize, e: u32) -> Top {
        if e == 1 {
            return Top::Var(i);
        }
        let prev = self.power(i, e - 1);
        let prev = self.materialize(prev);
        Top::Op(Op::Mul(prev, i))
    }

    /// A monomial of positive degree, multiplying its powers left to right.
    pub fn monomial(&mut self, exps: &[u32]) -> Top {
        let mut acc: Option<Top> = None;
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = self.power(i, e);
            acc = Some(match acc {
                None => pw,
                Some(prev) => {
                    let a = self.materialize(prev);
                    let b = self.materialize(pw);
                    Top::Op(Op::Mul(a, b))
                }
            });
        }
        acc.expect("monomial of positive degree")
    }

    /// The constant `c ≥ 1` built from `1` by doubling and adding one
    /// (E target only).
    pub fn constant(&mut self, c: u64) -> Top {
        self.scaled(Top::Op(Op::One), c)
    }

    /// `c · m` by doubling and adding `m`.
    pub fn scaled(&mut self, m: Top, c: u64) -> Top {
        assert!(c >= 1);
        if c == 1 {
            return m;
        }
        if c % 2 == 0 {
            let half = self.scaled(m, c / 2);
            let h = self.materialize(half);
            return Top::Op(Op::Add(h, h));
        }
        let prev = self.scaled(m, c - 1);
        let prev = self.materialize(prev);
        let mv = self.materialize(m);
        Top::Op(Op::Add(prev, mv))
    }

    /// Left fold of `+` over the given values.
    pub fn sum(&mut self, parts: Vec<Top>) -> Option<Top> {
        let mut acc: Option<Top> = None;
        for t in parts {
            acc = Some(match acc {
                None => t,
                Some(prev) => {
                    let a = self.materialize(prev);
                    let b = self.materialize(t);
                    Top::Op(Op::Add(a, b))
                }
            });
        }
        acc
    }

    /// A polynomial with positive coefficients, terms in ascending
    /// graded-lex order; `None` for the zero polynomial. E target only.
    pub fn positive_poly(&mut self, p: &Poly) -> Option<Top> {
        let mut parts = Vec::new();
        for (m, c) in p.terms() {
            let c = small(c);
            if m.is_constant() {
                parts.push(self.constant(c));
            } else {
                let mt = self.monomial(&m.0);
                parts.push(self.scaled(mt, c));
            }
        }
        self.sum(parts)
    }
}

fn normalize(op: Op) -> Op {
    match op {
        Op::Add(a, b) if a > b => Op::Add(b, a),
        Op::Mul(a, b) if a > b => Op::Mul(b, a),
        o => o,
    }
}

pub(crate) fn small(c: &BigInt) -> u64 {
    assert!(*c >= BigInt::one(), "positive coefficient expected");
    c.to_u64().expect("coefficient fits in u64")
}
