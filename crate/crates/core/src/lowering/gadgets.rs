//! Replacements for `x + y = z` and `1 = x` by `+1` and `·` atoms.

use super::witness::{Expr, WitnessMap};
use crate::ir::{Atom, System};

/// Atoms plus the witness definitions of the variables they introduce.
#[derive(Clone, Debug, Default)]
pub struct Gadget {
    pub atoms: Vec<Atom>,
    pub witness: WitnessMap,
}

impl Gadget {
    fn fresh(&mut self, n: &mut usize, e: Expr) -> usize {
        let v = *n;
        *n += 1;
        self.witness.push(v, e);
        v
    }

    fn mul(&mut self, n: &mut usize, a: usize, b: usize) -> usize {
        let v = self.fresh(n, Expr::Mul(a, b));
        self.atoms.push(Atom::Mul(a, b, v));
        v
    }

    fn succ(&mut self, n: &mut usize, a: usize) -> usize {
        let v = self.fresh(n, Expr::Succ(a));
        self.atoms.push(Atom::Succ(a, v));
        v
    }
}

/// `x + y = z` over any commutative ring extending the integers, through
/// 20 new variables and the two identities
/// `(zx+1)(zy+1) = z²(xy+1)+1` and
/// `((z+1)x+1)((z+1)(y+1)+1) = (z+1)²(x(y+1)+1)+1`.
pub fn ring_add_gadget(x: usize, y: usize, z: usize, n: &mut usize) -> Gadget {
    let mut g = Gadget::default();
    let zx = g.mul(n, z, x);
    let zx1 = g.succ(n, zx);
    let zy = g.mul(n, z, y);
    let zy1 = g.succ(n, zy);
    let zz = g.mul(n, z, z);
    let xy = g.mul(n, x, y);
    let xy1 = g.succ(n, xy);
    let zzxy1 = g.mul(n, zz, xy1);
    let rhs1 = g.succ(n, zzxy1);
    let z1 = g.succ(n, z);
    let z1x = g.mul(n, z1, x);
    let z1x1 = g.succ(n, z1x);
    let y1 = g.succ(n, y);
    let z1y1 = g.mul(n, z1, y1);
    let z1y11 = g.succ(n, z1y1);
    let z1z1 = g.mul(n, z1, z1);
    let xy1b = g.mul(n, x, y1);
    let xy1b1 = g.succ(n, xy1b);
    let big = g.mul(n, z1z1, xy1b1);
    let rhs2 = g.succ(n, big);
    g.atoms.push(Atom::Mul(zx1, zy1, rhs1));
    g.atoms.push(Atom::Mul(z1x1, z1y11, rhs2));
    g
}

/// `x + y = z` over the rationals through nine new variables:
/// `y², y²+1, y(y²+1), y(y²+1)+1, x(y²+1), q, q+1, z(y²+1), z(y²+1)+1`
/// with `q·(y(y²+1)+1) = x(y²+1)` and `(y(y²+1)+1)(q+1) = z(y²+1)+1`.
/// The divisor `y³+y+1` has no rational root.
pub fn rational_add_gadget(x: usize, y: usize, z: usize, n: &mut usize) -> Gadget {
    let mut g = Gadget::default();
    let yy = g.mul(n, y, y);
    let yy1 = g.succ(n, yy);
    let yyy = g.mul(n, y, yy1);
    let div = g.succ(n, yyy);
    let xyy = g.mul(n, x, yy1);
    let q = g.fresh(n, Expr::Div(xyy, div));
    g.atoms.push(Atom::Mul(q, div, xyy));
    let q1 = g.succ(n, q);
    let zyy = g.mul(n, z, yy1);
    let zyy1 = g.succ(n, zyy);
    g.atoms.push(Atom::Mul(div, q1, zyy1));
    g
}

/// `x + y = z` over the non-negative rationals through 11 new variables and
/// `((z+1)x+1)((z+1)(y+1)+1) = (z+1)²(x(y+1)+1)+1`, whose two sides differ
/// by `(z+1)(x+y−z)`.
pub fn nonneg_add_gadget(x: usize, y: usize, z: usize, n: &mut usize) -> Gadget {
    let mut g = Gadget::default();
    let z1 = g.succ(n, z);
    let z1x = g.mul(n, z1, x);
    let z1x1 = g.succ(n, z1x);
    let y1 = g.succ(n, y);
    let z1y1 = g.mul(n, z1, y1);
    let z1y11 = g.succ(n, z1y1);
    let lhs = g.mul(n, z1x1, z1y11);
    let z1z1 = g.mul(n, z1, z1);
    let xy1 = g.mul(n, x, y1);
    let xy11 = g.succ(n, xy1);
    let big = g.mul(n, z1z1, xy11);
    g.atoms.push(Atom::Succ(big, lhs));
    g
}

/// Replaces every `1 = x_k` by `x_k·x_k = x_k, x_k + 1 = y, x_k·y = y`, with
/// one new variable `y` shared by all of them. Other atoms are kept.
pub fn one_elimination(s: &System) -> (System, Gadget) {
    let ones: Vec<usize> = s
        .atoms()
        .filter_map(|a| match a {
            Atom::One(k) => Some(*k),
            _ => None,
        })
        .collect();
    let mut g = Gadget::default();
    if ones.is_empty() {
        return (s.clone(), g);
    }
    let mut n = s.n();
    let y = g.fresh(&mut n, Expr::Succ(ones[0]));
    let mut out = System::new(n);
    for a in s.atoms() {
        if !matches!(a, Atom::One(_)) {
            out.insert(*a).expect("index in range");
        }
    }
    for k in ones {
        for a in [Atom::Mul(k, k, k), Atom::Succ(k, y), Atom::Mul(k, y, y)] {
            out.insert(a).expect("index in range");
        }
    }
    (out, g)
}
