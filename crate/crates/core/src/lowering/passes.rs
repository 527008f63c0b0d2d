//! `E_n` → `G_n`: eliminate `1 = x_k`, then replace each `x_i + x_j = x_k`
//! by an addition gadget.

use super::gadgets::{one_elimination, rational_add_gadget, ring_add_gadget, Gadget};
use super::{compose, lower_to_e, LoweredProgram, Regime, Source};
use crate::error::Result;
use crate::ir::{Atom, System};
use crate::polynomials::Poly;

type AddGadget = fn(usize, usize, usize, &mut usize) -> Gadget;

fn lower_e_to_g(s: &System, gadget: AddGadget, regime: Regime, name: &str) -> LoweredProgram {
    let (t, ones) = one_elimination(s);
    let mut n = t.n();
    let mut witness = ones.witness;
    let mut atoms = Vec::new();
    for a in t.atoms() {
        match *a {
            Atom::Add(i, j, k) => {
                let g = gadget(i, j, k, &mut n);
                atoms.extend(g.atoms);
                witness.extend(&g.witness);
            }
            other => atoms.push(other),
        }
    }
    let system = System::from_atoms(n, atoms).expect("gadget indices in range");
    let mut passes = Vec::new();
    if t.n() > s.n() {
        passes.push("one_elimination".to_string());
    }
    passes.push(name.to_string());
    LoweredProgram {
        system,
        base_arity: s.n(),
        witness,
        regime,
        source: Source::System(s.clone()),
        passes,
    }
}

/// Over every commutative ring extending the integers: 20 new variables per
/// addition, one shared variable for all `1 = x_k`.
pub fn lower_e_to_g_ring(s: &System) -> LoweredProgram {
    lower_e_to_g(s, ring_add_gadget, Regime::Ring, "add_gadget_ring")
}

/// Over the rationals: 9 new variables per addition.
pub fn lower_e_to_g_rationals(s: &System) -> LoweredProgram {
    lower_e_to_g(s, rational_add_gadget, Regime::Rationals, "add_gadget_rationals")
}

/// `D = 0` → `E_n` → `G_n` with the ring gadget.
pub fn lower_to_g_ring(d: &Poly) -> Result<LoweredProgram> {
    let e = lower_to_e(d)?;
    compose(&e, &lower_e_to_g_ring(&e.system))
}

/// `D = 0` → `E_n` → `G_n` with the rational gadget.
pub fn lower_to_g_rationals(d: &Poly) -> Result<LoweredProgram> {
    let e = lower_to_e(d)?;
    compose(&e, &lower_e_to_g_rationals(&e.system))
}
