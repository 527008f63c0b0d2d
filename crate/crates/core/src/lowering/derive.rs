//! Recovers a witness map for a hand-written system and checks that the
//! system encodes a given equation.

use super::witness::{Expr, WitnessMap};
use super::{LoweredProgram, Regime, Source};
use crate::error::{Error, Result};
use crate::ir::{Atom, System};
use crate::polynomials::Poly;

/// A derivation of `target` from already known variables, if the atom allows one.
fn derivation(a: &Atom, known: &[bool], backward: bool) -> Option<(usize, Expr)> {
    let k = |i: usize| known[i];
    match *a {
        Atom::One(t) if !k(t) => Some((t, Expr::One)),
        Atom::Succ(i, t) if k(i) && !k(t) => Some((t, Expr::Succ(i))),
        Atom::Add(i, j, t) if k(i) && k(j) && !k(t) => Some((t, Expr::Add(i, j))),
        Atom::Mul(i, j, t) if k(i) && k(j) && !k(t) => Some((t, Expr::Mul(i, j))),
        _ if !backward => None,
        Atom::Succ(i, t) if k(t) && !k(i) => Some((i, Expr::Pred(t))),
        Atom::Add(i, j, t) if k(t) && k(i) && !k(j) => Some((j, Expr::Sub(t, i))),
        Atom::Add(i, j, t) if k(t) && k(j) && !k(i) => Some((i, Expr::Sub(t, j))),
        Atom::Mul(i, j, t) if k(t) && k(i) && !k(j) && i != j => Some((j, Expr::Div(t, i))),
        Atom::Mul(i, j, t) if k(t) && k(j) && !k(i) && i != j => Some((i, Expr::Div(t, j))),
        _ => None,
    }
}

/// Builds a witness map for `system` from its first `base_arity` variables
/// and verifies that the atoms not used as definitions cut out exactly
/// `equation = 0`: all but one of them must vanish identically after
/// substitution, and the remaining one must be a nonzero constant multiple
/// of the equation.
///
/// Forward definitions are preferred; a backward step (`x − 1`, `x − y`,
/// `x / y`) is taken only when no forward step applies. Systems whose
/// witness needs a division are rejected, since the residual check is a
/// polynomial identity.
pub fn derive_witness(system: &System, base_arity: usize, equation: &Poly) -> Result<LoweredProgram> {
    if equation.arity() != base_arity {
        return Err(Error::ArityMismatch { expected: base_arity, got: equation.arity() });
    }
    let n = system.n();
    let mut known = vec![false; n];
    known[..base_arity].iter_mut().for_each(|k| *k = true);
    let mut used = vec![false; system.len()];
    let atoms: Vec<Atom> = system.atoms().copied().collect();
    let mut witness = WitnessMap::new();
    loop {
        let mut step = None;
        for backward in [false, true] {
            step = atoms
                .iter()
                .enumerate()
                .filter(|(idx, _)| !used[*idx])
                .find_map(|(idx, a)| derivation(a, &known, backward).map(|d| (idx, d)));
            if step.is_some() {
                break;
            }
        }
        match step {
            Some((idx, (v, e))) => {
                used[idx] = true;
                known[v] = true;
                witness.push(v, e);
            }
            None => break,
        }
    }
    if let Some(v) = known.iter().position(|k| !k) {
        return Err(Error::SystemMismatch(format!(
            "x{} is not determined by the base variables",
            v + 1
        )));
    }
    let residual: Vec<Atom> = atoms
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(a, _)| *a)
        .collect();
    check_residuals(&residual, &witness, base_arity, equation)?;
    Ok(LoweredProgram {
        system: system.clone(),
        base_arity,
        witness,
        regime: Regime::Rationals,
        source: Source::Equation(equation.clone()),
        passes: vec!["derived_witness".into()],
    })
}

fn check_residuals(residual: &[Atom], witness: &WitnessMap, base_arity: usize, eq: &Poly) -> Result<()> {
    if witness.uses_division() {
        return Err(Error::SystemMismatch(
            "the base variables determine the system only through a division".into(),
        ));
    }
    check_symbolic(residual, witness, base_arity, eq)
}

fn atom_poly(a: &Atom, var: &dyn Fn(usize) -> Poly, arity: usize) -> Poly {
    match *a {
        Atom::One(k) => Poly::constant(1, arity).sub(&var(k)),
        Atom::Succ(i, k) => var(i).add(&Poly::constant(1, arity)).sub(&var(k)),
        Atom::Add(i, j, k) => var(i).add(&var(j)).sub(&var(k)),
        Atom::Mul(i, j, k) => var(i).mul(&var(j)).sub(&var(k)),
    }
}

fn check_symbolic(residual: &[Atom], w: &WitnessMap, base_arity: usize, eq: &Poly) -> Result<()> {
    const MAX_DEGREE: u64 = 256;
    let var = |i: usize| w.expand(i, base_arity, MAX_DEGREE).expect("division-free witness");
    let mut live = Vec::new();
    for a in residual {
        let r = atom_poly(a, &var, base_arity);
        if !r.is_zero() {
            live.push((a, r));
        }
    }
    match live.as_slice() {
        [(_, r)] if is_constant_multiple(r, eq) => Ok(()),
        [(a, r)] => Err(Error::SystemMismatch(format!(
            "`{a}` reduces to {r}, not a multiple of {eq}"
        ))),
        [] => Err(Error::SystemMismatch("every atom holds identically".into())),
        _ => Err(Error::SystemMismatch(format!(
            "{} atoms constrain the base variables",
            live.len()
        ))),
    }
}

fn is_constant_multiple(r: &Poly, eq: &Poly) -> bool {
    let (Some((m, c)), false) = (eq.terms().next_back(), eq.is_zero()) else {
        return false;
    };
    let rc = r.coefficient(&m.0);
    if rc == num_bigint::BigInt::from(0) {
        return false;
    }
    // c·r = rc·eq
    r.scale(c) == eq.scale(&rc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowering::witness_extension;
    use crate::polynomials::parse_polynomial;
    use crate::rationals::RatTuple;

    fn quintic() -> Poly {
        parse_polynomial("x1^5 - x1 - x2^2 + x2").unwrap()
    }

    fn sys(n: usize, atoms: &[Atom]) -> System {
        System::from_atoms(n, atoms.iter().copied()).unwrap()
    }

    // one-based helpers keep the systems readable
    fn succ(i: usize, k: usize) -> Atom {
        Atom::Succ(i - 1, k - 1)
    }
    fn mul(i: usize, j: usize, k: usize) -> Atom {
        Atom::Mul(i - 1, j - 1, k - 1)
    }

    #[test]
    fn corrected_quintic_system() {
        let s = sys(7, &[succ(3, 2), mul(2, 3, 4), succ(5, 7), mul(1, 1, 6), mul(6, 6, 7), mul(1, 5, 4)]);
        let prog = derive_witness(&s, 2, &quintic()).unwrap();
        let ext = witness_extension(&prog, &RatTuple::from_ints(&[2, -5])).unwrap();
        assert_eq!(ext, RatTuple::from_ints(&[2, -5, -6, 30, 15, 4, 16]));
        assert_eq!(
            witness_extension(&prog, &RatTuple::from_ints(&[0, 5])),
            Err(Error::NotASolution)
        );
        let x7 = prog.witness.expand(6, 2, 16).unwrap();
        assert_eq!(x7.to_string(), "x1^4");
    }

    #[test]
    fn printed_quintic_system_encodes_another_equation() {
        let s = sys(7, &[succ(3, 2), mul(2, 3, 4), succ(5, 1), mul(1, 1, 6), mul(6, 6, 7), mul(7, 5, 4)]);
        assert!(matches!(derive_witness(&s, 2, &quintic()), Err(Error::SystemMismatch(_))));
        let other = parse_polynomial("x1^5 - x1^4 - x2^2 + x2").unwrap();
        assert!(derive_witness(&s, 2, &other).is_ok());
    }

    #[test]
    fn division_is_rejected() {
        // x1·x3 = x2 forces x3 = x2/x1
        let s = System::from_atoms(3, [Atom::Mul(0, 2, 1), Atom::Mul(2, 2, 2)]).unwrap();
        let eq = parse_polynomial("x2^2 - x1*x2").unwrap();
        assert!(matches!(derive_witness(&s, 2, &eq), Err(Error::SystemMismatch(_))));
    }

    #[test]
    fn undetermined_variable() {
        let s = System::from_atoms(3, [Atom::Mul(2, 2, 2)]).unwrap();
        let eq = parse_polynomial("x1 - x2").unwrap();
        assert!(matches!(derive_witness(&s, 2, &eq), Err(Error::SystemMismatch(_))));
    }
}
