//! Polynomial equation → system of `1 = x_k`, `x_i + x_j = x_k`,
//! `x_i · x_j = x_k` atoms.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

use super::builder::{Builder, Op, Target, Top};
use super::{LoweredProgram, Regime, Source};
use crate::error::{Error, Result};
use crate::ir::System;
use crate::polynomials::Poly;
use crate::rationals::DEFAULT_BIT_BUDGET;

/// `(M+2)^((d1+1)···(dp+1)) − 1`, or `None` when the value needs more than
/// the default bit budget (any realistic system is then below it).
pub fn condition3_bound(d: &Poly) -> Option<BigUint> {
    let m = d.max_abs_coeff().to_biguint()? + 2u32;
    let mut e: u64 = 1;
    for i in 0..d.arity() {
        e = e.checked_mul(d.degree_in(i) as u64 + 1)?;
    }
    if (m.bits() - 1).checked_mul(e)? > DEFAULT_BIT_BUDGET {
        return None;
    }
    let e = u32::try_from(e).ok()?;
    Some(num_traits::pow::pow(m, e as usize) - 1u32)
}

/// Checks the hypotheses shared by the equation lowerings.
pub(crate) fn check_equation(d: &Poly) -> Result<()> {
    if d.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(i) = (0..d.arity()).find(|&i| d.degree_in(i) == 0) {
        return Err(Error::DegenerateVariable(i + 1));
    }
    if d.max_abs_coeff().to_u64().is_none() {
        return Err(Error::CapExceeded("coefficients must fit in 64 bits".into()));
    }
    Ok(())
}

/// Splits `D` into the parts with positive and with negative coefficients:
/// `D = P − N`, both with positive coefficients.
pub(crate) fn sign_split(d: &Poly) -> (Poly, Poly) {
    let take = |negative: bool| {
        let terms = d
            .terms()
            .filter(|(_, c)| c.is_negative() == negative)
            .map(|(m, c)| (m.0.clone(), c.abs()));
        Poly::from_terms(d.arity(), terms).expect("same arity")
    };
    (take(false), take(true))
}

fn is_bare_var(p: &Poly) -> bool {
    p.num_terms() == 1
        && p.terms().all(|(m, c)| m.degree() == 1 && *c == BigInt::from(1))
}

/// Whether building `p` ends in an operation that can target a given variable.
fn ends_in_op(p: &Poly) -> bool {
    !p.is_zero() && !is_bare_var(p)
}

/// Lowers `D = 0` to a system whose solutions over any commutative ring
/// extending the integers (and over the naturals) are exactly the unique
/// extensions of the roots of `D`.
///
/// `D = P − N` is written as `P = N` with both sides built bottom-up; the
/// last operation of one side targets the variable of the other. When
/// neither side ends in an operation, `P + 1 = N + 1` is built instead.
pub fn lower_to_e(d: &Poly) -> Result<LoweredProgram> {
    check_equation(d)?;
    let p = d.arity();
    let (pos, neg) = sign_split(d);
    let (lhs, rhs) = if ends_in_op(&pos) && !neg.is_zero() {
        (pos, neg)
    } else if ends_in_op(&neg) && !pos.is_zero() {
        (neg, pos)
    } else {
        let one = Poly::constant(1, p);
        (pos.add(&one), neg.add(&one))
    };
    let mut b = Builder::new(p, Target::E);
    let r = b.positive_poly(&rhs).expect("nonzero side");
    let r = b.materialize(r);
    match b.positive_poly(&lhs).expect("nonzero side") {
        Top::Op(op) => b.emit(op, r),
        Top::Var(_) => unreachable!("side chosen to end in an operation"),
    }
    if b.n == p {
        b.node(Op::One);
    }
    let system = System::from_atoms(b.n, b.atoms)?;
    debug_assert!(b.witness.validate(p, system.n()).is_ok());
    if let Some(bound) = condition3_bound(d) {
        if BigUint::from(system.n()) > bound {
            return Err(Error::CapExceeded(format!(
                "lowered arity {} exceeds (M+2)^prod(d_i+1) - 1 = {bound}",
                system.n()
            )));
        }
    }
    Ok(LoweredProgram {
        system,
        base_arity: p,
        witness: b.witness,
        regime: Regime::Ring,
        source: Source::Equation(d.clone()),
        passes: vec!["equation_to_e".into()],
    })
}
