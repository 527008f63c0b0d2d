//! Polynomial equation → `G_n` over the non-negative rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::builder::{small, Builder, Op, Target, Top};
use super::to_e::check_equation;
use super::{LoweredProgram, Regime, Source};
use crate::error::{Error, Result};
use crate::ir::System;
use crate::polynomials::Poly;

/// Largest number of monomial copies summed on one side.
const MAX_SUMMANDS: u64 = 4096;

/// `D` with every coefficient `c` replaced by `|c| + 1`.
fn successor_coefficients(d: &Poly) -> Poly {
    let terms = d.terms().map(|(m, c)| (m.0.clone(), c.abs() + BigInt::one()));
    Poly::from_terms(d.arity(), terms).expect("same arity")
}

/// Builds `((Σ_A monomials) + 1) + … + 1`: each non-constant monomial of `side`
/// repeated as often as its coefficient, then one unit per constant.
/// Returns the final pending `+1`.
fn side(b: &mut Builder, side: &Poly) -> Result<Op> {
    let mut parts = Vec::new();
    let mut units = 0;
    let mut count = 0u64;
    for (m, c) in side.terms() {
        let c = small(c);
        if m.is_constant() {
            units = c;
            continue;
        }
        count += c;
        if count > MAX_SUMMANDS {
            return Err(Error::CapExceeded(format!(
                "more than {MAX_SUMMANDS} summands on one side"
            )));
        }
        let mt = b.monomial(&m.0);
        parts.extend(std::iter::repeat(mt).take(c as usize));
    }
    let sum = b.sum(parts).expect("a non-constant monomial");
    let mut acc = b.materialize(sum);
    assert!(units >= 1);
    for _ in 1..units {
        acc = b.node(Op::Succ(acc));
    }
    Ok(Op::Succ(acc))
}

/// Lowers `D = 0` so that non-negative rational roots of `D` correspond to
/// non-negative rational solutions of the system, each with a unique
/// extension.
///
/// Both `D + D̃ + 1` and `D̃ + 1` have positive coefficients, where `D̃` has
/// coefficients `|c| + 1`. Sums use the gadget with a `(z+1)` factor, which is
/// only sound when `z ≥ 0`.
pub fn lower_to_g_nonneg(d: &Poly) -> Result<LoweredProgram> {
    check_equation(d)?;
    let p = d.arity();
    let dt = successor_coefficients(d);
    let one = Poly::constant(1, p);
    let lhs = d.add(&dt).add(&one);
    let rhs = dt.add(&one);
    let mut b = Builder::new(p, Target::GNonneg);
    let r = side(&mut b, &rhs)?;
    let r = b.materialize(Top::Op(r));
    let l = side(&mut b, &lhs)?;
    b.emit(l, r);
    let system = System::from_atoms(b.n, b.atoms)?;
    debug_assert!(b.witness.validate(p, system.n()).is_ok());
    Ok(LoweredProgram {
        system,
        base_arity: p,
        witness: b.witness,
        regime: Regime::NonnegRationals,
        source: Source::Equation(d.clone()),
        passes: vec!["successor_split_nonneg".into()],
    })
}
