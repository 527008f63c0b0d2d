//! Conditional height bounds: `2^(2^(n−2))` for rational solutions of
//! systems in `G_n`, `f(2n)` for non-negative ones, and the pipelines that
//! turn an equation into a system whose arity feeds those formulas.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lowering::{
    lower_to_g_nonneg, lower_to_g_rationals, lower_to_g_ring, LoweredProgram, Regime, Source,
};
use crate::polynomials::{sign_product_transform, Poly, TransformCaps};
use crate::rationals::Tower;

/// `1` for `n = 1`, else `2^(2^(n−2))`.
pub fn conjecture1_bound(n: usize) -> Tower {
    assert!(n >= 1, "arity starts at 1");
    if n == 1 {
        Tower::from(1)
    } else {
        Tower::two_up_two_up(Tower::from(n as u64 - 2))
    }
}

fn tower_iterate(start: u64, n: usize) -> Tower {
    assert!(n >= 1, "index starts at 1");
    (1..n).fold(Tower::from(start), |t, _| Tower::two_up_two_up(t))
}

/// `f(1) = 1`, `f(n+1) = 2^(2^f(n))`.
pub fn tower_f(n: usize) -> Tower {
    tower_iterate(1, n)
}

/// `g(1) = 0`, `g(n+1) = 2^(2^g(n))`.
pub fn tower_g(n: usize) -> Tower {
    tower_iterate(0, n)
}

/// `f(2n)`.
pub fn conjecture2_bound(n: usize) -> Tower {
    tower_f(2 * n)
}

/// Which conditional bound a report applies.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Conjecture {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl Conjecture {
    pub fn bound(self, n: usize) -> Tower {
        match self {
            Conjecture::One => conjecture1_bound(n),
            Conjecture::Two => conjecture2_bound(n),
        }
    }
}

/// How an equation is turned into a system before the bound is read off.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `E_n` then the 20-variable ring gadget; bounds rational solutions.
    RingGadget,
    /// `E_n` then the rational gadget; bounds rational solutions.
    RationalGadget,
    /// Direct lowering over `ℚ≥0`; bounds non-negative solutions.
    Nonneg,
    /// Product over sign patterns, then the `ℚ≥0` lowering; bounds rational
    /// solutions through their absolute values.
    SignProductNonneg,
}

impl Route {
    pub fn conjecture(self) -> Conjecture {
        match self {
            Route::RingGadget | Route::RationalGadget => Conjecture::One,
            Route::Nonneg | Route::SignProductNonneg => Conjecture::Two,
        }
    }

    /// The solutions the bound speaks about.
    pub fn regime(self) -> Regime {
        match self {
            Route::Nonneg => Regime::NonnegRationals,
            _ => Regime::Rationals,
        }
    }

    pub fn default_for(regime: Regime) -> Route {
        match regime {
            Regime::NonnegRationals => Route::Nonneg,
            _ => Route::RationalGadget,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub equation: Poly,
    pub regime: Regime,
    pub conjecture: Conjecture,
    pub program: LoweredProgram,
    pub bound: Tower,
    /// Refined bounds keyed by zero-based base variable.
    pub per_variable: BTreeMap<usize, Tower>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundJson {
    pub equation: String,
    pub regime: Regime,
    pub conjecture: Conjecture,
    pub system_arity: usize,
    pub passes: Vec<String>,
    pub bound: Tower,
    pub per_variable: BTreeMap<String, Tower>,
}

impl BoundReport {
    pub fn system_arity(&self) -> usize {
        self.program.n()
    }

    pub fn to_json_value(&self) -> BoundJson {
        BoundJson {
            equation: self.equation.to_string(),
            regime: self.regime,
            conjecture: self.conjecture,
            system_arity: self.system_arity(),
            passes: self.program.passes.clone(),
            bound: self.bound.clone(),
            per_variable: self
                .per_variable
                .iter()
                .map(|(v, b)| (format!("x{}", v + 1), b.clone()))
                .collect(),
        }
    }
}

/// Applies `conjecture` to an already lowered equation.
pub fn program_bound(program: LoweredProgram, conjecture: Conjecture) -> Result<BoundReport> {
    let Source::Equation(equation) = program.source.clone() else {
        return Err(Error::Invalid("the program does not come from an equation".into()));
    };
    let regime = match conjecture {
        Conjecture::One => Regime::Rationals,
        Conjecture::Two => Regime::NonnegRationals,
    };
    Ok(BoundReport {
        equation,
        regime,
        conjecture,
        bound: conjecture.bound(program.n()),
        program,
        per_variable: BTreeMap::new(),
    })
}

/// Lowers `d` along `route` and bounds the heights of its solutions.
pub fn equation_bound(d: &Poly, route: Route) -> Result<BoundReport> {
    let program = match route {
        Route::RingGadget => lower_to_g_ring(d)?,
        Route::RationalGadget => lower_to_g_rationals(d)?,
        Route::Nonneg => lower_to_g_nonneg(d)?,
        Route::SignProductNonneg => {
            let product = sign_product_transform(d, &TransformCaps::default())?;
            let mut p = lower_to_g_nonneg(&product)?;
            p.passes.insert(0, "sign_product".into());
            p
        }
    };
    let mut report = program_bound(program, route.conjecture())?;
    report.equation = d.clone();
    report.regime = route.regime();
    Ok(report)
}

/// Bound on `h(x_var)` from a system variable whose witness is `x_var^d`:
/// since `h(x^d) = h(x)^d`, it is the floor of the `d`-th root of the bound.
pub fn refine_variable_bound(report: &mut BoundReport, var: usize, d: u32) -> Result<Tower> {
    let p = &report.program;
    if var >= p.base_arity || d == 0 {
        return Err(Error::NoPowerWitness { var: var + 1, degree: d });
    }
    let target = Poly::var(var, p.base_arity).pow(d);
    let expanded = p.witness.expand_all(p.base_arity, d as u64);
    if !expanded.values().any(|q| *q == target) {
        return Err(Error::NoPowerWitness { var: var + 1, degree: d });
    }
    let refined = report.bound.nth_root(d)?;
    report.per_variable.insert(var, refined.clone());
    Ok(refined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{Atom, System};
    use crate::lowering::derive_witness;
    use crate::polynomials::parse_polynomial;
    use num_bigint::BigUint;

    #[test]
    fn conjecture1_values() {
        assert_eq!(conjecture1_bound(1), Tower::from(1));
        assert_eq!(conjecture1_bound(2), Tower::from(2));
        assert_eq!(conjecture1_bound(7), Tower::from(4294967296));
        let c28 = conjecture1_bound(28);
        assert!(c28.as_exact().is_none());
        assert_eq!(c28.to_string(), "2^2^26");
    }

    #[test]
    fn conjecture1_squares() {
        for n in 2..40 {
            assert_eq!(conjecture1_bound(n).square().unwrap(), conjecture1_bound(n + 1), "n={n}");
        }
    }

    #[test]
    fn f_and_g() {
        assert_eq!(tower_f(1), Tower::from(1));
        assert_eq!(tower_f(2), Tower::from(4));
        assert_eq!(tower_f(3), Tower::from(65536));
        assert_eq!(tower_g(2), Tower::from(2));
        assert_eq!(tower_g(3), Tower::from(16));
        let g4 = tower_g(4);
        assert_eq!(g4.as_exact().unwrap().bits(), 65537);
        assert!(tower_f(4).as_exact().is_none());
        for n in 1..8 {
            assert!(tower_f(n) > tower_g(n));
            assert!(conjecture2_bound(n + 1) > conjecture2_bound(n));
        }
        assert_eq!(conjecture2_bound(1), Tower::from(4));
    }

    fn quintic_program() -> LoweredProgram {
        let s = System::from_atoms(
            7,
            [
                Atom::Succ(2, 1),
                Atom::Mul(1, 2, 3),
                Atom::Succ(4, 6),
                Atom::Mul(0, 0, 5),
                Atom::Mul(5, 5, 6),
                Atom::Mul(0, 4, 3),
            ],
        )
        .unwrap();
        derive_witness(&s, 2, &parse_polynomial("x1^5 - x1 - x2^2 + x2").unwrap()).unwrap()
    }

    #[test]
    fn quintic_refinement() {
        let mut r = program_bound(quintic_program(), Conjecture::One).unwrap();
        assert_eq!(r.system_arity(), 7);
        assert_eq!(r.bound, Tower::from(1u64 << 32));
        assert_eq!(refine_variable_bound(&mut r, 0, 4).unwrap(), Tower::from(256));
        assert_eq!(refine_variable_bound(&mut r, 0, 1).unwrap(), Tower::from(1u64 << 32));
        assert!(matches!(
            refine_variable_bound(&mut r, 1, 2),
            Err(Error::NoPowerWitness { var: 2, degree: 2 })
        ));
        let j = serde_json::to_value(r.to_json_value()).unwrap();
        assert_eq!(j["bound"], "4294967296");
        assert_eq!(j["per_variable"]["x1"], "4294967296");
    }

    #[test]
    fn root_of_81() {
        assert_eq!(Tower::from(81).nth_root(4).unwrap(), Tower::exact(BigUint::from(3u32)));
    }

    #[test]
    fn routes() {
        let d = parse_polynomial("x1 - 2").unwrap();
        let a = equation_bound(&d, Route::SignProductNonneg).unwrap();
        assert_eq!(a.conjecture, Conjecture::Two);
        assert_eq!(a.bound, conjecture2_bound(a.system_arity()));
        assert_eq!(a.program.passes[0], "sign_product");
        let b = equation_bound(&d, Route::SignProductNonneg).unwrap();
        assert_eq!(a.to_json_value().system_arity, b.to_json_value().system_arity);
        for route in [Route::RingGadget, Route::RationalGadget] {
            let r = equation_bound(&d, route).unwrap();
            assert_eq!(r.bound, conjecture1_bound(r.system_arity()));
        }
    }
}
