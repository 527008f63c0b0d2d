//! Budgeted searches for counterexamples to the equivalent forms of the
//! height conjectures: a tuple `x` above the bound whose relations
//! `x_i + 1 = x_k`, `x_i·x_j = x_k` admit no taller solution `y`.
//!
//! A tuple without a witness up to the height budget is only a candidate;
//! a taller witness may exist beyond it.

use std::collections::HashSet;

use serde::Serialize;

use super::{find_solution_above, Domain};
use crate::bounds::Conjecture;
use crate::decision::{decode_tuple, gamma_member, Modulus, TupleCode};
use crate::ir::{g_atoms, System};
use crate::rationals::{RatTuple, Tower};

/// Every atom of `G_n` that `x` satisfies.
pub fn relations(x: &RatTuple) -> System {
    let n = x.len();
    let atoms = g_atoms(n).into_iter().filter(|a| a.holds(x.entries()));
    System::from_atoms(n, atoms).expect("indices below n")
}

#[derive(Clone, Debug, Serialize)]
pub struct TupleCheck {
    pub tuple: RatTuple,
    /// Whether `h(x)` exceeds the conjectured bound for its length.
    pub above_bound: bool,
    pub relations: usize,
    pub witness: Option<RatTuple>,
}

/// Checks one tuple against the equivalent form of `conjecture`.
pub fn check_tuple(x: &RatTuple, conjecture: Conjecture, witness_height_budget: u64) -> TupleCheck {
    let h = x.height();
    let above_bound = Tower::exact(h.clone()) > conjecture.bound(x.len());
    let rel = relations(x);
    let domain = match conjecture {
        Conjecture::One => Domain::Rationals,
        Conjecture::Two => Domain::NonnegRationals,
    };
    let witness = match u64::try_from(&h) {
        Ok(h) if above_bound && h < witness_height_budget => {
            find_solution_above(&rel, h, witness_height_budget, domain)
        }
        _ => None,
    };
    TupleCheck { tuple: x.clone(), above_bound, relations: rel.len(), witness }
}

#[derive(Clone, Debug, Serialize)]
pub struct FalsifyReport {
    pub conjecture: Conjecture,
    pub tuples_scanned: usize,
    /// Tuples whose height exceeds the bound.
    pub above_bound: usize,
    pub witnessed: usize,
    /// Tuples above the bound with no witness found: not counterexamples,
    /// only places the budget ran out.
    pub candidates: Vec<TupleCheck>,
}

/// Scans the first `tuple_budget` distinct tuples of the surjection for the
/// conjecture (all rationals for 1, non-negative rationals for 2).
pub fn falsification_search(conjecture: Conjecture, tuple_budget: usize, witness_height_budget: u64) -> FalsifyReport {
    let modulus = match conjecture {
        Conjecture::One => Modulus::Three,
        Conjecture::Two => Modulus::Two,
    };
    let mut seen = HashSet::new();
    let mut report = FalsifyReport {
        conjecture,
        tuples_scanned: 0,
        above_bound: 0,
        witnessed: 0,
        candidates: vec![],
    };
    let mut i = 2u64;
    while seen.len() < tuple_budget {
        if gamma_member(i, modulus) {
            let x = decode_tuple(TupleCode { index: i, modulus }).expect("member of the class");
            if seen.insert(x.clone()) {
                let c = check_tuple(&x, conjecture, witness_height_budget);
                if c.above_bound {
                    report.above_bound += 1;
                    if c.witness.is_some() {
                        report.witnessed += 1;
                    } else {
                        report.candidates.push(c);
                    }
                }
            }
        }
        i += 1;
    }
    report.tuples_scanned = seen.len();
    report
}

/// `h(y) > h(x)` and `y` satisfies every relation of `x`.
pub fn is_witness(x: &RatTuple, y: &RatTuple) -> bool {
    y.height() > x.height() && y.len() == x.len() && relations(x).eval(y.entries()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singletons() {
        let c = check_tuple(&RatTuple::from_ints(&[3]), Conjecture::One, 10);
        assert!(c.above_bound);
        assert_eq!(c.relations, 0);
        let y = c.witness.unwrap();
        assert_eq!(y.height(), 4u32.into());
        let one = check_tuple(&RatTuple::from_ints(&[1]), Conjecture::One, 10);
        assert!(!one.above_bound);
        assert!(one.witness.is_none());
    }

    #[test]
    fn squaring_chain() {
        let x = RatTuple::from_ints(&[2, 4, 16]);
        assert_eq!(relations(&x).len(), 2);
        assert!(is_witness(&x, &RatTuple::from_ints(&[3, 9, 81])));
        let c = check_tuple(&x, Conjecture::One, 81);
        assert!(c.above_bound);
        assert!(is_witness(&x, c.witness.as_ref().unwrap()));
    }

    #[test]
    fn chain_has_no_taller_solution() {
        // the unique solution of the chain system has height exactly the bound
        let x = RatTuple::from_ints(&[1, 2, 4]);
        assert!(!check_tuple(&x, Conjecture::One, 50).above_bound);
    }

    #[test]
    fn small_scan() {
        let r = falsification_search(Conjecture::One, 40, 30);
        assert_eq!(r.tuples_scanned, 40);
        assert_eq!(r.above_bound, r.witnessed + r.candidates.len());
        for c in &r.candidates {
            assert!(c.witness.is_none());
        }
        let r2 = falsification_search(Conjecture::Two, 20, 30);
        assert_eq!(r2.tuples_scanned, 20);
    }
}
