//! Certified lower bounds for `μ(n)`, the least `m` such that every solvable
//! system in `G_n` has a solution of height at most `m`.

use num_bigint::BigUint;
use serde::Serialize;

use super::{solve_system_bounded, Domain};
use crate::error::Result;
use crate::ir::{enumerate_subsystems, System};
use crate::rationals::RatTuple;

#[derive(Clone, Debug, Serialize)]
pub struct MuEstimate {
    pub n: usize,
    pub lower_bound: u64,
    pub witness_system: System,
    /// A least-height solution of the witness system.
    pub witness_solution: RatTuple,
    /// Every minimum is certified by an exhaustive search below it.
    pub certified: bool,
    pub systems_scanned: usize,
    pub systems_solved: usize,
}

/// Scans every subsystem of `G_n` for its least-height solution up to
/// `height_budget` and returns the largest such height. Among systems
/// reaching it, the witness has the fewest atoms, then the least atom list.
pub fn mu_estimate(n: usize, height_budget: u64) -> Result<MuEstimate> {
    let systems = enumerate_subsystems(n)?;
    let mut best: Option<(u64, System, RatTuple)> = None;
    let mut solved = 0;
    for s in &systems {
        let out = solve_system_bounded(s, height_budget, Domain::Rationals);
        let Some(min) = out.solutions.iter().min_by_key(|t| t.height()) else { continue };
        solved += 1;
        let h = u64::try_from(min.height()).expect("below the height budget");
        let better = match &best {
            None => true,
            Some((bh, bs, _)) => {
                h > *bh || (h == *bh && (s.len(), atom_list(s)) < (bs.len(), atom_list(bs)))
            }
        };
        if better {
            best = Some((h, s.clone(), min.clone()));
        }
    }
    let (lower_bound, witness_system, witness_solution) =
        best.expect("the empty system is solved by the zero tuple");
    debug_assert!(witness_solution.height() == BigUint::from(lower_bound));
    Ok(MuEstimate {
        n,
        lower_bound,
        witness_system,
        witness_solution,
        certified: true,
        systems_scanned: systems.len(),
        systems_solved: solved,
    })
}

fn atom_list(s: &System) -> Vec<crate::ir::Atom> {
    s.atoms().copied().collect()
}
