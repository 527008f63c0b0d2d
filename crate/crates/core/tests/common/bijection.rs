//! Lowered systems against their source equations on the height-4 grid.
//! Extensions are found from the atoms alone and compared with the
//! witness extension.

use dioph_core::lowering::{
    condition3_bound, lower_to_e, lower_to_g_nonneg, lower_to_g_rationals, lower_to_g_ring, witness_extension,
    LoweredProgram,
};
use dioph_core::polynomials::Poly;
use dioph_core::rationals::{enumerate_nonneg_rationals, enumerate_rationals};
use num_bigint::BigUint;
use rand::Rng;

use super::{extensions, grid, random_poly, seeded};

#[derive(Default, Debug)]
pub struct Tally {
    pub points: usize,
    pub roots: usize,
    pub mismatches: Vec<String>,
}

/// Over every base point: a root has exactly one extension, which is the
/// witness extension; a non-root has none.
fn check(d: &Poly, p: &LoweredProgram, nonneg: bool, t: &mut Tally) {
    let values = if nonneg { enumerate_nonneg_rationals(4) } else { enumerate_rationals(4) };
    for b in grid(&values, d.arity()) {
        t.points += 1;
        let root = d.eval(b.entries()).unwrap().is_zero();
        match (root, extensions(&p.system, b.entries(), nonneg)) {
            (true, Some(ext)) if ext.len() == 1 => {
                t.roots += 1;
                match witness_extension(p, &b) {
                    Ok(w) if w.entries() == &ext[0][..] => {}
                    other => t.mismatches.push(format!("{d} at {b}: witness {other:?}")),
                }
            }
            (false, Some(ext)) if ext.is_empty() => {}
            (root, ext) => t.mismatches.push(format!("{d} at {b}: root {root}, extensions {:?}", ext.map(|e| e.len()))),
        }
    }
}

pub fn bijection_suite(count: usize, seed: u64) -> Vec<(String, Tally)> {
    let mut rng = seeded(seed);
    let polys: Vec<Poly> = (0..count)
        .map(|_| {
            let arity = if rng.gen_bool(0.5) { 1 } else { 2 };
            random_poly(&mut rng, arity, 2, 3)
        })
        .collect();
    let mut out = vec![];
    for (name, nonneg) in [("ring", false), ("rationals", false), ("nonneg", true)] {
        let mut t = Tally::default();
        for d in &polys {
            let p = match name {
                "ring" => lower_to_g_ring(d),
                "rationals" => lower_to_g_rationals(d),
                _ => lower_to_g_nonneg(d),
            };
            match p {
                Ok(p) => check(d, &p, nonneg, &mut t),
                Err(e) => t.mismatches.push(format!("{d}: {e}")),
            }
            let e = lower_to_e(d).unwrap();
            let cap = condition3_bound(d).unwrap();
            if BigUint::from(e.n()) > cap {
                t.mismatches.push(format!("{d}: E_n arity {} exceeds {cap}", e.n()));
            }
        }
        out.push((name.to_string(), t));
    }
    out
}

