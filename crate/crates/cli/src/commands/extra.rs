use std::fmt::Write as _;

use serde::Serialize;

use dioph_core::bounds::Conjecture;
use dioph_core::decision::{
    conjectural_b, flowchart4_finiteness, flowchart5_solvability, flowchart6_finiteness_semidecide,
    flowchart7_nonneg_solvability, MockOracle, OracleConfig, Run,
};
use dioph_core::rationals::Rat;
use dioph_core::solver::{falsification_search, mu_estimate, quintic_case_study};
use dioph_core::threesquares::{bremner_system, lemma_or, verify_bremner};
use dioph_core::{Error, Result};

use super::{read_equation, read_text, to_json};
use crate::{CaseStudy, Decide, OracleArgs};

pub fn case_study(which: CaseStudy, json: bool) -> Result<String> {
    let CaseStudy::Quintic { bound } = which;
    let solutions = quintic_case_study(bound);
    if json {
        return Ok(to_json(&serde_json::json!({"bound": bound, "solutions": solutions})));
    }
    let mut out = String::new();
    for t in &solutions {
        let _ = writeln!(out, "{t}");
    }
    let _ = writeln!(out, "solutions: {}", solutions.len());
    Ok(out)
}

pub fn three_squares(z: &str, json: bool) -> Result<String> {
    let z: Rat = z.parse()?;
    let ts = lemma_or(&z)?;
    if json {
        return Ok(to_json(&ts));
    }
    let [a, b, c] = &ts.parts;
    let lhs = if ts.scaled { format!("2 * {}", ts.target) } else { ts.target.to_string() };
    Ok(format!("{lhs} = ({a})^2 + ({b})^2 + ({c})^2\nparts: ({a}, {b}, {c})\nscaled: {}\n", ts.scaled))
}

pub fn bremner(case_id: u8, verify: Option<usize>, tol: f64, seed: u64, json: bool) -> Result<String> {
    let bs = bremner_system(case_id)?;
    let report = verify.map(|n| verify_bremner(&bs, n, tol, seed)).transpose()?;
    if json {
        return Ok(to_json(&serde_json::json!({"system": bs, "verification": report})));
    }
    let mut out = String::new();
    let _ = writeln!(out, "case {case_id}: arity {}, {} constraints", bs.arity(), bs.system.len());
    for (i, e) in bs.expr_map.iter().enumerate() {
        let _ = writeln!(out, "  x{} = {e}", i + 1);
    }
    for a in bs.system.atoms() {
        let _ = writeln!(out, "  {a}");
    }
    if let Some(r) = report {
        let _ = writeln!(out, "samples: {}", r.samples);
        let _ = writeln!(out, "structural: {}", r.structural_ok);
        let _ = writeln!(out, "exact identities: {}", r.identities_exact);
        let _ = writeln!(out, "max residual: {:e} at {}", r.max_residual, r.worst_constraint);
        let _ = writeln!(out, "passed: {}", r.passed);
    }
    Ok(out)
}

pub fn mu(n: usize, height: u64, json: bool) -> Result<String> {
    let m = mu_estimate(n, height)?;
    if json {
        return Ok(to_json(&m));
    }
    let mut out = String::new();
    let _ = writeln!(out, "mu({n}) >= {}", m.lower_bound);
    let _ = writeln!(out, "witness system: {}", m.witness_system.to_string().trim_end());
    let _ = writeln!(out, "witness solution: {}", m.witness_solution);
    let _ = writeln!(out, "certified: {}", m.certified);
    let _ = writeln!(out, "systems: {} scanned, {} solved", m.systems_scanned, m.systems_solved);
    Ok(out)
}

pub fn falsify(conjecture: Conjecture, tuples: usize, witness_height: u64, json: bool) -> Result<String> {
    let r = falsification_search(conjecture, tuples, witness_height);
    if json {
        return Ok(to_json(&r));
    }
    let mut out = String::new();
    let _ = writeln!(out, "tuples scanned: {}", r.tuples_scanned);
    let _ = writeln!(out, "above bound: {}", r.above_bound);
    let _ = writeln!(out, "witnessed: {}", r.witnessed);
    let _ = writeln!(out, "candidates (no witness up to height {witness_height}): {}", r.candidates.len());
    for c in &r.candidates {
        let _ = writeln!(out, "  {} ({} relations)", c.tuple, c.relations);
    }
    Ok(out)
}

fn load(o: &OracleArgs) -> Result<(dioph_core::polynomials::Poly, OracleConfig)> {
    let d = read_equation(&o.equation)?;
    let config = OracleConfig::from_json(&read_text(&o.oracle)?)?;
    Ok((d, config))
}

fn render<V: Serialize>(run: &Run<V>, json: bool) -> String {
    if json {
        return to_json(run);
    }
    let verdict = serde_json::to_string(&run.verdict).expect("plain data");
    format!("{}verdict: {verdict}\nqueries: {}\n", run.transcript_jsonl(), run.queries)
}

pub fn decide(q: Decide, json: bool) -> Result<String> {
    match q {
        Decide::Finiteness { o, b, semi, m_budget } => {
            let (d, config) = load(&o)?;
            let mut oracle = MockOracle::new(&config)?;
            if semi {
                return Ok(render(&flowchart6_finiteness_semidecide(&d, &mut oracle, m_budget)?, json));
            }
            let b = match b {
                Some(b) => b,
                None => usize::try_from(conjectural_b(&d)?)
                    .map_err(|_| Error::BoundNotMaterializable("b exceeds the platform word".into()))?,
            };
            Ok(render(&flowchart4_finiteness(&d, b, &mut oracle)?, json))
        }
        Decide::Solvability { o, steps } => {
            let (d, config) = load(&o)?;
            let mut en = config.enumerator()?;
            Ok(render(&flowchart5_solvability(&d, &mut en, steps)?, json))
        }
        Decide::NonnegSolvability { o, steps } => {
            let (d, config) = load(&o)?;
            let mut en = config.enumerator()?;
            Ok(render(&flowchart7_nonneg_solvability(&d, &mut en, steps)?, json))
        }
    }
}
