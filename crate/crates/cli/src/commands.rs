use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use dioph_core::bounds::{equation_bound, program_bound, refine_variable_bound, Conjecture, Route};
use dioph_core::ir::System;
use dioph_core::lowering::{
    derive_witness, lower_e_to_g_field_disjunction, lower_to_e, lower_to_g_nonneg, lower_to_g_rationals,
    lower_to_g_ring, LoweredProgram,
};
use dioph_core::polynomials::{parse_polynomial, Poly};
use dioph_core::solver::{solve_equation_bounded, solve_with, Domain, SolveOptions, SolveOutcome};
use dioph_core::{Error, Result};

use crate::{Command, RouteArg, SearchArgs, Target};

mod extra;

pub fn run(cmd: Command, json: bool) -> Result<String> {
    match cmd {
        Command::Reduce { equation, target } => reduce(&read_equation(&equation)?, target, json),
        Command::Bound { equation, conjecture, route, system, refine } => {
            bound(&read_equation(&equation)?, &conjecture, route, system.as_deref(), &refine, json)
        }
        Command::Search(args) => search(&args, json),
        Command::CaseStudy { which } => extra::case_study(which, json),
        Command::ThreeSquares { z } => extra::three_squares(&z, json),
        Command::Bremner { case_id, verify, tol, seed } => extra::bremner(case_id, verify, tol, seed, json),
        Command::MuEstimate { n, height } => extra::mu(n, height, json),
        Command::Falsify { conjecture, tuples, witness_height } => {
            extra::falsify(conjecture_of(&conjecture), tuples, witness_height, json)
        }
        Command::Decide { question } => extra::decide(question, json),
    }
}

pub(crate) fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data") + "\n"
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// An inline polynomial, or `@path` to read one from a file.
pub(crate) fn read_equation(arg: &str) -> Result<Poly> {
    match arg.strip_prefix('@') {
        Some(path) => parse_polynomial(read_text(Path::new(path))?.trim()),
        None => parse_polynomial(arg),
    }
}

fn read_system(path: &Path) -> Result<System> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

pub(crate) fn conjecture_of(s: &str) -> Conjecture {
    if s == "2" {
        Conjecture::Two
    } else {
        Conjecture::One
    }
}

fn program_table(p: &LoweredProgram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "regime: {}", p.regime);
    let _ = writeln!(out, "passes: {}", p.passes.join(", "));
    let _ = writeln!(out, "arity: {} (base {})", p.n(), p.base_arity);
    let _ = writeln!(out, "constraints: {}", p.system.len());
    for a in p.system.atoms() {
        let _ = writeln!(out, "  {a}");
    }
    let _ = writeln!(out, "witness:");
    for (v, e) in p.witness.defs() {
        let _ = writeln!(out, "  x{} = {}", v + 1, e.to_prefix());
    }
    out
}

fn reduce(d: &Poly, target: Target, json: bool) -> Result<String> {
    let program = match target {
        Target::En => lower_to_e(d)?,
        Target::GnRing => lower_to_g_ring(d)?,
        Target::GnQ => lower_to_g_rationals(d)?,
        Target::GnNonneg => lower_to_g_nonneg(d)?,
        Target::GnFieldDisj => {
            let e = lower_to_e(d)?;
            let disj = lower_e_to_g_field_disjunction(&e.system)?;
            if json {
                return Ok(to_json(&disj.to_json_value()));
            }
            let mut out = String::new();
            let _ = writeln!(out, "branches: {}", disj.branches.len());
            for (i, b) in disj.branches.iter().enumerate() {
                let _ = writeln!(out, "branch {}: arity {}, {} constraints", i + 1, b.system.n(), b.system.len());
                for a in b.system.atoms() {
                    let _ = writeln!(out, "  {a}");
                }
            }
            return Ok(out);
        }
    };
    Ok(if json { to_json(&program.to_json_value()) } else { program_table(&program) })
}

fn route_of(r: RouteArg) -> Route {
    match r {
        RouteArg::RingGadget => Route::RingGadget,
        RouteArg::RationalGadget => Route::RationalGadget,
        RouteArg::Nonneg => Route::Nonneg,
        RouteArg::SignProductNonneg => Route::SignProductNonneg,
    }
}

/// `x3:4` as (zero-based variable, degree).
fn parse_refine(s: &str) -> Result<(usize, u32)> {
    let bad = || Error::Invalid(format!("refinement `{s}` is not of the form x<i>:<deg>"));
    let (v, d) = s.split_once(':').ok_or_else(bad)?;
    let i: usize = v.trim().strip_prefix('x').and_then(|i| i.parse().ok()).filter(|&i| i >= 1).ok_or_else(bad)?;
    let d: u32 = d.trim().parse().ok().filter(|&d| d >= 1).ok_or_else(bad)?;
    Ok((i - 1, d))
}

fn bound(
    d: &Poly,
    conjecture: &str,
    route: Option<RouteArg>,
    system: Option<&Path>,
    refine: &[String],
    json: bool,
) -> Result<String> {
    let conjecture = conjecture_of(conjecture);
    let mut report = match system {
        Some(path) => program_bound(derive_witness(&read_system(path)?, d.arity(), d)?, conjecture)?,
        None => {
            let route = route.map(route_of).unwrap_or(match conjecture {
                Conjecture::One => Route::RationalGadget,
                Conjecture::Two => Route::Nonneg,
            });
            if route.conjecture() != conjecture {
                return Err(Error::Invalid(format!("route {route:?} bounds through the other conjecture")));
            }
            equation_bound(d, route)?
        }
    };
    for r in refine {
        let (var, deg) = parse_refine(r)?;
        refine_variable_bound(&mut report, var, deg)?;
    }
    if json {
        return Ok(to_json(&report.to_json_value()));
    }
    let mut out = String::new();
    let _ = writeln!(out, "equation: {}", report.equation);
    let _ = writeln!(out, "regime: {}", report.regime);
    let _ = writeln!(out, "system arity: {}", report.system_arity());
    let _ = writeln!(out, "bound: {}", report.bound);
    for (v, b) in &report.per_variable {
        let _ = writeln!(out, "h(x{}) <= {b}", v + 1);
    }
    Ok(out)
}

fn search(a: &SearchArgs, json: bool) -> Result<String> {
    let domain = if a.nonneg { Domain::NonnegRationals } else { Domain::Rationals };
    let outcome: SolveOutcome = match (&a.system, &a.equation) {
        (Some(path), _) => {
            let s = read_system(path)?;
            let opts = SolveOptions { max_height: a.max_height, domain, node_budget: a.budget, jobs: a.jobs.max(1) };
            let progress = a.progress;
            solve_with(&s, &opts, &mut |h, count| {
                if progress {
                    eprintln!("{}", serde_json::json!({"event": "height_exhausted", "height": h, "solutions": count}));
                }
            })
        }
        (None, Some(eq)) => solve_equation_bounded(&read_equation(eq)?, a.max_height, domain)?,
        (None, None) => unreachable!("clap requires one of the two"),
    };
    if json {
        return Ok(to_json(&outcome));
    }
    let mut out = String::new();
    for t in &outcome.solutions {
        let _ = writeln!(out, "{t}");
    }
    let _ = writeln!(out, "solutions: {}", outcome.solutions.len());
    let _ = writeln!(out, "complete up to height: {}", outcome.exhausted_height);
    Ok(out)
}
