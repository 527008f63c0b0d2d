//! Height-bounded exhaustive search with propagation.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use serde::Serialize;

use crate::ir::{Atom, System};
use crate::rationals::{enumerate_nonneg_rationals, enumerate_rationals, Rat, RatTuple};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Rationals,
    NonnegRationals,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    CompleteUpToHeight,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveOutcome {
    pub solutions: Vec<RatTuple>,
    pub exhausted_height: u64,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub max_height: u64,
    pub domain: Domain,
    /// Search nodes allowed across all passes; `None` searches to `max_height`
    /// in one pass.
    pub node_budget: Option<u64>,
    /// Worker threads; the first enumerated variable's values are split
    /// among them.
    pub jobs: usize,
}

impl SolveOptions {
    pub fn new(max_height: u64, domain: Domain) -> Self {
        SolveOptions { max_height, domain, node_budget: None, jobs: 1 }
    }
}

/// Every solution of `s` of height at most `max_height` in `domain`.
pub fn solve_system_bounded(s: &System, max_height: u64, domain: Domain) -> SolveOutcome {
    solve_with(s, &SolveOptions::new(max_height, domain), &mut |_, _| {})
}

/// As [`solve_system_bounded`]. With a node budget the height doubles from 1
/// and the outcome reports the last height searched completely; `progress`
/// receives each completed height and its solution count.
pub fn solve_with(
    s: &System,
    opts: &SolveOptions,
    progress: &mut dyn FnMut(u64, usize),
) -> SolveOutcome {
    let max_height = opts.max_height.max(1);
    let heights: Vec<u64> = match opts.node_budget {
        None => vec![max_height],
        Some(_) => {
            let mut hs = vec![];
            let mut h = 1;
            while h < max_height {
                hs.push(h);
                h *= 2;
            }
            hs.push(max_height);
            hs
        }
    };
    let nodes = AtomicU64::new(0);
    let mut done = None;
    for (pass, &h) in heights.iter().enumerate() {
        // the height-1 pass is tiny and always runs, so some height is covered
        let budget = if pass == 0 { None } else { opts.node_budget };
        match run_pass(s, h, opts.domain, budget, opts.jobs.max(1), &nodes, None) {
            Some(sols) => {
                progress(h, sols.len());
                done = Some((h, sols));
            }
            None => break,
        }
    }
    let (h, solutions) = done.expect("the first pass is unbudgeted");
    SolveOutcome {
        solutions,
        exhausted_height: h,
        status: if h == max_height { Status::CompleteUpToHeight } else { Status::BudgetExhausted },
    }
}

struct Search<'a> {
    atoms: Vec<Atom>,
    order: Vec<usize>,
    values: Vec<Rat>,
    max_height: BigUint,
    nonneg: bool,
    nodes: &'a AtomicU64,
    budget: Option<u64>,
    aborted: &'a AtomicBool,
    /// Keep only solutions of height above this, and stop at the first.
    above: Option<BigUint>,
    found: AtomicBool,
}

type Vals = Vec<Option<Rat>>;

/// Some solution of `s` with `above < height ≤ max_height`, if one exists.
pub fn find_solution_above(s: &System, above: u64, max_height: u64, domain: Domain) -> Option<RatTuple> {
    let nodes = AtomicU64::new(0);
    let sols = run_pass(s, max_height, domain, None, 1, &nodes, Some(BigUint::from(above)))?;
    sols.into_iter().next()
}

fn run_pass(
    s: &System,
    h: u64,
    domain: Domain,
    budget: Option<u64>,
    jobs: usize,
    nodes: &AtomicU64,
    above: Option<BigUint>,
) -> Option<Vec<RatTuple>> {
    let aborted = AtomicBool::new(false);
    let values = match domain {
        Domain::Rationals => enumerate_rationals(h),
        Domain::NonnegRationals => enumerate_nonneg_rationals(h),
    };
    // variables in more atoms first
    let mut order: Vec<usize> = (0..s.n()).collect();
    let degree = |v: usize| {
        s.atoms()
            .filter(|a| match **a {
                Atom::One(k) => k == v,
                Atom::Succ(i, k) => i == v || k == v,
                Atom::Add(i, j, k) | Atom::Mul(i, j, k) => i == v || j == v || k == v,
            })
            .count()
    };
    order.sort_by_key(|&v| std::cmp::Reverse(degree(v)));
    let search = Search {
        atoms: s.atoms().copied().collect(),
        order,
        values,
        max_height: BigUint::from(h),
        nonneg: domain == Domain::NonnegRationals,
        nodes,
        budget,
        aborted: &aborted,
        above,
        found: AtomicBool::new(false),
    };
    let mut root: Vals = vec![None; s.n()];
    let mut out = Vec::new();
    if search.propagate(&mut root) {
        match search.next_var(&root) {
            None => search.record(root, &mut out),
            Some(v) if jobs == 1 => search.branch(&root, v, 0, 1, &mut out),
            Some(v) => {
                let parts: Vec<Vec<Vec<Rat>>> = std::thread::scope(|sc| {
                    let handles: Vec<_> = (0..jobs)
                        .map(|w| {
                            let (search, root) = (&search, &root);
                            sc.spawn(move || {
                                let mut part = Vec::new();
                                search.branch(root, v, w, jobs, &mut part);
                                part
                            })
                        })
                        .collect();
                    handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
                });
                out = parts.concat();
            }
        }
    }
    if aborted.load(Ordering::Relaxed) {
        return None;
    }
    let mut sols: Vec<RatTuple> = out.into_iter().map(RatTuple::new).collect();
    sols.sort_by(|a, b| a.listing_cmp(b));
    sols.dedup();
    Some(sols)
}

impl Search<'_> {
    fn allowed(&self, x: &Rat) -> bool {
        !(self.nonneg && x.is_negative()) && x.height() <= self.max_height
    }

    fn next_var(&self, vals: &Vals) -> Option<usize> {
        self.order.iter().copied().find(|&v| vals[v].is_none())
    }

    /// Tries every value of `v` whose position is `w` modulo `stride`.
    fn branch(&self, vals: &Vals, v: usize, w: usize, stride: usize, out: &mut Vec<Vec<Rat>>) {
        for x in self.values.iter().skip(w).step_by(stride) {
            if self.aborted.load(Ordering::Relaxed) || self.found.load(Ordering::Relaxed) {
                return;
            }
            let mut next = vals.clone();
            next[v] = Some(x.clone());
            self.dfs(next, out);
        }
    }

    fn dfs(&self, mut vals: Vals, out: &mut Vec<Vec<Rat>>) {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| used > b) {
            self.aborted.store(true, Ordering::Relaxed);
            return;
        }
        if !self.propagate(&mut vals) {
            return;
        }
        match self.next_var(&vals) {
            None => self.record(vals, out),
            Some(v) => self.branch(&vals, v, 0, 1, out),
        }
    }

    fn record(&self, vals: Vals, out: &mut Vec<Vec<Rat>>) {
        let x: Vec<Rat> = vals.into_iter().map(Option::unwrap).collect();
        if let Some(a) = &self.above {
            if x.iter().map(Rat::height).max().is_none_or(|h| h <= *a) {
                return;
            }
            self.found.store(true, Ordering::Relaxed);
        }
        out.push(x);
    }

    /// Applies forced derivations to a fixpoint. `false` on a contradiction
    /// or a derived value outside the searched set.
    fn propagate(&self, vals: &mut Vals) -> bool {
        loop {
            let mut changed = false;
            for a in &self.atoms {
                match self.derive(a, vals) {
                    Err(()) => return false,
                    Ok(Some((v, x))) => {
                        if !self.allowed(&x) {
                            return false;
                        }
                        vals[v] = Some(x);
                        changed = true;
                    }
                    Ok(None) => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// A value forced by `a`, or `Err` if `a` is violated.
    fn derive(&self, a: &Atom, vals: &Vals) -> std::result::Result<Option<(usize, Rat)>, ()> {
        let g = |i: usize| vals[i].as_ref();
        let check = |ok: bool| if ok { Ok(None) } else { Err(()) };
        let one = Rat::one();
        match *a {
            Atom::One(k) => match g(k) {
                Some(x) => check(*x == one),
                None => Ok(Some((k, one))),
            },
            Atom::Succ(i, k) => match (g(i), g(k)) {
                (Some(x), Some(z)) => check(&(x + &one) == z),
                (Some(x), None) => Ok(Some((k, x + &one))),
                (None, Some(z)) => Ok(Some((i, z - &one))),
                (None, None) => Ok(None),
            },
            Atom::Add(i, j, k) => match (g(i), g(j), g(k)) {
                (Some(x), Some(y), Some(z)) => check(&(x + y) == z),
                (Some(x), Some(y), None) => Ok(Some((k, x + y))),
                (Some(x), None, Some(z)) => Ok(Some((j, z - x))),
                (None, Some(y), Some(z)) => Ok(Some((i, z - y))),
                // x + x = z
                (None, None, Some(z)) if i == j => Ok(Some((i, z / &Rat::from_int(2)))),
                _ => Ok(None),
            },
            Atom::Mul(i, j, k) => match (g(i), g(j), g(k)) {
                (Some(x), Some(y), Some(z)) => check(&(x * y) == z),
                (Some(x), Some(y), None) => Ok(Some((k, x * y))),
                (Some(x), None, Some(z)) | (None, Some(x), Some(z)) if x.is_zero() => {
                    check(z.is_zero())
                }
                (Some(x), None, Some(z)) => Ok(Some((j, z / x))),
                (None, Some(y), Some(z)) => Ok(Some((i, z / y))),
                _ => Ok(None),
            },
        }
    }
}
