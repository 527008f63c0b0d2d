//! Height-bounded search for roots of a single polynomial.

use crate::error::{Error, Result};
use crate::polynomials::Poly;
use crate::rationals::{enumerate_nonneg_rationals, enumerate_rationals, Rat, RatTuple};

use super::{Domain, SolveOutcome, Status};

/// Largest grid searched by [`solve_equation_bounded`].
pub const MAX_GRID_POINTS: u64 = 50_000_000;

/// Every root of `d` in `domain` of height at most `max_height`, by
/// evaluating `d` on the whole grid.
pub fn solve_equation_bounded(d: &Poly, max_height: u64, domain: Domain) -> Result<SolveOutcome> {
    let values = match domain {
        Domain::Rationals => enumerate_rationals(max_height),
        Domain::NonnegRationals => enumerate_nonneg_rationals(max_height),
    };
    let p = d.arity();
    let points = (values.len() as u64).checked_pow(p as u32);
    if points.map_or(true, |c| c > MAX_GRID_POINTS) {
        return Err(Error::CapExceeded(format!(
            "{}^{p} grid points exceed {MAX_GRID_POINTS}",
            values.len()
        )));
    }
    let mut idx = vec![0usize; p];
    let mut out = Vec::new();
    loop {
        let x: Vec<Rat> = idx.iter().map(|&i| values[i].clone()).collect();
        if d.eval(&x)?.is_zero() {
            out.push(RatTuple::new(x));
        }
        let Some(pos) = idx.iter().position(|&i| i + 1 < values.len()) else { break };
        idx[pos] += 1;
        idx[..pos].iter_mut().for_each(|i| *i = 0);
    }
    out.sort_by(|a, b| a.listing_cmp(b));
    Ok(SolveOutcome {
        solutions: out,
        exhausted_height: max_height,
        status: Status::CompleteUpToHeight,
    })
}

/// Where [`find_root`] looks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RootSpace {
    Rationals,
    NonnegIntegers,
}

/// Some root of `d`, searched in shells of increasing height up to
/// `max_height`. Over the rationals a variable of degree at most 2 is solved
/// exactly rather than enumerated, so the returned root may have that one
/// coordinate above `max_height`. `None` when no root is found or the
/// shell grid would exceed `max_points`.
pub fn find_root(d: &Poly, space: RootSpace, max_height: u64, max_points: u64) -> Result<Option<RatTuple>> {
    let p = d.arity();
    if d.is_zero() {
        return Ok(Some(RatTuple::new(vec![Rat::zero(); p])));
    }
    let solved = match space {
        RootSpace::Rationals => (0..p)
            .filter(|&i| d.degree_in(i) <= 2)
            .min_by_key(|&i| (d.degree_in(i), i)),
        RootSpace::NonnegIntegers => None,
    };
    let free: Vec<usize> = (0..p).filter(|&i| Some(i) != solved).collect();
    let mut points = 0u64;
    for h in 1..=max_height {
        let values: Vec<Rat> = match space {
            RootSpace::Rationals => enumerate_rationals(h),
            RootSpace::NonnegIntegers => (0..=h as i64).map(Rat::from_int).collect(),
        };
        let is_new = |x: &Rat| match space {
            RootSpace::Rationals => x.height() == h.into(),
            RootSpace::NonnegIntegers => *x == Rat::from_int(h as i64),
        };
        let shell = (values.len() as u64).checked_pow(free.len() as u32);
        points = match shell.and_then(|s| points.checked_add(s)) {
            Some(t) if t <= max_points => t,
            _ => return Ok(None),
        };
        let mut idx = vec![0usize; free.len()];
        let mut x = vec![Rat::zero(); p];
        loop {
            // only tuples with some coordinate on the new shell
            if free.is_empty() && h > 1 {
                break;
            }
            if h == 1 || idx.iter().any(|&i| is_new(&values[i])) {
                for (&v, &i) in free.iter().zip(&idx) {
                    x[v] = values[i].clone();
                }
                match solved {
                    None => {
                        if d.eval(&x)?.is_zero() {
                            return Ok(Some(RatTuple::new(x)));
                        }
                    }
                    Some(v) => {
                        for r in roots_low_degree(&d.specialize_univariate(v, &x)?) {
                            x[v] = r;
                            if d.eval(&x)?.is_zero() {
                                return Ok(Some(RatTuple::new(x)));
                            }
                        }
                    }
                }
            }
            let Some(pos) = idx.iter().position(|&i| i + 1 < values.len()) else { break };
            idx[pos] += 1;
            idx[..pos].iter_mut().for_each(|i| *i = 0);
        }
    }
    Ok(None)
}

/// Rational roots of `c0 + c1·x + c2·x²`. A vanishing polynomial yields `0`.
fn roots_low_degree(c: &[Rat]) -> Vec<Rat> {
    let zero = Rat::zero();
    let get = |i: usize| c.get(i).unwrap_or(&zero);
    let (c0, c1, c2) = (get(0), get(1), get(2));
    if !c2.is_zero() {
        let disc = &(c1 * c1) - &(&(c0 * c2) * &Rat::from_int(4));
        let Some(r) = disc.sqrt_exact() else { return vec![] };
        let two_a = c2 * &Rat::from_int(2);
        let mut out = vec![&(&-c1 - &r) / &two_a, &(&-c1 + &r) / &two_a];
        out.dedup();
        out
    } else if !c1.is_zero() {
        vec![&-c0 / c1]
    } else if c0.is_zero() {
        vec![Rat::zero()]
    } else {
        vec![]
    }
}
