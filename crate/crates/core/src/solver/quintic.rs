//! Rational solutions of `x1⁵ − x1 = x2² − x2` with `h(x1)` bounded, found
//! by testing whether `4x⁵ − 4x + 1 = (2x2 − 1)²` is a rational square.

use num_integer::Integer;

use crate::rationals::{make_rat, Rat, RatTuple};

/// Solutions with `x1 = i/j`, `|i| ≤ bound`, `1 ≤ j ≤ bound`.
pub fn quintic_case_study(bound: u64) -> Vec<RatTuple> {
    let b = bound as i64;
    let four = Rat::from_int(4);
    let one = Rat::one();
    let half = make_rat(1, 2).expect("nonzero denominator");
    let mut out = Vec::new();
    for j in 1..=b {
        for i in -b..=b {
            if i.unsigned_abs().gcd(&(j as u64)) != 1 {
                continue;
            }
            let x = make_rat(i, j).expect("nonzero denominator");
            let y = &(&four * &x.pow(5)) - &(&four * &x) + one.clone();
            let Some(r) = y.sqrt_exact() else { continue };
            for s in [-&r, r.clone()] {
                out.push(RatTuple::new(vec![x.clone(), &(&s + &one) * &half]));
            }
        }
    }
    out.sort_by(|a, b| a.listing_cmp(b));
    out.dedup();
    out
}
