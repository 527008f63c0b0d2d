//! Co-lexicographic order on `([−w, w] ∩ ℤ)^n`.

use crate::error::{Error, Result};

/// The next tuple: increments the first coordinate, resetting to `−w` and
/// carrying rightward on overflow.
pub fn colex_successor(t: &[i64], w: i64) -> Result<Vec<i64>> {
    if w < 1 || t.is_empty() || t.iter().any(|x| x.abs() > w) {
        return Err(Error::Invalid(format!("tuple outside [-{w}, {w}]^n")));
    }
    let mut next = t.to_vec();
    for x in next.iter_mut() {
        if *x < w {
            *x += 1;
            return Ok(next);
        }
        *x = -w;
    }
    Err(Error::LastTuple)
}
