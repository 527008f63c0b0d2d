//! Doubly exponential integers `2^(2^e)` that are kept symbolic once they
//! no longer fit a bit budget.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Values whose binary expansion needs more bits than this stay symbolic.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

#[derive(Clone)]
pub enum Tower {
    Exact(BigUint),
    /// `2^(2^inner)`
    TwoUpTwoUp(Box<Tower>),
}

impl Tower {
    pub fn exact(v: impl Into<BigUint>) -> Tower {
        Tower::Exact(v.into())
    }

    /// `2^(2^inner)`, expanded when the result fits [`DEFAULT_BIT_BUDGET`].
    pub fn two_up_two_up(inner: Tower) -> Tower {
        Self::two_up_two_up_with_budget(inner, DEFAULT_BIT_BUDGET)
    }

    pub fn two_up_two_up_with_budget(inner: Tower, budget_bits: u64) -> Tower {
        if let Tower::Exact(e) = &inner {
            // 2^(2^e) has 2^e + 1 bits
            if let Some(e) = e.to_u64() {
                if e < 63 && (1u64 << e) < budget_bits {
                    let exp = 1u64 << e;
                    return Tower::Exact(BigUint::one() << exp);
                }
            }
        }
        Tower::TwoUpTwoUp(Box::new(inner))
    }

    /// The integer value, if it is materialized.
    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            Tower::Exact(v) => Some(v),
            Tower::TwoUpTwoUp(_) => None,
        }
    }

    /// Expands the value when its bit length fits `budget_bits`.
    pub fn materialize(&self, budget_bits: u64) -> Option<BigUint> {
        match self {
            Tower::Exact(v) => Some(v.clone()),
            Tower::TwoUpTwoUp(inner) => {
                let e = inner.materialize(64)?.to_u64()?;
                if e >= 63 || (1u64 << e) >= budget_bits {
                    return None;
                }
                Some(BigUint::one() << (1u64 << e))
            }
        }
    }

    /// Rewrites every materializable sub-tower as `Exact`.
    pub fn canonical(&self) -> Tower {
        match self {
            Tower::Exact(_) => self.clone(),
            Tower::TwoUpTwoUp(inner) => Tower::two_up_two_up(inner.canonical()),
        }
    }

    /// `self²`, when it can be represented.
    pub fn square(&self) -> Option<Tower> {
        match self {
            Tower::Exact(v) => {
                if v.bits() * 2 <= DEFAULT_BIT_BUDGET {
                    return Some(Tower::Exact(v * v));
                }
                // v = 2^(2^k) squares to 2^(2^(k+1))
                let k = double_log2_exact(v)?;
                Some(Tower::two_up_two_up(Tower::from(k + 1)))
            }
            Tower::TwoUpTwoUp(inner) => match inner.as_ref() {
                Tower::Exact(k) => Some(Tower::two_up_two_up(Tower::Exact(k + 1u32))),
                Tower::TwoUpTwoUp(_) => None,
            },
        }
    }

    /// Floor of the `d`-th root. Symbolic values only have an exact root when
    /// `d` is a power of two not exceeding `2^k`.
    pub fn nth_root(&self, d: u32) -> Result<Tower> {
        if d == 0 {
            return Err(Error::Invalid("root of degree 0".into()));
        }
        if d == 1 {
            return Ok(self.clone());
        }
        match self {
            Tower::Exact(v) => Ok(Tower::Exact(v.nth_root(d))),
            Tower::TwoUpTwoUp(inner) => {
                if !d.is_power_of_two() {
                    return Err(Error::NotExact(format!("({self})^(1/{d})")));
                }
                let j = d.trailing_zeros();
                match inner.as_ref() {
                    Tower::Exact(k) if *k >= BigUint::from(j) => {
                        Ok(Tower::two_up_two_up(Tower::Exact(k - j)))
                    }
                    _ => Err(Error::NotExact(format!("({self})^(1/{d})"))),
                }
            }
        }
    }
}

/// `k` with `v = 2^(2^k)`, if `v` has that form.
fn double_log2_exact(v: &BigUint) -> Option<u64> {
    if v.is_zero() || v.trailing_zeros()? != v.bits() - 1 {
        return None;
    }
    let e = v.bits() - 1;
    if e.is_power_of_two() {
        Some(e.trailing_zeros() as u64)
    } else {
        None
    }
}

/// Order of the denoted integers, decided without expanding symbolic parts.
pub fn tower_compare(a: &Tower, b: &Tower) -> Ordering {
    match (a, b) {
        (Tower::Exact(x), Tower::Exact(y)) => x.cmp(y),
        (Tower::TwoUpTwoUp(x), Tower::TwoUpTwoUp(y)) => tower_compare(x, y),
        (Tower::Exact(x), Tower::TwoUpTwoUp(y)) => cmp_exact_with_tower(x, y),
        (Tower::TwoUpTwoUp(x), Tower::Exact(y)) => cmp_exact_with_tower(y, x).reverse(),
    }
}

/// Compares `v` with `2^(2^inner)`.
fn cmp_exact_with_tower(v: &BigUint, inner: &Tower) -> Ordering {
    if v.is_zero() {
        return Ordering::Less;
    }
    // 2^e <= v < 2^(e+1)
    let e = BigUint::from(v.bits() - 1);
    match cmp_with_power_of_two(&e, inner) {
        Ordering::Less => Ordering::Less,
        Ordering::Greater => Ordering::Greater,
        Ordering::Equal => {
            if v.trailing_zeros() == Some(v.bits() - 1) {
                Ordering::Equal
            } else {
                Ordering::Greater
            }
        }
    }
}

/// Compares `e` with `2^t`.
fn cmp_with_power_of_two(e: &BigUint, t: &Tower) -> Ordering {
    if e.is_zero() {
        return Ordering::Less;
    }
    let f = BigUint::from(e.bits() - 1);
    match tower_compare(&Tower::Exact(f.clone()), t) {
        // e < 2^(f+1) <= 2^t
        Ordering::Less => Ordering::Less,
        // e >= 2^f >= 2^(t+1)
        Ordering::Greater => Ordering::Greater,
        Ordering::Equal => {
            if e.trailing_zeros() == Some(e.bits() - 1) {
                Ordering::Equal
            } else {
                Ordering::Greater
            }
        }
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        tower_compare(self, other) == Ordering::Equal
    }
}

impl Eq for Tower {}

impl PartialOrd for Tower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tower {
    fn cmp(&self, other: &Self) -> Ordering {
        tower_compare(self, other)
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tower::Exact(v) => write!(f, "{v}"),
            Tower::TwoUpTwoUp(inner) => write!(f, "2^2^{inner}"),
        }
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tower::Exact(v) if v.bits() > 256 => write!(f, "Exact(<{} bits>)", v.bits()),
            Tower::Exact(v) => write!(f, "Exact({v})"),
            Tower::TwoUpTwoUp(inner) => write!(f, "TwoUpTwoUp({inner:?})"),
        }
    }
}

impl Serialize for Tower {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<u64> for Tower {
    fn from(v: u64) -> Self {
        Tower::Exact(BigUint::from(v))
    }
}
