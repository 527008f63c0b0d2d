//! Exact rationals, heights, height-ordered enumeration and tower-number bounds.

mod rat;
mod tower;

pub use rat::{
    count_rationals, enumerate_nonneg_rationals, enumerate_rationals, make_rat, power_height,
    rationals_of_height, Rat, RatTuple,
};
pub use tower::{tower_compare, Tower, DEFAULT_BIT_BUDGET};
