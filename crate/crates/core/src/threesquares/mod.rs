//! Sums of three squares and the systems built on `x³ + y³ = 4981`, whose
//! rational solutions are all astronomically tall.

mod bremner;

pub use bremner::{bremner_system, verify_bremner, BremnerReport, BremnerSystem, Expr};

use num_integer::Roots;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rationals::{make_rat, Rat};

pub const DEFAULT_DECOMPOSITION_CAP: u64 = 10_000_000;

/// `z` or `2z` written as `a² + b² + c²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThreeSquares {
    pub target: Rat,
    pub parts: [Rat; 3],
    /// The parts sum to `2·target`.
    pub scaled: bool,
}

impl ThreeSquares {
    pub fn check(&self) -> bool {
        let sum = self.parts.iter().fold(Rat::zero(), |acc, p| acc + p * p);
        let want = if self.scaled { &self.target * &Rat::from_int(2) } else { self.target.clone() };
        sum == want
    }
}

/// `n = 4^a·(8b + 7)`, the integers that are not sums of three squares.
pub fn excluded_form(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % 4 == 0 {
        n /= 4;
    }
    n % 8 == 7
}

pub fn decompose_three_squares_int(n: u64) -> Result<(u64, u64, u64)> {
    decompose_three_squares_int_capped(n, DEFAULT_DECOMPOSITION_CAP)
}

/// `(i1, i2, i3)` with `i1 ≥ i2 ≥ i3 ≥ 0`, largest `i1` first.
pub fn decompose_three_squares_int_capped(n: u64, cap: u64) -> Result<(u64, u64, u64)> {
    if n == 0 {
        return Err(Error::DomainViolation("0 is not positive".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded(format!("{n} exceeds the decomposition cap {cap}")));
    }
    if excluded_form(n) {
        return Err(Error::NotRepresentable(n));
    }
    let mut i1 = n.sqrt();
    while 3 * i1 * i1 >= n {
        let r1 = n - i1 * i1;
        let mut i2 = i1.min(r1.sqrt());
        while 2 * i2 * i2 >= r1 {
            let r2 = r1 - i2 * i2;
            let i3 = r2.sqrt();
            if i3 * i3 == r2 {
                return Ok((i1, i2, i3));
            }
            if i2 == 0 {
                break;
            }
            i2 -= 1;
        }
        if i1 == 0 {
            break;
        }
        i1 -= 1;
    }
    Err(Error::NotRepresentable(n))
}

/// Writes `z = p/q` or `2z` as three rational squares over the denominator `q`,
/// choosing by the parity of the exponent of 2 in `pq`.
pub fn lemma_or(z: &Rat) -> Result<ThreeSquares> {
    lemma_or_capped(z, DEFAULT_DECOMPOSITION_CAP)
}

pub fn lemma_or_capped(z: &Rat, cap: u64) -> Result<ThreeSquares> {
    if z.is_negative() || z.is_zero() {
        return Err(Error::DomainViolation(format!("{z} is not positive")));
    }
    let too_big = || Error::CapExceeded(format!("{z}: pq exceeds the decomposition cap {cap}"));
    let p = z.numer().to_u64().ok_or_else(too_big)?;
    let q = z.denom().to_u64().ok_or_else(too_big)?;
    let pq = p.checked_mul(q).filter(|&v| v <= cap).ok_or_else(too_big)?;
    let scaled = pq.trailing_zeros() % 2 == 0;
    let n = if scaled { pq.checked_mul(2).ok_or_else(too_big)? } else { pq };
    let (a, b, c) = decompose_three_squares_int_capped(n, cap)?;
    let part = |i: u64| make_rat(i, q).expect("q > 0");
    Ok(ThreeSquares { target: z.clone(), parts: [part(a), part(b), part(c)], scaled })
}

/// `H(r, s, t) = r²(s²(t² + 1) + 1)`, checked against `r² + (rs)² + (rst)²`.
pub fn technical_forward(r: &Rat, s: &Rat, t: &Rat) -> Rat {
    let one = Rat::one();
    let nested = r * r * ((s * s) * (t * t + &one) + &one);
    let rs = r * s;
    let rst = &rs * t;
    let expanded = r * r + &rs * &rs + &rst * &rst;
    assert_eq!(nested, expanded, "the two forms of H disagree");
    nested
}

/// `(r, s, t)` with `H(r, s, t) = a² + b² + c²`.
pub fn technical_inverse(a: &Rat, b: &Rat, c: &Rat) -> (Rat, Rat, Rat) {
    let mut v = [a.clone(), b.clone(), c.clone()];
    v.sort_by(|x, y| x.abs().cmp(&y.abs()));
    let [a, b, c] = v;
    let out = if b.is_zero() {
        (c.clone(), Rat::zero(), Rat::zero())
    } else {
        (c.clone(), &b / &c, &a / &b)
    };
    let sum = &a * &a + &b * &b + &c * &c;
    assert_eq!(technical_forward(&out.0, &out.1, &out.2), sum);
    out
}
