use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    pub fn pow(&self, e: u32) -> Rat {
        let num = num_traits::pow(self.numer().clone(), e as usize);
        let den = num_traits::pow(self.denom().clone(), e as usize);
        // coprime parts stay coprime under powers
        Rat(BigRational::new_raw(num, den))
    }

    /// `max(|p|, q)` for `p/q` in lowest terms. Zero has height 1.
    pub fn height(&self) -> BigUint {
        let p = self.numer().magnitude();
        let q = self.denom().magnitude();
        if p > q {
            p.clone()
        } else {
            q.clone()
        }
    }

    /// Height as a `u64` when it fits.
    pub fn height_u64(&self) -> Option<u64> {
        self.height().to_u64()
    }

    /// Order used for printed solution lists: denominator first, then
    /// numerator.
    pub fn listing_cmp(&self, other: &Rat) -> Ordering {
        self.denom()
            .cmp(other.denom())
            .then_with(|| self.numer().cmp(other.numer()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact square root if both numerator and denominator are perfect squares.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let p = self.numer().magnitude();
        let q = self.denom().magnitude();
        let rp = p.sqrt();
        let rq = q.sqrt();
        if &rp * &rp == *p && &rq * &rq == *q {
            Some(Rat(BigRational::new_raw(
                BigInt::from_biguint(Sign::Plus, rp),
                BigInt::from_biguint(Sign::Plus, rq),
            )))
        } else {
            None
        }
    }
}

/// Lowest-terms representative of `num/den`.
pub fn make_rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rat> {
    Rat::new(num, den)
}

/// `h(x^d)`, which equals `h(x)^d` because powers of coprime integers stay coprime.
pub fn power_height(x: &Rat, d: u32) -> BigUint {
    num_traits::pow(x.height(), d as usize)
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rat::new(p, q)
            }
            None => Ok(Rat::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types.
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// A non-empty ordered tuple of rationals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatTuple(pub Vec<Rat>);

impl RatTuple {
    pub fn new(entries: Vec<Rat>) -> Self {
        RatTuple(entries)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatTuple(v.iter().map(|&i| Rat::from(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    /// Maximum entry height; the empty tuple has height 0.
    pub fn height(&self) -> BigUint {
        self.0.iter().map(Rat::height).max().unwrap_or_default()
    }

    /// Coordinate-wise [`Rat::listing_cmp`].
    pub fn listing_cmp(&self, other: &RatTuple) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.listing_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl fmt::Display for RatTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Index<usize> for RatTuple {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

/// Every rational of height at most `max_height`, ordered by height, then
/// numerator, then denominator.
pub fn enumerate_rationals(max_height: u64) -> Vec<Rat> {
    let mut out = Vec::new();
    for h in 1..=max_height {
        out.extend(rationals_of_height(h));
    }
    out
}

/// The rationals whose height is exactly `h`, sorted by numerator then denominator.
pub fn rationals_of_height(h: u64) -> Vec<Rat> {
    let mut level: Vec<(i64, u64)> = Vec::new();
    if h == 1 {
        level.extend([(-1, 1), (0, 1), (1, 1)]);
    } else {
        let hi = h as i64;
        // denominator h, |numerator| < h
        for p in 1..hi {
            if (p as u64).gcd(&h) == 1 {
                level.push((p, h));
                level.push((-p, h));
            }
        }
        // |numerator| h, denominator < h
        for q in 1..h {
            if q.gcd(&h) == 1 {
                level.push((hi, q));
                level.push((-hi, q));
            }
        }
        level.sort();
    }
    level
        .into_iter()
        .map(|(p, q)| Rat(BigRational::new_raw(BigInt::from(p), BigInt::from(q))))
        .collect()
}

/// The non-negative rationals of height at most `max_height`, same order.
pub fn enumerate_nonneg_rationals(max_height: u64) -> Vec<Rat> {
    enumerate_rationals(max_height)
        .into_iter()
        .filter(|r| !r.is_negative())
        .collect()
}

/// `|{x ∈ ℚ : h(x) ≤ m}| = 1 + 2·(2·Σ_{k≤m} φ(k) − 1)`.
pub fn count_rationals(max_height: u64) -> u64 {
    if max_height == 0 {
        return 0;
    }
    let mut phi: Vec<u64> = (0..=max_height).collect();
    for i in 2..=max_height as usize {
        if phi[i] == i as u64 {
            let mut j = i;
            while j <= max_height as usize {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    let sum: u64 = phi[1..].iter().sum();
    1 + 2 * (2 * sum - 1)
}
