//! Computable surjections from `Γ_k` onto tuples of rationals.
//!
//! `Γ_k` is the set of integers `i ≥ 2` whose number of prime factors,
//! counted with multiplicity, is divisible by `k`. An index `i` is decoded
//! from its odd part `m` alone: `c = (m − 1)/2` is a tuple code, and the
//! power of two in `i` only serves to move `i` into the class. A tuple code
//! splits as `c + 1 = 2^(n−1)·(2·body + 1)`; `body` unpairs (Szudzik) into
//! `n` component codes, and a component code is `(sign bit,) pair(|num|, den − 1)`.
//! Codes that are not in lowest terms decode to the reduced rational, so
//! the map is onto but not one-to-one.

use std::collections::BTreeMap;

use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::rationals::{make_rat, Rat, RatTuple};

/// Which class and which target set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Modulus {
    /// `Γ_3` onto tuples of rationals.
    Three,
    /// `Γ_2` onto tuples of non-negative rationals.
    Two,
}

impl Modulus {
    pub fn k(self) -> u32 {
        match self {
            Modulus::Three => 3,
            Modulus::Two => 2,
        }
    }

    fn signed(self) -> bool {
        self == Modulus::Three
    }
}

/// An index into a `Γ_k` class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TupleCode {
    pub index: u64,
    pub modulus: Modulus,
}

/// Prime factorization with primes ascending.
pub fn factorize(n: u64) -> BTreeMap<u64, u32> {
    if n < 2 {
        return BTreeMap::new();
    }
    num_prime::nt_funcs::factorize64(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect()
}

/// Number of prime factors counted with multiplicity.
pub fn big_omega(n: u64) -> u32 {
    factorize(n).values().sum()
}

pub fn gamma_member(i: u64, m: Modulus) -> bool {
    i >= 2 && big_omega(i) % m.k() == 0
}

/// Szudzik's pairing of `(a, b)`.
pub fn pair(a: u64, b: u64) -> Option<u64> {
    if a < b {
        b.checked_mul(b)?.checked_add(a)
    } else {
        a.checked_mul(a)?.checked_add(a)?.checked_add(b)
    }
}

pub fn unpair(z: u64) -> (u64, u64) {
    let s = z.sqrt();
    let r = z - s * s;
    if r < s {
        (r, s)
    } else {
        (s, r - s)
    }
}

fn decode_component(c: u64, signed: bool) -> Rat {
    let (negative, rest) = if signed { (c & 1 == 1, c >> 1) } else { (false, c) };
    let (num, den) = unpair(rest);
    let r = make_rat(num, den + 1).expect("positive denominator");
    if negative {
        -r
    } else {
        r
    }
}

fn encode_component(x: &Rat, signed: bool) -> Result<u64> {
    if x.is_negative() && !signed {
        return Err(Error::DomainViolation(format!("{x} is negative")));
    }
    let num = x.numer().abs().to_u64().ok_or(Error::EncodingOverflow)?;
    let den = x.denom().to_u64().ok_or(Error::EncodingOverflow)?;
    let body = pair(num, den - 1).ok_or(Error::EncodingOverflow)?;
    if signed {
        body.checked_mul(2)
            .and_then(|b| b.checked_add(x.is_negative() as u64))
            .ok_or(Error::EncodingOverflow)
    } else {
        Ok(body)
    }
}

/// The tuple with code `c`.
pub fn decode_code(c: u64, signed: bool) -> RatTuple {
    let c1 = c as u128 + 1;
    let n = c1.trailing_zeros() as usize + 1;
    let mut body = ((c1 >> (n - 1)) - 1) / 2;
    let mut out = Vec::with_capacity(n);
    for _ in 1..n {
        let (a, rest) = unpair(body as u64);
        out.push(decode_component(a, signed));
        body = rest as u128;
    }
    out.push(decode_component(body as u64, signed));
    RatTuple::new(out)
}

/// The canonical code of a tuple: lowest terms, sign bit clear for zero.
pub fn encode_code(t: &RatTuple, signed: bool) -> Result<u64> {
    let n = t.len();
    if n == 0 {
        return Err(Error::BadArity(0));
    }
    let codes = t
        .entries()
        .iter()
        .map(|x| encode_component(x, signed))
        .collect::<Result<Vec<u64>>>()?;
    let mut body = codes[n - 1];
    for &a in codes[..n - 1].iter().rev() {
        body = pair(a, body).ok_or(Error::EncodingOverflow)?;
    }
    let odd = (body as u128) * 2 + 1;
    let shifted = odd.checked_shl(n as u32 - 1).filter(|v| v >> (n - 1) == odd);
    let c = shifted.and_then(|v| u64::try_from(v - 1).ok()).ok_or(Error::EncodingOverflow)?;
    Ok(c)
}

/// `η` (modulus 3) or its non-negative analogue (modulus 2).
pub fn decode_tuple(code: TupleCode) -> Result<RatTuple> {
    let i = code.index;
    if !gamma_member(i, code.modulus) {
        return Err(Error::NotInClass(i));
    }
    let odd = i >> i.trailing_zeros();
    Ok(decode_code((odd - 1) / 2, code.modulus.signed()))
}

/// The least index in the class that decodes to `t`.
pub fn encode_tuple(t: &RatTuple, modulus: Modulus) -> Result<TupleCode> {
    let c = encode_code(t, modulus.signed())?;
    let odd = c.checked_mul(2).and_then(|v| v.checked_add(1)).ok_or(Error::EncodingOverflow)?;
    let k = modulus.k();
    let omega = big_omega(odd);
    let mut e = (k - omega % k) % k;
    if odd == 1 && e == 0 {
        e = k;
    }
    let index = odd.checked_shl(e).filter(|v| v >> e == odd).ok_or(Error::EncodingOverflow)?;
    Ok(TupleCode { index, modulus })
}

/// `θ(n) = η(n + 2)` if `n + 2 ∈ Γ_3`, else the 1-tuple `(0)`.
pub fn theta(n: u64) -> RatTuple {
    match n.checked_add(2).map(|i| decode_tuple(TupleCode { index: i, modulus: Modulus::Three })) {
        Some(Ok(t)) => t,
        _ => RatTuple::new(vec![Rat::zero()]),
    }
}
