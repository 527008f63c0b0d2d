//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients, their text and JSON forms, and the equation transforms used
//! by the decision procedures.

mod parse;
mod transforms;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rationals::Rat;

pub use parse::{parse_polynomial, parse_polynomial_with, ParseOptions};
pub use transforms::{
    height_excess_equation, multiplicity_equation, odd_factor_transform, pad_zero_variable,
    sign_product_transform, TransformCaps,
};

/// Exponent vector ordered graded-lexicographically: total degree first, then
/// lexicographic on the exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(i: usize, arity: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A polynomial in `x1..x_arity`. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigInt>, arity: usize) -> Self {
        let mut p = Poly::zero(arity);
        p.add_term(Monomial::one(arity), c.into());
        p
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(i: usize, arity: usize) -> Self {
        assert!(i < arity, "variable index out of range");
        let mut p = Poly::zero(arity);
        p.add_term(Monomial::var(i, arity), BigInt::one());
        p
    }

    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Result<Self> {
        let mut p = Poly::zero(arity);
        for (exps, c) in terms {
            if exps.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, got: exps.len() });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.arity])
    }

    /// `deg(D, x_{i+1})`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Largest absolute coefficient (`M`).
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.degree_in(i) > 0
    }

    /// Same terms over `new_arity ≥ arity` variables.
    pub fn with_arity(&self, new_arity: usize) -> Poly {
        assert!(new_arity >= self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(new_arity, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        Poly { arity: new_arity, terms }
    }

    /// Renames `x_{i+1}` to `x_{map[i]+1}` inside an `arity`-variable ring.
    pub fn rename_vars(&self, map: &[usize], arity: usize) -> Poly {
        assert_eq!(map.len(), self.arity);
        let mut out = Poly::zero(arity);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; arity];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    fn unify(&self, other: &Poly) -> usize {
        self.arity.max(other.arity)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.unify(other);
        let mut out = self.with_arity(n);
        for (m, c) in other.with_arity(n).terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let n = self.unify(other);
        let a = self.with_arity(n);
        let b = other.with_arity(n);
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { arity: n, terms: acc }
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(1, self.arity);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact value at `x`.
    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: x.len() });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = Rat::from_int(c.clone());
            for (xi, &e) in x.iter().zip(&m.0) {
                if e > 0 {
                    t = t * xi.pow(e);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Coefficients (lowest degree first) of the univariate polynomial in
    /// `x_{var+1}` left after fixing every other variable to `values[i]`
    /// (`values[var]` is ignored).
    pub fn specialize_univariate(&self, var: usize, values: &[Rat]) -> Result<Vec<Rat>> {
        if values.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: values.len() });
        }
        let mut coeffs = vec![Rat::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let mut t = Rat::from_int(c.clone());
            for (i, (xi, &e)) in values.iter().zip(&m.0).enumerate() {
                if i != var && e > 0 {
                    t = t * xi.pow(e);
                }
            }
            let d = m.0[var] as usize;
            coeffs[d] = &coeffs[d] + &t;
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Ok(coeffs)
    }

    pub fn to_json_value(&self) -> PolyJson {
        PolyJson {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { exps: m.0.clone(), coeff: c.to_string() })
                .collect(),
        }
    }

    /// Canonical JSON text; also the key used by oracle answer tables.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("polynomial JSON")
    }

    pub fn from_json_value(v: &PolyJson) -> Result<Poly> {
        let terms = v
            .terms
            .iter()
            .map(|t| {
                let c: BigInt = t
                    .coeff
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad coefficient {:?}", t.coeff)))?;
                Ok((t.exps.clone(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(v.arity.max(1), terms)
    }
}

/// Serialized polynomial: terms listed leading term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub arity: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = PolyJson::deserialize(d)?;
        Poly::from_json_value(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_constant() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.arity, self)
    }
}
