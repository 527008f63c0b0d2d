//! Oracles shared by the integration tests. They use only the atoms of a
//! system, never the witness maps under test.

#![allow(dead_code)]

pub mod bijection;

use dioph_core::ir::{Atom, System};
use dioph_core::polynomials::Poly;
use dioph_core::rationals::{Rat, RatTuple};
use rand::{Rng, SeedableRng};

use rand_chacha::ChaCha8Rng;

/// Every full assignment of `s` extending the fixed first variables, or
/// `None` when the search cannot pin some variable down.
/// With `nonneg`, only assignments with every value non-negative count.
pub fn extensions(s: &System, base: &[Rat], nonneg: bool) -> Option<Vec<Vec<Rat>>> {
    let mut assign: Vec<Option<Rat>> = vec![None; s.n()];
    for (i, b) in base.iter().enumerate() {
        assign[i] = Some(b.clone());
    }
    let mut out = vec![];
    solve(s, assign, nonneg, &mut out, 0)?;
    Some(out)
}

/// A polynomial in one symbol `u`, coefficients from degree 0 up.
type P = Vec<Rat>;

fn trim(mut p: P) -> P {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn c(x: Rat) -> P {
    vec![x]
}

fn padd(a: &P, b: &P) -> P {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_else(Rat::zero) + b.get(i).cloned().unwrap_or_else(Rat::zero)).collect())
}

fn pneg(a: &P) -> P {
    a.iter().map(|x| -x).collect()
}

fn pmul(a: &P, b: &P) -> P {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

fn as_const(p: &P) -> Option<&Rat> {
    (p.len() == 1).then(|| &p[0])
}

fn scale(p: &P, k: &Rat) -> P {
    trim(p.iter().map(|x| x * k).collect())
}

/// Derives values to a fixpoint, then returns the residual `lhs − rhs` of
/// every fully known atom; `None` on a nonzero constant residual.
fn close(s: &System, v: &mut [Option<P>]) -> Option<Vec<P>> {
    let one = c(Rat::one());
    let atoms: Vec<Atom> = s.atoms().copied().collect();
    let mut touching: Vec<Vec<usize>> = vec![vec![]; s.n()];
    for (ai, a) in atoms.iter().enumerate() {
        let idx = match *a {
            Atom::One(k) => vec![k],
            Atom::Succ(i, k) => vec![i, k],
            Atom::Add(i, j, k) | Atom::Mul(i, j, k) => vec![i, j, k],
        };
        for x in idx {
            touching[x].push(ai);
        }
    }
    let mut queue: std::collections::VecDeque<usize> = (0..atoms.len()).collect();
    while let Some(ai) = queue.pop_front() {
        let (k, val) = match atoms[ai] {
            Atom::One(k) if v[k].is_none() => (k, one.clone()),
            Atom::One(_) => continue,
            Atom::Succ(i, k) => match (&v[i], &v[k]) {
                (Some(x), None) => (k, padd(x, &one)),
                (None, Some(y)) => (i, padd(y, &pneg(&one))),
                _ => continue,
            },
            Atom::Add(i, j, k) => match (&v[i], &v[j], &v[k]) {
                (Some(x), Some(y), None) => (k, padd(x, y)),
                (Some(x), None, Some(z)) => (j, padd(z, &pneg(x))),
                (None, Some(y), Some(z)) => (i, padd(z, &pneg(y))),
                (None, None, Some(z)) if i == j => (i, scale(z, &Rat::new(1, 2).unwrap())),
                _ => continue,
            },
            Atom::Mul(i, j, k) => match (&v[i], &v[j], &v[k]) {
                (Some(x), Some(y), None) => (k, pmul(x, y)),
                (None, Some(y), Some(z)) if as_const(y).is_some_and(|y| !y.is_zero()) => {
                    (i, scale(z, &as_const(y).unwrap().recip().unwrap()))
                }
                (Some(x), None, Some(z)) if as_const(x).is_some_and(|x| !x.is_zero()) => {
                    (j, scale(z, &as_const(x).unwrap().recip().unwrap()))
                }
                _ => continue,
            },
        };
        // a symbol pushed through squarings is dropped, not expanded
        if val.len() <= MAX_SYMBOLIC_DEGREE + 1 {
            v[k] = Some(val);
            queue.extend(touching[k].iter().copied());
        }
    }
    let mut residuals = vec![];
    for a in s.atoms() {
        let get = |i: usize| v[i].as_ref();
        let r = match *a {
            Atom::One(k) => get(k).map(|z| padd(z, &pneg(&one))),
            Atom::Succ(i, k) => get(i).zip(get(k)).map(|(x, z)| padd(&padd(x, &one), &pneg(z))),
            Atom::Add(i, j, k) => match (get(i), get(j), get(k)) {
                (Some(x), Some(y), Some(z)) => Some(padd(&padd(x, y), &pneg(z))),
                _ => None,
            },
            Atom::Mul(i, j, k) => match (get(i), get(j), get(k)) {
                (Some(x), Some(y), Some(z)) => Some(padd(&pmul(x, y), &pneg(z))),
                _ => None,
            },
        };
        match r {
            Some(r) if r.len() == 1 && !r[0].is_zero() => return None,
            Some(r) if r.len() > 1 => residuals.push(r),
            _ => {}
        }
    }
    Some(residuals)
}
const MAX_EXTENSIONS: usize = 64;
const MAX_SYMBOLIC_DEGREE: usize = 8;

fn solve(s: &System, assign: Vec<Option<Rat>>, nonneg: bool, out: &mut Vec<Vec<Rat>>, depth: usize) -> Option<()> {
    if out.len() >= MAX_EXTENSIONS || depth > s.n() {
        return None;
    }
    let mut v: Vec<Option<P>> = assign.iter().map(|x| x.clone().map(c)).collect();
    if close(s, &mut v).is_none() {
        return Some(());
    }
    if nonneg && v.iter().flatten().any(|p| p.len() == 1 && p[0].is_negative()) {
        return Some(());
    }
    let Some(u) = v.iter().position(Option::is_none) else {
        out.push(v.into_iter().map(|p| p.unwrap()[0].clone()).collect());
        return Some(());
    };
    let mut fixed: Vec<Option<Rat>> = v.iter().map(|p| p.as_ref().map(|p| p[0].clone())).collect();
    v[u] = Some(vec![Rat::zero(), Rat::one()]);
    let Some(residuals) = close(s, &mut v) else { return Some(()) };
    let r = residuals.iter().min_by_key(|r| r.len())?;
    for root in rational_roots(r)? {
        fixed[u] = Some(root);
        solve(s, fixed.clone(), nonneg, out, depth + 1)?;
    }
    Some(())
}

fn divisors(n: &num_bigint::BigInt) -> Option<Vec<u64>> {
    use num_traits::{Signed, ToPrimitive};
    let n = n.abs().to_u64().filter(|&n| n <= 1 << 40)?;
    let mut out = vec![];
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots by the rational root theorem; `None` when a coefficient
/// is too large to factor.
pub fn rational_roots(p: &P) -> Option<Vec<Rat>> {
    use num_integer::Integer;
    let lcm = p.iter().fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    let mut ints: Vec<num_bigint::BigInt> = p.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut roots = vec![];
    if ints[0] == 0.into() {
        roots.push(Rat::zero());
        while ints.len() > 1 && ints[0] == 0.into() {
            ints.remove(0);
        }
    }
    if ints.len() > 1 {
        let nums = divisors(&ints[0])?;
        for q in divisors(ints.last().unwrap())? {
            for &num in &nums {
                for sign in [1i64, -1] {
                    let x = Rat::new(sign * num as i64, q as i64).unwrap();
                    let val = ints.iter().rev().fold(Rat::zero(), |acc, k| acc * &x + Rat::from_int(k.clone()));
                    if val.is_zero() && !roots.contains(&x) {
                        roots.push(x);
                    }
                }
            }
        }
    }
    Some(roots)
}

/// A non-constant polynomial with `arity` variables, degree at most
/// `max_deg` in each and coefficients in `[-max_coeff, max_coeff]`.
pub fn random_poly(rng: &mut ChaCha8Rng, arity: usize, max_deg: u32, max_coeff: i64) -> Poly {
    loop {
        let mut terms = vec![];
        let nterms = rng.gen_range(1..=4);
        for _ in 0..nterms {
            let exps: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..=max_deg)).collect();
            let c = rng.gen_range(-max_coeff..=max_coeff);
            terms.push((exps, c));
        }
        let p = Poly::from_terms(arity, terms.into_iter().map(|(e, c)| (e, c.into()))).expect("valid terms");
        if (0..arity).all(|i| p.uses_var(i)) {
            return p;
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All tuples of `values` of length `n`, in odometer order.
pub fn grid(values: &[Rat], n: usize) -> Vec<RatTuple> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Rat>| {
                values.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out.into_iter().map(RatTuple::new).collect()
}
