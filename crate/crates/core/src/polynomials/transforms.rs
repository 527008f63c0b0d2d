//! Equation-to-equation transforms. Each returns a single polynomial whose
//! root set is tied to that of the input in a documented way.

use num_bigint::BigInt;
use num_traits::One;

use super::Poly;
use crate::error::{Error, Result};
use crate::rationals::enumerate_rationals;

/// Size limits for the transforms whose output grows quickly.
#[derive(Clone, Copy, Debug)]
pub struct TransformCaps {
    /// Largest arity accepted by [`sign_product_transform`].
    pub sign_product_arity: usize,
    /// Largest variable count produced by [`multiplicity_equation`].
    pub multiplicity_vars: usize,
    /// Largest `|Q_m|` accepted by [`height_excess_equation`]; 15 admits m ≤ 3.
    pub height_excess_points: usize,
}

impl Default for TransformCaps {
    fn default() -> Self {
        TransformCaps { sign_product_arity: 4, multiplicity_vars: 16, height_excess_points: 15 }
    }
}

/// `∏ D(±x1, …, ±xp)` over all `2^p` sign patterns.
pub fn sign_product_transform(d: &Poly, caps: &TransformCaps) -> Result<Poly> {
    let p = d.arity();
    if p > caps.sign_product_arity {
        return Err(Error::ArityCapExceeded { arity: p, cap: caps.sign_product_arity });
    }
    let mut out = Poly::constant(1, p);
    for mask in 0u32..(1 << p) {
        out = out.mul(&flip_signs(d, mask));
    }
    Ok(out)
}

/// `D` with `x_{i+1}` replaced by `-x_{i+1}` for every set bit `i` of `mask`.
fn flip_signs(d: &Poly, mask: u32) -> Poly {
    let terms = d.terms().map(|(m, c)| {
        let odd: u32 = m
            .0
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e)
            .sum();
        let c = if odd % 2 == 1 { -c } else { c.clone() };
        (m.0.clone(), c)
    });
    Poly::from_terms(d.arity(), terms).expect("same arity")
}

/// `D + 0·x_{p+1}`: the same terms over one more variable.
pub fn pad_zero_variable(d: &Poly) -> Poly {
    d.with_arity(d.arity() + 1)
}

/// `(2·x_{p+1} + 1)·D`.
pub fn odd_factor_transform(d: &Poly) -> Poly {
    let n = d.arity() + 1;
    let odd = Poly::var(n - 1, n).scale(&BigInt::from(2)).add(&Poly::constant(1, n));
    odd.mul(&d.with_arity(n))
}

/// One polynomial with a rational root iff `D` has at least `b` pairwise
/// distinct rational roots.
///
/// Variables: copy `u` of `D` occupies `x_{u·p+1} .. x_{u·p+p}`; the
/// `z_{uv}` (u < v) follow in lexicographic order of `(u, v)`. The output is
/// `Σ_u D(X^u)² + Σ_{u<v} (z_{uv}·|X^u − X^v|² − 1)²`.
pub fn multiplicity_equation(d: &Poly, b: usize, caps: &TransformCaps) -> Result<Poly> {
    if b < 2 {
        return Err(Error::Invalid(format!("multiplicity needs b >= 2, got {b}")));
    }
    let p = d.arity();
    let pairs = b * (b - 1) / 2;
    let n = b * p + pairs;
    if n > caps.multiplicity_vars {
        return Err(Error::VariableCapExceeded { vars: n, cap: caps.multiplicity_vars });
    }
    let copy = |u: usize| -> Poly {
        let map: Vec<usize> = (0..p).map(|i| u * p + i).collect();
        d.rename_vars(&map, n)
    };
    let mut out = Poly::zero(n);
    for u in 0..b {
        let du = copy(u);
        out = out.add(&du.mul(&du));
    }
    let mut z = b * p;
    for u in 0..b {
        for v in u + 1..b {
            let mut dist = Poly::zero(n);
            for i in 0..p {
                let diff = Poly::var(u * p + i, n).sub(&Poly::var(v * p + i, n));
                dist = dist.add(&diff.mul(&diff));
            }
            let g = Poly::var(z, n).mul(&dist).sub(&Poly::constant(1, n));
            out = out.add(&g.mul(&g));
            z += 1;
        }
    }
    Ok(out)
}

/// One polynomial with a rational root iff `D` has a rational root with some
/// coordinate of height above `m`.
///
/// Variables `x1..xp` are those of `D`; `w1..wp` follow. The output is
/// `∏_i [ D² + (w_i·∏_{p/q ∈ Q_m} (q·x_i − p) − 1)² ]`, where `Q_m` is the set
/// of rationals of height at most `m`. The linear factors are written with
/// integer coefficients; the rescaling is absorbed by `w_i`.
pub fn height_excess_equation(d: &Poly, m: u64, caps: &TransformCaps) -> Result<Poly> {
    if m == 0 {
        return Err(Error::Invalid("height bound must be positive".into()));
    }
    let grid = enumerate_rationals(m);
    if grid.len() > caps.height_excess_points {
        return Err(Error::CapExceeded(format!(
            "|Q_{m}| = {} exceeds {}",
            grid.len(),
            caps.height_excess_points
        )));
    }
    let p = d.arity();
    let n = 2 * p;
    let dn = d.with_arity(n);
    let d2 = dn.mul(&dn);
    let mut out = Poly::constant(1, n);
    for i in 0..p {
        let mut vanish = Poly::var(p + i, n);
        for r in &grid {
            let lin = Poly::var(i, n)
                .scale(r.denom())
                .sub(&Poly::constant(r.numer().clone(), n));
            vanish = vanish.mul(&lin);
        }
        let g = vanish.sub(&Poly::constant(BigInt::one(), n));
        out = out.mul(&d2.add(&g.mul(&g)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::parse_polynomial;
    use crate::rationals::Rat;

    fn p(s: &str) -> Poly {
        parse_polynomial(s).unwrap()
    }

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn sign_product_examples() {
        let caps = TransformCaps::default();
        // (x1 - 2)·(-x1 - 2)
        assert_eq!(sign_product_transform(&p("x1 - 2"), &caps).unwrap(), p("4 - x1^2"));
        assert_eq!(sign_product_transform(&p("x1^2"), &caps).unwrap(), p("x1^4"));
        let t = sign_product_transform(&p("x1 - 2"), &caps).unwrap();
        assert!(t.eval(&[r("2")]).unwrap().is_zero());
        assert!(t.eval(&[r("-2")]).unwrap().is_zero());
        let big = p("x1 + x2 + x3 + x4 + x5");
        assert_eq!(
            sign_product_transform(&big, &caps),
            Err(Error::ArityCapExceeded { arity: 5, cap: 4 })
        );
    }

    #[test]
    fn padding() {
        let d = p("x1^2 + 1");
        let e = pad_zero_variable(&d);
        assert_eq!(e.arity(), 2);
        assert_ne!(e, d);
        assert_eq!(e.to_string(), d.to_string());
        assert_eq!(e.eval(&[r("3"), r("-7/2")]).unwrap(), r("10"));
        assert_eq!(pad_zero_variable(&e).arity(), 3);
    }

    #[test]
    fn odd_factor() {
        assert_eq!(odd_factor_transform(&p("x1")).to_string(), "2*x1*x2 + x1");
        assert!(odd_factor_transform(&p("0")).is_zero());
        assert!(odd_factor_transform(&p("x1 - 1")).uses_var(1));
    }

    #[test]
    fn multiplicity_layout() {
        let caps = TransformCaps::default();
        let e = multiplicity_equation(&p("x1*x2 - 1"), 2, &caps).unwrap();
        assert_eq!(e.arity(), 5);
        // (1,1) and (2,1/2): |difference|² = 1 + 1/4, so z = 4/5
        let at = [r("1"), r("1"), r("2"), r("1/2"), r("4/5")];
        assert!(e.eval(&at).unwrap().is_zero());
        let same = [r("1"), r("1"), r("1"), r("1"), r("4/5")];
        assert!(!e.eval(&same).unwrap().is_zero());
        assert_eq!(
            multiplicity_equation(&p("x1 + x2 + x3"), 4, &caps),
            Err(Error::VariableCapExceeded { vars: 18, cap: 16 })
        );
    }

    #[test]
    fn height_excess_examples() {
        let caps = TransformCaps::default();
        let e = height_excess_equation(&p("x1 - 2"), 1, &caps).unwrap();
        assert_eq!(e.arity(), 2);
        assert!(e.eval(&[r("2"), r("1/6")]).unwrap().is_zero());
        let e = height_excess_equation(&p("x1*x2 - 1"), 1, &caps).unwrap();
        // w1 = 1/((2)(1)(3)), any w2
        assert!(e.eval(&[r("2"), r("1/2"), r("1/6"), r("5")]).unwrap().is_zero());
        assert!(height_excess_equation(&p("x1"), 3, &caps).is_ok());
        assert!(matches!(
            height_excess_equation(&p("x1"), 4, &caps),
            Err(Error::CapExceeded(_))
        ));
    }
}
