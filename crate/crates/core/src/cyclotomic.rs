//! Arithmetic in Z_p[ζ_p] ⊂ Q_p(ζ_p), in the power basis of the uniformizer
//! π = ζ_p − 1.
//!
//! π is a root of the Eisenstein polynomial Φ_p(1 + X), so
//! `π^{p−1} = −Σ_{k=1}^{p−1} binom(p, k) π^{k−1}`, and v_π(p) = p − 1. In this
//! basis the π-adic valuation of `Σ c_i π^i` is `min_i (i + (p−1)·v_p(c_i))`,
//! with the minimum attained at a single index.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{domain, indeterminate, Result};
use crate::padic::Padic;
use crate::series::binomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElement {
    p: u32,
    coeffs: Vec<Padic>,
}

fn degree(p: u32) -> usize {
    p as usize - 1
}

/// Coefficients of `π^{p−1}` in the basis `1, π, …, π^{p−2}`.
fn eisenstein_tail(p: u32) -> Vec<BigInt> {
    (1..p as u64).map(|k| -binomial(u64::from(p), k)).collect()
}

impl CycloElement {
    pub fn from_coeffs(p: u32, coeffs: Vec<Padic>) -> Self {
        assert_eq!(coeffs.len(), degree(p), "need p − 1 coordinates");
        assert!(coeffs.iter().all(|c| c.p() == p), "mixed primes");
        CycloElement { p, coeffs }
    }

    /// Integer coordinates in the π basis, each to absolute precision `abs`.
    pub fn from_int_coeffs(p: u32, ints: &[i64], abs: i64) -> Self {
        let mut coeffs: Vec<Padic> = ints
            .iter()
            .map(|c| Padic::from_integer(*c, p, abs))
            .collect();
        coeffs.resize(degree(p), Padic::zero(p, abs));
        CycloElement::from_coeffs(p, coeffs)
    }

    /// Embeds a scalar of Q_p.
    pub fn from_padic(c: Padic) -> Self {
        let p = c.p();
        let abs = c.abs_precision();
        let mut coeffs = vec![Padic::zero(p, abs); degree(p)];
        coeffs[0] = c;
        CycloElement { p, coeffs }
    }

    pub fn zero(p: u32, abs: i64) -> Self {
        CycloElement::from_padic(Padic::zero(p, abs))
    }

    pub fn one(p: u32, abs: i64) -> Self {
        CycloElement::from_padic(Padic::one(p, abs))
    }

    /// The uniformizer π = ζ_p − 1.
    pub fn pi(p: u32, abs: i64) -> Self {
        CycloElement::from_int_coeffs(p, &[0, 1], abs)
    }

    /// ζ_p = 1 + π.
    pub fn zeta(p: u32, abs: i64) -> Self {
        CycloElement::from_int_coeffs(p, &[1, 1], abs)
    }

    /// ζ_p^k for any integer k.
    pub fn zeta_pow(p: u32, k: i64, abs: i64) -> Self {
        let e = k.rem_euclid(i64::from(p)) as u64;
        CycloElement::zeta(p, abs).pow(e)
    }

    /// π^{−1} = −(Σ_{k=2}^{p} binom(p, k) π^{k−2}) / p.
    pub fn pi_inverse(p: u32, abs: i64) -> Self {
        let pb = BigInt::from(p);
        let coeffs = (2..=u64::from(p))
            .map(|k| Padic::from_integer(-binomial(u64::from(p), k), p, abs + 1).div_int(&pb))
            .collect();
        CycloElement::from_coeffs(p, coeffs)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Padic {
        &self.coeffs[i]
    }

    /// The element is known modulo π^{precision_pi}.
    pub fn precision_pi(&self) -> i64 {
        let pm1 = i64::from(self.p) - 1;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| i as i64 + pm1 * c.abs_precision())
            .min()
            .expect("nonempty")
    }

    fn min_nonzero_term(&self) -> Option<i64> {
        let pm1 = i64::from(self.p) - 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.valuation().map(|v| i as i64 + pm1 * v))
            .min()
    }

    /// Exact π-adic valuation, or `None` if the element is zero to its
    /// precision.
    pub fn valuation(&self) -> Option<i64> {
        let m = self.min_nonzero_term()?;
        if m < self.precision_pi() {
            Some(m)
        } else {
            None
        }
    }

    /// The exact valuation, or the π-precision when it is indeterminate.
    pub fn valuation_bound(&self) -> i64 {
        self.valuation().unwrap_or_else(|| self.precision_pi())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// `v_π(self − other)`, capped by precision.
    pub fn agreement(&self, other: &CycloElement) -> i64 {
        (self - other).valuation_bound()
    }

    /// Relative precision for exact integers so they never limit a product
    /// with this element's coordinates.
    fn exact_rel(&self) -> i64 {
        let max_abs = self
            .coeffs
            .iter()
            .map(|c| c.abs_precision())
            .max()
            .unwrap_or(1);
        let min_val = self
            .coeffs
            .iter()
            .map(|c| c.valuation_bound())
            .min()
            .unwrap_or(0);
        (max_abs - min_val).max(1)
    }

    pub fn scale(&self, c: &Padic) -> Self {
        CycloElement {
            p: self.p,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        CycloElement {
            p: self.p,
            coeffs: self.coeffs.iter().map(|x| x.mul_int(k)).collect(),
        }
    }

    pub fn add_scalar(&self, c: &Padic) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = &out.coeffs[0] + c;
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = CycloElement::one(self.p, self.exact_rel().max(self.precision_pi()));
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The norm `Π_{i=1}^{p−1} σ_i(x)`, an element of Q_p.
    pub fn norm(&self) -> Result<Padic> {
        let mut acc = self.clone();
        for i in 2..self.p {
            acc = &acc * &self.galois_apply(i)?;
        }
        Ok(acc.coeffs[0].clone())
    }

    /// Inverse through the norm: `x^{−1} = (Π_{i≥2} σ_i(x)) / N(x)`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(indeterminate(
                "inverse of an element that is zero to its precision",
            ));
        }
        let mut adj = CycloElement::one(self.p, self.exact_rel());
        for i in 2..self.p {
            adj = &adj * &self.galois_apply(i)?;
        }
        let n = (self * &adj).coeffs[0].clone();
        Ok(adj.scale(&n.inv()?))
    }

    pub fn try_div(&self, other: &CycloElement) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// σ_i: ζ ↦ ζ^i, by substituting π ↦ (1 + π)^i − 1 and reducing.
    pub fn galois_apply(&self, i: u32) -> Result<Self> {
        let p = self.p;
        if i.is_multiple_of(p) {
            return Err(domain(format!("σ_{i} is not defined for p = {p}")));
        }
        let i = i % p;
        if i == 1 {
            return Ok(self.clone());
        }
        let rel = self.exact_rel();
        let tau = CycloElement::zeta(p, rel)
            .pow(u64::from(i))
            .add_scalar(&-Padic::one(p, rel));
        let d = degree(p);
        let mut acc = CycloElement::from_padic(self.coeffs[d - 1].clone());
        for j in (0..d - 1).rev() {
            acc = (&acc * &tau).add_scalar(&self.coeffs[j]);
        }
        Ok(acc)
    }

    /// `(Σ_{i=1}^{p−1} σ_i(x), rational part)`; the rational part is `c_0`
    /// when every other coordinate vanishes to its precision.
    pub fn trace_and_rational_part(&self) -> Result<(Padic, Option<Padic>)> {
        let mut sum = self.clone();
        for i in 2..self.p {
            sum = &sum + &self.galois_apply(i)?;
        }
        Ok((sum.coeffs[0].clone(), self.rational_part()))
    }

    pub fn rational_part(&self) -> Option<Padic> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Reduces a coefficient vector of length up to `2p − 3` with the
    /// Eisenstein relation, highest degree first.
    fn reduce(p: u32, mut c: Vec<Padic>) -> Self {
        let d = degree(p);
        if c.len() > d {
            let tail = eisenstein_tail(p);
            for top in (d..c.len()).rev() {
                let lead = c[top].clone();
                for (k, t) in tail.iter().enumerate() {
                    let idx = top - d + k;
                    c[idx] = &c[idx] + &lead.mul_int(t);
                }
            }
            c.truncate(d);
        }
        CycloElement { p, coeffs: c }
    }
}

impl<'a> Add<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;

    fn add(self, o: &'a CycloElement) -> CycloElement {
        assert_eq!(self.p, o.p, "mixed primes");
        CycloElement {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;

    fn sub(self, o: &'a CycloElement) -> CycloElement {
        assert_eq!(self.p, o.p, "mixed primes");
        CycloElement {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;

    fn neg(self) -> CycloElement {
        CycloElement {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;

    fn mul(self, o: &'a CycloElement) -> CycloElement {
        assert_eq!(self.p, o.p, "mixed primes");
        let d = degree(self.p);
        let abs = self.precision_pi().min(o.precision_pi());
        let mut prod: Vec<Option<Padic>> = vec![None; 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                let t = a * b;
                prod[i + j] = Some(match prod[i + j].take() {
                    None => t,
                    Some(s) => &s + &t,
                });
            }
        }
        let prod = prod
            .into_iter()
            .map(|c| c.unwrap_or_else(|| Padic::zero(self.p, abs)))
            .collect();
        CycloElement::reduce(self.p, prod)
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·π^{i}")?;
        }
        Ok(())
    }
}
