//! Truncated Laurent series with exact rational coefficients.
//!
//! A [`RationalSeries`] is `Σ_{e=lead}^{order-1} c_e z^e + O(z^order)`. Every
//! operation computes the order to which its result is actually determined,
//! so nothing is ever silently extended past the inputs' truncation.

mod bn;
mod numbers;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

pub use bn::{
    b1_identity_sides, b2_identity_sides, bn_series_direct, bn_series_stirling, first_difference,
    t_of_z, verify_b1_identity, verify_b2_identity, DEFAULT_IDENTITY_ORDER,
};
pub use numbers::{bernoulli, bernoulli_poly, binomial, factorial, stirling_first};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    lead: i64,
    coeffs: Vec<BigRational>,
    order: i64,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RationalSeries {
    /// `Σ coeffs[i] z^{lead+i} + O(z^order)`. Coefficients at or beyond
    /// `order` are discarded.
    pub fn new(lead: i64, mut coeffs: Vec<BigRational>, order: i64) -> Self {
        let keep = (order - lead).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = RationalSeries {
            lead,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    /// A polynomial (lead 0) truncated at `order`.
    pub fn from_poly(coeffs: Vec<BigRational>, order: i64) -> Self {
        RationalSeries::new(0, coeffs, order)
    }

    pub fn from_ints(coeffs: &[i64], order: i64) -> Self {
        RationalSeries::from_poly(coeffs.iter().map(|c| rat(*c)).collect(), order)
    }

    pub fn zero(order: i64) -> Self {
        RationalSeries {
            lead: order,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn constant(c: BigRational, order: i64) -> Self {
        RationalSeries::new(0, vec![c], order)
    }

    pub fn one(order: i64) -> Self {
        RationalSeries::constant(BigRational::one(), order)
    }

    /// The series variable `z`.
    pub fn var(order: i64) -> Self {
        RationalSeries::new(1, vec![BigRational::one()], order)
    }

    fn normalize(&mut self) {
        let nz = self.coeffs.iter().position(|c| !c.is_zero());
        match nz {
            None => {
                self.coeffs.clear();
                self.lead = self.order;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.lead += k as i64;
            }
        }
    }

    /// Exponent of the lowest nonzero term; `None` for `O(z^order)`.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lead)
        }
    }

    /// Lowest exponent that may be nonzero (the order for a zero series).
    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// Truncation order: coefficients are known for exponents `< order`.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of `z^e`, or `None` if `e` is beyond the truncation order.
    pub fn coeff(&self, e: i64) -> Option<BigRational> {
        if e >= self.order {
            return None;
        }
        if e < self.lead {
            return Some(BigRational::zero());
        }
        Some(
            self.coeffs
                .get((e - self.lead) as usize)
                .cloned()
                .unwrap_or_else(BigRational::zero),
        )
    }

    /// Coefficients of `z^0 .. z^{n-1}`; the series must have no principal
    /// part and be known to order `n`.
    pub fn coeffs_from_zero(&self, n: i64) -> Vec<BigRational> {
        (0..n)
            .map(|e| self.coeff(e).expect("coefficient beyond truncation order"))
            .collect()
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        RationalSeries::new(self.lead, self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalSeries::new(
            self.lead,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.order,
        )
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        RationalSeries {
            lead: self.lead + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = RationalSeries::one(i64::MAX / 4);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; the leading coefficient must be known and
    /// nonzero. The result keeps the same relative precision.
    pub fn inverse(&self) -> Result<Self> {
        let Some(lead) = self.valuation() else {
            return Err(domain("inverse of a series with no known nonzero term"));
        };
        let rel = (self.order - lead) as usize;
        let a = &self.coeffs;
        let a0_inv = a[0].recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(rel);
        b.push(a0_inv.clone());
        for n in 1..rel {
            let mut acc = BigRational::zero();
            for k in 1..=n.min(a.len() - 1) {
                acc += &a[k] * &b[n - k];
            }
            b.push(-acc * &a0_inv);
        }
        Ok(RationalSeries::new(-lead, b, -lead + rel as i64))
    }

    /// `f ∘ g`; `g` must vanish at 0. A finite principal part of `f` is
    /// handled through powers of `1/g`.
    pub fn compose(&self, g: &RationalSeries) -> Result<Self> {
        if g.lead < 1 {
            return Err(domain(
                "composition needs an inner series with positive order",
            ));
        }
        let lg = g.lead;
        // Dropped terms of f contribute O(g^{f.order}).
        let mut out = RationalSeries::zero(self.order.saturating_mul(lg).min(i64::MAX / 4));
        if let Some(vf) = self.valuation() {
            if vf < 0 {
                let ginv = g.inverse()?;
                let mut pw = RationalSeries::one(i64::MAX / 4);
                for k in 1..=(-vf) {
                    pw = &pw * &ginv;
                    let c = self.coeff(-k).expect("principal part");
                    if !c.is_zero() {
                        out = &out + &pw.scale(&c);
                    }
                }
            }
            let mut pw = RationalSeries::one(out.order);
            for k in 0..self.order {
                if pw.lead >= out.order {
                    break;
                }
                let c = self.coeff(k).expect("within order");
                if !c.is_zero() {
                    out = &out + &pw.scale(&c);
                }
                pw = (&pw * g).truncate(out.order);
            }
        }
        Ok(out)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * rat(self.lead + i as i64))
            .collect();
        RationalSeries::new(self.lead - 1, coeffs, self.order - 1)
    }
}

/// `log f = −Σ_{k≥1} (1 − f)^k / k` for a series with constant term 1.
pub fn log_series(f: &RationalSeries) -> Result<RationalSeries> {
    if f.lead < 0 || f.coeff(0) != Some(BigRational::one()) {
        return Err(domain(
            "log_series needs constant term 1 and no principal part",
        ));
    }
    let order = f.order;
    let outer = RationalSeries::new(
        1,
        (1..order)
            .map(|k| -BigRational::new(1.into(), k.into()))
            .collect(),
        order,
    );
    let inner = &RationalSeries::one(order) - f;
    outer.compose(&inner)
}

/// Dilogarithm `Li₂(z) = Σ_{k≥1} z^k / k²` through `z^m`.
pub fn li2_series(m: i64) -> RationalSeries {
    RationalSeries::new(
        1,
        (1..=m)
            .map(|k| BigRational::new(1.into(), BigInt::from(k * k)))
            .collect(),
        m + 1,
    )
}

impl<'a> Add<&'a RationalSeries> for &'a RationalSeries {
    type Output = RationalSeries;

    fn add(self, o: &'a RationalSeries) -> RationalSeries {
        let order = self.order.min(o.order);
        let lead = self.lead.min(o.lead);
        if lead >= order {
            return RationalSeries::zero(order);
        }
        let mut c = vec![BigRational::zero(); (order - lead) as usize];
        for (s, off) in [(self, self.lead - lead), (o, o.lead - lead)] {
            for (i, x) in s.coeffs.iter().enumerate() {
                let idx = off as usize + i;
                if idx < c.len() {
                    c[idx] += x;
                }
            }
        }
        RationalSeries::new(lead, c, order)
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;

    fn neg(self) -> RationalSeries {
        RationalSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }
}

impl<'a> Sub<&'a RationalSeries> for &'a RationalSeries {
    type Output = RationalSeries;

    fn sub(self, o: &'a RationalSeries) -> RationalSeries {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RationalSeries> for &'a RationalSeries {
    type Output = RationalSeries;

    fn mul(self, o: &'a RationalSeries) -> RationalSeries {
        let lead = self.lead + o.lead;
        let order = (self.lead + o.order).min(o.lead + self.order);
        if lead >= order || self.coeffs.is_empty() || o.coeffs.is_empty() {
            return RationalSeries::zero(order);
        }
        let n = (order - lead) as usize;
        let mut c = vec![BigRational::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate().take(n - i) {
                c[i + j] += x * y;
            }
        }
        RationalSeries::new(lead, c, order)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, "({c})*z^{} + ", self.lead + i as i64)?;
        }
        write!(f, "O(z^{})", self.order)
    }
}
