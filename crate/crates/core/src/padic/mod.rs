//! Fixed-precision elements of Q_p.
//!
//! A [`Padic`] is stored as `p^v * u` where `u` is a unit known modulo
//! `p^r`, so the absolute precision is `v + r`. Precision propagates the way
//! interval arithmetic would: sums keep the smaller absolute precision,
//! products keep the smaller relative precision. A value that cancels below
//! its precision becomes an explicit "zero to absolute precision a", which is
//! how the rest of the crate detects that a computed quantity vanishes.

mod recognize;
mod special;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, indeterminate, usage, Result};

pub use recognize::rational_recognize;
pub use special::{angle, angle_pow, angle_pow_int, exp, gamma, gamma_int, log, teichmuller};
pub(crate) use special::{exp_scaled, log_scaled, teichmuller_i64};

thread_local! {
    static POWERS: RefCell<HashMap<(u32, i64), BigInt>> = RefCell::new(HashMap::new());
}

/// `p^e` for `e >= 0`, memoized per thread.
pub(crate) fn p_pow(p: u32, e: i64) -> BigInt {
    debug_assert!(e >= 0);
    if e <= 0 {
        return BigInt::one();
    }
    POWERS.with(|cache| {
        cache
            .borrow_mut()
            .entry((p, e))
            .or_insert_with(|| num_traits::pow(BigInt::from(p), e as usize))
            .clone()
    })
}

/// Splits `n = p^v * m` with `p ∤ m`. `n` must be nonzero.
pub(crate) fn split_valuation(n: &BigInt, p: u32) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let mut m = n.clone();
    let mut v = 0;
    let pb = BigInt::from(p);
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

/// `v_p(n)` for a nonzero integer.
pub fn valuation_of_integer(n: &BigInt, p: u32) -> i64 {
    split_valuation(n, p).0
}

/// Inverse of a unit modulo `p^e`.
pub(crate) fn inverse_mod(u: &BigInt, modulus: &BigInt) -> BigInt {
    let g = u.extended_gcd(modulus);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(modulus)
}

pub fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn ensure_odd_prime(p: u32) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(usage(format!("p = {p} is not an odd prime")))
    }
}

/// An element of Q_p known to finite precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Padic {
    p: u32,
    /// Valuation, or the absolute precision when the value is zero.
    val: i64,
    /// Unit part in `[1, p^prec)`, or 0 for a zero value.
    unit: BigInt,
    /// Relative precision; 0 for a zero value.
    prec: i64,
}

impl Padic {
    /// Zero to absolute precision `abs`.
    pub fn zero(p: u32, abs: i64) -> Self {
        Padic {
            p,
            val: abs,
            unit: BigInt::zero(),
            prec: 0,
        }
    }

    pub fn one(p: u32, prec: i64) -> Self {
        Padic::from_parts(p, 0, BigInt::one(), prec)
    }

    /// Builds `p^val * unit` with `unit` known modulo `p^prec`. Any factors of
    /// `p` in `unit` are moved into the valuation.
    pub fn from_parts(p: u32, val: i64, unit: BigInt, prec: i64) -> Self {
        if prec <= 0 {
            return Padic::zero(p, val + prec.max(0));
        }
        let modulus = p_pow(p, prec);
        let u = unit.mod_floor(&modulus);
        if u.is_zero() {
            return Padic::zero(p, val + prec);
        }
        let (k, m) = split_valuation(&u, p);
        if k == 0 {
            Padic {
                p,
                val,
                unit: u,
                prec,
            }
        } else {
            let prec = prec - k;
            Padic {
                p,
                val: val + k,
                unit: m.mod_floor(&p_pow(p, prec)),
                prec,
            }
        }
    }

    /// The integer `n` to absolute precision `abs`.
    pub fn from_integer(n: impl Into<BigInt>, p: u32, abs: i64) -> Self {
        let n = n.into();
        if n.is_zero() {
            return Padic::zero(p, abs);
        }
        let (v, m) = split_valuation(&n, p);
        if v >= abs {
            return Padic::zero(p, abs);
        }
        Padic::from_parts(p, v, m, abs - v)
    }

    /// The exact rational `q` embedded to absolute precision `abs`.
    pub fn from_rational(q: &BigRational, p: u32, abs: i64) -> Self {
        if q.is_zero() {
            return Padic::zero(p, abs);
        }
        let (va, a) = split_valuation(q.numer(), p);
        let (vb, b) = split_valuation(q.denom(), p);
        let v = va - vb;
        if v >= abs {
            return Padic::zero(p, abs);
        }
        let prec = abs - v;
        let modulus = p_pow(p, prec);
        let u = a * inverse_mod(&b.mod_floor(&modulus), &modulus);
        Padic::from_parts(p, v, u, prec)
    }

    /// `a/b` to absolute precision `abs`; `b = 0` is a domain error.
    pub fn from_fraction(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        p: u32,
        abs: i64,
    ) -> Result<Self> {
        let b = b.into();
        if b.is_zero() {
            return Err(domain("zero denominator"));
        }
        Ok(Padic::from_rational(&BigRational::new(a.into(), b), p, abs))
    }

    /// The rational `q` carried to relative precision `rel` (so that exact
    /// factors never limit the precision of a product).
    pub fn from_rational_rel(q: &BigRational, p: u32, rel: i64) -> Self {
        if q.is_zero() {
            return Padic::zero(p, rel);
        }
        let v = valuation_of_integer(q.numer(), p) - valuation_of_integer(q.denom(), p);
        Padic::from_rational(q, p, v + rel)
    }

    pub fn from_integer_rel(n: impl Into<BigInt>, p: u32, rel: i64) -> Self {
        Padic::from_rational_rel(&BigRational::from_integer(n.into()), p, rel)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Exact valuation; `None` for a value that is zero to its precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Lower bound on the valuation: the exact one, or the absolute precision
    /// of a zero.
    pub fn valuation_bound(&self) -> i64 {
        self.val
    }

    pub fn abs_precision(&self) -> i64 {
        self.val + self.prec
    }

    pub fn rel_precision(&self) -> i64 {
        self.prec
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_integral(&self) -> bool {
        self.val >= 0
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    /// Little-endian base-p digits of the unit part (length = relative
    /// precision; empty for zero).
    pub fn digits(&self) -> Vec<u32> {
        to_digits(&self.unit, self.p, self.prec as usize)
    }

    /// The first `n` digits of the unit part, or `None` if fewer are known.
    pub fn leading_digits(&self, n: usize) -> Option<Vec<u32>> {
        if (self.prec as usize) < n {
            return None;
        }
        let mut d = self.digits();
        d.truncate(n);
        Some(d)
    }

    /// The value reduced to an integer in `[0, p^n)`, provided it is integral
    /// and known to absolute precision `n`.
    pub fn residue(&self, n: i64) -> Option<BigInt> {
        if self.abs_precision() < n || self.val < 0 {
            return None;
        }
        if self.is_zero() || self.val >= n {
            return Some(BigInt::zero());
        }
        let m = p_pow(self.p, n);
        Some((&self.unit * p_pow(self.p, self.val)).mod_floor(&m))
    }

    /// Drops precision down to absolute precision `abs` (never raises it).
    pub fn with_abs_precision(&self, abs: i64) -> Padic {
        if self.is_zero() {
            return Padic::zero(self.p, self.val.min(abs));
        }
        if abs <= self.val {
            return Padic::zero(self.p, abs);
        }
        let prec = self.prec.min(abs - self.val);
        if prec == self.prec {
            return self.clone();
        }
        Padic::from_parts(self.p, self.val, self.unit.clone(), prec)
    }

    /// `v(self - other)`, or the absolute precision of the difference if it is
    /// zero to its precision. "Agree to k digits" means `agreement >= k`.
    pub fn agreement(&self, other: &Padic) -> i64 {
        (self - other).valuation_bound()
    }

    pub fn congruent(&self, other: &Padic, n: i64) -> bool {
        self.agreement(other) >= n
    }

    pub fn inv(&self) -> Result<Padic> {
        if self.is_zero() {
            return Err(indeterminate(format!(
                "inverse of a value that is zero to precision {}",
                self.val
            )));
        }
        let m = p_pow(self.p, self.prec);
        Ok(Padic {
            p: self.p,
            val: -self.val,
            unit: inverse_mod(&self.unit, &m),
            prec: self.prec,
        })
    }

    pub fn try_div(&self, other: &Padic) -> Result<Padic> {
        assert_eq!(self.p, other.p, "mixed primes");
        if other.is_zero() {
            return Err(indeterminate(format!(
                "division by a value that is zero to precision {}",
                other.val
            )));
        }
        if self.is_zero() {
            return Ok(Padic::zero(self.p, self.val - other.val));
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u64) -> Padic {
        if e == 0 {
            let prec = if self.is_zero() { self.val } else { self.prec };
            return Padic::one(self.p, prec.max(1));
        }
        let mut acc: Option<Padic> = None;
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        acc.expect("nonzero exponent")
    }

    /// Integer power, with negative exponents through the inverse.
    pub fn powi(&self, e: i64) -> Result<Padic> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Multiplication by an exact integer; relative precision is preserved.
    pub fn mul_int(&self, k: &BigInt) -> Padic {
        if k.is_zero() {
            return Padic::zero(self.p, self.abs_precision());
        }
        let (vk, uk) = split_valuation(k, self.p);
        if self.is_zero() {
            return Padic::zero(self.p, self.val + vk);
        }
        Padic::from_parts(self.p, self.val + vk, &self.unit * uk, self.prec)
    }

    pub fn mul_i64(&self, k: i64) -> Padic {
        self.mul_int(&BigInt::from(k))
    }

    /// Division by a nonzero exact integer; relative precision is preserved.
    pub fn div_int(&self, k: &BigInt) -> Padic {
        assert!(!k.is_zero(), "division by exact zero");
        let (vk, uk) = split_valuation(k, self.p);
        if self.is_zero() {
            return Padic::zero(self.p, self.val - vk);
        }
        let m = p_pow(self.p, self.prec);
        let inv = inverse_mod(&uk.mod_floor(&m), &m);
        Padic::from_parts(self.p, self.val - vk, &self.unit * inv, self.prec)
    }

    pub fn div_i64(&self, k: i64) -> Padic {
        self.div_int(&BigInt::from(k))
    }

    /// Multiplication by an exact rational; relative precision is preserved.
    pub fn mul_rational(&self, q: &BigRational) -> Padic {
        self.mul_int(q.numer()).div_int(q.denom())
    }

    /// Rebuilds a value from its (valuation, little-endian unit digits) form;
    /// an empty digit list means zero to absolute precision `val`.
    pub fn from_digits(p: u32, val: i64, digits: &[u32]) -> Padic {
        if digits.is_empty() {
            return Padic::zero(p, val);
        }
        let mut u = BigInt::zero();
        for d in digits.iter().rev() {
            u = u * p + *d;
        }
        Padic::from_parts(p, val, u, digits.len() as i64)
    }

    /// Lifts an integral value to its representative in `[0, p^n)` as a `u64`
    /// when that fits.
    pub(crate) fn residue_u64(&self, n: i64) -> Option<u64> {
        self.residue(n)?.to_u64()
    }
}

pub(crate) fn to_digits(n: &BigInt, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    let mut x = n.clone();
    let pb = BigInt::from(p);
    for _ in 0..len {
        let (q, r) = x.div_mod_floor(&pb);
        out.push(r.to_u32().unwrap_or(0));
        x = q;
    }
    out
}

impl<'a> Add<&'a Padic> for &'a Padic {
    type Output = Padic;

    fn add(self, o: &'a Padic) -> Padic {
        assert_eq!(self.p, o.p, "mixed primes");
        let abs = self.abs_precision().min(o.abs_precision());
        if self.is_zero() {
            return o.with_abs_precision(abs);
        }
        if o.is_zero() {
            return self.with_abs_precision(abs);
        }
        let m = self.val.min(o.val);
        if m >= abs {
            return Padic::zero(self.p, abs);
        }
        let p = self.p;
        let a = if self.val > m {
            &self.unit * p_pow(p, self.val - m)
        } else {
            self.unit.clone()
        };
        let b = if o.val > m {
            &o.unit * p_pow(p, o.val - m)
        } else {
            o.unit.clone()
        };
        Padic::from_parts(p, m, a + b, abs - m)
    }
}

impl<'a> Sub<&'a Padic> for &'a Padic {
    type Output = Padic;

    fn sub(self, o: &'a Padic) -> Padic {
        self + &(-o)
    }
}

impl Neg for &Padic {
    type Output = Padic;

    fn neg(self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        let m = p_pow(self.p, self.prec);
        Padic {
            p: self.p,
            val: self.val,
            unit: m - &self.unit,
            prec: self.prec,
        }
    }
}

impl Neg for Padic {
    type Output = Padic;

    fn neg(self) -> Padic {
        -&self
    }
}

impl<'a> Mul<&'a Padic> for &'a Padic {
    type Output = Padic;

    fn mul(self, o: &'a Padic) -> Padic {
        assert_eq!(self.p, o.p, "mixed primes");
        match (self.is_zero(), o.is_zero()) {
            (true, true) => Padic::zero(self.p, self.val + o.val),
            (true, false) => Padic::zero(self.p, self.val + o.val),
            (false, true) => Padic::zero(self.p, self.val + o.val),
            (false, false) => {
                let prec = self.prec.min(o.prec);
                let m = p_pow(self.p, prec);
                Padic {
                    p: self.p,
                    val: self.val + o.val,
                    unit: (&self.unit * &o.unit).mod_floor(&m),
                    prec,
                }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Padic> for Padic {
            type Output = Padic;
            fn $f(self, o: Padic) -> Padic {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Padic> for Padic {
            type Output = Padic;
            fn $f(self, o: &'a Padic) -> Padic {
                (&self).$f(o)
            }
        }
        impl<'a> $tr<Padic> for &'a Padic {
            type Output = Padic;
            fn $f(self, o: Padic) -> Padic {
                self.$f(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Padic {
    /// Prints `2 + 1*3 + 2*3^2 + ... + O(3^10)`, skipping zero digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        if self.is_zero() {
            return write!(f, "O({p}^{})", self.val);
        }
        let mut first = true;
        for (i, d) in self.digits().iter().enumerate() {
            if *d == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.val + i as i64;
            match e {
                0 => write!(f, "{d}")?,
                1 if *d == 1 => write!(f, "{p}")?,
                1 => write!(f, "{d}*{p}")?,
                _ if *d == 1 => write!(f, "{p}^{e}")?,
                _ => write!(f, "{d}*{p}^{e}")?,
            }
        }
        write!(f, " + O({p}^{})", self.abs_precision())
    }
}
