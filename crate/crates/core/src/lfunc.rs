//! Kubota–Leopoldt p-adic L-functions `L_p(s, ω^j)` for powers of the
//! Teichmüller character.
//!
//! Values come from the convergent sum
//!
//! `L_p(s, χ) = 1/(p(s−1)) Σ_{a=1, p∤a}^{p} χ(a) ⟨a⟩^{1−s} Σ_{i≥0} binom(1−s, i) (p/a)^i B_i`
//!
//! and are checked against generalized Bernoulli numbers at `s = 1 − n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, indeterminate, usage, Result};
use crate::padic::{
    angle, ensure_odd_prime, exp_scaled, log_scaled, teichmuller_i64, valuation_of_integer, Padic,
};
use crate::precision::{floor_log, Precision, TruncationCertificate};
use crate::series::{bernoulli, bernoulli_poly};

/// The character `ω^j`, with `j` reduced mod `p − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OmegaCharacter {
    p: u32,
    j: u32,
}

impl OmegaCharacter {
    pub fn new(p: u32, j: i64) -> Result<Self> {
        ensure_odd_prime(p)?;
        let j = j.rem_euclid(i64::from(p) - 1) as u32;
        Ok(OmegaCharacter { p, j })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.j
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    /// `ω^j(−1) = (−1)^j`.
    pub fn is_even(&self) -> bool {
        self.j.is_multiple_of(2)
    }

    pub fn conductor(&self) -> u32 {
        if self.is_trivial() {
            1
        } else {
            self.p
        }
    }

    /// `ω^{j+k}`.
    pub fn twist(&self, k: i64) -> Self {
        let m = i64::from(self.p) - 1;
        OmegaCharacter {
            p: self.p,
            j: (i64::from(self.j) + k).rem_euclid(m) as u32,
        }
    }

    /// `ω^j(a)` to absolute precision `n`. At multiples of p this is 0, except
    /// for the trivial character, whose conductor is 1.
    pub fn eval(&self, a: i64, n: i64) -> Padic {
        if a.rem_euclid(i64::from(self.p)) == 0 {
            return if self.is_trivial() {
                Padic::one(self.p, n.max(1))
            } else {
                Padic::zero(self.p, n)
            };
        }
        teichmuller_i64(a, self.p, n.max(1))
            .expect("p does not divide a")
            .pow(u64::from(self.j))
    }
}

/// The argument `s` of an L-function: an exact integer or a p-adic integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LArgument {
    Integer(i64),
    Padic(Padic),
}

impl From<i64> for LArgument {
    fn from(s: i64) -> Self {
        LArgument::Integer(s)
    }
}

impl From<Padic> for LArgument {
    fn from(s: Padic) -> Self {
        LArgument::Padic(s)
    }
}

/// A computed L-value with its certificate. `pole_loss = v_p(s − 1)` is the
/// number of digits given up to the division by `s − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LValue {
    pub value: Padic,
    pub certificate: TruncationCertificate,
    pub pole_loss: i64,
}

/// Sign used for `B_1` inside the convergent sum. Only `Minus` is correct;
/// the other exists so tests can show the interpolation check notices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum B1Sign {
    Minus,
    Plus,
}

/// `L_p(s, ω^j)` to absolute precision `prec.target`.
pub fn lp_value(p: u32, s: impl Into<LArgument>, j: i64, prec: &Precision) -> Result<LValue> {
    lp_value_with(
        p,
        &s.into(),
        OmegaCharacter::new(p, j)?,
        prec,
        B1Sign::Minus,
    )
}

/// The p-adic zeta function `ζ_p(s) = L_p(s, ω^0)`.
pub fn zeta_p(p: u32, s: impl Into<LArgument>, prec: &Precision) -> Result<LValue> {
    lp_value(p, s, 0, prec)
}

fn bernoulli_signed(i: usize, sign: B1Sign) -> BigRational {
    let b = bernoulli(i);
    if i == 1 && sign == B1Sign::Plus {
        -b
    } else {
        b
    }
}

/// `⟨a⟩^e` for a p-adic exponent, scaling both series truncations.
fn angle_pow_scaled(a: &Padic, e: &Padic, scale: usize) -> Result<Padic> {
    let (l, _) = log_scaled(&angle(a)?, scale)?;
    Ok(exp_scaled(&(e * &l), scale)?.0)
}

pub(crate) fn lp_value_with(
    p: u32,
    s: &LArgument,
    chi: OmegaCharacter,
    prec: &Precision,
    sign: B1Sign,
) -> Result<LValue> {
    ensure_odd_prime(p)?;
    let scale = prec.truncation_scale.max(1) as usize;
    let loss = match s {
        LArgument::Integer(1) => {
            return Err(domain(if chi.is_trivial() {
                "L_p(s, ω^0) has a pole at s = 1".to_string()
            } else {
                "the convergent sum is not defined at s = 1".to_string()
            }))
        }
        LArgument::Integer(s) => valuation_of_integer(&BigInt::from(s - 1), p),
        LArgument::Padic(x) => {
            if !x.is_integral() {
                return Err(domain("L_p needs s in Z_p"));
            }
            match (x - &Padic::one(p, x.abs_precision())).valuation() {
                Some(v) => v,
                None => return Err(indeterminate("s − 1 vanishes to the precision of s")),
            }
        }
    };

    // The a-sum is divided by p(s − 1), so it is needed to `t` digits.
    let t = prec.working() + 1 + loss;
    // Terms with i ≥ J have valuation ≥ i − 1 ≥ t: binom(1 − s, i) is integral,
    // v_p(B_i) ≥ −1 and v_p((p/a)^i) = i.
    let j_end = prec.scale_index((t + 1) as usize);

    // binom(1 − s, i) with the absolute precision it is known to.
    let mut binoms: Vec<Padic> = Vec::with_capacity(j_end);
    match s {
        LArgument::Integer(s) => {
            let x = BigInt::from(1 - s);
            let mut b = BigInt::one();
            for i in 0..j_end {
                if i > 0 {
                    b = b * (&x - (i - 1)) / i;
                }
                binoms.push(Padic::from_integer(b.clone(), p, t));
            }
        }
        LArgument::Padic(x) => {
            let avail = x
                .abs_precision()
                .min(t + 1 + floor_log(u64::from(p), j_end as u64));
            let one_minus = &Padic::one(p, avail) - x;
            let rep = one_minus.residue(avail).expect("integral");
            let mut b = BigInt::one();
            for i in 0..j_end {
                if i > 0 {
                    b = b * (&rep - (i - 1)) / i;
                }
                let known = avail - floor_log(u64::from(p), i.max(1) as u64);
                binoms.push(Padic::from_integer(b.clone(), p, known.min(t)));
            }
        }
    }
    let pb = BigInt::from(p);
    let coeffs: Vec<BigRational> = (0..j_end)
        .map(|i| {
            bernoulli_signed(i, sign) * BigRational::from_integer(num_traits::pow(pb.clone(), i))
        })
        .collect();

    let mut total = Padic::zero(p, t);
    for a in 1..i64::from(p) {
        let a_inv = BigRational::new(BigInt::one(), BigInt::from(a));
        let mut a_pow = BigRational::one();
        let mut inner = Padic::zero(p, t);
        for i in 0..j_end {
            let c = &coeffs[i] * &a_pow;
            if !c.is_zero() {
                inner = &inner + &binoms[i].mul_rational(&c);
            }
            a_pow *= &a_inv;
        }
        let a_padic = Padic::from_integer(a, p, t + 1);
        let twist = match s {
            LArgument::Integer(s) => angle(&a_padic)?.powi(1 - s)?,
            LArgument::Padic(x) => {
                let e = &Padic::one(p, x.abs_precision()) - x;
                angle_pow_scaled(&a_padic, &e, scale)?
            }
        };
        let term = &(&chi.eval(a, t + 1) * &twist) * &inner;
        total = &total + &term;
    }

    let value = match s {
        LArgument::Integer(s) => total.div_int(&(BigInt::from(p) * BigInt::from(s - 1))),
        LArgument::Padic(x) => {
            let d = (x - &Padic::one(p, x.abs_precision())).mul_i64(i64::from(p));
            total.try_div(&d)?
        }
    };
    Ok(LValue {
        value: value.with_abs_precision(prec.target()),
        certificate: TruncationCertificate::new(j_end, j_end as i64 - 2 - loss, prec.guard),
        pole_loss: loss,
    })
}

/// `B_{n,χ}` for `χ = ω^j` to absolute precision `abs`.
fn gen_bernoulli_abs(n: usize, chi: OmegaCharacter, abs: i64) -> Padic {
    let p = chi.p();
    if chi.is_trivial() {
        return Padic::from_rational(&bernoulli(n), p, abs);
    }
    let pb = BigInt::from(p);
    let scale = BigRational::from_integer(num_traits::pow(pb.clone(), n - 1));
    let mut sum = Padic::zero(p, abs);
    for a in 1..i64::from(p) {
        let x = BigRational::new(BigInt::from(a), pb.clone());
        let r = &scale * bernoulli_poly(n, &x);
        let term = &chi.eval(a, abs + 2) * &Padic::from_rational(&r, p, abs);
        sum = &sum + &term;
    }
    sum
}

/// The generalized Bernoulli number `B_{n,ω^j} = F^{n−1} Σ_{a=1}^{F} ω^j(a) B_n(a/F)`,
/// `F` the conductor.
pub fn gen_bernoulli(n: usize, j: i64, p: u32, prec: &Precision) -> Result<Padic> {
    if n == 0 {
        return Err(usage("gen_bernoulli needs n ≥ 1"));
    }
    let chi = OmegaCharacter::new(p, j)?;
    Ok(gen_bernoulli_abs(n, chi, prec.working()).with_abs_precision(prec.target()))
}

/// `−(1 − χ(p) p^{n−1}) B_{n,χ}/n` with `χ = ω^{j−n}`, the value `L_p(1 − n, ω^j)`
/// should take.
pub fn lp_at_negative_integer(p: u32, n: usize, j: i64, prec: &Precision) -> Result<Padic> {
    if n == 0 {
        return Err(usage("interpolation needs n ≥ 1"));
    }
    let chi = OmegaCharacter::new(p, j)?.twist(-(n as i64));
    let extra = floor_log(u64::from(p), n as u64) + 2;
    let b = gen_bernoulli_abs(n, chi, prec.working() + extra);
    let mut euler = BigRational::one();
    if chi.is_trivial() {
        euler -= BigRational::from_integer(num_traits::pow(BigInt::from(p), n - 1));
    }
    let factor = -euler / BigRational::from_integer(BigInt::from(n));
    Ok(b.mul_rational(&factor).with_abs_precision(prec.target()))
}

/// For each `n`, the agreement valuation between `lp_value(p, 1 − n, j)` and
/// the generalized-Bernoulli interpolation value.
pub fn lp_interpolation_check(
    p: u32,
    j: i64,
    ns: &[usize],
    prec: &Precision,
) -> Result<Vec<(usize, i64)>> {
    interpolation_with(p, j, ns, prec, B1Sign::Minus)
}

pub(crate) fn interpolation_with(
    p: u32,
    j: i64,
    ns: &[usize],
    prec: &Precision,
    sign: B1Sign,
) -> Result<Vec<(usize, i64)>> {
    let chi = OmegaCharacter::new(p, j)?;
    ns.iter()
        .map(|&n| {
            if n == 0 {
                return Err(usage("interpolation needs n ≥ 1"));
            }
            let lhs = lp_value_with(p, &LArgument::Integer(1 - n as i64), chi, prec, sign)?.value;
            let rhs = lp_at_negative_integer(p, n, j, prec)?;
            Ok((n, lhs.agreement(&rhs)))
        })
        .collect()
}
