use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{p_pow, Padic};
use crate::error::{usage, Result};

/// Finds `a/b` with `|a|, |b| ≤ h`, `p ∤ b` and `a ≡ b·x mod p^N`, where `N`
/// is the absolute precision of `x`.
///
/// Runs the half-extended Euclidean algorithm on `(p^N, x mod p^N)` and stops
/// at the first remainder `≤ h`; when `p^N > 2h²` that remainder is the only
/// candidate. A value of negative valuation is shifted to a unit first and
/// the power of p divided back out, so its denominator carries that power.
pub fn rational_recognize(x: &Padic, h: &BigInt) -> Result<Option<BigRational>> {
    let p = x.p();
    let shift = (-x.valuation_bound()).max(0);
    let y = if shift > 0 {
        x.mul_int(&p_pow(p, shift))
    } else {
        x.clone()
    };
    let n = y.abs_precision();
    let modulus = p_pow(p, n.max(0));
    if modulus <= BigInt::from(2) * h * h {
        return Err(usage(format!(
            "rational_recognize: {p}^{n} is not larger than 2·H² for H = {h}"
        )));
    }
    let r = y.residue(n).expect("integral after shift");

    let mut r0 = modulus.clone();
    let mut r1 = r;
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while &r1 > h {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *h || !r1.gcd(&t1).is_one() {
        return Ok(None);
    }
    if (&t1 % BigInt::from(p)).is_zero() {
        return Ok(None);
    }
    let mut q = BigRational::new(r1, t1);
    if shift > 0 {
        q /= BigRational::from_integer(p_pow(p, shift));
        if q.numer().abs() > *h || q.denom().abs() > *h {
            return Ok(None);
        }
    }
    Ok(Some(q))
}
