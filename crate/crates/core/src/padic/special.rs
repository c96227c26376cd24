use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{p_pow, Padic};
use crate::error::{domain, indeterminate, usage, Result};
use crate::precision::{factorial_valuation, floor_log, TruncationCertificate};

/// Largest integer representative accepted by [`gamma`]; the product formula
/// is linear in the representative.
const GAMMA_LOOP_LIMIT: u64 = 200_000_000;

/// The Teichmüller lift ω(a) to absolute precision `n`: the (p−1)-th root of
/// unity congruent to `a` mod p, found by iterating `x ↦ x^p` until it is fixed.
pub fn teichmuller(a: &BigInt, p: u32, n: i64) -> Result<Padic> {
    let pb = BigInt::from(p);
    if a.mod_floor(&pb).is_zero() {
        return Err(domain(format!("teichmuller: {p} divides {a}")));
    }
    let n = n.max(1);
    let m = p_pow(p, n);
    let mut x = a.mod_floor(&m);
    for _ in 0..=n {
        let next = x.modpow(&pb, &m);
        if next == x {
            break;
        }
        x = next;
    }
    Ok(Padic::from_parts(p, 0, x, n))
}

/// ω(a) for a machine integer, a convenience used by the character code.
pub(crate) fn teichmuller_i64(a: i64, p: u32, n: i64) -> Result<Padic> {
    teichmuller(&BigInt::from(a), p, n)
}

/// p-adic logarithm on `1 + pZ_p`, by the series `Σ (−1)^{k+1} y^k / k` with
/// `y = x − 1`.
///
/// Terms with `k ≥ K` have valuation at least `k·v(y) − ⌊log_p k⌋`, which is
/// nondecreasing in `k`, so `K` is the first index where that reaches the
/// absolute precision of `x`.
pub fn log(x: &Padic) -> Result<(Padic, TruncationCertificate)> {
    log_scaled(x, 1)
}

pub(crate) fn log_scaled(x: &Padic, scale: usize) -> Result<(Padic, TruncationCertificate)> {
    let p = x.p();
    let one = Padic::one(p, x.abs_precision().max(1));
    let y = x - &one;
    let target = y.abs_precision();
    if y.is_zero() {
        return Ok((
            Padic::zero(p, target),
            TruncationCertificate::new(1, target, 0),
        ));
    }
    let m = y.valuation_bound();
    if m < 1 {
        return Err(domain(format!("log: v(x − 1) = {m} < 1")));
    }
    let bound = |k: usize| k as i64 * m - floor_log(u64::from(p), k as u64);
    let mut k_end = 1;
    while bound(k_end) < target {
        k_end += 1;
    }
    let k_end = k_end * scale.max(1);
    let mut sum = Padic::zero(p, target);
    let mut yk = y.clone();
    for k in 1..k_end {
        let term = yk.div_i64(k as i64);
        sum = if k % 2 == 1 {
            &sum + &term
        } else {
            &sum - &term
        };
        yk = &yk * &y;
    }
    Ok((sum, TruncationCertificate::new(k_end, bound(k_end), 0)))
}

/// p-adic exponential on `pZ_p` (p odd).
///
/// Uses `v_p(k!) ≤ ⌊(k−1)/(p−1)⌋`, so every dropped term has valuation at
/// least `k·v(x) − ⌊(k−1)/(p−1)⌋`, a nondecreasing bound.
pub fn exp(x: &Padic) -> Result<(Padic, TruncationCertificate)> {
    exp_scaled(x, 1)
}

pub(crate) fn exp_scaled(x: &Padic, scale: usize) -> Result<(Padic, TruncationCertificate)> {
    let p = x.p();
    let target = x.abs_precision();
    if x.is_zero() {
        return Ok((
            Padic::one(p, target.max(1)),
            TruncationCertificate::new(1, target, 0),
        ));
    }
    let m = x.valuation_bound();
    if m < 1 {
        return Err(domain(format!("exp: v(x) = {m} < 1")));
    }
    let pm1 = i64::from(p) - 1;
    let bound = |k: usize| k as i64 * m - (k as i64 - 1) / pm1;
    let mut k_end = 1;
    while bound(k_end) < target {
        k_end += 1;
    }
    let k_end = k_end * scale.max(1);
    let mut sum = Padic::one(p, target);
    let mut term = Padic::one(p, x.rel_precision());
    for k in 1..k_end {
        term = (&term * x).div_i64(k as i64);
        sum = &sum + &term;
    }
    debug_assert!(factorial_valuation(u64::from(p), k_end as u64) <= (k_end as i64 - 1) / pm1);
    Ok((sum, TruncationCertificate::new(k_end, bound(k_end), 0)))
}

/// ⟨a⟩ = a/ω(a), the projection of a unit onto `1 + pZ_p`.
pub fn angle(a: &Padic) -> Result<Padic> {
    if !a.is_unit() {
        return Err(domain("⟨a⟩ needs a p-adic unit"));
    }
    let w = teichmuller(a.unit(), a.p(), a.abs_precision())?;
    a.try_div(&w)
}

/// ⟨a⟩^k for an integer exponent, by repeated multiplication.
pub fn angle_pow_int(a: &Padic, k: i64) -> Result<Padic> {
    angle(a)?.powi(k)
}

/// ⟨a⟩^s = exp(s·log⟨a⟩) for a p-adic exponent `s`.
pub fn angle_pow(a: &Padic, s: &Padic) -> Result<Padic> {
    let (l, _) = log(&angle(a)?)?;
    let arg = s * &l;
    Ok(exp(&arg)?.0)
}

/// Morita's Γ_p at a non-negative integer, to absolute precision `n`:
/// `(−1)^m Π_{1 ≤ j < m, p ∤ j} j`.
pub fn gamma_int(m: u64, p: u32, n: i64) -> Padic {
    let n = n.max(1);
    let modulus = p_pow(p, n);
    let pu = u64::from(p);
    let prod = match modulus.to_u64() {
        Some(md) => {
            let md = u128::from(md);
            let mut acc: u128 = 1;
            for j in 1..m {
                if j % pu != 0 {
                    acc = acc * u128::from(j) % md;
                }
            }
            BigInt::from(acc)
        }
        None => {
            let mut acc = BigInt::one();
            for j in 1..m {
                if j % pu != 0 {
                    acc = (acc * j).mod_floor(&modulus);
                }
            }
            acc
        }
    };
    let signed = if m % 2 == 1 { -prod } else { prod };
    Padic::from_parts(p, 0, signed, n)
}

/// Γ_p(x) for integral `x`, through the integer representative of `x` modulo
/// `p^a` with `a = min(n, abs precision of x)`; Γ_p(x) mod p^a depends only
/// on x mod p^a.
pub fn gamma(x: &Padic, n: i64) -> Result<Padic> {
    if !x.is_integral() {
        return Err(domain("Γ_p needs an integral argument"));
    }
    let a = n.min(x.abs_precision());
    if a < 1 {
        return Err(indeterminate("Γ_p argument known to no digits"));
    }
    let rep = x
        .residue_u64(a)
        .filter(|m| *m <= GAMMA_LOOP_LIMIT)
        .ok_or_else(|| usage(format!("Γ_p representative mod {}^{a} too large", x.p())))?;
    Ok(gamma_int(rep, x.p(), a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn int(n: i64, p: u32, prec: i64) -> Padic {
        Padic::from_integer(n, p, prec)
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller_i64(1, 3, 8).unwrap(), Padic::one(3, 8));
        let m1 = teichmuller_i64(2, 3, 8).unwrap();
        assert_eq!(m1, -Padic::one(3, 8));
        assert!(m1.digits().iter().all(|d| *d == 2));
        let w = teichmuller_i64(2, 5, 2).unwrap();
        assert_eq!(w.unit(), &BigInt::from(7));
        assert!(matches!(
            teichmuller_i64(6, 3, 4),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn log_examples() {
        let (z, _) = log(&Padic::one(3, 10)).unwrap();
        assert!(z.is_zero());
        let (l4, _) = log(&int(4, 3, 3)).unwrap();
        assert_eq!(l4.residue(3), Some(BigInt::from(21)));
        let x = int(4, 3, 12);
        let (a, _) = log(&(&x * &x)).unwrap();
        let (b, _) = log(&x).unwrap();
        assert!(a.congruent(&b.mul_i64(2), 12));
        assert!(matches!(log(&int(2, 3, 5)), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn exp_examples() {
        let (e0, _) = exp(&Padic::zero(3, 8)).unwrap();
        assert_eq!(e0, Padic::one(3, 8));
        let x = int(4, 3, 8);
        let (l, _) = log(&x).unwrap();
        let (back, _) = exp(&l).unwrap();
        assert!(back.congruent(&x, 8));
        let (e3, _) = exp(&int(3, 3, 10)).unwrap();
        assert_eq!((&e3 - &Padic::one(3, 10)).valuation(), Some(1));
        assert!(exp(&int(2, 3, 5)).is_err());
    }

    #[test]
    fn angle_powers() {
        let four = int(4, 3, 12);
        assert_eq!(angle_pow_int(&four, 0).unwrap(), Padic::one(3, 12));
        let inv = angle_pow_int(&four, -1).unwrap();
        let quarter = Padic::from_rational(&BigRational::new(1.into(), 4.into()), 3, 12);
        assert!(inv.congruent(&quarter, 12));
        let via_exp = angle_pow(&four, &int(-1, 3, 12)).unwrap();
        assert!(via_exp.congruent(&quarter, 11));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_int(0, 3, 6), Padic::one(3, 6));
        assert_eq!(gamma_int(1, 3, 6), -Padic::one(3, 6));
        assert_eq!(gamma_int(3, 3, 6), int(-2, 3, 6));
        assert_eq!(gamma_int(6, 3, 6), int(40, 3, 6));
        let g = gamma(&int(-1, 3, 4), 4).unwrap();
        // −1 ≡ 80 mod 81
        assert_eq!(g, gamma_int(80, 3, 4));
    }
}
