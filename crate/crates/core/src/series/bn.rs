//! The Taylor coefficients `b_n(t)` of `f(x) = Σ_{k≥1} binom(x,k) t^{k−1} / binom(2k,k)`
//! as exact power series in `t`, and the closed forms for `b_1`, `b_2`
//! after the substitution `t = (w − 1/w)²`, `w = 1 − z`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::numbers::{binomial, factorial, stirling_first};
use super::{li2_series, log_series, RationalSeries};
use crate::error::Result;

/// Truncation order used by the identity checks unless told otherwise.
pub const DEFAULT_IDENTITY_ORDER: usize = 30;

fn half_shift_recip(j: usize) -> BigRational {
    // 1/(j + 1/2)
    BigRational::new(BigInt::from(2), BigInt::from(2 * j + 1))
}

/// `b_n(t)` through `t^m` from the nested half-integer sum
///
/// `b_n(t) = 1/(t+4) · Σ_{0 ≤ j_1 < ⋯ < j_n} u^{j_n} / Π (j_i + 1/2)`, `u = t/(t+4)`,
///
/// grouping by `J = j_n` and accumulating the inner sums
/// `H_m(J) = H_m(J−1) + H_{m−1}(J−1)/(J + 1/2)`, `H_0 = 1`.
pub fn bn_series_direct(n: usize, m: usize) -> RationalSeries {
    let order = m as i64 + 1;
    if n == 0 {
        return RationalSeries::zero(order);
    }
    let four_plus_t = RationalSeries::from_ints(&[4, 1], order);
    let inv = four_plus_t.inverse().expect("4 + t is invertible");
    let u = inv.shift(1).truncate(order);

    // h[k] holds H_k(J − 1) while processing J.
    let mut h = vec![BigRational::zero(); n];
    h[0] = BigRational::one();
    let mut sum = RationalSeries::zero(order);
    let mut u_pow = RationalSeries::one(order);
    for j in 0..=m {
        let c = half_shift_recip(j);
        let weight = &h[n - 1] * &c;
        if !weight.is_zero() {
            sum = &sum + &u_pow.scale(&weight);
        }
        for k in (1..n).rev() {
            let add = &h[k - 1] * &c;
            h[k] += add;
        }
        u_pow = &u_pow * &u;
    }
    &inv * &sum
}

/// `b_n(t)` through `t^m` from the Stirling expansion
/// `binom(x, k) = Σ_n s(k, n) x^n / k!`, i.e.
/// `b_n(t) = Σ_{k ≥ n} s(k, n)/k! · t^{k−1}/binom(2k, k)`.
pub fn bn_series_stirling(n: usize, m: usize) -> RationalSeries {
    let order = m as i64 + 1;
    if n == 0 {
        return RationalSeries::zero(order);
    }
    let mut coeffs = vec![BigRational::zero(); m + 1];
    for k in n.max(1)..=m + 1 {
        let num = stirling_first(k, n);
        let den = factorial(k as u64) * binomial(2 * k as u64, k as u64);
        coeffs[k - 1] = BigRational::new(num, den);
    }
    RationalSeries::from_poly(coeffs, order)
}

/// `t(z) = (w − 1/w)²` with `w = 1 − z`, through `z^{order−1}`.
pub fn t_of_z(order: i64) -> RationalSeries {
    let w = RationalSeries::from_ints(&[1, -1], order);
    let d = &w - &w.inverse().expect("w is a unit");
    &d * &d
}

/// Pieces shared by both identities, computed two orders past `m` so the
/// division by `w² − w^{−2}` (which has a simple zero) still leaves order `m+1`.
struct Substitution {
    w: RationalSeries,
    t: RationalSeries,
    inv_denominator: RationalSeries,
}

impl Substitution {
    fn new(m: usize) -> Self {
        let order = m as i64 + 3;
        let w = RationalSeries::from_ints(&[1, -1], order);
        let w2 = &w * &w;
        let d = &w2 - &w2.inverse().expect("w is a unit");
        Substitution {
            t: t_of_z(order),
            inv_denominator: d.inverse().expect("w² − w^{-2} has a simple zero"),
            w,
        }
    }

    fn power(&self, k: i32) -> RationalSeries {
        let base = if k < 0 {
            self.w.inverse().expect("w is a unit")
        } else {
            self.w.clone()
        };
        base.pow(k.unsigned_abs())
    }
}

/// Index of the first coefficient (from `z^0`) where the two sides differ,
/// or `m` when they agree through `z^m`.
pub fn first_difference(lhs: &RationalSeries, rhs: &RationalSeries, m: usize) -> usize {
    (0..=m as i64)
        .find(|&e| lhs.coeff(e) != rhs.coeff(e))
        .map(|e| e as usize)
        .unwrap_or(m)
}

/// Checks `b_1((w − w^{−1})²) = (w² − w^{−2})^{−1} log(w²)` as power series in
/// `z = 1 − w`. Returns the agreement order (`m` if identical through `z^m`).
pub fn verify_b1_identity(m: usize) -> Result<usize> {
    let (lhs, rhs) = b1_identity_sides(m)?;
    Ok(first_difference(&lhs, &rhs, m))
}

/// Both sides of the `b_1` identity, for inspection.
pub fn b1_identity_sides(m: usize) -> Result<(RationalSeries, RationalSeries)> {
    let sub = Substitution::new(m);
    let lhs = bn_series_direct(1, m + 2).compose(&sub.t)?;
    let rhs = &sub.inv_denominator * &log_series(&sub.power(2))?;
    Ok((lhs, rhs))
}

/// Checks
/// `b_2((w − w^{−1})²) = (w² − w^{−2})^{−1} [Li₂(1−w²) − ½Li₂(1−w⁴) − Li₂(1−w^{−2}) + ½Li₂(1−w^{−4})]`.
/// Each `Li₂` is composed with an argument vanishing at `z = 0`.
pub fn verify_b2_identity(m: usize) -> Result<usize> {
    let (lhs, rhs) = b2_identity_sides(m)?;
    Ok(first_difference(&lhs, &rhs, m))
}

pub fn b2_identity_sides(m: usize) -> Result<(RationalSeries, RationalSeries)> {
    let sub = Substitution::new(m);
    let order = sub.w.order();
    let li2 = li2_series(order);
    let one = RationalSeries::one(order);
    let half = BigRational::new(1.into(), 2.into());
    let li2_at = |k: i32| -> Result<RationalSeries> { li2.compose(&(&one - &sub.power(k))) };
    let bracket =
        &(&li2_at(2)? - &li2_at(4)?.scale(&half)) - &(&li2_at(-2)? - &li2_at(-4)?.scale(&half));
    let rhs = &sub.inv_denominator * &bracket;
    let lhs = bn_series_direct(2, m + 2).compose(&sub.t)?;
    Ok((lhs, rhs))
}
