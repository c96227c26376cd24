//! Mahler-series evaluation of the interpolated hypergeometric sums
//!
//! `F(x) = Σ_{k≥0} (−1)^k binom(x, k) Π(α_i)_k / Π(β_i)_k · t^k`
//!
//! and of `f(x) = Σ_{k≥1} binom(x, k) t^{k−1} / binom(2k, k)`, the Taylor
//! coefficients `b_n(t)` of `f` at `x = 0`, and exact rational reference values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, usage, Result};
use crate::padic::{ensure_odd_prime, valuation_of_integer, Padic};
use crate::precision::{floor_log, LogLinearBound, Precision, TruncationCertificate};

/// Parameters of an `rF_{r−1}` interpolation: `α_1..α_{r−1}`, `β_1..β_{r−1}`,
/// `t` and the prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricParams {
    pub alphas: Vec<BigRational>,
    pub betas: Vec<BigRational>,
    pub t: BigRational,
    pub p: u32,
}

/// `v_p(q)`, or `None` for zero.
pub fn rational_valuation(q: &BigRational, p: u32) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(valuation_of_integer(q.numer(), p) - valuation_of_integer(q.denom(), p))
}

fn is_nonpositive_integer(q: &BigRational) -> bool {
    q.is_integer() && !q.is_positive()
}

impl HypergeometricParams {
    pub fn new(
        alphas: Vec<BigRational>,
        betas: Vec<BigRational>,
        t: BigRational,
        p: u32,
    ) -> Result<Self> {
        ensure_odd_prime(p)?;
        if alphas.len() != betas.len() {
            return Err(usage(format!(
                "{} alphas but {} betas",
                alphas.len(),
                betas.len()
            )));
        }
        Ok(HypergeometricParams {
            alphas,
            betas,
            t,
            p,
        })
    }

    /// The conditions under which the Mahler series converges to a
    /// continuous function on Z_p with provable tail bounds.
    fn check_padic(&self) -> Result<()> {
        let p = self.p;
        for q in self.alphas.iter().chain(&self.betas) {
            if valuation_of_integer(q.denom(), p) > 0 {
                return Err(usage(format!("parameter {q} is not {p}-integral")));
            }
        }
        if let Some(b) = self.betas.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(domain(format!("β = {b} is a non-positive integer")));
        }
        match rational_valuation(&self.t, p) {
            Some(v) if v < 1 => Err(usage(format!("v_{p}(t) = {v} < 1"))),
            _ => Ok(()),
        }
    }
}

/// `Σ_{k=0}^{n} (−1)^k binom(n, k) Π(α_i)_k / Π(β_i)_k t^k`, exactly.
pub fn pfq_terminating_exact(params: &HypergeometricParams, n: u64) -> Result<BigRational> {
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..n {
        let kq = BigRational::from_integer(BigInt::from(k));
        let mut ratio = BigRational::new(-BigInt::from(n - k), BigInt::from(k + 1)) * &params.t;
        for (a, b) in params.alphas.iter().zip(&params.betas) {
            let bk = b + &kq;
            if bk.is_zero() {
                return Err(domain(format!("(β)_k vanishes for β = {b}")));
            }
            ratio = ratio * (a + &kq) / bk;
        }
        term *= ratio;
        sum += &term;
    }
    Ok(sum)
}

/// `Σ_{k<K} binom(x, k) c_k` where `binom(x, k)` comes from the integer
/// representative of `x` modulo a power of p large enough that every term is
/// known to absolute precision `abs` (or as far as `x` itself allows).
fn mahler_sum(x: &Padic, coeffs: &[BigRational], abs: i64) -> Result<Padic> {
    let p = x.p();
    if !x.is_integral() {
        return Err(domain("Mahler series need x in Z_p"));
    }
    let k_end = coeffs.len();
    let min_val = coeffs
        .iter()
        .filter_map(|c| rational_valuation(c, p))
        .min()
        .unwrap_or(0)
        .min(0);
    let lg = floor_log(u64::from(p), k_end.max(1) as u64);
    let avail = x.abs_precision().min(abs + lg - min_val);
    let rep = x.residue(avail).expect("integral");
    let mut binom = BigInt::one();
    let mut sum = Padic::zero(p, abs);
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            binom = binom * (&rep - (k - 1)) / k;
        }
        if c.is_zero() {
            continue;
        }
        let known = avail - floor_log(u64::from(p), k.max(1) as u64);
        let term = Padic::from_integer(binom.clone(), p, known).mul_rational(c);
        sum = &sum + &term;
    }
    Ok(sum.with_abs_precision(abs))
}

/// The p-adic interpolation `F(x)` of the terminating sums, for `x ∈ Z_p`.
///
/// Writing `β = a/b`, `(α)_k/(β)_k` has valuation at least
/// `−⌊log_p(|a| + (k−1)|b|)⌋` for p-integral `α`, so term `k` has valuation at
/// least `k·v(t) − Σ_j ⌊log_p(|a_j| + (k−1)|b_j|)⌋`.
pub fn eval_pfq_mahler(
    params: &HypergeometricParams,
    x: &Padic,
    prec: &Precision,
) -> Result<(Padic, TruncationCertificate)> {
    params.check_padic()?;
    let p = params.p;
    if x.p() != p {
        return Err(usage("x and the parameters use different primes"));
    }
    let w = prec.working();
    let k_end = match rational_valuation(&params.t, p) {
        None => 1,
        Some(vt) => {
            let spread = params
                .betas
                .iter()
                .map(|b| {
                    (b.numer().abs() + b.denom().abs())
                        .to_u64()
                        .unwrap_or(u64::MAX / 4)
                })
                .max()
                .unwrap_or(1);
            let bound = LogLinearBound {
                p: u64::from(p),
                slope: vt,
                shift: 0,
                weight: params.betas.len() as i64,
                scale: spread,
                offset: 0,
            };
            prec.scale_index(bound.tail_start(w))
        }
    };
    let mut coeffs = Vec::with_capacity(k_end);
    let mut c = BigRational::one();
    for k in 0..k_end {
        coeffs.push(c.clone());
        let kq = BigRational::from_integer(BigInt::from(k));
        c = -c * &params.t;
        for (a, b) in params.alphas.iter().zip(&params.betas) {
            c = c * (a + &kq) / (b + &kq);
        }
    }
    let value = mahler_sum(x, &coeffs, w)?;
    Ok((
        value.with_abs_precision(prec.target()),
        TruncationCertificate::new(k_end, w, prec.guard),
    ))
}

/// `f(n) = Σ_{k=1}^{n} binom(n, k) (−3)^{k−1} / binom(2k, k)`.
pub fn f_exact(n: u64) -> BigRational {
    let mut sum = BigRational::zero();
    let mut binom_n = BigInt::one();
    let mut central = BigInt::one();
    let mut t_pow = BigInt::one();
    for k in 1..=n {
        binom_n = binom_n * (n - k + 1) / k;
        central = central * (2 * (2 * k - 1)) / k;
        sum += BigRational::new(&binom_n * &t_pow, central.clone());
        t_pow *= -3;
    }
    sum
}

/// `f_1(n) = Σ_{k=0}^{n−1} binom(2k, k) / (n² binom(2n, n))`, for `n ≥ 1`.
pub fn f1_exact(n: u64) -> BigRational {
    assert!(n >= 1, "f_1 is defined for n ≥ 1");
    let mut central = BigInt::one();
    let mut sum = BigInt::zero();
    for k in 0..n {
        sum += &central;
        central = central * (2 * (2 * k + 1)) / (k + 1);
    }
    BigRational::new(sum, central * BigInt::from(n) * BigInt::from(n))
}

/// `f(x)` at a p-adic integer for rational `t` with `v_p(t) ≥ 1`.
///
/// `v_p(binom(2k, k))` is the number of carries when adding `k + k` in base p,
/// at most `⌊log_p(2k)⌋`, so term `k` has valuation at least
/// `(k−1)·v(t) − ⌊log_p(2k)⌋`.
pub fn eval_f_mahler(
    p: u32,
    t: &BigRational,
    x: &Padic,
    prec: &Precision,
) -> Result<(Padic, TruncationCertificate)> {
    ensure_odd_prime(p)?;
    let w = prec.working();
    let k_end = match rational_valuation(t, p) {
        Some(vt) if vt < 1 => return Err(usage(format!("v_{p}(t) = {vt} < 1"))),
        None => 2,
        Some(vt) => {
            let bound = LogLinearBound {
                p: u64::from(p),
                slope: vt,
                shift: -vt,
                weight: 1,
                scale: 2,
                offset: 0,
            };
            prec.scale_index(bound.tail_start(w))
        }
    };
    let mut coeffs = vec![BigRational::zero()];
    let mut central = BigInt::one();
    let mut t_pow = BigRational::one();
    for k in 1..k_end as u64 {
        central = central * (2 * (2 * k - 1)) / k;
        coeffs.push(&t_pow / BigRational::from_integer(central.clone()));
        t_pow *= t;
    }
    let value = mahler_sum(x, &coeffs, w)?;
    Ok((
        value.with_abs_precision(prec.target()),
        TruncationCertificate::new(k_end, w, prec.guard),
    ))
}

/// `b_n(t) = 1/(t+4) Σ_{J≥0} H_{n−1}(J−1)/(J + ½) · u^J` with `u = t/(t+4)`,
/// summed exactly up to the proven truncation point and reduced p-adically.
///
/// Each factor `1/(j + ½) = 2/(2j+1)` loses at most `⌊log_p(2J+1)⌋` digits, so
/// term `J` has valuation at least `J·v(u) − n⌊log_p(2J+1)⌋`.
pub fn bn_at(
    p: u32,
    n: usize,
    t: &BigRational,
    prec: &Precision,
) -> Result<(Padic, TruncationCertificate)> {
    ensure_odd_prime(p)?;
    if n == 0 {
        return Err(usage("b_n needs n ≥ 1"));
    }
    let four_plus_t = t + BigRational::from_integer(BigInt::from(4));
    if rational_valuation(&four_plus_t, p) != Some(0) {
        return Err(usage(format!(
            "t + 4 = {four_plus_t} is not a {p}-adic unit"
        )));
    }
    let u = t / &four_plus_t;
    let w = prec.working();
    let j_end = match rational_valuation(&u, p) {
        None => 1,
        Some(vu) if vu < 1 => return Err(usage(format!("v_{p}(t/(t+4)) = {vu} < 1"))),
        Some(vu) => {
            let bound = LogLinearBound {
                p: u64::from(p),
                slope: vu,
                shift: 0,
                weight: n as i64,
                scale: 2,
                offset: 1,
            };
            prec.scale_index(bound.tail_start(w))
        }
    };

    let mut h = vec![BigRational::zero(); n];
    h[0] = BigRational::one();
    let mut u_pow = BigRational::one();
    let mut sum = Padic::zero(p, w);
    for j in 0..j_end {
        let c = BigRational::new(BigInt::from(2), BigInt::from(2 * j + 1));
        let weight = &h[n - 1] * &c * &u_pow;
        if !weight.is_zero() {
            sum = &sum + &Padic::from_rational(&weight, p, w);
        }
        for k in (1..n).rev() {
            let add = &h[k - 1] * &c;
            h[k] += add;
        }
        u_pow *= &u;
    }
    let value = sum.mul_rational(&four_plus_t.recip());
    Ok((
        value.with_abs_precision(prec.target()),
        TruncationCertificate::new(j_end, w, prec.guard),
    ))
}

/// One line of the Monthly identity check: `v_3` of `Σ_{k<n} binom(2k, k)`
/// and of `n² binom(2n, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonthlyRow {
    pub n: u64,
    pub v_lhs: i64,
    pub v_rhs: i64,
    pub equal: bool,
}

pub fn verify_monthly(n_max: u64) -> Vec<MonthlyRow> {
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut central = BigInt::one();
    let mut sum = BigInt::zero();
    for n in 1..=n_max {
        let k = n - 1;
        sum += &central;
        central = central * (2 * (2 * k + 1)) / n;
        let v_lhs = valuation_of_integer(&sum, 3);
        let rhs = &central * BigInt::from(n).pow(2);
        let v_rhs = valuation_of_integer(&rhs, 3);
        rows.push(MonthlyRow {
            n,
            v_lhs,
            v_rhs,
            equal: v_lhs == v_rhs,
        });
    }
    rows
}

/// `binom(2n, n)`.
pub fn central_binomial(n: u64) -> BigInt {
    let mut c = BigInt::one();
    for k in 0..n {
        c = c * (2 * (2 * k + 1)) / (k + 1);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn plain(t: BigRational, p: u32) -> HypergeometricParams {
        HypergeometricParams::new(vec![], vec![], t, p).unwrap()
    }

    #[test]
    fn terminating_examples() {
        let t = q(5, 7);
        let one_minus = BigRational::one() - &t;
        assert_eq!(
            pfq_terminating_exact(&plain(t, 3), 2).unwrap(),
            &one_minus * &one_minus
        );
        let par = HypergeometricParams::new(vec![q(1, 1)], vec![q(3, 2)], q(1, 1), 3).unwrap();
        assert_eq!(pfq_terminating_exact(&par, 1).unwrap(), q(1, 3));
        assert_eq!(pfq_terminating_exact(&par, 0).unwrap(), q(1, 1));
        let bad = HypergeometricParams::new(vec![q(1, 1)], vec![q(-1, 1)], q(3, 1), 3).unwrap();
        assert!(matches!(
            pfq_terminating_exact(&bad, 3),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn mahler_binomial_theorem() {
        let prec = Precision::new(10);
        let (v, _) =
            eval_pfq_mahler(&plain(q(3, 1), 3), &Padic::from_integer(1, 3, 40), &prec).unwrap();
        assert_eq!(v, Padic::from_integer(-2, 3, 10));
        assert!(matches!(
            eval_pfq_mahler(&plain(q(1, 1), 3), &Padic::from_integer(1, 3, 40), &prec),
            Err(crate::Error::Usage(_))
        ));
    }

    #[test]
    fn f_values() {
        assert_eq!(f1_exact(1), q(1, 2));
        assert_eq!(f_exact(3), q(9, 20));
        assert_eq!(f_exact(2), q(1, 2));
        for n in 1..=20u64 {
            assert_eq!(
                f_exact(n),
                f1_exact(n) * BigRational::from_integer((n * n).into())
            );
        }
    }

    #[test]
    fn f_mahler_examples() {
        let prec = Precision::new(12);
        let t = q(-3, 1);
        let (z, _) = eval_f_mahler(3, &t, &Padic::zero(3, 40), &prec).unwrap();
        assert!(z.is_zero());
        let (one, _) = eval_f_mahler(3, &t, &Padic::from_integer(1, 3, 40), &prec).unwrap();
        assert_eq!(one.digits()[..3], [2, 1, 1]);
        let (three, _) = eval_f_mahler(3, &t, &Padic::from_integer(3, 3, 40), &prec).unwrap();
        assert!(three.congruent(&Padic::from_rational(&q(9, 20), 3, 12), 12));
    }

    #[test]
    fn bn_examples() {
        let (b1, _) = bn_at(3, 1, &q(-3, 1), &Precision::new(12)).unwrap();
        assert!(b1.is_zero() && b1.abs_precision() >= 12);
        let (b2, _) = bn_at(3, 2, &q(-3, 1), &Precision::new(10)).unwrap();
        assert_eq!(
            b2.leading_digits(10).unwrap(),
            vec![2, 1, 2, 0, 0, 0, 2, 1, 2, 2]
        );
        let (b25, _) = bn_at(5, 2, &q(-5, 1), &Precision::new(6)).unwrap();
        assert!(b25.is_zero() && b25.abs_precision() >= 6);
        assert!(matches!(
            bn_at(3, 2, &q(-4, 1), &Precision::new(6)),
            Err(crate::Error::Usage(_))
        ));
    }

    #[test]
    fn monthly_small() {
        let rows = verify_monthly(9);
        assert_eq!((rows[0].v_lhs, rows[0].v_rhs), (0, 0));
        assert_eq!((rows[2].v_lhs, rows[2].v_rhs), (2, 2));
        assert_eq!((rows[8].v_lhs, rows[8].v_rhs), (4, 4));
        assert!(rows.iter().all(|r| r.equal));
        assert_eq!(central_binomial(9), BigInt::from(48620));
    }
}
