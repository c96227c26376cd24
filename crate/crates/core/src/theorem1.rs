//! The limit
//!
//! `A(ζ) = lim_s 1/(binom(2p^s, p^s) p^{2s}) Σ_{k<p^s} binom(2k, k) g^{2(p^s−1−k)}`,
//! `g = ζ + ζ^{−1}`, its Galois conjugates, the character sum that relates it
//! to `L_p(2, ω^{r−1})`, and the limit of central binomials as a Γ_p product.

use num_bigint::BigInt;

use crate::cyclotomic::CycloElement;
use crate::error::{consistency, indeterminate, usage, Result};
use crate::lfunc::lp_value;
use crate::padic::{ensure_odd_prime, gamma_int, p_pow, teichmuller_i64, Padic};
use crate::precision::Precision;

/// Partial values of a limit and how fast consecutive ones agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport<T> {
    pub indices: Vec<u32>,
    pub partials: Vec<T>,
    /// `cauchy[i]` is the valuation of `partials[i+1] − partials[i]` (v_π for
    /// cyclotomic values, v_p otherwise), capped by precision.
    pub cauchy: Vec<i64>,
    /// Whether `cauchy` is nondecreasing.
    pub stabilized: bool,
    /// Number of p-adic digits (per coordinate) on which the last two
    /// partial values agree.
    pub stabilized_digits: i64,
}

impl<T> ConvergenceReport<T> {
    fn new(
        indices: Vec<u32>,
        partials: Vec<T>,
        cauchy: Vec<i64>,
        digits_of: impl Fn(i64) -> i64,
    ) -> Self {
        let stabilized = cauchy.windows(2).all(|w| w[0] <= w[1]);
        let stabilized_digits = cauchy.last().map(|&c| digits_of(c)).unwrap_or(0);
        ConvergenceReport {
            indices,
            partials,
            cauchy,
            stabilized,
            stabilized_digits,
        }
    }

    /// Cauchy valuations for the steps ending at indices `from..=to`.
    pub fn cauchy_between(&self, from: u32, to: u32) -> Vec<i64> {
        self.indices
            .iter()
            .skip(1)
            .zip(&self.cauchy)
            .filter(|(s, _)| (from..=to).contains(*s))
            .map(|(_, c)| *c)
            .collect()
    }

    pub fn nondecreasing_between(&self, from: u32, to: u32) -> bool {
        self.cauchy_between(from, to)
            .windows(2)
            .all(|w| w[0] <= w[1])
    }
}

/// Number of p-adic digits of every coordinate fixed by `v_π ≥ k`.
fn digits_from_pi(p: u32, k: i64) -> i64 {
    // coordinate i needs i + (p−1)v ≥ k; the last one (i = p−2) is the weakest
    let pm1 = i64::from(p) - 1;
    let num = k - (pm1 - 1);
    if num <= 0 {
        0
    } else {
        (num + pm1 - 1) / pm1
    }
}

/// `X_s` with ζ replaced by `ζ^root`, coordinates known to absolute precision `w`.
fn partial_value(p: u32, s: u32, root: i64, w: i64) -> Result<CycloElement> {
    let ws = w + 2 * i64::from(s);
    let g = &CycloElement::zeta_pow(p, root, ws) + &CycloElement::zeta_pow(p, -root, ws);
    let g2 = &g * &g;
    let n = num_traits::pow(u64::from(p), s as usize);
    let mut sum = CycloElement::one(p, ws);
    let mut central = Padic::one(p, ws);
    for m in 1..n {
        central = central.mul_i64(2 * (2 * m as i64 - 1)).div_i64(m as i64);
        sum = (&sum * &g2).add_scalar(&central);
    }
    let scale = p_pow(p, 2 * i64::from(s));
    if let Some(i) = sum
        .coeffs()
        .iter()
        .position(|c| c.valuation_bound() < 2 * i64::from(s))
    {
        return Err(consistency(format!(
            "partial sum at p = {p}, s = {s}: coordinate {i} is not divisible by {p}^{}",
            2 * s
        )));
    }
    let top = central.mul_i64(2 * (2 * n as i64 - 1)).div_i64(n as i64);
    if top.valuation() != Some(0) {
        return Err(consistency(format!(
            "binom(2·{p}^{s}, {p}^{s}) is not a unit"
        )));
    }
    let x = sum.scale(&top.mul_int(&scale).inv()?);
    Ok(CycloElement::from_coeffs(
        p,
        x.coeffs().iter().map(|c| c.with_abs_precision(w)).collect(),
    ))
}

fn truncated(x: &CycloElement, abs: i64) -> CycloElement {
    CycloElement::from_coeffs(
        x.p(),
        x.coeffs()
            .iter()
            .map(|c| c.with_abs_precision(abs))
            .collect(),
    )
}

/// Partial values `X_1..X_{s_max}` at the working precision, built with the
/// primitive root `ζ^root`.
pub fn a_zeta_series(
    p: u32,
    s_max: u32,
    root: i64,
    prec: &Precision,
) -> Result<ConvergenceReport<CycloElement>> {
    ensure_odd_prime(p)?;
    if s_max < 2 {
        return Err(usage("s_max must be at least 2"));
    }
    if root.rem_euclid(i64::from(p)) == 0 {
        return Err(usage(format!(
            "ζ^{root} is not a primitive {p}-th root of unity"
        )));
    }
    let w = prec.working();
    let partials = (1..=s_max)
        .map(|s| partial_value(p, s, root, w))
        .collect::<Result<Vec<_>>>()?;
    let cauchy = partials.windows(2).map(|x| x[1].agreement(&x[0])).collect();
    Ok(ConvergenceReport::new(
        (1..=s_max).collect(),
        partials,
        cauchy,
        |k| digits_from_pi(p, k),
    ))
}

/// `A(ζ_p) ≈ X_{s_max}`, with coordinates truncated to the target precision.
pub fn a_zeta(
    p: u32,
    s_max: u32,
    prec: &Precision,
) -> Result<(CycloElement, ConvergenceReport<CycloElement>)> {
    let report = a_zeta_series(p, s_max, 1, prec)?;
    let last = report.partials.last().expect("s_max ≥ 2");
    Ok((truncated(last, prec.target()), report))
}

/// `A(ζ^i) = σ_i(A(ζ))` for `i = 1..p−1`.
pub fn a_conjugates(a: &CycloElement) -> Result<Vec<CycloElement>> {
    (1..a.p()).map(|i| a.galois_apply(i)).collect()
}

/// Both sides of the character-sum identity for `A`, and what was checked
/// along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremIICheck {
    pub p: u32,
    pub r: u32,
    /// `W/(G·D)` where `W = Σ_i ω(i)^{−r} σ_i((ζ² − ζ^{−2}) A)`, `G` the Gauss sum
    /// `Σ_i ω(i)^{−r} ζ^i` and `D = ω^r(4) − 2ω^r(2)`.
    pub lhs: Padic,
    /// `L_p(2, ω^{r−1})`.
    pub rhs: Padic,
    pub agreement: i64,
    pub d: Padic,
    /// Minimum over `j` of `v_π(σ_j(W) − ω^r(j) W)`.
    pub eigen_agreement: i64,
    pub report: ConvergenceReport<CycloElement>,
}

pub fn theorem_ii_check(p: u32, r: u32, s_max: u32, prec: &Precision) -> Result<TheoremIICheck> {
    ensure_odd_prime(p)?;
    let report = a_zeta_series(p, s_max, 1, prec)?;
    theorem_ii_from_series(report, r, prec)
}

/// [`theorem_ii_check`] reusing partial values from [`a_zeta_series`] (root 1),
/// so several `r` can share one computation of `A`.
pub fn theorem_ii_from_series(
    report: ConvergenceReport<CycloElement>,
    r: u32,
    prec: &Precision,
) -> Result<TheoremIICheck> {
    let a = report
        .partials
        .last()
        .ok_or_else(|| usage("empty convergence report"))?
        .clone();
    let p = a.p();
    if r == 0 || r >= p - 1 {
        return Err(usage(format!("r must satisfy 0 < r < {}", p - 1)));
    }
    let w = prec.working() + 2;
    let ri = i64::from(r);
    let omega = |i: i64| teichmuller_i64(i, p, w);

    let factor = &CycloElement::zeta_pow(p, 2, w) - &CycloElement::zeta_pow(p, -2, w);
    let b = &factor * &a;
    let mut sum = CycloElement::zero(p, w);
    let mut gauss = CycloElement::zero(p, w);
    for i in 1..i64::from(p) {
        let chi = omega(i)?.powi(-ri)?;
        sum = &sum + &b.galois_apply(i as u32)?.scale(&chi);
        gauss = &gauss + &CycloElement::zeta_pow(p, i, w).scale(&chi);
    }

    let mut eigen_agreement = i64::MAX;
    for j in 2..p {
        let image = sum.galois_apply(j)?;
        let expected = sum.scale(&omega(i64::from(j))?.pow(u64::from(r)));
        eigen_agreement = eigen_agreement.min(image.agreement(&expected));
    }

    let normalized = sum.try_div(&gauss)?;
    let rational = normalized
        .rational_part()
        .ok_or_else(|| consistency(format!("W/G is not rational at p = {p}, r = {r}")))?;
    let d = &omega(4)?.pow(u64::from(r)) - &omega(2)?.pow(u64::from(r)).mul_i64(2);
    if d.is_zero() {
        return Err(indeterminate(
            "ω^r(4) − 2ω^r(2) vanishes to working precision",
        ));
    }
    let lhs = rational.try_div(&d)?.with_abs_precision(prec.target());
    let rhs = lp_value(p, 2, ri - 1, prec)?.value;
    let agreement = lhs.agreement(&rhs);
    Ok(TheoremIICheck {
        p,
        r,
        lhs,
        rhs,
        agreement,
        d: d.with_abs_precision(prec.target()),
        eigen_agreement,
        report,
    })
}

/// `binom(2p^s, p^s)` for `s = 1..s_max` against the partial products
/// `P_K = 2 Π_{k≤K} Γ_p(2p^k)/Γ_p(p^k)²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomLimitCheck {
    /// Partial values are the binomials; Cauchy valuations compare
    /// consecutive binomials.
    pub report: ConvergenceReport<Padic>,
    pub products: Vec<Padic>,
    /// `v(binom(2p^s, p^s) − P_s)` for `s ≤ min(s_max, K_max)`.
    pub diagonal: Vec<i64>,
    /// `v(binom(2p^s, p^s) − P_{K_max})` for each `s`.
    pub against_limit: Vec<i64>,
}

pub fn binom_limit_check(
    p: u32,
    s_max: u32,
    k_max: u32,
    prec: &Precision,
) -> Result<BinomLimitCheck> {
    ensure_odd_prime(p)?;
    if s_max == 0 || k_max == 0 {
        return Err(usage("s_max and K_max must be positive"));
    }
    let w = prec.working();
    let mut binoms = Vec::with_capacity(s_max as usize);
    let mut central = Padic::one(p, w);
    let mut next = u64::from(p);
    let last = num_traits::pow(u64::from(p), s_max as usize);
    for m in 1..=last {
        central = central.mul_i64(2 * (2 * m as i64 - 1)).div_i64(m as i64);
        if m == next {
            binoms.push(central.clone());
            next *= u64::from(p);
        }
    }

    let mut products = Vec::with_capacity(k_max as usize);
    let mut acc = Padic::from_integer(2, p, w);
    let mut pk = u64::from(p);
    for _ in 0..k_max {
        let num = gamma_int(2 * pk, p, w);
        let den = gamma_int(pk, p, w);
        acc = (&acc * &num).try_div(&(&den * &den))?;
        products.push(acc.clone());
        pk *= u64::from(p);
    }

    let limit = products.last().expect("K_max ≥ 1");
    let diagonal = binoms
        .iter()
        .zip(&products)
        .map(|(b, q)| b.agreement(q))
        .collect();
    let against_limit = binoms.iter().map(|b| b.agreement(limit)).collect();
    let cauchy = binoms.windows(2).map(|x| x[1].agreement(&x[0])).collect();
    Ok(BinomLimitCheck {
        report: ConvergenceReport::new((1..=s_max).collect(), binoms, cauchy, |k| k),
        products,
        diagonal,
        against_limit,
    })
}

/// `binom(2p^s, p^s) = 2 Π_{k≤s} Γ_p(2p^k)/Γ_p(p^k)²` as an identity of integers,
/// used to double-check the modular computation at small `s`.
pub fn binom_product_exact(p: u32, s: u32) -> (BigInt, BigInt, BigInt) {
    let n = num_traits::pow(u64::from(p), s as usize);
    let binom = crate::hyper::central_binomial(n);
    let gamma = |m: u64| -> BigInt {
        let mut acc = BigInt::from(1);
        for j in 1..m {
            if j % u64::from(p) != 0 {
                acc *= j;
            }
        }
        if m % 2 == 1 {
            -acc
        } else {
            acc
        }
    };
    let mut num = BigInt::from(2);
    let mut den = BigInt::from(1);
    let mut pk = u64::from(p);
    for _ in 0..s {
        num *= gamma(2 * pk);
        let g = gamma(pk);
        den *= &g * &g;
        pk *= u64::from(p);
    }
    (binom, num, den)
}
