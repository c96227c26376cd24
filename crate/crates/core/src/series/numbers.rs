use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

// Append-only tables: entries are never modified after they are pushed, and
// writers hold the lock only while extending.
static BERNOULLI: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
static STIRLING: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Bernoulli number `B_m` with the `t/(e^t − 1)` convention, so `B_1 = −1/2`.
pub fn bernoulli(m: usize) -> BigRational {
    let table = BERNOULLI.get_or_init(|| RwLock::new(vec![BigRational::one()]));
    if let Some(b) = table.read().expect("bernoulli table poisoned").get(m) {
        return b.clone();
    }
    let mut t = table.write().expect("bernoulli table poisoned");
    while t.len() <= m {
        let n = t.len();
        // Σ_{k=0}^{n} binom(n+1, k) B_k = 0
        let mut acc = BigRational::zero();
        for (k, bk) in t.iter().enumerate() {
            if !bk.is_zero() {
                acc += BigRational::from_integer(binomial(n as u64 + 1, k as u64)) * bk;
            }
        }
        let bn = -acc / BigRational::from_integer(BigInt::from(n + 1));
        t.push(bn);
    }
    t[m].clone()
}

/// Bernoulli polynomial `B_n(x) = Σ_k binom(n, k) B_k x^{n−k}`.
pub fn bernoulli_poly(n: usize, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut xp = BigRational::one();
    for j in 0..=n {
        // j = n − k
        let k = n - j;
        let bk = bernoulli(k);
        if !bk.is_zero() {
            acc += BigRational::from_integer(binomial(n as u64, k as u64)) * bk * &xp;
        }
        xp *= x;
    }
    acc
}

/// Signed Stirling number of the first kind `s(k, n)`, defined by
/// `x(x−1)⋯(x−k+1) = Σ_n s(k, n) x^n`.
pub fn stirling_first(k: usize, n: usize) -> BigInt {
    if n > k {
        return BigInt::zero();
    }
    let table = STIRLING.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]));
    if let Some(row) = table.read().expect("stirling table poisoned").get(k) {
        return row[n].clone();
    }
    let mut t = table.write().expect("stirling table poisoned");
    while t.len() <= k {
        let m = t.len() - 1;
        let prev = &t[m];
        // s(m+1, j) = s(m, j−1) − m·s(m, j)
        let row: Vec<BigInt> = (0..=m + 1)
            .map(|j| {
                let left = if j >= 1 {
                    prev[j - 1].clone()
                } else {
                    BigInt::zero()
                };
                let right = if j <= m { &prev[j] * m } else { BigInt::zero() };
                left - right
            })
            .collect();
        t.push(row);
    }
    t[k][n].clone()
}
