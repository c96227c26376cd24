/// Number of guard digits carried beyond the requested precision by default.
pub const DEFAULT_GUARD_DIGITS: u32 = 6;

/// Requested output precision plus the knobs used to certify it.
///
/// `target` is the absolute p-adic precision of the reported result. Every
/// internal computation runs at `target + guard` digits. `truncation_scale`
/// multiplies every proven truncation index, so a run with scale 2 sums
/// strictly more terms than the proof requires and must reproduce the same
/// digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub target: u32,
    pub guard: u32,
    pub truncation_scale: u32,
}

impl Precision {
    pub fn new(target: u32) -> Self {
        Precision {
            target,
            guard: DEFAULT_GUARD_DIGITS,
            truncation_scale: 1,
        }
    }

    pub fn with_guard(mut self, guard: u32) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_truncation_scale(mut self, scale: u32) -> Self {
        self.truncation_scale = scale.max(1);
        self
    }

    /// The same request with doubled guard digits and doubled truncation.
    pub fn doubled(self) -> Self {
        Precision {
            target: self.target,
            guard: 2 * self.guard,
            truncation_scale: 2 * self.truncation_scale,
        }
    }

    /// Absolute precision used for intermediate values.
    pub fn working(&self) -> i64 {
        i64::from(self.target) + i64::from(self.guard)
    }

    pub fn target(&self) -> i64 {
        i64::from(self.target)
    }

    /// Applies the truncation scale to a proven truncation index.
    pub fn scale_index(&self, index: usize) -> usize {
        index * self.truncation_scale as usize
    }
}

/// Proof obligation attached to every evaluation of a convergent series.
///
/// All terms with index `>= truncation_index` were dropped, and each of them
/// has p-adic valuation at least `tail_bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationCertificate {
    pub truncation_index: usize,
    pub tail_bound: i64,
    pub guard_digits: u32,
}

impl TruncationCertificate {
    pub fn new(truncation_index: usize, tail_bound: i64, guard_digits: u32) -> Self {
        TruncationCertificate {
            truncation_index,
            tail_bound,
            guard_digits,
        }
    }
}

/// `floor(log_p(n))` for `n >= 1`.
pub(crate) fn floor_log(p: u64, n: u64) -> i64 {
    debug_assert!(n >= 1);
    let mut k = 0;
    let mut q = n;
    while q >= p {
        q /= p;
        k += 1;
    }
    k
}

/// Legendre's formula for `v_p(n!)`.
pub(crate) fn factorial_valuation(p: u64, n: u64) -> i64 {
    let mut v = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        v += q as i64;
    }
    v
}

/// Lower bound `slope·k + shift − weight·⌊log_p(scale·k + offset)⌋` on the
/// valuation of the k-th term of a series, used to choose truncation points.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogLinearBound {
    pub p: u64,
    pub slope: i64,
    pub shift: i64,
    pub weight: i64,
    pub scale: u64,
    pub offset: u64,
}

impl LogLinearBound {
    pub fn eval(&self, k: usize) -> i64 {
        let arg = self.scale * k as u64 + self.offset;
        let lg = if arg == 0 { 0 } else { floor_log(self.p, arg) };
        self.slope * k as i64 + self.shift - self.weight * lg
    }

    /// Smallest `K ≥ 1` with `eval(k) ≥ target` for every `k ≥ K`.
    ///
    /// For `k ∈ [p^e, p^{e+1})` the bound is at least
    /// `slope·p^e + shift − weight·(ℓ + 1 + e)` with `ℓ = ⌊log_p(scale + offset)⌋`;
    /// once that block minimum reaches `target` and keeps growing, only the
    /// indices below `p^e` need to be checked one by one.
    pub fn tail_start(&self, target: i64) -> usize {
        assert!(self.slope >= 1, "bound must grow linearly");
        let l = floor_log(self.p, (self.scale + self.offset).max(1));
        let mut e = 0i64;
        let mut pe: u64 = 1;
        loop {
            let block_min = self.slope * pe as i64 + self.shift - self.weight * (l + 1 + e);
            let growing = self.slope * (self.p as i64 - 1) * pe as i64 >= self.weight;
            if block_min >= target && growing {
                break;
            }
            e += 1;
            pe *= self.p;
        }
        let mut start = 1;
        for k in 1..pe as usize {
            if self.eval(k) < target {
                start = k + 1;
            }
        }
        start
    }
}
