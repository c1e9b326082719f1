//! Harmonic numbers and the two-sided estimate
//! `1/(2n + 2/5) < H_n − ln n − γ < 1/(2n + 1/3)`.

use super::constants::EULER_GAMMA;

/// Largest `n` for which [`harmonic`] sums directly.
pub const DIRECT_LIMIT: u64 = 1_000_000;

/// Below this the excess `H_n − ln n − γ` is taken from the direct sum.
const EXCESS_SERIES_FROM: u64 = 1_000;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::default();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}

/// `H_n = 1 + 1/2 + ⋯ + 1/n`, compensated summation up to [`DIRECT_LIMIT`]
/// and `ln n + γ + (H_n − ln n − γ)` beyond it. `H_0 = 0`.
pub fn harmonic(n: u64) -> f64 {
    if n <= DIRECT_LIMIT {
        (1..=n).rev().map(|i| 1.0 / i as f64).collect::<CompensatedSum>().value()
    } else {
        (n as f64).ln() + EULER_GAMMA + harmonic_excess(n)
    }
}

/// `H_n − ln n − γ` with small relative error.
///
/// Computing this as a difference of `H_n` and `ln n` loses everything below
/// about `1e-15` absolutely, which is already more than the gap between the
/// excess and its upper bound near `n = 10⁴`. From `n = 1000` on the
/// Euler–Maclaurin expansion is used instead; it is enveloping, and the first
/// omitted term is below `1e-30` there.
pub fn harmonic_excess(n: u64) -> f64 {
    assert!(n >= 1);
    if n < EXCESS_SERIES_FROM {
        let h: CompensatedSum = (1..=n).rev().map(|i| 1.0 / i as f64).collect();
        let mut s = h;
        s.add(-(n as f64).ln());
        s.add(-EULER_GAMMA);
        return s.value();
    }
    let x = n as f64;
    let inv2 = 1.0 / (x * x);
    // 1/(2n) − 1/(12n²) + 1/(120n⁴) − 1/(252n⁶) + 1/(240n⁸)
    let tail = inv2 / 12.0 * (1.0 - inv2 / 10.0 * (1.0 - inv2 * 10.0 / 21.0 * (1.0 - inv2 * 21.0 / 20.0)));
    0.5 / x - tail
}

/// `(1/(2n + 2/5), 1/(2n + 1/3))`, the bracket for `H_n − ln n − γ`.
pub fn toth_bounds(n: u64) -> (f64, f64) {
    let x = n as f64;
    (1.0 / (2.0 * x + 0.4), 1.0 / (2.0 * x + 1.0 / 3.0))
}

/// True iff the bracket holds strictly at `n`.
pub fn toth_holds(n: u64) -> bool {
    let e = harmonic_excess(n);
    let (lo, hi) = toth_bounds(n);
    lo < e && e < hi
}

/// `Σ_{l=0}^{k−1} 1/(2l + 1)`.
pub fn odd_reciprocal_sum(k: u64) -> f64 {
    (0..k).rev().map(|l| 1.0 / (2 * l + 1) as f64).collect::<CompensatedSum>().value()
}

/// `H_{2k} − ½H_k − ½(ln 4k + γ)`, which equals `D_{2k} − ½D_k` with
/// `D_n = H_n − ln n − γ`, so it is evaluated that way.
pub fn half_odd_excess(k: u64) -> f64 {
    harmonic_excess(2 * k) - 0.5 * harmonic_excess(k)
}

/// Running harmonic numbers, for callers that need `H_n` along an
/// increasing sequence of `n`.
#[derive(Debug, Clone, Default)]
pub struct HarmonicCursor {
    n: u64,
    sum: CompensatedSum,
}

impl HarmonicCursor {
    pub fn new() -> Self {
        Self::default()
    }

    /// `H_n`; `n` must not decrease between calls.
    pub fn at(&mut self, n: u64) -> f64 {
        assert!(n >= self.n, "harmonic cursor moves forward only");
        if n > DIRECT_LIMIT {
            self.n = n;
            return harmonic(n);
        }
        while self.n < n {
            self.n += 1;
            self.sum.add(1.0 / self.n as f64);
        }
        self.sum.value()
    }
}
