//! The Euler–Mascheroni constant and the constants in the stability bound
//! and the interval example.

use std::f64::consts::PI;

use serde::Serialize;

use super::harmonic::CompensatedSum;

/// γ to 30 digits; `f64` keeps the first 17.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// Truncation point of `Σ ln m / (4m² − 1)`.
pub const LOG_SERIES_TERMS: u64 = 1_000_000;

/// A value together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certified {
    pub value: f64,
    pub error_bound: f64,
}

/// `c₀ = 2⁻⁴ e^{−γ} π`.
pub fn c0() -> f64 {
    PI * (-EULER_GAMMA).exp() / 16.0
}

/// `∫_N^∞ ln x / (4x² − 1) dx` with a bound on the error of the estimate.
///
/// Splits `1/(4x² − 1) = 1/(4x²) + 1/(4x²(4x² − 1))`. The first part
/// integrates to `(ln N + 1)/(4N)`; the second lies in
/// `[0, (3 ln N + 1)/(108 N³)]` because `4x² − 1 ≥ 3x²`.
pub(crate) fn log_tail_integral(n: f64) -> Certified {
    let main = (n.ln() + 1.0) / (4.0 * n);
    let rest = (3.0 * n.ln() + 1.0) / (108.0 * n * n * n);
    Certified { value: main + rest / 2.0, error_bound: rest / 2.0 }
}

/// `∫_N^∞ dx / (4x² − 1) = ¼ ln((2N + 1)/(2N − 1))`.
pub(crate) fn reciprocal_tail_integral(n: f64) -> f64 {
    0.25 * (2.0 / (2.0 * n - 1.0)).ln_1p()
}

/// `S = Σ_{m≥2} ln m / (4m² − 1)` summed to `m_max`, with the rest estimated
/// by the midpoint of `∫_{m_max+1}^∞` and `∫_{m_max}^∞` (the summand is
/// decreasing, so the tail lies between them).
pub fn log_series(m_max: u64) -> Certified {
    assert!(m_max >= 2);
    let f = |m: f64| m.ln() / (4.0 * m * m - 1.0);
    let partial: CompensatedSum = (2..=m_max).rev().map(|m| f(m as f64)).collect();
    let n = m_max as f64;
    let upper = log_tail_integral(n);
    let lower = log_tail_integral(n + 1.0);
    let tail = 0.5 * (upper.value + lower.value);
    let bracket = 0.5 * (upper.value - lower.value) + upper.error_bound.max(lower.error_bound);
    // Rounding in the compensated partial sum is a few ulps of the total.
    let rounding = 8.0 * f64::EPSILON * partial.value();
    Certified { value: partial.value() + tail, error_bound: bracket + rounding }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantsTable {
    pub euler_gamma: f64,
    pub c0: f64,
    pub c1: f64,
    pub c1_over_c0: f64,
    /// Certified absolute error of `c1`.
    pub c1_error_bound: f64,
    /// `Σ_{m≥1} ln m / (4m² − 1)`.
    pub log_series: f64,
}

impl ConstantsTable {
    /// `c₁ = 2⁻² e^{−γ} Π_{m≥1} m^{−2/(4m²−1)} = 2⁻² e^{−γ} exp(−2S)`.
    pub fn compute() -> Self {
        let s = log_series(LOG_SERIES_TERMS);
        let product = (-2.0 * s.value).exp();
        let c1 = 0.25 * (-EULER_GAMMA).exp() * product;
        // d c1 / dS = −2 c1, plus a few ulps.
        let c1_error_bound = 2.0 * c1 * s.error_bound * 1.01 + 4.0 * f64::EPSILON * c1;
        let c0 = c0();
        Self {
            euler_gamma: EULER_GAMMA,
            c0,
            c1,
            c1_over_c0: c1 / c0,
            c1_error_bound,
            log_series: s.value,
        }
    }
}

/// Renders `x` truncated (not rounded) to `digits` decimals.
pub fn truncated_digits(x: f64, digits: usize) -> String {
    let scale = 10f64.powi(digits as i32);
    format!("{:.*}", digits, (x * scale).floor() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c0_value() {
        assert!((c0() - 0.110_243).abs() < 1e-6);
    }

    #[test]
    fn reciprocal_tail_matches_direct_sum_bracket() {
        let n = 50u64;
        let tail: f64 = (n + 1..2_000_000).map(|m| 1.0 / (4.0 * (m * m) as f64 - 1.0)).sum();
        assert!(reciprocal_tail_integral((n + 1) as f64) <= tail + 1e-6);
        assert!(tail <= reciprocal_tail_integral(n as f64));
    }

    #[test]
    fn log_series_estimates_are_consistent() {
        let coarse = log_series(10_000);
        let fine = log_series(LOG_SERIES_TERMS);
        assert!(fine.error_bound < 1e-10);
        assert!((coarse.value - fine.value).abs() <= coarse.error_bound + fine.error_bound);
    }

    #[test]
    fn c1_is_certified() {
        let t = ConstantsTable::compute();
        assert!(t.c1_error_bound < 1e-9);
        assert!((t.c1_over_c0 * t.c0 - t.c1).abs() < 1e-15);
    }

    #[test]
    fn c1_over_c0_matches_the_alternate_product() {
        // 2 Π (4m² − 1) / (4 m^{2·4m²/(4m²−1)}), truncated; the Wallis factor
        // converges like 1/(8M), which is corrected for here.
        let t = ConstantsTable::compute();
        let m_max = 200_000u64;
        let log_prod: f64 = (1..=m_max)
            .map(|m| {
                let m = m as f64;
                let q = 4.0 * m * m;
                (q - 1.0).ln() - 4f64.ln() - 2.0 * q / (q - 1.0) * m.ln()
            })
            .sum();
        let tail = -log_tail_integral(m_max as f64 + 0.5).value * 2.0 - 1.0 / (4.0 * m_max as f64);
        let alt = 2.0 * (log_prod + tail).exp();
        assert!((alt - t.c1_over_c0).abs() < 1e-6, "{alt} vs {}", t.c1_over_c0);
    }

    #[test]
    fn truncation_formatting() {
        assert_eq!(truncated_digits(0.1109, 3), "0.110");
        assert_eq!(truncated_digits(0.0879, 3), "0.087");
    }
}
