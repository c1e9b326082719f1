//! `‖1_{1,…,k}‖_{B(Z)} = ∫₀¹ |sin πkθ| / sin πθ dθ`, computed by quadrature
//! and, independently, from Szegő's series.

use std::f64::consts::PI;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use serde::Serialize;

use super::constants::{log_tail_integral, Certified, reciprocal_tail_integral, ConstantsTable, EULER_GAMMA};
use super::harmonic::{CompensatedSum, HarmonicCursor};
use crate::error::{Error, Result};

/// Gauss–Legendre order used on each arch.
pub const QUADRATURE_ORDER: usize = 64;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(QUADRATURE_ORDER.try_into().expect("nonzero order")))
}

/// Integrates over each arch `[j/k, (j+1)/k]` separately, where the
/// integrand is analytic. With `θ = (j + t)/k` the numerator is `sin πt`
/// exactly, and the denominator uses `sin πθ = sin π(1 − θ)` on the right
/// half so neither factor loses precision.
pub fn interval_norm_quadrature(k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Precondition("interval length must be at least 1".into()));
    }
    if k == 1 {
        return Ok(1.0);
    }
    let kf = k as f64;
    let rule = rule();
    let total: CompensatedSum = (0..k)
        .map(|j| {
            let j = j as f64;
            rule.integrate(0.0, 1.0, |t| {
                let num = j + t;
                let den = if 2.0 * num <= kf { num } else { kf - num };
                (PI * t).sin() / (PI * den / kf).sin()
            }) / kf
        })
        .collect();
    Ok(total.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesEstimate {
    pub value: f64,
    pub error_bound: f64,
    /// Number of series terms summed explicitly.
    pub terms: u64,
}

/// Smallest tolerance [`szego_series`] accepts.
pub const MIN_SERIES_TOL: f64 = 1e-13;

/// `16/π² Σ_{m≥1} (H_{2mk} − ½H_{mk}) / (4m² − 1)` with certified error below `tol`.
///
/// The first `N` terms are summed exactly. For the rest, each summand is
/// `(α + ½ ln m)/(4m² − 1) + r(mk)/(4m² − 1)` with `α = ½(ln 4k + γ)` and
/// `0 < r(n) < 1/(32n²)`. The first piece is decreasing in `m`, so its tail
/// lies between `∫_{N+1}^∞` and `∫_N^∞`, both available in closed form; the
/// second is below `1/(288 k² N³)`. Both are added at their midpoints and
/// `N` is doubled until the half-widths plus rounding fall under `tol`.
pub fn szego_series(k: u64, tol: f64) -> Result<SeriesEstimate> {
    if k == 0 {
        return Err(Error::Precondition("interval length must be at least 1".into()));
    }
    if tol.is_nan() || tol < MIN_SERIES_TOL {
        return Err(Error::Precondition(format!("tolerance must be at least {MIN_SERIES_TOL:e}")));
    }
    let scale = 16.0 / (PI * PI);
    let kf = k as f64;
    let alpha = 0.5 * ((4.0 * kf).ln() + EULER_GAMMA);
    let tail_integral = |n: f64| {
        let log_part = log_tail_integral(n);
        Certified {
            value: alpha * reciprocal_tail_integral(n) + 0.5 * log_part.value,
            error_bound: 0.5 * log_part.error_bound,
        }
    };
    let tail_error = |n: f64| {
        let hi = tail_integral(n);
        let lo = tail_integral(n + 1.0);
        let bracket = 0.5 * (hi.value - lo.value) + hi.error_bound.max(lo.error_bound);
        let remainder = 1.0 / (288.0 * kf * kf * n * n * n);
        (0.5 * (hi.value + lo.value) + 0.5 * remainder, bracket + 0.5 * remainder)
    };

    let mut n = 16u64;
    while scale * tail_error(n as f64).1 + 1e-15 > tol {
        n *= 2;
    }
    // H_{jk} for j = 1, …, 2N in one forward pass.
    let mut cursor = HarmonicCursor::new();
    let h: Vec<f64> = (1..=2 * n).map(|j| cursor.at(j * k)).collect();
    let mut partial = CompensatedSum::default();
    for m in (1..=n).rev() {
        let mf = m as f64;
        let i = m as usize;
        partial.add((h[2 * i - 1] - 0.5 * h[i - 1]) / (4.0 * mf * mf - 1.0));
    }
    let (tail, err) = tail_error(n as f64);
    partial.add(tail);
    let rounding = 4.0 * f64::EPSILON * partial.value();
    Ok(SeriesEstimate { value: scale * partial.value(), error_bound: scale * (err + rounding), terms: n })
}

/// `4/π²(ln k + γ + ln 4) + 8/π² Σ ln m/(4m² − 1) + 1/(4π²k²)`, the upper
/// estimate for the interval norm obtained from the series.
pub fn szego_upper_bound(k: u64, constants: &ConstantsTable) -> f64 {
    let kf = k as f64;
    let pi2 = PI * PI;
    4.0 / pi2 * (kf.ln() + EULER_GAMMA + 4f64.ln()) + 8.0 / pi2 * constants.log_series + 1.0 / (4.0 * pi2 * kf * kf)
}

/// `c₁ exp(π² M / 4)`, which the interval of length `k` keeps below `k + 1`.
pub fn interval_lower_stability(m: f64, constants: &ConstantsTable) -> f64 {
    constants.c1 * (PI * PI * m / 4.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_one_interval() {
        assert_eq!(interval_norm_quadrature(1).unwrap(), 1.0);
        let s = szego_series(1, 1e-9).unwrap();
        assert!((s.value - 1.0).abs() < 1e-9, "{s:?}");
        assert!(interval_norm_quadrature(0).is_err());
    }

    #[test]
    fn length_two_by_elementary_integral() {
        // |1 + e^{2πiθ}| = 2|cos πθ|, whose mean is 4/π.
        let q = interval_norm_quadrature(2).unwrap();
        assert!((q - 4.0 / PI).abs() < 1e-12);
        assert!((szego_series(2, 1e-10).unwrap().value - q).abs() < 1e-7);
    }

    #[test]
    fn quadrature_against_riemann_sum() {
        // Independent check at k = 3 by a fine midpoint rule.
        let k = 3.0;
        let n = 2_000_000;
        let h = 1.0 / n as f64;
        let mid: f64 = (0..n)
            .map(|i| {
                let t = (i as f64 + 0.5) * h;
                (PI * k * t).sin().abs() / (PI * t).sin()
            })
            .sum::<f64>()
            * h;
        assert!((interval_norm_quadrature(3).unwrap() - mid).abs() < 1e-8);
    }

    #[test]
    fn series_and_quadrature_agree() {
        for k in [3u64, 7, 16, 64] {
            let q = interval_norm_quadrature(k).unwrap();
            let s = szego_series(k, 1e-9).unwrap();
            assert!(s.error_bound < 1e-9);
            assert!((q - s.value).abs() < 1e-9 + 1e-9, "k={k}: {q} vs {}", s.value);
        }
    }

    #[test]
    fn series_rejects_bad_tolerance() {
        assert!(szego_series(3, 0.0).is_err());
        assert!(szego_series(3, f64::NAN).is_err());
        assert!(szego_series(0, 1e-6).is_err());
    }
}
