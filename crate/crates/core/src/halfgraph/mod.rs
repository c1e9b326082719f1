//! The half-graph matrix and its spectrum.
//!
//! A k-order witness turns `(l, m) ↦ 1_A(a_l + b_m)` into the 0/1 matrix
//! with ones exactly where `l ≤ m`. Up to transposition this is `Q`, the
//! lower-triangular matrix of ones, with `Q⁻¹` the bidiagonal matrix with
//! `1` on the diagonal and `−1` below it; `Q⁻¹(Q⁻¹)ᵗ` is tridiagonal with
//! eigenvalues `4cos²(πj/(2k+1))`, `1 ≤ j ≤ k`. Hence the singular values
//! of `Q` are `1/(2cos(πj/(2k+1)))` and its trace norm is their sum, which
//! the algebra-norm side bounds above by `k·M`.

pub mod tridiagonal;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::constants::{c0, EULER_GAMMA};
use crate::fourier::harmonic::{half_odd_excess, CompensatedSum};
use crate::fourier::{bg_norm, stability_upper_bound};
use crate::group::GroupSubset;
use crate::stability::{stability_index, StabilityReport};
use tridiagonal::symmetric_tridiagonal_eigenvalues;

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    pub n: usize,
    pub entries: Vec<i64>,
}

impl IntMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let entries = (0..n * n).map(|t| f(t / n, t % n)).collect();
        Self { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| (i == j) as i64)
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |i, j| (0..self.n).map(|t| self.get(i, t) * other.get(t, j)).sum())
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::Precondition("half-graph size must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `Q_{ij} = 1` iff `i ≥ j`.
pub fn build_q(k: usize) -> Result<IntMatrix> {
    check_k(k)?;
    Ok(IntMatrix::from_fn(k, |i, j| (i >= j) as i64))
}

/// `1` on the diagonal, `−1` on the subdiagonal.
pub fn build_q_inv(k: usize) -> Result<IntMatrix> {
    check_k(k)?;
    Ok(IntMatrix::from_fn(k, |i, j| {
        if i == j {
            1
        } else if i == j + 1 {
            -1
        } else {
            0
        }
    }))
}

/// The matrix a k-order witness produces: ones exactly where `l ≤ m`.
pub fn order_matrix(k: usize) -> Result<IntMatrix> {
    Ok(build_q(k)?.transpose())
}

/// Diagonal and off-diagonal of `Q⁻¹(Q⁻¹)ᵗ`: `(1, 2, …, 2)` and `−1`.
pub fn gram_of_inverse(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![2.0; k];
    if k > 0 {
        diag[0] = 1.0;
    }
    (diag, vec![-1.0; k.saturating_sub(1)])
}

/// `1/(2cos(πj/(2k+1)))`. The cosine is evaluated as
/// `sin(π(2k+1−2j)/(2(2k+1)))`, with the complement taken in integers, since
/// near `π/2` the rounding of the angle would dominate.
fn half_secant(j: usize, k: usize) -> f64 {
    let n = 2 * k + 1;
    0.5 / (PI * (n - 2 * j) as f64 / (2 * n) as f64).sin()
}

/// `1/(2cos(πj/(2k+1)))` for `j = 1, …, k`, in descending order.
pub fn closed_form_singular_values(k: usize) -> Vec<f64> {
    (1..=k).rev().map(|j| half_secant(j, k)).collect()
}

/// Singular values of `Q` from the eigenvalues of the tridiagonal
/// `Q⁻¹(Q⁻¹)ᵗ`, in descending order.
pub fn numeric_singular_values(k: usize) -> Vec<f64> {
    let (diag, off) = gram_of_inverse(k);
    // Ascending eigenvalues give descending 1/√λ.
    symmetric_tridiagonal_eigenvalues(&diag, &off).into_iter().map(|l| 1.0 / l.sqrt()).collect()
}

/// Trace norm of `Q`: `Σ_j 1/(2cos(πj/(2k+1)))`.
pub fn trace_norm(k: usize) -> f64 {
    (1..=k).map(|j| half_secant(j, k)).collect::<CompensatedSum>().value()
}

/// `(k/π)(ln(k/c₀) − 1/k)`.
pub fn trace_norm_lower_bound(k: usize) -> Result<f64> {
    check_k(k)?;
    let kf = k as f64;
    Ok(kf / PI * ((kf / c0()).ln() - 1.0 / kf))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfGraphSpectrum {
    pub k: usize,
    pub singular_values_closed: Vec<f64>,
    pub singular_values_numeric: Vec<f64>,
    pub trace_norm: f64,
    pub lower_bound: f64,
}

impl HalfGraphSpectrum {
    /// Largest entrywise gap between the closed-form and numeric values.
    pub fn max_deviation(&self) -> f64 {
        self.singular_values_closed
            .iter()
            .zip(&self.singular_values_numeric)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn closed_form_spectrum(k: usize) -> Result<HalfGraphSpectrum> {
    check_k(k)?;
    Ok(HalfGraphSpectrum {
        k,
        singular_values_closed: closed_form_singular_values(k),
        singular_values_numeric: numeric_singular_values(k),
        trace_norm: trace_norm(k),
        lower_bound: trace_norm_lower_bound(k)?,
    })
}

/// Relative slack on both inequalities of [`TheoremCheck`].
pub const CHECK_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremCheck {
    /// `‖1_A‖_{B(G)}`.
    pub norm: f64,
    pub max_order: usize,
    pub stability_index: usize,
    /// Trace norm of the `max_order` half-graph (0 when `max_order = 0`).
    pub trace_norm: f64,
    /// `max_order · norm`.
    pub trace_norm_ceiling: f64,
    /// `c₀ e^{πM} + 1`.
    pub stability_bound: f64,
    pub trace_norm_ok: bool,
    pub theorem_ok: bool,
}

/// Checks `trace_norm(k) ≤ k·M` and `index ≤ c₀e^{πM} + 1` for `A`, with
/// `k` its largest order and `M` its norm.
pub fn theorem_inequality_check(a: &GroupSubset) -> TheoremCheck {
    theorem_check_from(&stability_index(a), bg_norm(a).norm)
}

pub fn theorem_check_from(report: &StabilityReport, norm: f64) -> TheoremCheck {
    let k = report.max_order;
    let tn = if k == 0 { 0.0 } else { trace_norm(k) };
    let ceiling = k as f64 * norm;
    let bound = stability_upper_bound(norm.max(0.0)).expect("norm is non-negative");
    TheoremCheck {
        norm,
        max_order: k,
        stability_index: report.stability_index,
        trace_norm: tn,
        trace_norm_ceiling: ceiling,
        stability_bound: bound,
        trace_norm_ok: tn <= ceiling * (1.0 + CHECK_SLACK),
        theorem_ok: report.stability_index as f64 <= bound * (1.0 + CHECK_SLACK),
    }
}

/// Eigenvector check for `Q⁻¹(Q⁻¹)ᵗ`. With `ω = −e^{2πij/(2k+1)}` and
/// `u_t = Re ω^{t−½}` (`t = 1, …, k`), returns the largest entry of
/// `|Q⁻¹(Q⁻¹)ᵗ u − (2 − ω − ω⁻¹)u|` and `|2 − ω − ω⁻¹ − 4cos²(πj/(2k+1))|`.
///
/// The half-step phase makes `u_0 = u_1` and `u_{k+1} = 0`, which are the
/// two boundary rows of the tridiagonal matrix; the sign on `ω` is what
/// makes `2 − ω − ω⁻¹ = 2 + 2cos(2πj/(2k+1))` a squared cosine.
pub fn eigenvector_residual(k: usize, j: usize) -> (f64, f64) {
    let phase = 2.0 * PI * j as f64 / (2 * k + 1) as f64 + PI;
    let omega = Complex64::from_polar(1.0, phase);
    let u: Vec<f64> = (1..=k).map(|t| ((t as f64 - 0.5) * phase).cos()).collect();
    let lambda = Complex64::new(2.0, 0.0) - omega - omega.inv();
    let residual = tridiagonal_apply(k, &u)
        .iter()
        .zip(&u)
        .map(|(tu, ui)| (Complex64::new(*tu, 0.0) - lambda * ui).norm())
        .fold(0.0, f64::max);
    let cos = (PI * j as f64 / (2 * k + 1) as f64).cos();
    (residual, (lambda - Complex64::new(4.0 * cos * cos, 0.0)).norm())
}

/// `Q⁻¹(Q⁻¹)ᵗ u`.
pub fn tridiagonal_apply(k: usize, u: &[f64]) -> Vec<f64> {
    let (diag, off) = gram_of_inverse(k);
    (0..k)
        .map(|i| {
            let mut tu = diag[i] * u[i];
            if i > 0 {
                tu += off[i - 1] * u[i - 1];
            }
            if i + 1 < k {
                tu += off[i] * u[i + 1];
            }
            tu
        })
        .collect()
}

/// `Σ_j 1/(2|cos(jπ/(2k+1))|)` with the cosine evaluated directly.
pub fn secant_sum_direct(k: usize) -> f64 {
    let denom = (2 * k + 1) as f64;
    (1..=k).map(|j| 0.5 / (PI * j as f64 / denom).cos().abs()).collect::<CompensatedSum>().value()
}

/// `½ Σ_{l=0}^{k−1} csc((2l+1)π/(2(2k+1)))`, the trace norm rewritten.
pub fn cosecant_sum(k: usize) -> f64 {
    let d = 2.0 * (2 * k + 1) as f64;
    0.5 * (0..k).map(|l| 1.0 / (PI * (2 * l + 1) as f64 / d).sin()).collect::<CompensatedSum>().value()
}

/// `LHS − RHS` in
/// `½Σ_l (csc(π(2l+1)/(2(2k+1))) − 2(2k+1)/(π(2l+1))) ≥ ((2k+1)/4)((2/π)ln(4/π) − 3/(π(2k+1)))`.
pub fn integral_estimate_margin(k: usize) -> f64 {
    let n = (2 * k + 1) as f64;
    let lhs = 0.5
        * (0..k)
            .map(|l| {
                let x = (2 * l + 1) as f64 / n;
                1.0 / (PI * x / 2.0).sin() - 2.0 / (PI * x)
            })
            .collect::<CompensatedSum>()
            .value();
    let rhs = n / 4.0 * (2.0 / PI * (4.0 / PI).ln() - 3.0 / (PI * n));
    lhs - rhs
}

/// `LHS − RHS` in `((2k+1)/π)(H_{2k} − ½H_k) ≥ ((2k+1)/(2π))(ln k + ln 4 + γ)`,
/// i.e. `((2k+1)/π)(H_{2k} − ½H_k − ½(ln 4k + γ))`.
pub fn harmonic_display_margin(k: usize) -> f64 {
    (2 * k + 1) as f64 / PI * half_odd_excess(k as u64)
}

/// The same inequality evaluated literally, without the excess rewrite.
pub fn harmonic_display_sides(k: usize) -> (f64, f64) {
    let n = (2 * k + 1) as f64;
    let lhs = n / PI * crate::fourier::harmonic::odd_reciprocal_sum(k as u64);
    let rhs = n / (2.0 * PI) * ((k as f64).ln() + 4f64.ln() + EULER_GAMMA);
    (lhs, rhs)
}
