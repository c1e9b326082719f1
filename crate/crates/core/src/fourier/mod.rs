//! The Fourier-algebra norm of indicator functions.
//!
//! On a finite group the unique measure on the dual with `μ̂ = 1_A` is
//! atomic, with mass `|G|⁻¹ Σ_{x∈A} χ̄(x)` at `χ`, so
//! `‖1_A‖_{B(G)} = |G|⁻¹ Σ_χ |Σ_{x∈A} χ(x)|`.

pub mod constants;
pub mod harmonic;
pub mod interval;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::group::{dft_magnitudes, GroupSubset};

pub use constants::{c0, ConstantsTable, EULER_GAMMA};
pub use harmonic::{harmonic, harmonic_excess, odd_reciprocal_sum, toth_bounds};
pub use interval::{interval_norm_quadrature, szego_series, szego_upper_bound, SeriesEstimate};

#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    pub subset: GroupSubset,
    pub norm: f64,
    /// `|Σ_{x∈A} χ(x)|` in character-index order.
    pub per_character: Vec<f64>,
}

impl NormReport {
    /// `‖1_A‖ / √|A|`, for comparison with the `√(|A| − 1 + o(1))` ceiling
    /// on finite sets. `None` for the empty set.
    pub fn size_ratio(&self) -> Option<f64> {
        (!self.subset.is_empty()).then(|| self.norm / (self.subset.len() as f64).sqrt())
    }
}

pub fn bg_norm(a: &GroupSubset) -> NormReport {
    let per_character = dft_magnitudes(a);
    let norm = per_character.iter().sum::<f64>() / a.group().order() as f64;
    NormReport { subset: a.clone(), norm, per_character }
}

/// `(q + 1)/(q² + q + 1) + (q² + q)/(q² + q + 1) · √q`: the norm of a
/// perfect difference set of size `q + 1`, whose nontrivial character sums
/// all have modulus `√q`.
pub fn singer_norm_closed_form(q: u64) -> Result<f64> {
    if q < 2 {
        return Err(Error::Precondition("q must be at least 2".into()));
    }
    let q = q as f64;
    let n = q * q + q + 1.0;
    Ok((q + 1.0) / n + (q * q + q) / n * q.sqrt())
}

/// `c₀ e^{πM} + 1`, the stability index ceiling for sets of norm at most `M`.
pub fn stability_upper_bound(m: f64) -> Result<f64> {
    if m.is_nan() || m < 0.0 {
        return Err(Error::Precondition(format!("norm bound must be non-negative, got {m}")));
    }
    Ok(c0() * (PI * m).exp() + 1.0)
}
