//! Rules for how many Tx elements the single active segment uses.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::{max_segment_elements, round_half_up};

fn clamp_count(raw: f64, n_cap: usize) -> usize {
    (round_half_up(raw) as usize).clamp(1, n_cap.max(1))
}

/// Size that maximizes the main-lobe approximation of the summed Tx
/// compensation gains, `round(√(5·C₀/C₁))` capped at `n_cap`.
///
/// `views` holds `(γ_{T;m}, α'_{R;m})` for every surface element: its
/// spatial frequency seen from the Tx and the truncated Rx gain weighting
/// it. `C₀ = Σ α'` and `C₁ = Σ α'·(γ_steer - γ_{T;m})²`. A zero `C₁`
/// (nothing to spread over) returns `n_cap`.
pub fn span_based_elements(gamma_steer: f64, views: &[(f64, f64)], n_cap: usize) -> Result<usize> {
    if views.iter().all(|(_, w)| *w == 0.0) {
        return Err(Error::NoVisibleSurface);
    }
    let c0: f64 = views.iter().map(|(_, w)| w).sum();
    let c1: f64 = views
        .iter()
        .map(|(g, w)| w * (gamma_steer - g) * (gamma_steer - g))
        .sum();
    if c1 == 0.0 {
        return Ok(n_cap.max(1));
    }
    Ok(clamp_count((5.0 * c0 / c1).sqrt(), n_cap))
}

/// Size whose main lobe (full width `4π/N`) just covers the angular span of
/// the surface seen from the Tx, capped at `n_cap`.
pub fn main_lobe_elements(gammas: &[f64], n_cap: usize) -> usize {
    let lo = gammas.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = gammas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    if !(span > 0.0) {
        return n_cap.max(1);
    }
    clamp_count(2.0 * TAU / span, n_cap)
}

/// Largest centered segment whose far field starts at `d_min`, limited to
/// the array size. This is the cap `N_o` for the other rules.
pub fn far_field_elements(d_min: f64, spacing: f64, n_total: usize) -> Result<usize> {
    Ok(max_segment_elements(d_min, spacing)?.min(n_total))
}
