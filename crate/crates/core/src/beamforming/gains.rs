//! Compensation gains and the per-segment steering rules.

use std::f64::consts::TAU;

use super::kernel::dirichlet_kernel;
use crate::channel::PhaseProfile;
use crate::error::{Error, Result};
use crate::geometry::{AngularView, WAVENUMBER};

/// Gain of a Tx segment of `n_active` elements steered at `gamma_steer`
/// toward a scatterer at `gamma_target`, normalized by the whole array.
pub fn comp_gain_tx(gamma_steer: f64, gamma_target: f64, n_active: usize, n_total: usize) -> f64 {
    dirichlet_kernel(gamma_steer - gamma_target, n_active) / (n_total as f64).sqrt()
}

pub fn comp_gain_rx(gamma_steer: f64, gamma_target: f64, n: usize) -> f64 {
    dirichlet_kernel(gamma_steer - gamma_target, n) / (n as f64).sqrt()
}

/// [`comp_gain_rx`] inside the closed main-lobe window
/// `|γ_steer - γ_target| ≤ 2π/n`, zero outside.
pub fn truncated_rx_gain(gamma_steer: f64, gamma_target: f64, n: usize) -> f64 {
    if n <= 1 || (gamma_steer - gamma_target).abs() <= TAU / n as f64 {
        comp_gain_rx(gamma_steer, gamma_target, n)
    } else {
        0.0
    }
}

/// Passive design of one surface segment that reflects the Tx segment
/// toward the Rx segment with full gain and cancels the propagation phase.
pub fn irs_specular_profile(view_tx: &AngularView, view_rx: &AngularView, n_elements: usize) -> PhaseProfile {
    PhaseProfile {
        tier1_gamma: view_tx.gamma + view_rx.gamma,
        tier2_phase: -WAVENUMBER * (view_tx.distance + view_rx.distance),
        n_elements,
    }
}

/// Mean spatial frequency of `views`, clamped to the visible range
/// `|γ| ≤ k·spacing`.
pub fn steering_by_average(views: &[AngularView], spacing: f64) -> Result<f64> {
    if views.is_empty() {
        return Err(Error::invalid("steering needs at least one view"));
    }
    let mean = views.iter().map(|v| v.gamma).sum::<f64>() / views.len() as f64;
    let bound = WAVENUMBER * spacing;
    Ok(mean.clamp(-bound, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn view(gamma: f64, distance: f64) -> AngularView {
        AngularView {
            theta: (gamma / PI).asin(),
            gamma,
            distance,
        }
    }

    #[test]
    fn tx_gain() {
        assert_abs_diff_eq!(comp_gain_tx(0.3, 0.3, 64, 64), 8.0, epsilon = 1e-12);
        assert_abs_diff_eq!(comp_gain_tx(TAU / 16.0, 0.0, 16, 64), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(comp_gain_tx(0.1, 0.0, 8, 64), 7.7917 / 8.0, epsilon = 1e-4);
        assert_abs_diff_eq!(comp_gain_tx(0.1, 0.0, 8, 64), 0.974, epsilon = 1e-3);
    }

    #[test]
    fn rx_gain_and_truncation() {
        assert_abs_diff_eq!(comp_gain_rx(-0.2, -0.2, 16), 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(comp_gain_rx(TAU / 16.0, 0.0, 16), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(comp_gain_rx(0.1, 0.0, 8), 7.7917 / 8f64.sqrt(), epsilon = 1e-4);

        assert_eq!(truncated_rx_gain(0.05, 0.0, 8), comp_gain_rx(0.05, 0.0, 8));
        // Closed window: exactly at 2π/n the term is kept and sits on the null.
        let edge = truncated_rx_gain(TAU / 8.0, 0.0, 8);
        assert_abs_diff_eq!(edge, 0.0, epsilon = 1e-14);
        assert_eq!(truncated_rx_gain(TAU / 8.0 + 1e-6, 0.0, 8), 0.0);
        assert_eq!(truncated_rx_gain(1.0, 0.0, 8), 0.0);
        for d in [0.0, 1.0, 3.0, 6.0] {
            assert_eq!(truncated_rx_gain(d, 0.0, 1), 1.0);
        }
    }

    #[test]
    fn specular_profiles() {
        let p = irs_specular_profile(&view(0.0, 100.0), &view(0.0, 50.0), 8);
        assert_eq!(p.tier1_gamma, 0.0);
        assert_abs_diff_eq!(p.tier2_phase, -TAU * 150.0, epsilon = 1e-9);
        let p = irs_specular_profile(&view(0.7, 100.0), &view(-0.7, 100.0), 8);
        assert_eq!(p.tier1_gamma, 0.0);
    }

    #[test]
    fn averaging() {
        let views = [view(-0.5, 1.0), view(0.5, 1.0)];
        assert_eq!(steering_by_average(&views, 0.5).unwrap(), 0.0);
        assert_eq!(steering_by_average(&views[..1], 0.5).unwrap(), -0.5);
        assert_eq!(steering_by_average(&[view(3.1, 1.0)], 0.25).unwrap(), PI / 2.0);
        assert!(steering_by_average(&[], 0.5).is_err());
    }
}
