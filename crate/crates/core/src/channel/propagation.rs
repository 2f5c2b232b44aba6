use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::WAVENUMBER;

/// Path-loss model `e^{jkd} / (b·d^{a/2})` per hop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationParams {
    /// Path-loss exponent.
    pub a_att: f64,
    /// Model constant, in inverse wavelengths.
    pub b_att: f64,
}

impl PropagationParams {
    pub fn new(a_att: f64, b_att: f64) -> Result<Self> {
        if !(a_att > 0.0 && a_att.is_finite()) {
            return Err(Error::invalid(format!("a_att must be positive, got {a_att}")));
        }
        if !(b_att > 0.0 && b_att.is_finite()) {
            return Err(Error::invalid(format!("b_att must be positive, got {b_att}")));
        }
        Ok(PropagationParams { a_att, b_att })
    }

    /// Free space: `a = 2`, `b = 2k`.
    pub fn free_space() -> Self {
        PropagationParams {
            a_att: 2.0,
            b_att: 2.0 * WAVENUMBER,
        }
    }
}

impl Default for PropagationParams {
    fn default() -> Self {
        Self::free_space()
    }
}

/// Single-hop coefficient `e^{jkd} / (b·d^{a/2})`.
pub fn hop_coefficient(d: f64, p: &PropagationParams) -> Result<Complex64> {
    if !(d > 0.0) {
        return Err(Error::invalid(format!(
            "propagation distance must be positive, got {d}"
        )));
    }
    Ok(Complex64::from_polar(
        1.0 / (p.b_att * d.powf(p.a_att / 2.0)),
        WAVENUMBER * d,
    ))
}

/// Two-hop coefficient `e^{jk(d_t+d_r)} / (b²·(d_t·d_r)^{a/2})` through a
/// reflecting segment.
pub fn propagation_coefficient(d_t: f64, d_r: f64, p: &PropagationParams) -> Result<Complex64> {
    if !(d_t > 0.0 && d_r > 0.0) {
        return Err(Error::invalid(format!(
            "propagation distances must be positive, got {d_t} and {d_r}"
        )));
    }
    Ok(Complex64::from_polar(
        1.0 / (p.b_att * p.b_att * (d_t * d_r).powf(p.a_att / 2.0)),
        WAVENUMBER * (d_t + d_r),
    ))
}

/// Surface element pattern, power form `2(2q+1)·cos^{2q}(θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiationPattern {
    pub q_exp: f64,
}

impl RadiationPattern {
    pub fn new(q_exp: f64) -> Result<Self> {
        if !(q_exp >= 0.0 && q_exp.is_finite()) {
            return Err(Error::invalid(format!(
                "pattern exponent must be non-negative, got {q_exp}"
            )));
        }
        Ok(RadiationPattern { q_exp })
    }

    pub fn power(&self, theta: f64) -> f64 {
        let g = element_gain(theta, self);
        g * g
    }
}

impl Default for RadiationPattern {
    fn default() -> Self {
        RadiationPattern { q_exp: 0.285 }
    }
}

/// Amplitude pattern `√(2(2q+1))·cos^q(θ)`; zero at grazing and behind the
/// aperture.
pub fn element_gain(theta: f64, rp: &RadiationPattern) -> f64 {
    if theta.abs() >= FRAC_PI_2 {
        return 0.0;
    }
    let c = theta.cos().max(0.0);
    (2.0 * (2.0 * rp.q_exp + 1.0)).sqrt() * c.powf(rp.q_exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn free_space_magnitude() {
        let p = PropagationParams::free_space();
        let rho = propagation_coefficient(933.0, 933.0, &p).unwrap();
        let expected = 1.0 / ((4.0 * PI).powi(2) * 933.0 * 933.0);
        assert_relative_eq!(rho.norm(), expected, max_relative = 1e-12);
        assert_relative_eq!(rho.norm(), 7.27e-9, max_relative = 1e-3);

        let rho = propagation_coefficient(3.0, 5.0, &p).unwrap();
        assert_relative_eq!(rho.norm(), 1.0 / (16.0 * PI * PI * 15.0), max_relative = 1e-12);
    }

    #[test]
    fn phase_tracks_total_path() {
        let p = PropagationParams::free_space();
        let rho = propagation_coefficient(10.25, 3.5, &p).unwrap();
        let expected = (2.0 * PI * 13.75).rem_euclid(2.0 * PI);
        assert_relative_eq!(rho.arg().rem_euclid(2.0 * PI), expected, max_relative = 1e-9);
        let split = hop_coefficient(10.25, &p).unwrap() * hop_coefficient(3.5, &p).unwrap();
        assert!((split - rho).norm() <= 1e-9 * rho.norm());
    }

    #[test]
    fn zero_distance_is_rejected() {
        let p = PropagationParams::free_space();
        assert!(propagation_coefficient(0.0, 1.0, &p).is_err());
        assert!(hop_coefficient(0.0, &p).is_err());
        assert!(PropagationParams::new(0.0, 1.0).is_err());
        assert!(PropagationParams::new(2.0, -1.0).is_err());
    }

    #[test]
    // 2·(2·0.285 + 1) happens to equal 3.14.
    #[allow(clippy::approx_constant)]
    fn pattern_values() {
        let rp = RadiationPattern::new(0.285).unwrap();
        assert_relative_eq!(rp.power(0.0), 3.14, max_relative = 1e-12);
        assert_eq!(element_gain(FRAC_PI_2, &rp), 0.0);
        assert_eq!(element_gain(2.0, &rp), 0.0);
        for t in [0.1, 0.7, 1.3] {
            assert_eq!(element_gain(t, &rp), element_gain(-t, &rp));
        }
        assert!(RadiationPattern::new(-0.1).is_err());
    }
}
