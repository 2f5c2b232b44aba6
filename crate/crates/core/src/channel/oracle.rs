//! Element-level field superposition with exact distances and angles.
//!
//! Nothing here uses response vectors or segment centers; these routines
//! are the reference the segmented model is checked against.

use num_complex::Complex64;
use rayon::prelude::*;

use super::propagation::{element_gain, hop_coefficient, PropagationParams, RadiationPattern};
use crate::error::{Error, Result};
use crate::geometry::{ArraySpec, Deployment, Point2};

/// Element weights and surface phases driving one evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Excitation<'a> {
    pub tx_weights: &'a [Complex64],
    pub irs_phases: &'a [f64],
    pub rx_weights: &'a [Complex64],
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::invalid(format!("{got} {what} for {want} elements")));
    }
    Ok(())
}

/// Broadside angle of `target` seen from a surface element at `at`.
fn element_angle(surface: &ArraySpec, at: Point2, target: Point2) -> Result<f64> {
    let v = target - at;
    if v.norm() == 0.0 {
        return Err(Error::invalid(format!(
            "element at ({}, {}) coincides with a surface element",
            target.x, target.y
        )));
    }
    Ok(v.dot(surface.axis()).atan2(v.dot(surface.normal())))
}

/// Field arriving at (or leaving toward) one surface element from a
/// weighted array, including the surface element pattern.
fn surface_element_field(
    surface: &ArraySpec,
    at: Point2,
    array: &[Point2],
    weights: &[Complex64],
    rp: &RadiationPattern,
    p: &PropagationParams,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (pos, w) in array.iter().zip(weights) {
        let theta = element_angle(surface, at, *pos)?;
        if *w == Complex64::new(0.0, 0.0) {
            continue;
        }
        let g = element_gain(theta, rp);
        if g == 0.0 {
            continue;
        }
        acc += w * g * hop_coefficient(at.distance(*pos), p)?;
    }
    Ok(acc)
}

/// Received sample through the surface, summed over every
/// (Tx element, surface element, Rx element) triple.
///
/// The triple sum factorizes per surface element into an incoming and an
/// outgoing field; both are evaluated with exact per-element geometry.
/// Partial sums are reduced in surface-element order.
pub fn exact_field_oracle(
    dep: &Deployment,
    ex: &Excitation<'_>,
    rp: &RadiationPattern,
    p: &PropagationParams,
) -> Result<Complex64> {
    check_len("tx weights", ex.tx_weights.len(), dep.tx.n_elements())?;
    check_len("surface phases", ex.irs_phases.len(), dep.irs.n_elements())?;
    check_len("rx weights", ex.rx_weights.len(), dep.rx.n_elements())?;
    let tx = dep.tx.element_positions();
    let rx = dep.rx.element_positions();
    let surface = dep.irs.element_positions();

    let partial: Vec<Complex64> = surface
        .par_iter()
        .zip(ex.irs_phases.par_iter())
        .map(|(at, phi)| {
            let incoming = surface_element_field(&dep.irs, *at, &tx, ex.tx_weights, rp, p)?;
            let outgoing = surface_element_field(&dep.irs, *at, &rx, ex.rx_weights, rp, p)?;
            Ok(Complex64::from_polar(1.0, *phi) * incoming * outgoing)
        })
        .collect::<Result<_>>()?;
    Ok(partial.into_iter().sum())
}

/// Direct line-of-sight sample between two arrays of isotropic elements.
pub fn direct_field_oracle(
    tx: &ArraySpec,
    tx_weights: &[Complex64],
    rx: &ArraySpec,
    rx_weights: &[Complex64],
    p: &PropagationParams,
) -> Result<Complex64> {
    check_len("tx weights", tx_weights.len(), tx.n_elements())?;
    check_len("rx weights", rx_weights.len(), rx.n_elements())?;
    let rx_pos = rx.element_positions();
    let mut acc = Complex64::new(0.0, 0.0);
    for (pt, wt) in tx.element_positions().iter().zip(tx_weights) {
        let mut inner = Complex64::new(0.0, 0.0);
        for (pr, wr) in rx_pos.iter().zip(rx_weights) {
            inner += wr * hop_coefficient(pt.distance(*pr), p)?;
        }
        acc += wt * inner;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::propagation::propagation_coefficient;
    use crate::geometry::view_of;
    use std::f64::consts::PI;

    fn one(center: Point2, orientation: f64) -> ArraySpec {
        ArraySpec::new(center, orientation, 1, 0.5).unwrap()
    }

    #[test]
    fn single_elements_reduce_to_closed_form() {
        let dep = Deployment {
            tx: one(Point2::new(0.0, 0.0), 0.0),
            irs: one(Point2::new(30.0, 400.0), PI),
            rx: one(Point2::new(120.0, 10.0), 0.0),
        };
        let rp = RadiationPattern::default();
        let p = PropagationParams::free_space();
        let w = [Complex64::new(1.0, 0.0)];
        let ex = Excitation {
            tx_weights: &w,
            irs_phases: &[0.0],
            rx_weights: &w,
        };
        let r = exact_field_oracle(&dep, &ex, &rp, &p).unwrap();
        let vt = view_of(&dep.irs, dep.tx.center()).unwrap();
        let vr = view_of(&dep.irs, dep.rx.center()).unwrap();
        let want = propagation_coefficient(vt.distance, vr.distance, &p).unwrap()
            * element_gain(vt.theta, &rp)
            * element_gain(vr.theta, &rp);
        assert!((r - want).norm() <= 1e-12 * want.norm());
    }

    #[test]
    fn linear_in_each_weight_vector() {
        let dep = Deployment {
            tx: ArraySpec::new(Point2::new(0.0, 0.0), 0.0, 4, 0.5).unwrap(),
            irs: ArraySpec::new(Point2::new(10.0, 80.0), PI, 16, 0.5).unwrap(),
            rx: ArraySpec::new(Point2::new(40.0, 0.0), 0.0, 3, 0.5).unwrap(),
        };
        let rp = RadiationPattern::default();
        let p = PropagationParams::free_space();
        let wt: Vec<_> = (0..4).map(|i| Complex64::from_polar(0.5, 0.3 * i as f64)).collect();
        let wr: Vec<_> = (0..3).map(|i| Complex64::from_polar(0.7, -0.2 * i as f64)).collect();
        let phases: Vec<f64> = (0..16).map(|i| 0.1 * i as f64).collect();
        let base = exact_field_oracle(
            &dep,
            &Excitation {
                tx_weights: &wt,
                irs_phases: &phases,
                rx_weights: &wr,
            },
            &rp,
            &p,
        )
        .unwrap();
        let wt2: Vec<_> = wt.iter().map(|w| w * 2.0).collect();
        let doubled = exact_field_oracle(
            &dep,
            &Excitation {
                tx_weights: &wt2,
                irs_phases: &phases,
                rx_weights: &wr,
            },
            &rp,
            &p,
        )
        .unwrap();
        assert!((doubled - base * 2.0).norm() <= 1e-12 * base.norm());
        let wr3: Vec<_> = wr.iter().map(|w| w * Complex64::new(0.0, 3.0)).collect();
        let scaled = exact_field_oracle(
            &dep,
            &Excitation {
                tx_weights: &wt,
                irs_phases: &phases,
                rx_weights: &wr3,
            },
            &rp,
            &p,
        )
        .unwrap();
        assert!((scaled - base * Complex64::new(0.0, 3.0)).norm() <= 1e-12 * base.norm());
    }

    #[test]
    fn rejects_mismatched_lengths_and_coincident_elements() {
        let dep = Deployment {
            tx: one(Point2::new(0.0, 0.0), 0.0),
            irs: one(Point2::new(0.0, 0.0), PI),
            rx: one(Point2::new(1.0, 0.0), 0.0),
        };
        let w = [Complex64::new(1.0, 0.0)];
        let rp = RadiationPattern::default();
        let p = PropagationParams::free_space();
        let ex = Excitation {
            tx_weights: &w,
            irs_phases: &[0.0],
            rx_weights: &w,
        };
        assert!(exact_field_oracle(&dep, &ex, &rp, &p).is_err());
        let ex = Excitation {
            tx_weights: &[],
            irs_phases: &[0.0],
            rx_weights: &w,
        };
        assert!(exact_field_oracle(&dep, &ex, &rp, &p).is_err());
    }

    #[test]
    fn direct_link_free_space() {
        let tx = one(Point2::new(0.0, 0.0), 0.0);
        let rx = one(Point2::new(0.0, 100.0), PI);
        let w = [Complex64::new(1.0, 0.0)];
        let r = direct_field_oracle(&tx, &w, &rx, &w, &PropagationParams::free_space()).unwrap();
        assert!((r.norm() - 1.0 / (4.0 * PI * 100.0)).abs() < 1e-15);
    }
}
