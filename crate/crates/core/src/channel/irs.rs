//! The reflecting surface as a controlled scattering cluster: one
//! multipath component per surface segment.

use ndarray::Array2;
use num_complex::Complex64;

use super::blocks::{ChannelBlock, PathType};
use super::propagation::{element_gain, propagation_coefficient, PropagationParams, RadiationPattern};
use super::response::response_vector;
use crate::error::{Error, Result};
use crate::geometry::{index_offsets, view_of, AngularView, ArraySpec, Segmentation};

/// Two-tier phase design of one surface segment: element `i` applies
/// `tier1_gamma·i + tier2_phase`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseProfile {
    pub tier1_gamma: f64,
    pub tier2_phase: f64,
    pub n_elements: usize,
}

impl PhaseProfile {
    pub fn flat(n_elements: usize) -> Self {
        PhaseProfile {
            tier1_gamma: 0.0,
            tier2_phase: 0.0,
            n_elements,
        }
    }

    /// Per-element phases, ordered by ascending index offset.
    pub fn phases(&self) -> Vec<f64> {
        index_offsets(self.n_elements)
            .map(|i| self.tier1_gamma * i + self.tier2_phase)
            .collect()
    }
}

/// A surface segment with the diagonal of its phase matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct IrsSegment {
    pub spec: ArraySpec,
    pub phases: Vec<f64>,
}

impl IrsSegment {
    pub fn new(spec: ArraySpec, phases: Vec<f64>) -> Result<Self> {
        if phases.len() != spec.n_elements() {
            return Err(Error::invalid(format!(
                "{} phases for a segment of {} elements",
                phases.len(),
                spec.n_elements()
            )));
        }
        Ok(IrsSegment { spec, phases })
    }

    pub fn with_profile(spec: ArraySpec, profile: &PhaseProfile) -> Result<Self> {
        Self::new(spec, profile.phases())
    }
}

/// Pairs every segment of `segmentation` with its profile.
pub fn irs_segments(segmentation: &Segmentation, profiles: &[PhaseProfile]) -> Result<Vec<IrsSegment>> {
    if profiles.len() != segmentation.n_segments() {
        return Err(Error::invalid(format!(
            "{} profiles for {} surface segments",
            profiles.len(),
            segmentation.n_segments()
        )));
    }
    segmentation
        .segments()
        .zip(profiles)
        .map(|(spec, profile)| IrsSegment::with_profile(spec, profile))
        .collect()
}

/// `a(γ_out)ᵀ·Φ·a(γ_in)`, summed element by element.
pub fn irs_compensation_gain(phases: &[f64], gamma_in: f64, gamma_out: f64) -> Complex64 {
    index_offsets(phases.len())
        .zip(phases)
        .map(|(i, phi)| Complex64::from_polar(1.0, phi - (gamma_in + gamma_out) * i))
        .sum()
}

/// One reflected multipath component between a Tx segment and an Rx
/// segment through a surface segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsPath {
    /// `β = B·ρ·α`.
    pub gain: Complex64,
    pub alpha: Complex64,
    pub rho: Complex64,
    pub pattern: f64,
    /// Surface segment seen from the Tx segment.
    pub tx_view: AngularView,
    /// Surface segment seen from the Rx segment.
    pub rx_view: AngularView,
    /// Tx segment seen from the surface segment.
    pub incidence: AngularView,
    /// Rx segment seen from the surface segment.
    pub departure: AngularView,
}

pub fn irs_path(
    tx_seg: &ArraySpec,
    rx_seg: &ArraySpec,
    irs_seg: &IrsSegment,
    rp: &RadiationPattern,
    p: &PropagationParams,
) -> Result<IrsPath> {
    let surface = irs_seg.spec.center();
    let tx_view = view_of(tx_seg, surface)?;
    let rx_view = view_of(rx_seg, surface)?;
    let incidence = view_of(&irs_seg.spec, tx_seg.center())?;
    let departure = view_of(&irs_seg.spec, rx_seg.center())?;
    let rho = propagation_coefficient(tx_view.distance, rx_view.distance, p)?;
    let alpha = irs_compensation_gain(&irs_seg.phases, incidence.gamma, departure.gamma);
    let pattern = element_gain(incidence.theta, rp) * element_gain(departure.theta, rp);
    Ok(IrsPath {
        gain: rho * alpha * pattern,
        alpha,
        rho,
        pattern,
        tx_view,
        rx_view,
        incidence,
        departure,
    })
}

/// Type-L block between one Rx segment and one Tx segment:
/// `Σ_m β_m·a_R(θ_{R;m})·a_T(θ_{T;m})ᵀ`.
pub fn irs_block_channel(
    tx_seg: &ArraySpec,
    rx_seg: &ArraySpec,
    irs: &[IrsSegment],
    rp: &RadiationPattern,
    p: &PropagationParams,
) -> Result<Array2<Complex64>> {
    let mut h = Array2::<Complex64>::zeros((rx_seg.n_elements(), tx_seg.n_elements()));
    for seg in irs {
        let path = irs_path(tx_seg, rx_seg, seg, rp, p)?;
        if path.gain == Complex64::new(0.0, 0.0) {
            continue;
        }
        let a_r = response_vector(path.rx_view.gamma, rx_seg.n_elements());
        let a_t = response_vector(path.tx_view.gamma, tx_seg.n_elements());
        for (n, ar) in a_r.entries().iter().enumerate() {
            let scaled = path.gain * ar;
            for (c, at) in a_t.entries().iter().enumerate() {
                h[[n, c]] += scaled * at;
            }
        }
    }
    Ok(h)
}

/// Every `(Rx segment, Tx segment)` block of the type-L channel.
pub fn irs_channel_blocks(
    tx: &Segmentation,
    rx: &Segmentation,
    irs: &[IrsSegment],
    rp: &RadiationPattern,
    p: &PropagationParams,
) -> Result<Vec<ChannelBlock>> {
    let mut blocks = Vec::with_capacity(tx.n_segments() * rx.n_segments());
    for n in 0..rx.n_segments() {
        let rx_seg = rx.segment_spec(n);
        for c in 0..tx.n_segments() {
            let tx_seg = tx.segment_spec(c);
            let matrix = irs_block_channel(&tx_seg, &rx_seg, irs, rp, p)?;
            blocks.push(ChannelBlock::new(matrix, n, c, PathType::Controlled));
        }
    }
    Ok(blocks)
}
