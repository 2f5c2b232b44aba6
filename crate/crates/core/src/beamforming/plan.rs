//! Two-tier beam plans with single-segment Tx activation, and their
//! evaluation on the segmented channel.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex64;

use super::gains::{irs_specular_profile, steering_by_average, truncated_rx_gain};
use super::kernel::dirichlet_kernel;
use super::sizing::{far_field_elements, main_lobe_elements, span_based_elements};
use crate::channel::{
    assemble_channel, combine, hop_coefficient, irs_channel_blocks, irs_path, response_vector, IrsSegment,
    PhaseProfile, PropagationParams, RadiationPattern,
};
use crate::error::{Error, Result};
use crate::geometry::{index_offsets, view_of, AngularView, ArraySpec, Deployment, Point2, Segmentation, WAVENUMBER};

/// How the active Tx segment is sized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizingMethod {
    /// Maximize the summed main-lobe gains, weighting surface elements by
    /// the truncated Rx gain.
    Span,
    /// Same rule with every surface element weighted equally, as if the Rx
    /// were a single element.
    SpanSingleElement,
    /// Fixed size: the largest centered segment in whose far field the
    /// whole surface lies.
    FarField,
    /// Main lobe just wide enough to cover the surface.
    MainLobe,
    /// Whole Tx array steered at the surface center, surface treated as one
    /// segment.
    FarFieldConv,
}

impl SizingMethod {
    pub const COMPARED: [SizingMethod; 4] = [
        SizingMethod::Span,
        SizingMethod::FarField,
        SizingMethod::MainLobe,
        SizingMethod::FarFieldConv,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SizingMethod::Span => "span",
            SizingMethod::SpanSingleElement => "span_single",
            SizingMethod::FarField => "far_field",
            SizingMethod::MainLobe => "main_lobe",
            SizingMethod::FarFieldConv => "far_field_conv",
        }
    }
}

impl fmt::Display for SizingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SizingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            SizingMethod::Span,
            SizingMethod::SpanSingleElement,
            SizingMethod::FarField,
            SizingMethod::MainLobe,
            SizingMethod::FarFieldConv,
        ]
        .into_iter()
        .find(|m| m.tag() == s)
        .ok_or_else(|| Error::invalid(format!("unknown method `{s}`")))
    }
}

/// Weights of one array segment: steering `tier1_gamma` across its
/// elements plus a common phase `tier2_phase`, normalized by
/// `1/√norm_elements` (the element count sharing the power budget).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentWeights {
    pub tier1_gamma: f64,
    pub tier2_phase: f64,
    pub n_elements: usize,
    pub norm_elements: usize,
}

impl SegmentWeights {
    /// Unit-power steering over a whole (sub)array.
    pub fn steering(gamma: f64, n_elements: usize) -> Self {
        SegmentWeights {
            tier1_gamma: gamma,
            tier2_phase: 0.0,
            n_elements,
            norm_elements: n_elements,
        }
    }

    pub fn weights(&self) -> Vec<Complex64> {
        let amp = 1.0 / (self.norm_elements as f64).sqrt();
        index_offsets(self.n_elements)
            .map(|l| Complex64::from_polar(amp, self.tier1_gamma * l + self.tier2_phase))
            .collect()
    }
}

/// Concatenated element weights of consecutive segments.
pub fn stack_segment_weights(segments: &[SegmentWeights]) -> Vec<Complex64> {
    segments.iter().flat_map(|s| s.weights()).collect()
}

/// Segment weights that reproduce plain whole-array steering at
/// `gamma_steer`: the tier-2 phases carry each segment's offset from the
/// array center.
pub fn conventional_segment_weights(seg: &Segmentation, gamma_steer: f64) -> Vec<SegmentWeights> {
    let n_s = seg.elements_per_segment();
    let n = seg.parent().n_elements();
    let mid = (seg.n_segments() as f64 - 1.0) / 2.0;
    (0..seg.n_segments())
        .map(|c| SegmentWeights {
            tier1_gamma: gamma_steer,
            tier2_phase: gamma_steer * (c as f64 - mid) * n_s as f64,
            n_elements: n_s,
            norm_elements: n,
        })
        .collect()
}

/// Two-tier weights focusing every segment on `source`: each segment
/// steers toward it from its own center and cancels its own path phase.
pub fn focusing_segment_weights(seg: &Segmentation, source: Point2) -> Result<Vec<SegmentWeights>> {
    let n = seg.parent().n_elements();
    seg.segments()
        .map(|spec| {
            let v = view_of(&spec, source)?;
            Ok(SegmentWeights {
                tier1_gamma: v.gamma,
                tier2_phase: -WAVENUMBER * v.distance,
                n_elements: spec.n_elements(),
                norm_elements: n,
            })
        })
        .collect()
}

/// Field radiated by a segmented array toward `target`:
/// `Σ_c e^{jφ_c}·e^{jkd_c}/d_c^{a/2}·f(γ_c − γ_{c,S}; N_S)/√N`, each
/// segment seen from its center.
pub fn near_field_pattern(
    seg: &Segmentation,
    weights: &[SegmentWeights],
    target: Point2,
    p: &PropagationParams,
) -> Result<Complex64> {
    if weights.len() != seg.n_segments() {
        return Err(Error::invalid(format!(
            "{} segment weights for {} segments",
            weights.len(),
            seg.n_segments()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (spec, w) in seg.segments().zip(weights) {
        let v = view_of(&spec, target)?;
        let g = hop_coefficient(v.distance, p)? * Complex64::from_polar(1.0, w.tier2_phase);
        acc += g * dirichlet_kernel(v.gamma - w.tier1_gamma, spec.n_elements()) / (w.norm_elements as f64).sqrt();
    }
    Ok(acc)
}

/// Tx weights of a plan: one centered active segment, everything else off.
#[derive(Debug, Clone, PartialEq)]
pub struct TxBeam {
    pub weights: SegmentWeights,
    pub active: Range<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeamPlan {
    pub tx: TxBeam,
    pub rx: SegmentWeights,
    /// Surface partition the profiles refer to.
    pub irs_segmentation: Segmentation,
    pub irs: Vec<PhaseProfile>,
    pub method: SizingMethod,
}

impl BeamPlan {
    pub fn n_active(&self) -> usize {
        self.tx.active.len()
    }

    pub fn tx_element_weights(&self, n_tx: usize) -> Vec<Complex64> {
        let mut w = vec![Complex64::new(0.0, 0.0); n_tx];
        w[self.tx.active.clone()].copy_from_slice(&self.tx.weights.weights());
        w
    }

    pub fn rx_element_weights(&self) -> Vec<Complex64> {
        self.rx.weights()
    }

    pub fn irs_element_phases(&self) -> Vec<f64> {
        self.irs.iter().flat_map(|p| p.phases()).collect()
    }

    /// The active Tx segment as an array of its own.
    pub fn active_tx(&self, tx: &ArraySpec) -> Result<ArraySpec> {
        tx.sub_array(self.tx.active.start, self.tx.active.len())
    }

    /// Tier-1 steering of Tx and Rx stays within `|γ| ≤ k·q`.
    pub fn respects_steering_bounds(&self, dep: &Deployment) -> bool {
        let ok = |g: f64, q: f64| g.abs() <= WAVENUMBER * q + 1e-12;
        ok(self.tx.weights.tier1_gamma, dep.tx.spacing()) && ok(self.rx.tier1_gamma, dep.rx.spacing())
    }
}

fn views_from(observer: &ArraySpec, targets: &[Point2]) -> Result<Vec<AngularView>> {
    targets.iter().map(|t| view_of(observer, *t)).collect()
}

/// Design Tx, surface and Rx weights for `dep` with the given sizing rule.
pub fn build_plan(dep: &Deployment, method: SizingMethod) -> Result<BeamPlan> {
    let n_t = dep.tx.n_elements();
    let n_r = dep.rx.n_elements();

    let (n_active, gamma_t, gamma_r, irs_segmentation) = if method == SizingMethod::FarFieldConv {
        let c = dep.irs.center();
        (
            n_t,
            view_of(&dep.tx, c)?.gamma,
            view_of(&dep.rx, c)?.gamma,
            Segmentation::single(dep.irs),
        )
    } else {
        let surface = dep.irs.element_positions();
        let tx_views = views_from(&dep.tx, &surface)?;
        let rx_views = views_from(&dep.rx, &surface)?;
        let gamma_t = steering_by_average(&tx_views, dep.tx.spacing())?;
        let gamma_r = steering_by_average(&rx_views, dep.rx.spacing())?;
        let d_min = tx_views.iter().map(|v| v.distance).fold(f64::INFINITY, f64::min);
        let n_cap = far_field_elements(d_min, dep.tx.spacing(), n_t)?;
        let n = match method {
            SizingMethod::Span | SizingMethod::SpanSingleElement => {
                let weighted: Vec<(f64, f64)> = tx_views
                    .iter()
                    .zip(&rx_views)
                    .map(|(t, r)| {
                        let w = if method == SizingMethod::Span {
                            truncated_rx_gain(gamma_r, r.gamma, n_r)
                        } else {
                            1.0
                        };
                        (t.gamma, w)
                    })
                    .collect();
                span_based_elements(gamma_t, &weighted, n_cap)?
            }
            SizingMethod::FarField => n_cap,
            SizingMethod::MainLobe => {
                let gammas: Vec<f64> = tx_views.iter().map(|v| v.gamma).collect();
                main_lobe_elements(&gammas, n_cap)
            }
            SizingMethod::FarFieldConv => unreachable!(),
        };
        (n, gamma_t, gamma_r, dep.segment_irs()?)
    };

    let start = (n_t - n_active) / 2;
    let active = start..start + n_active;
    let active_spec = dep.tx.sub_array(start, n_active)?;
    let irs = irs_segmentation
        .segments()
        .map(|spec| {
            let from_tx = view_of(&spec, active_spec.center())?;
            let to_rx = view_of(&spec, dep.rx.center())?;
            Ok(irs_specular_profile(&from_tx, &to_rx, spec.n_elements()))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(BeamPlan {
        tx: TxBeam {
            weights: SegmentWeights::steering(gamma_t, n_active),
            active,
        },
        rx: SegmentWeights::steering(gamma_r, n_r),
        irs_segmentation,
        irs,
        method,
    })
}

/// Surface segments of the deployment's own partition carrying `phases`.
pub fn surface_segments(dep: &Deployment, phases: &[f64]) -> Result<Vec<IrsSegment>> {
    if phases.len() != dep.irs.n_elements() {
        return Err(Error::invalid(format!(
            "{} surface phases for {} elements",
            phases.len(),
            dep.irs.n_elements()
        )));
    }
    let seg = dep.segment_irs()?;
    (0..seg.n_segments())
        .map(|m| IrsSegment::new(seg.segment_spec(m), phases[seg.element_range(m)].to_vec()))
        .collect()
}

/// Segmented surface channel `H^L` (N_R × N_T) with the plan's phases.
///
/// All three units are partitioned by the geometric rule; the plan only
/// supplies the per-element surface phases.
pub fn surface_channel(
    plan: &BeamPlan,
    dep: &Deployment,
    rp: &RadiationPattern,
    p: &PropagationParams,
) -> Result<Array2<Complex64>> {
    let tx = dep.segment_tx()?;
    let rx = dep.segment_rx()?;
    let irs = surface_segments(dep, &plan.irs_element_phases())?;
    let blocks = irs_channel_blocks(&tx, &rx, &irs, rp, p)?;
    assemble_channel(&blocks, &rx, &tx)
}

/// Received sample `w_Rᵀ·H^L·w_T` on the segmented channel.
pub fn received_sample(
    plan: &BeamPlan,
    dep: &Deployment,
    rp: &RadiationPattern,
    p: &PropagationParams,
) -> Result<Complex64> {
    let h = surface_channel(plan, dep, rp, p)?;
    Ok(combine(
        &h,
        &plan.rx_element_weights(),
        &plan.tx_element_weights(dep.tx.n_elements()),
    ))
}

/// Contribution of one surface segment to the received sample, with the
/// active Tx segment and the Rx each treated as a single segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MpcTerm {
    pub segment: usize,
    /// `β_m·α_{T;m}·α_{R;m}`.
    pub value: Complex64,
    pub tx_gain: f64,
    pub rx_gain: f64,
    /// Both `γ_{T;m}` and `γ_{R;m}` fall inside the respective main lobes.
    pub in_main_lobes: bool,
}

pub fn mpc_terms(
    plan: &BeamPlan,
    dep: &Deployment,
    rp: &RadiationPattern,
    p: &PropagationParams,
) -> Result<Vec<MpcTerm>> {
    let active = plan.active_tx(&dep.tx)?;
    let n_ts = active.n_elements();
    let n_r = dep.rx.n_elements();
    let w_t = plan.tx.weights.weights();
    let w_r = plan.rx_element_weights();
    (0..plan.irs_segmentation.n_segments())
        .map(|m| {
            let seg = IrsSegment::with_profile(plan.irs_segmentation.segment_spec(m), &plan.irs[m])?;
            let path = irs_path(&active, &dep.rx, &seg, rp, p)?;
            let tx_gain = response_vector(path.tx_view.gamma, n_ts).transpose_dot(&w_t);
            let rx_gain = response_vector(path.rx_view.gamma, n_r).transpose_dot(&w_r);
            let in_main_lobes = (plan.tx.weights.tier1_gamma - path.tx_view.gamma).abs()
                < std::f64::consts::TAU / n_ts as f64
                && (plan.rx.tier1_gamma - path.rx_view.gamma).abs() < std::f64::consts::TAU / n_r as f64;
            Ok(MpcTerm {
                segment: m,
                value: path.gain * tx_gain * rx_gain,
                tx_gain: tx_gain.re,
                rx_gain: rx_gain.re,
                in_main_lobes,
            })
        })
        .collect()
}

/// Beam-space channel `W_Rᵀ·H·W_T`, one row per Rx beam and one column per
/// Tx beam.
pub fn beamspace_matrix(
    h: &Array2<Complex64>,
    tx_beams: &[Vec<Complex64>],
    rx_beams: &[Vec<Complex64>],
) -> Result<Array2<Complex64>> {
    let (n_r, n_t) = h.dim();
    if let Some(b) = tx_beams.iter().find(|b| b.len() != n_t) {
        return Err(Error::invalid(format!(
            "tx beam of length {} for {n_t} columns",
            b.len()
        )));
    }
    if let Some(b) = rx_beams.iter().find(|b| b.len() != n_r) {
        return Err(Error::invalid(format!("rx beam of length {} for {n_r} rows", b.len())));
    }
    Ok(Array2::from_shape_fn((rx_beams.len(), tx_beams.len()), |(i, j)| {
        combine(h, &rx_beams[i], &tx_beams[j])
    }))
}
