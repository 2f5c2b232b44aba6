//! Kernel analysis, compensation gains, active-segment sizing and the
//! two-tier beam design.

mod gains;
mod kernel;
mod plan;
mod sizing;

pub use gains::{comp_gain_rx, comp_gain_tx, irs_specular_profile, steering_by_average, truncated_rx_gain};
pub use kernel::{dirichlet_kernel, main_lobe_approx};
pub use plan::{
    beamspace_matrix, build_plan, conventional_segment_weights, focusing_segment_weights, mpc_terms,
    near_field_pattern, received_sample, stack_segment_weights, surface_channel, surface_segments, BeamPlan, MpcTerm,
    SegmentWeights, SizingMethod, TxBeam,
};
pub use sizing::{far_field_elements, main_lobe_elements, span_based_elements};
