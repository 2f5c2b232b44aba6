//! Decomposed geometric channel: response vectors, propagation
//! coefficients, surface-cluster blocks and the exact reference oracle.

mod blocks;
mod irs;
mod oracle;
mod propagation;
mod response;

pub use blocks::{
    assemble_channel, sample_ordinary_clusters, second_order_gain, ChannelBlock, ChannelParts, ClusterGain, HopGains,
    OrdinaryCluster, PathType, Visibility,
};
pub use irs::{
    irs_block_channel, irs_channel_blocks, irs_compensation_gain, irs_path, irs_segments, IrsPath, IrsSegment,
    PhaseProfile,
};
pub use oracle::{direct_field_oracle, exact_field_oracle, Excitation};
pub use propagation::{element_gain, hop_coefficient, propagation_coefficient, PropagationParams, RadiationPattern};
pub use response::{response_vector, stack_responses, ResponseVector};

use ndarray::Array2;
use num_complex::Complex64;

/// Complex scalar gain of one scatterer.
pub type ScattererGain = Complex64;

/// `w_Rᵀ·H·w_T` without conjugation.
pub fn combine(h: &Array2<Complex64>, rx_weights: &[Complex64], tx_weights: &[Complex64]) -> Complex64 {
    assert_eq!(
        h.dim(),
        (rx_weights.len(), tx_weights.len()),
        "weight/channel shape mismatch"
    );
    h.outer_iter()
        .zip(rx_weights)
        .map(|(row, wr)| wr * row.iter().zip(tx_weights).map(|(x, wt)| x * wt).sum::<Complex64>())
        .sum()
}
