//! Beam-space channel simulator that treats an intelligent reflecting
//! surface as a controlled scattering cluster.
//!
//! Arrays are split into segments small enough that every scatterer lies in
//! each segment's far field. The reflected signal then becomes a sum of
//! plane-wave components, one per surface segment, and a two-tier design
//! (per-segment steering plus a common phase per segment) aligns them at the
//! receiver.
//!
//! Modules:
//! - [`geometry`]: arrays, angular views and the segmentation rule.
//! - [`channel`]: response vectors, block channels and the exact oracle.
//! - [`beamforming`]: Dirichlet-kernel analysis, sizing rules and beam plans.
//! - [`experiments`]: scenarios, sweeps and CSV output.

// `!(x > 0.0)` is used deliberately so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beamforming;
pub mod channel;
pub mod error;
pub mod experiments;
pub mod geometry;

pub use error::{Error, Result};
