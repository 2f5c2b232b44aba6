use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::index_offsets;

/// Plane-wave response of a segment, `exp(-j·γ·l)` over the symmetric
/// index set.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseVector(Vec<Complex64>);

impl ResponseVector {
    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Unconjugated inner product `aᵀw`.
    pub fn transpose_dot(&self, weights: &[Complex64]) -> Complex64 {
        assert_eq!(self.0.len(), weights.len(), "response/weight length mismatch");
        self.0.iter().zip(weights).map(|(a, w)| a * w).sum()
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }
}

pub fn response_vector(gamma: f64, n: usize) -> ResponseVector {
    ResponseVector(
        index_offsets(n)
            .map(|l| Complex64::from_polar(1.0, -gamma * l))
            .collect(),
    )
}

/// Whole-array response as the concatenation of per-segment responses.
pub fn stack_responses(per_segment: &[ResponseVector]) -> Result<ResponseVector> {
    if per_segment.is_empty() {
        return Err(Error::invalid("cannot stack an empty list of responses"));
    }
    Ok(ResponseVector(
        per_segment.iter().flat_map(|r| r.0.iter().copied()).collect(),
    ))
}
