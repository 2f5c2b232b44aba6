//! Block structure of the decomposed channel `H = H^S + H^L + H^M`.

use ndarray::{s, Array2};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::response::response_vector;
use crate::error::{Error, Result};
use crate::geometry::{view_of, Point2, Segmentation};

/// Which kind of scatterers a path bounces off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathType {
    /// Ordinary scatterers only (type S).
    Ordinary,
    /// Reflecting-surface segments only (type L).
    Controlled,
    /// Both kinds along one path (type M).
    Mixed,
}

/// Channel between Rx segment `rx_segment` and Tx segment `tx_segment`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelBlock {
    pub matrix: Array2<Complex64>,
    pub rx_segment: usize,
    pub tx_segment: usize,
    pub path_type: PathType,
}

impl ChannelBlock {
    pub fn new(matrix: Array2<Complex64>, rx_segment: usize, tx_segment: usize, path_type: PathType) -> Self {
        ChannelBlock {
            matrix,
            rx_segment,
            tx_segment,
            path_type,
        }
    }
}

/// Places a complete `S_R × S_T` grid of same-type blocks into the full
/// `N_R × N_T` matrix.
pub fn assemble_channel(blocks: &[ChannelBlock], rx: &Segmentation, tx: &Segmentation) -> Result<Array2<Complex64>> {
    let (s_r, s_t) = (rx.n_segments(), tx.n_segments());
    let (n_rs, n_ts) = (rx.elements_per_segment(), tx.elements_per_segment());
    if blocks.len() != s_r * s_t {
        return Err(Error::invalid(format!(
            "expected {} blocks for a {s_r}x{s_t} grid, got {}",
            s_r * s_t,
            blocks.len()
        )));
    }
    let path_type = blocks[0].path_type;
    let mut seen = vec![false; s_r * s_t];
    let mut h = Array2::<Complex64>::zeros((rx.parent().n_elements(), tx.parent().n_elements()));
    for b in blocks {
        if b.path_type != path_type {
            return Err(Error::invalid("blocks of different path types in one grid"));
        }
        if b.rx_segment >= s_r || b.tx_segment >= s_t {
            return Err(Error::invalid(format!(
                "block ({}, {}) outside the {s_r}x{s_t} grid",
                b.rx_segment, b.tx_segment
            )));
        }
        if b.matrix.dim() != (n_rs, n_ts) {
            return Err(Error::invalid(format!(
                "block ({}, {}) has shape {:?}, expected ({n_rs}, {n_ts})",
                b.rx_segment,
                b.tx_segment,
                b.matrix.dim()
            )));
        }
        let slot = b.rx_segment * s_t + b.tx_segment;
        if std::mem::replace(&mut seen[slot], true) {
            return Err(Error::invalid(format!(
                "duplicate block ({}, {})",
                b.rx_segment, b.tx_segment
            )));
        }
        let r = rx.element_range(b.rx_segment);
        let c = tx.element_range(b.tx_segment);
        h.slice_mut(s![r.start..r.end, c.start..c.end]).assign(&b.matrix);
    }
    Ok(h)
}

/// Sum of the per-type channels; absent types contribute zero.
#[derive(Debug, Clone, Default)]
pub struct ChannelParts {
    pub ordinary: Option<Array2<Complex64>>,
    pub controlled: Option<Array2<Complex64>>,
    pub mixed: Option<Array2<Complex64>>,
}

impl ChannelParts {
    pub fn total(&self, n_rx: usize, n_tx: usize) -> Result<Array2<Complex64>> {
        let mut h = Array2::<Complex64>::zeros((n_rx, n_tx));
        for part in [&self.ordinary, &self.controlled, &self.mixed].into_iter().flatten() {
            if part.dim() != (n_rx, n_tx) {
                return Err(Error::invalid(format!(
                    "channel part has shape {:?}, expected ({n_rx}, {n_tx})",
                    part.dim()
                )));
            }
            h += part;
        }
        Ok(h)
    }
}

/// Gain law of an ordinary cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClusterGain {
    /// Circularly-symmetric complex Gaussian with the given variance.
    ComplexGaussian {
        variance: f64,
    },
    Fixed(Complex64),
}

impl Default for ClusterGain {
    fn default() -> Self {
        ClusterGain::ComplexGaussian { variance: 1.0 }
    }
}

/// Which Tx and Rx segments see a cluster. `None` means all of them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Visibility {
    pub tx_segments: Option<Vec<usize>>,
    pub rx_segments: Option<Vec<usize>>,
}

impl Visibility {
    fn sees(mask: &Option<Vec<usize>>, s: usize) -> bool {
        mask.as_ref().is_none_or(|m| m.contains(&s))
    }
}

/// A single-scatterer ordinary cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinaryCluster {
    pub position: Point2,
    pub gain: ClusterGain,
    pub visibility: Visibility,
}

/// Draws the type-S blocks for one realization. Gains are drawn once per
/// cluster in list order, so the result is a pure function of `seed`.
pub fn sample_ordinary_clusters(
    clusters: &[OrdinaryCluster],
    tx: &Segmentation,
    rx: &Segmentation,
    seed: u64,
) -> Result<Vec<ChannelBlock>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gains = Vec::with_capacity(clusters.len());
    for cl in clusters {
        for (mask, limit, side) in [
            (&cl.visibility.tx_segments, tx.n_segments(), "tx"),
            (&cl.visibility.rx_segments, rx.n_segments(), "rx"),
        ] {
            if let Some(bad) = mask.iter().flatten().find(|s| **s >= limit) {
                return Err(Error::invalid(format!(
                    "{side} visibility index {bad} outside {limit} segments"
                )));
            }
        }
        gains.push(match cl.gain {
            ClusterGain::ComplexGaussian { variance } => {
                let sigma = (variance / 2.0).sqrt();
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex64::new(sigma * re, sigma * im)
            }
            ClusterGain::Fixed(g) => g,
        });
    }

    let mut blocks = Vec::with_capacity(rx.n_segments() * tx.n_segments());
    for n in 0..rx.n_segments() {
        let rx_seg = rx.segment_spec(n);
        for c in 0..tx.n_segments() {
            let tx_seg = tx.segment_spec(c);
            let mut m = Array2::<Complex64>::zeros((rx_seg.n_elements(), tx_seg.n_elements()));
            for (cl, beta) in clusters.iter().zip(&gains) {
                if !Visibility::sees(&cl.visibility.tx_segments, c) || !Visibility::sees(&cl.visibility.rx_segments, n)
                {
                    continue;
                }
                let a_r = response_vector(view_of(&rx_seg, cl.position)?.gamma, rx_seg.n_elements());
                let a_t = response_vector(view_of(&tx_seg, cl.position)?.gamma, tx_seg.n_elements());
                for (i, ar) in a_r.entries().iter().enumerate() {
                    for (j, at) in a_t.entries().iter().enumerate() {
                        m[[i, j]] += beta * ar * at;
                    }
                }
            }
            blocks.push(ChannelBlock::new(m, n, c, PathType::Ordinary));
        }
    }
    Ok(blocks)
}

/// Gains of the two hops of a second-order path through intermediate
/// segment `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopGains {
    pub first: Complex64,
    pub second: Complex64,
}

/// Gain of a second-order path summed over the intermediate segments.
///
/// With `heterogeneous` set, each term is scaled by its ordinary-scatterer
/// factor before summation.
pub fn second_order_gain(hops: &[HopGains], heterogeneous: Option<&[Complex64]>) -> Result<Complex64> {
    if hops.is_empty() {
        return Err(Error::invalid(
            "second-order gain needs at least one intermediate segment",
        ));
    }
    match heterogeneous {
        None => Ok(hops.iter().map(|h| h.first * h.second).sum()),
        Some(factors) if factors.len() == hops.len() => {
            Ok(hops.iter().zip(factors).map(|(h, f)| f * h.first * h.second).sum())
        }
        Some(factors) => Err(Error::invalid(format!(
            "{} ordinary-scatterer factors for {} intermediate segments",
            factors.len(),
            hops.len()
        ))),
    }
}
