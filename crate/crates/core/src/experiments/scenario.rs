//! Scenario files.
//!
//! A scenario is a TOML document. Lengths are either bare numbers (in
//! wavelengths) or strings with a `wl` or `m` suffix; meters are converted
//! with the wavelength at `frequency_ghz`. Angles are in degrees.
//!
//! ```toml
//! frequency_ghz = 28
//! method = "span"
//!
//! [irs]
//! center = ["0wl", "933wl"]
//! orientation_deg = 180
//! n_elements = 512
//!
//! [rx]
//! center = ["933wl", "0wl"]
//! n_elements = 1
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::beamforming::SizingMethod;
use crate::channel::{ClusterGain, OrdinaryCluster, PropagationParams, RadiationPattern, Visibility};
use crate::error::{Error, Result};
use crate::geometry::{ArraySpec, Deployment, Point2};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
enum RawLength {
    Number(f64),
    Text(LengthText),
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(try_from = "String")]
struct LengthText {
    value: f64,
    meters: bool,
}

impl TryFrom<String> for LengthText {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        let t = s.trim();
        let (num, meters) = if let Some(v) = t.strip_suffix("wl") {
            (v, false)
        } else if let Some(v) = t.strip_suffix('m') {
            (v, true)
        } else {
            return Err(format!("length `{s}` needs a `wl` or `m` suffix"));
        };
        let value = num
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("length `{s}` is not a number"))?;
        Ok(LengthText { value, meters })
    }
}

impl RawLength {
    fn wavelengths(self, wavelength_m: f64) -> f64 {
        match self {
            RawLength::Number(v) => v,
            RawLength::Text(LengthText { value, meters: false }) => value,
            RawLength::Text(LengthText { value, meters: true }) => value / wavelength_m,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArray {
    center: Option<[RawLength; 2]>,
    #[serde(default)]
    orientation_deg: f64,
    n_elements: Option<usize>,
    spacing: Option<RawLength>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPropagation {
    mode: Option<String>,
    a_att: Option<f64>,
    b_att: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCluster {
    position: [RawLength; 2],
    power_db: f64,
    tx_segments: Option<Vec<usize>>,
    rx_segments: Option<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    frequency_ghz: Option<f64>,
    tx: Option<RawArray>,
    irs: Option<RawArray>,
    rx: Option<RawArray>,
    propagation: Option<RawPropagation>,
    pattern_q: Option<f64>,
    tx_power_dbm: Option<f64>,
    noise_dbm: Option<f64>,
    method: Option<String>,
    seed: Option<u64>,
    #[serde(default)]
    clusters: Vec<RawCluster>,
}

/// Validated scenario, all lengths in wavelengths.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub frequency_ghz: f64,
    pub deployment: Deployment,
    pub propagation: PropagationParams,
    pub pattern: RadiationPattern,
    pub tx_power_dbm: f64,
    pub noise_dbm: f64,
    pub method: SizingMethod,
    pub seed: u64,
    pub clusters: Vec<OrdinaryCluster>,
}

impl Scenario {
    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT / (self.frequency_ghz * 1e9)
    }
}

const DEFAULT_FREQUENCY_GHZ: f64 = 28.0;
const DEFAULT_SPACING: f64 = 0.5;
const DEFAULT_TX_ELEMENTS: usize = 64;

fn array(raw: Option<RawArray>, name: &str, wavelength: f64, defaults: Option<(Point2, usize)>) -> Result<ArraySpec> {
    let field = |f: &str| format!("{name}.{f}");
    let Some(raw) = raw else {
        return match defaults {
            Some((c, n)) => ArraySpec::new(c, 0.0, n, DEFAULT_SPACING),
            None => Err(Error::validation(name, "missing table")),
        };
    };
    let center = match (raw.center, defaults) {
        (Some([x, y]), _) => Point2::new(x.wavelengths(wavelength), y.wavelengths(wavelength)),
        (None, Some((c, _))) => c,
        (None, None) => return Err(Error::validation(field("center"), "required")),
    };
    let n = match (raw.n_elements, defaults) {
        (Some(n), _) => n,
        (None, Some((_, n))) => n,
        (None, None) => return Err(Error::validation(field("n_elements"), "required")),
    };
    if n == 0 {
        return Err(Error::validation(field("n_elements"), "must be at least 1"));
    }
    let spacing = raw.spacing.map_or(DEFAULT_SPACING, |s| s.wavelengths(wavelength));
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::validation(
            field("spacing"),
            format!("must be positive, got {spacing}"),
        ));
    }
    if !center.is_finite() {
        return Err(Error::validation(field("center"), "must be finite"));
    }
    if !raw.orientation_deg.is_finite() {
        return Err(Error::validation(field("orientation_deg"), "must be finite"));
    }
    ArraySpec::new(center, raw.orientation_deg.to_radians(), n, spacing)
        .map_err(|e| Error::validation(name, e.to_string()))
}

fn propagation(raw: Option<RawPropagation>) -> Result<PropagationParams> {
    let Some(raw) = raw else {
        return Ok(PropagationParams::free_space());
    };
    match (raw.mode.as_deref(), raw.a_att, raw.b_att) {
        (None | Some("free_space"), None, None) => Ok(PropagationParams::free_space()),
        (Some("free_space"), _, _) => Err(Error::validation("propagation", "free_space mode takes no a_att/b_att")),
        (None | Some("explicit"), Some(a), Some(b)) => {
            PropagationParams::new(a, b).map_err(|e| Error::validation("propagation", e.to_string()))
        }
        (None | Some("explicit"), _, _) => Err(Error::validation(
            "propagation",
            "explicit mode needs both a_att and b_att",
        )),
        (Some(other), _, _) => Err(Error::validation(
            "propagation.mode",
            format!("expected `free_space` or `explicit`, got `{other}`"),
        )),
    }
}

/// Parse and validate a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario = toml::from_str(text)?;
    let frequency_ghz = raw.frequency_ghz.unwrap_or(DEFAULT_FREQUENCY_GHZ);
    if !(frequency_ghz > 0.0 && frequency_ghz.is_finite()) {
        return Err(Error::validation("frequency_ghz", "must be positive"));
    }
    let wavelength = SPEED_OF_LIGHT / (frequency_ghz * 1e9);

    let deployment = Deployment {
        tx: array(raw.tx, "tx", wavelength, Some((Point2::default(), DEFAULT_TX_ELEMENTS)))?,
        irs: array(raw.irs, "irs", wavelength, None)?,
        rx: array(raw.rx, "rx", wavelength, None)?,
    };
    let pattern = RadiationPattern::new(raw.pattern_q.unwrap_or(RadiationPattern::default().q_exp))
        .map_err(|e| Error::validation("pattern_q", e.to_string()))?;
    let method = match raw.method {
        Some(m) => m
            .parse()
            .map_err(|e: Error| Error::validation("method", e.to_string()))?,
        None => SizingMethod::Span,
    };
    let tx_power_dbm = raw.tx_power_dbm.unwrap_or(0.0);
    let noise_dbm = raw.noise_dbm.unwrap_or(-90.0);
    for (name, v) in [("tx_power_dbm", tx_power_dbm), ("noise_dbm", noise_dbm)] {
        if !v.is_finite() {
            return Err(Error::validation(name, "must be finite"));
        }
    }

    let clusters = raw
        .clusters
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let position = Point2::new(
                c.position[0].wavelengths(wavelength),
                c.position[1].wavelengths(wavelength),
            );
            if !position.is_finite() || !c.power_db.is_finite() {
                return Err(Error::validation(
                    format!("clusters[{i}]"),
                    "position and power_db must be finite",
                ));
            }
            Ok(OrdinaryCluster {
                position,
                gain: ClusterGain::ComplexGaussian {
                    variance: 10f64.powf(c.power_db / 10.0),
                },
                visibility: Visibility {
                    tx_segments: c.tx_segments,
                    rx_segments: c.rx_segments,
                },
            })
        })
        .collect::<Result<_>>()?;

    Ok(Scenario {
        frequency_ghz,
        deployment,
        propagation: propagation(raw.propagation)?,
        pattern,
        tx_power_dbm,
        noise_dbm,
        method,
        seed: raw.seed.unwrap_or(0),
        clusters,
    })
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    parse_scenario(&std::fs::read_to_string(path)?)
}
