//! Parameter sweeps and their CSV form.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use super::scenario::Scenario;
use crate::beamforming::{
    build_plan, focusing_segment_weights, stack_segment_weights, surface_channel, BeamPlan, SegmentWeights,
    SizingMethod,
};
use crate::channel::{assemble_channel, combine, direct_field_oracle, sample_ordinary_clusters};
use crate::error::{Error, Result};
use crate::geometry::{segment, view_of, Deployment, Point2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// Surface element count; all compared sizing methods.
    PathGain,
    /// Tx-Rx distance on a direct link; segmented focusing vs whole-array
    /// steering at the Rx.
    Convergence,
    /// Rx element count; span sizing with and without Rx weighting.
    RxCompare,
    /// Rx x-position; all compared sizing methods.
    Throughput,
    /// Rx position on an `X/Y` grid; the scenario's method.
    Coverage,
}

impl SweepKind {
    pub fn tag(self) -> &'static str {
        match self {
            SweepKind::PathGain => "pathgain",
            SweepKind::Convergence => "convergence",
            SweepKind::RxCompare => "rxcompare",
            SweepKind::Throughput => "throughput",
            SweepKind::Coverage => "coverage",
        }
    }

    /// Grid used when none is given on the command line.
    pub fn default_grid(self, scenario: &Scenario) -> String {
        match self {
            SweepKind::PathGain => "256,512,1024,2048".into(),
            SweepKind::Convergence => {
                let ff = scenario.deployment.rx.far_field_distance();
                format!("log:{}:{}:31", 0.1 * ff, 100.0 * ff)
            }
            SweepKind::RxCompare => "4,16,64".into(),
            SweepKind::Throughput => "lin:280:2800:25".into(),
            SweepKind::Coverage => "lin:-1400:1400:29/lin:100:2800:28".into(),
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SweepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            SweepKind::PathGain,
            SweepKind::Convergence,
            SweepKind::RxCompare,
            SweepKind::Throughput,
            SweepKind::Coverage,
        ]
        .into_iter()
        .find(|k| k.tag() == s)
        .ok_or_else(|| Error::invalid(format!("unknown sweep kind `{s}`")))
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub x: f64,
    /// Second coordinate of coverage grids.
    pub y: Option<f64>,
    pub method: String,
    pub n_active: usize,
    pub path_gain_db: f64,
    pub rx_power_dbm: f64,
    pub throughput_bps_hz: f64,
}

/// Spectral efficiency `log₂(1 + SNR)` with SNR from dBm levels.
pub fn throughput(received_dbm: f64, noise_dbm: f64) -> f64 {
    (10f64.powf((received_dbm - noise_dbm) / 10.0)).ln_1p() / std::f64::consts::LN_2
}

/// Surface path plus any ordinary clusters of the scenario, evaluated on
/// the segmented channel of `dep`.
pub fn received_with_clusters(plan: &BeamPlan, dep: &Deployment, scenario: &Scenario) -> Result<Complex64> {
    let mut h = surface_channel(plan, dep, &scenario.pattern, &scenario.propagation)?;
    if !scenario.clusters.is_empty() {
        let tx = dep.segment_tx()?;
        let rx = dep.segment_rx()?;
        let blocks = sample_ordinary_clusters(&scenario.clusters, &tx, &rx, scenario.seed)?;
        h += &assemble_channel(&blocks, &rx, &tx)?;
    }
    Ok(combine(
        &h,
        &plan.rx_element_weights(),
        &plan.tx_element_weights(dep.tx.n_elements()),
    ))
}

/// `10·log₁₀|r|²` for the plan on the scenario's own deployment.
pub fn path_gain(plan: &BeamPlan, scenario: &Scenario) -> Result<f64> {
    let r = received_with_clusters(plan, &scenario.deployment, scenario)?;
    Ok(10.0 * r.norm_sqr().log10())
}

fn row(scenario: &Scenario, x: f64, y: Option<f64>, method: &str, n_active: usize, r: Complex64) -> SweepResult {
    let path_gain_db = 10.0 * r.norm_sqr().log10();
    let rx_power_dbm = scenario.tx_power_dbm + path_gain_db;
    SweepResult {
        x,
        y,
        method: method.to_string(),
        n_active,
        path_gain_db,
        rx_power_dbm,
        throughput_bps_hz: throughput(rx_power_dbm, scenario.noise_dbm),
    }
}

fn element_count(v: f64, what: &str) -> Result<usize> {
    if v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(Error::invalid(format!("{what} must be a positive integer, got {v}")))
    }
}

fn planned_rows(
    scenario: &Scenario,
    dep: &Deployment,
    x: f64,
    y: Option<f64>,
    methods: &[SizingMethod],
) -> Result<Vec<SweepResult>> {
    methods
        .iter()
        .map(|m| {
            let plan = build_plan(dep, *m)?;
            let r = received_with_clusters(&plan, dep, scenario)?;
            Ok(row(scenario, x, y, m.tag(), plan.n_active(), r))
        })
        .collect()
}

/// Direct-link samples at distance `d` from the Rx along the scenario's
/// Rx-to-Tx direction: `(segmented focusing, whole-array steering)`.
pub fn convergence_samples(scenario: &Scenario, d: f64) -> Result<(Complex64, Complex64)> {
    let base = &scenario.deployment;
    let offset = base.tx.center() - base.rx.center();
    if offset.norm() == 0.0 {
        return Err(Error::invalid(
            "tx and rx centers coincide; no direction to sweep along",
        ));
    }
    let tx = base.tx.with_center(base.rx.center() + offset * (d / offset.norm()));
    let rx = base.rx;
    let p = &scenario.propagation;

    let tx_gamma = view_of(&tx, rx.center())?.gamma;
    let tx_w = SegmentWeights::steering(tx_gamma, tx.n_elements()).weights();

    let seg = segment(&rx, &tx.element_positions())?;
    let focused = stack_segment_weights(&focusing_segment_weights(&seg, tx.center())?);
    let steered = SegmentWeights::steering(view_of(&rx, tx.center())?.gamma, rx.n_elements()).weights();
    Ok((
        direct_field_oracle(&tx, &tx_w, &rx, &focused, p)?,
        direct_field_oracle(&tx, &tx_w, &rx, &steered, p)?,
    ))
}

fn point_rows(kind: SweepKind, scenario: &Scenario, x: f64, y: Option<f64>) -> Result<Vec<SweepResult>> {
    let base = scenario.deployment;
    match kind {
        SweepKind::PathGain => {
            let n = element_count(x, "surface size")?;
            let dep = Deployment {
                irs: base.irs.with_elements(n)?,
                ..base
            };
            planned_rows(scenario, &dep, x, None, &SizingMethod::COMPARED)
        }
        SweepKind::Throughput => {
            let dep = Deployment {
                rx: base.rx.with_center(Point2::new(x, base.rx.center().y)),
                ..base
            };
            planned_rows(scenario, &dep, x, None, &SizingMethod::COMPARED)
        }
        SweepKind::RxCompare => {
            let n = element_count(x, "rx size")?;
            let dep = Deployment {
                rx: base.rx.with_elements(n)?,
                ..base
            };
            planned_rows(
                scenario,
                &dep,
                x,
                None,
                &[SizingMethod::Span, SizingMethod::SpanSingleElement],
            )
        }
        SweepKind::Coverage => {
            let y = y.ok_or_else(|| Error::invalid("coverage needs an X/Y grid"))?;
            let dep = Deployment {
                rx: base.rx.with_center(Point2::new(x, y)),
                ..base
            };
            planned_rows(scenario, &dep, x, Some(y), &[scenario.method])
        }
        SweepKind::Convergence => {
            if !(x > 0.0) {
                return Err(Error::invalid(format!("distance must be positive, got {x}")));
            }
            let (focused, steered) = convergence_samples(scenario, x)?;
            let n = base.rx.n_elements();
            Ok(vec![
                row(scenario, x, None, "proposed", n, focused),
                row(scenario, x, None, "conventional", n, steered),
            ])
        }
    }
}

/// Evaluate every grid point (in parallel on the current rayon pool) and
/// return rows in grid order.
pub fn run_sweep(kind: SweepKind, scenario: &Scenario, grid: &[(f64, Option<f64>)]) -> Result<Vec<SweepResult>> {
    if kind != SweepKind::Coverage && grid.iter().any(|(_, y)| y.is_some()) {
        return Err(Error::invalid(format!("{kind} takes a one-dimensional grid")));
    }
    let per_point: Vec<Vec<SweepResult>> = grid
        .par_iter()
        .map(|(x, y)| point_rows(kind, scenario, *x, *y))
        .collect::<Result<_>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

/// Rayon pool with `threads` workers, or the default size for `None`.
pub fn worker_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::invalid("worker count must be at least 1"));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::invalid(e.to_string()))
}

/// Writes the rows with the fixed header; coverage rows get a trailing
/// `y` column.
pub fn write_csv<W: Write>(rows: &[SweepResult], out: W) -> Result<()> {
    let with_y = rows.iter().any(|r| r.y.is_some());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![
        "x",
        "method",
        "n_active",
        "path_gain_db",
        "rx_power_dbm",
        "throughput_bps_hz",
    ];
    if with_y {
        header.push("y");
    }
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.x.to_string(),
            r.method.clone(),
            r.n_active.to_string(),
            r.path_gain_db.to_string(),
            r.rx_power_dbm.to_string(),
            r.throughput_bps_hz.to_string(),
        ];
        if with_y {
            rec.push(r.y.map(|y| y.to_string()).unwrap_or_default());
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
