//! Planar geometry of the transmitter, receiver and reflecting surface.
//!
//! Every length is expressed in wavelengths, so the wavenumber is the
//! constant `2π` and `2D²/λ` reduces to `2D²`.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Wavenumber `k = 2π/λ` with lengths measured in wavelengths.
pub const WAVENUMBER: f64 = TAU;

/// Point in the simulation plane, in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other - self).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

/// Round half up to the nearest integer.
pub(crate) fn round_half_up(x: f64) -> f64 {
    (x + 0.5).floor()
}

/// The symmetric index set `{i - (z-1)/2 : i = 0..z}`.
pub fn symmetric_index_set(z: usize) -> Result<Vec<f64>> {
    if z == 0 {
        return Err(Error::invalid("index set size must be at least 1"));
    }
    Ok(index_offsets(z).collect())
}

/// Infallible form of [`symmetric_index_set`]; yields nothing for `z = 0`.
pub(crate) fn index_offsets(z: usize) -> impl Iterator<Item = f64> + Clone {
    let half = (z as f64 - 1.0) / 2.0;
    (0..z).map(move |i| i as f64 - half)
}

/// A uniform linear array.
///
/// Element `l` (for `l` in the symmetric index set of size `n_elements`)
/// sits at `center + l·spacing·axis`, where `axis` is the unit vector at
/// `orientation` from the global x-axis. The broadside normal is `axis`
/// rotated by +90°, so an array with orientation 0 faces +y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArraySpec {
    center: Point2,
    orientation: f64,
    n_elements: usize,
    spacing: f64,
}

impl ArraySpec {
    pub fn new(center: Point2, orientation: f64, n_elements: usize, spacing: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::invalid("array center must be finite"));
        }
        if !orientation.is_finite() {
            return Err(Error::invalid("array orientation must be finite"));
        }
        if n_elements == 0 {
            return Err(Error::invalid("array needs at least one element"));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::invalid(format!(
                "element spacing must be positive, got {spacing}"
            )));
        }
        Ok(ArraySpec {
            center,
            orientation,
            n_elements,
            spacing,
        })
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Physical size `D = N·q`.
    pub fn size(&self) -> f64 {
        self.n_elements as f64 * self.spacing
    }

    /// Far-field distance `2D²/λ` of the whole array.
    pub fn far_field_distance(&self) -> f64 {
        2.0 * self.size() * self.size()
    }

    pub fn axis(&self) -> Point2 {
        Point2::new(self.orientation.cos(), self.orientation.sin())
    }

    pub fn normal(&self) -> Point2 {
        Point2::new(-self.orientation.sin(), self.orientation.cos())
    }

    /// Same array moved to a new center.
    pub fn with_center(&self, center: Point2) -> Self {
        ArraySpec { center, ..*self }
    }

    /// Same array with a different element count, still centered.
    pub fn with_elements(&self, n_elements: usize) -> Result<Self> {
        ArraySpec::new(self.center, self.orientation, n_elements, self.spacing)
    }

    /// Position of the element at storage index `i` (0-based, ascending `l`).
    pub fn element_position(&self, i: usize) -> Point2 {
        let offset = i as f64 - (self.n_elements as f64 - 1.0) / 2.0;
        self.center + self.axis() * (offset * self.spacing)
    }

    pub fn element_positions(&self) -> Vec<Point2> {
        element_positions(self)
    }

    /// Contiguous sub-array of `len` elements starting at storage index `start`.
    pub fn sub_array(&self, start: usize, len: usize) -> Result<ArraySpec> {
        if len == 0 || start + len > self.n_elements {
            return Err(Error::invalid(format!(
                "sub-array {start}..{} outside array of {} elements",
                start + len,
                self.n_elements
            )));
        }
        let first = self.element_position(start);
        let last = self.element_position(start + len - 1);
        let center = (first + last) * 0.5;
        ArraySpec::new(center, self.orientation, len, self.spacing)
    }
}

/// Element positions of `a`, ordered by ascending index offset.
pub fn element_positions(a: &ArraySpec) -> Vec<Point2> {
    let axis = a.axis();
    index_offsets(a.n_elements)
        .map(|l| a.center + axis * (l * a.spacing))
        .collect()
}

/// Where a target sits as seen from an array (or array segment) center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularView {
    /// Angle from broadside, in `(-π, π]`. Values beyond `±π/2` mean the
    /// target is behind the aperture.
    pub theta: f64,
    /// Spatial frequency `k·q·sin(theta)` in radians per element.
    pub gamma: f64,
    pub distance: f64,
}

impl AngularView {
    pub fn is_front(&self) -> bool {
        self.theta.abs() <= std::f64::consts::FRAC_PI_2
    }
}

/// View of `target` from the center of `observer`.
pub fn view_of(observer: &ArraySpec, target: Point2) -> Result<AngularView> {
    let v = target - observer.center;
    let distance = v.norm();
    if !(distance > 0.0) {
        return Err(Error::invalid(format!(
            "target ({}, {}) coincides with the observer center",
            target.x, target.y
        )));
    }
    let along = v.dot(observer.axis());
    let across = v.dot(observer.normal());
    let theta = along.atan2(across);
    Ok(AngularView {
        theta,
        gamma: WAVENUMBER * observer.spacing * along / distance,
        distance,
    })
}

/// Largest segment element count whose far-field distance does not exceed
/// `d_min`: `round(√(d_min/2) / spacing)`, at least 1.
pub fn max_segment_elements(d_min: f64, spacing: f64) -> Result<usize> {
    if !(d_min > 0.0) || !d_min.is_finite() {
        return Err(Error::invalid(format!(
            "reference distance must be positive, got {d_min}"
        )));
    }
    if !(spacing > 0.0) || !spacing.is_finite() {
        return Err(Error::invalid(format!(
            "element spacing must be positive, got {spacing}"
        )));
    }
    let n = round_half_up((d_min / 2.0).sqrt() / spacing);
    Ok(n.max(1.0) as usize)
}

/// Partition of an array into equal contiguous segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segmentation {
    parent: ArraySpec,
    elements_per_segment: usize,
}

impl Segmentation {
    pub fn new(parent: ArraySpec, elements_per_segment: usize) -> Result<Self> {
        if elements_per_segment == 0 || !parent.n_elements.is_multiple_of(elements_per_segment) {
            return Err(Error::invalid(format!(
                "{elements_per_segment} elements per segment does not divide {}",
                parent.n_elements
            )));
        }
        Ok(Segmentation {
            parent,
            elements_per_segment,
        })
    }

    /// The whole array as one segment.
    pub fn single(parent: ArraySpec) -> Self {
        Segmentation {
            parent,
            elements_per_segment: parent.n_elements,
        }
    }

    /// Every element is its own segment.
    pub fn per_element(parent: ArraySpec) -> Self {
        Segmentation {
            parent,
            elements_per_segment: 1,
        }
    }

    pub fn parent(&self) -> &ArraySpec {
        &self.parent
    }

    pub fn n_segments(&self) -> usize {
        self.parent.n_elements / self.elements_per_segment
    }

    pub fn elements_per_segment(&self) -> usize {
        self.elements_per_segment
    }

    /// Storage indices of the elements in segment `s`.
    pub fn element_range(&self, s: usize) -> std::ops::Range<usize> {
        let start = s * self.elements_per_segment;
        start..start + self.elements_per_segment
    }

    /// Segment `s` as an array of its own.
    pub fn segment_spec(&self, s: usize) -> ArraySpec {
        assert!(s < self.n_segments(), "segment {s} out of range");
        let offset = (s as f64 - (self.n_segments() as f64 - 1.0) / 2.0)
            * self.elements_per_segment as f64
            * self.parent.spacing;
        ArraySpec {
            center: self.parent.center + self.parent.axis() * offset,
            n_elements: self.elements_per_segment,
            ..self.parent
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = ArraySpec> + '_ {
        (0..self.n_segments()).map(move |s| self.segment_spec(s))
    }

    pub fn centers(&self) -> Vec<Point2> {
        self.segments().map(|s| s.center).collect()
    }
}

/// Segment `a` so that the nearest point of `constellation` lies in the far
/// field of every segment.
///
/// The reference distance is measured from the array center. The segment
/// size is snapped down to a divisor of the element count.
pub fn segment(a: &ArraySpec, constellation: &[Point2]) -> Result<Segmentation> {
    if constellation.is_empty() {
        return Err(Error::invalid("segmentation needs at least one scatterer"));
    }
    let d_min = constellation
        .iter()
        .map(|p| a.center.distance(*p))
        .fold(f64::INFINITY, f64::min);
    let cap = if d_min > 0.0 {
        max_segment_elements(d_min, a.spacing)?.min(a.n_elements)
    } else {
        1
    };
    let size = (1..=cap).rev().find(|n| a.n_elements.is_multiple_of(*n)).unwrap_or(1);
    Segmentation::new(*a, size)
}

/// The three units of a single-surface link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deployment {
    pub tx: ArraySpec,
    pub irs: ArraySpec,
    pub rx: ArraySpec,
}

impl Deployment {
    /// Tx segmentation against the surface elements.
    pub fn segment_tx(&self) -> Result<Segmentation> {
        segment(&self.tx, &self.irs.element_positions())
    }

    /// Rx segmentation against the surface elements.
    pub fn segment_rx(&self) -> Result<Segmentation> {
        segment(&self.rx, &self.irs.element_positions())
    }

    /// Surface segmentation against every Tx and Rx element.
    pub fn segment_irs(&self) -> Result<Segmentation> {
        let mut points = self.tx.element_positions();
        points.extend(self.rx.element_positions());
        segment(&self.irs, &points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn ula(n: usize) -> ArraySpec {
        ArraySpec::new(Point2::default(), 0.0, n, 0.5).unwrap()
    }

    #[test]
    fn index_sets() {
        assert_eq!(symmetric_index_set(3).unwrap(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(symmetric_index_set(1).unwrap(), vec![0.0]);
        assert_eq!(symmetric_index_set(4).unwrap(), vec![-1.5, -0.5, 0.5, 1.5]);
        assert!(matches!(symmetric_index_set(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn positions_follow_index_set() {
        let xs: Vec<f64> = element_positions(&ula(3)).iter().map(|p| p.x).collect();
        assert_eq!(xs, vec![-0.5, 0.0, 0.5]);
        let xs: Vec<f64> = element_positions(&ula(4)).iter().map(|p| p.x).collect();
        assert_eq!(xs, vec![-0.75, -0.25, 0.25, 0.75]);
        let one = element_positions(&ula(1));
        assert_eq!(one, vec![Point2::default()]);
    }

    #[test]
    fn rejects_bad_arrays() {
        assert!(ArraySpec::new(Point2::default(), 0.0, 0, 0.5).is_err());
        assert!(ArraySpec::new(Point2::default(), 0.0, 4, -0.5).is_err());
        assert!(ArraySpec::new(Point2::new(f64::NAN, 0.0), 0.0, 4, 0.5).is_err());
    }

    #[test]
    fn views() {
        let obs = ula(1);
        let v = view_of(&obs, Point2::new(0.0, 933.0)).unwrap();
        assert_eq!(v.theta, 0.0);
        assert_eq!(v.distance, 933.0);
        let v = view_of(&obs, Point2::new(933.0, 933.0)).unwrap();
        assert_abs_diff_eq!(v.theta, FRAC_PI_4, epsilon = 1e-15);
        let v = view_of(&obs, Point2::new(127.75, 933.0)).unwrap();
        let expected = PI * 127.75 / (127.75f64 * 127.75 + 933.0 * 933.0).sqrt();
        assert_abs_diff_eq!(v.gamma, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(v.gamma, 0.4262, epsilon = 1e-4);
        assert!(view_of(&obs, Point2::default()).is_err());
    }

    #[test]
    fn back_side_is_flagged() {
        let v = view_of(&ula(1), Point2::new(0.0, -10.0)).unwrap();
        assert!(!v.is_front());
        assert_abs_diff_eq!(v.theta.abs(), PI, epsilon = 1e-15);
    }

    #[test]
    fn segment_size_limits() {
        assert_eq!(max_segment_elements(933.0, 0.5).unwrap(), 43);
        assert_eq!(max_segment_elements(2.0, 0.5).unwrap(), 2);
        assert!(max_segment_elements(0.0, 0.5).is_err());
        assert!(max_segment_elements(10.0, 0.0).is_err());
    }

    #[test]
    fn far_field_column_distances() {
        // Nearest element of a horizontal surface centered at (933, 933).
        for (n, expected) in [(2048usize, 45usize), (1024, 48), (512, 50), (256, 51)] {
            let nearest_x = 933.0 - (n as f64 - 1.0) / 4.0;
            let d = nearest_x.hypot(933.0);
            assert_eq!(max_segment_elements(d, 0.5).unwrap(), expected, "{n}");
        }
    }

    #[test]
    fn segmentation_rule() {
        let tx = ula(64);
        let seg = segment(&tx, &[Point2::new(0.0, 933.0)]).unwrap();
        assert_eq!(seg.elements_per_segment(), 32);
        assert_eq!(seg.n_segments(), 2);

        let far = segment(&tx, &[Point2::new(0.0, 1.0e5)]).unwrap();
        assert_eq!(far.n_segments(), 1);

        let near = segment(&tx, &[Point2::new(0.0, 0.5)]).unwrap();
        assert_eq!(near.elements_per_segment(), 1);

        assert!(segment(&tx, &[]).is_err());
    }

    #[test]
    fn segment_centers_are_element_means() {
        let a = ArraySpec::new(Point2::new(3.0, -2.0), 0.7, 24, 0.5).unwrap();
        let seg = Segmentation::new(a, 6).unwrap();
        let pos = a.element_positions();
        for s in 0..seg.n_segments() {
            let r = seg.element_range(s);
            let n = r.len() as f64;
            let mean = pos[r].iter().fold(Point2::default(), |acc, p| acc + *p) * (1.0 / n);
            let c = seg.segment_spec(s).center();
            assert_abs_diff_eq!(mean.x, c.x, epsilon = 1e-12);
            assert_abs_diff_eq!(mean.y, c.y, epsilon = 1e-12);
        }
        let sub = a.sub_array(6, 6).unwrap();
        assert_eq!(sub.n_elements(), 6);
        assert_abs_diff_eq!(sub.center().x, seg.segment_spec(1).center().x, epsilon = 1e-12);
        assert_abs_diff_eq!(sub.center().y, seg.segment_spec(1).center().y, epsilon = 1e-12);
    }
}
