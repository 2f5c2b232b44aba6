use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use irsbeam::beamforming::{build_plan, near_field_pattern, stack_segment_weights, SegmentWeights, SizingMethod};
use irsbeam::channel::{direct_field_oracle, PropagationParams};
use irsbeam::geometry::{max_segment_elements, segment, ArraySpec, Deployment, Point2, Segmentation};

fn point() -> impl Strategy<Value = Point2> {
    (-3000.0f64..3000.0, -3000.0f64..3000.0).prop_map(|(x, y)| Point2::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Segments are the largest divisor not above the raw size, and with a
    /// raw size of at least 21 every constellation point lies within 5% of
    /// the segment far-field distance or beyond it.
    #[test]
    fn segmentation_rule(
        n in 1usize..600,
        spacing in 0.25f64..1.0,
        orientation in -PI..PI,
        cloud in proptest::collection::vec(point(), 1..20),
    ) {
        let a = ArraySpec::new(Point2::default(), orientation, n, spacing).unwrap();
        prop_assume!(cloud.iter().all(|p| p.norm() > 1.0));
        let seg = segment(&a, &cloud).unwrap();
        let d_min = cloud.iter().map(|p| p.norm()).fold(f64::INFINITY, f64::min);
        let cap = max_segment_elements(d_min, spacing).unwrap();
        let size = seg.elements_per_segment();
        prop_assert_eq!(n % size, 0);
        prop_assert!(size <= cap.max(1));
        prop_assert!(((size + 1)..=cap.min(n)).all(|k| n % k != 0));
        prop_assert_eq!(seg.n_segments() * size, n);
        let raw = (d_min / 2.0).sqrt() / spacing;
        if raw >= 21.0 {
            let d = size as f64 * spacing;
            prop_assert!(2.0 * d * d <= 1.05 * d_min);
        }
    }

    #[test]
    fn plan_invariants(
        tx_n in 1usize..=64,
        irs_n in 1usize..=512,
        rx_n in 1usize..=16,
        irs_x in -1200.0f64..1200.0,
        irs_y in 400.0f64..2000.0,
        rx_x in -1200.0f64..1200.0,
        method in prop_oneof![
            Just(SizingMethod::Span),
            Just(SizingMethod::SpanSingleElement),
            Just(SizingMethod::FarField),
            Just(SizingMethod::MainLobe),
            Just(SizingMethod::FarFieldConv),
        ],
    ) {
        let dep = Deployment {
            tx: ArraySpec::new(Point2::default(), 0.0, tx_n, 0.5).unwrap(),
            irs: ArraySpec::new(Point2::new(irs_x, irs_y), PI, irs_n, 0.5).unwrap(),
            rx: ArraySpec::new(Point2::new(rx_x, 0.0), 0.0, rx_n, 0.5).unwrap(),
        };
        let plan = build_plan(&dep, method).unwrap();
        prop_assert!(plan.respects_steering_bounds(&dep));
        let active = plan.tx.active.clone();
        prop_assert!(active.end <= tx_n && !active.is_empty());
        prop_assert_eq!(active.start, (tx_n - active.len()) / 2);
        let power: f64 = plan.tx_element_weights(tx_n).iter().map(|w| w.norm_sqr()).sum();
        prop_assert!((power - 1.0).abs() < 1e-9);
        prop_assert_eq!(plan.irs_element_phases().len(), irs_n);
        if method == SizingMethod::FarFieldConv {
            prop_assert_eq!(plan.n_active(), tx_n);
        }
    }

    /// A segmented Tx pattern with the far-field rule applied matches the
    /// element-level field within 0.5 dB near the beam peak.
    #[test]
    fn near_field_pattern_tracks_direct_field(
        n in prop::sample::select(vec![16usize, 32, 64, 128]),
        d in 300.0f64..3000.0,
        angle in -0.8f64..0.8,
    ) {
        let a = ArraySpec::new(Point2::default(), 0.0, n, 0.5).unwrap();
        let target = Point2::new(d * angle.sin(), d * angle.cos());
        let seg = segment(&a, &[target]).unwrap();
        let p = PropagationParams::free_space();
        let weights: Vec<SegmentWeights> = irsbeam::beamforming::focusing_segment_weights(&seg, target).unwrap();
        let model = near_field_pattern(&seg, &weights, target, &p).unwrap();
        let probe = ArraySpec::new(target, PI, 1, 0.5).unwrap();
        let exact = direct_field_oracle(&a, &stack_segment_weights(&weights), &probe, &[Complex64::new(1.0, 0.0)], &p).unwrap();
        let gap = 10.0 * (model.norm_sqr() / exact.norm_sqr()).log10();
        prop_assert!(gap.abs() < 0.5, "gap {gap} dB");
    }
}

#[test]
fn single_segment_pattern_has_kernel_peak() {
    let a = ArraySpec::new(Point2::default(), 0.0, 64, 0.5).unwrap();
    let p = PropagationParams::free_space();
    let target = Point2::new(0.0, 933.0);
    let seg = Segmentation::single(a);
    let b = near_field_pattern(&seg, &[SegmentWeights::steering(0.0, 64)], target, &p).unwrap();
    let g0 = irsbeam::channel::hop_coefficient(933.0, &p).unwrap();
    assert!((b.norm() - 8.0 * g0.norm()).abs() < 1e-12 * b.norm());
}
