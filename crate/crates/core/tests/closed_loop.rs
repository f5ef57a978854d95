use nanocontour::geometry::circle_contour_error_exact;
use nanocontour::{
    benchmark_path_a, benchmark_path_b, compare, metrics, run, sweep, GainAxis, GainRange, Gains, Objective, PathKind,
    PathSpec, Scope, Segment, SimConfig, SweepSpec,
};

fn kd_spec() -> SweepSpec {
    SweepSpec::new(
        vec![GainRange { gain: GainAxis::KD, min: 0.0, max: 36.0, count: 7 }],
        Objective::RmsContour,
        Scope::FinalRevolution,
    )
}

fn final_rms(config: &SimConfig) -> f64 {
    metrics(&run(config).unwrap()).unwrap().final_revolution.unwrap().rms_contour_error
}

#[test]
fn coupling_reduces_final_revolution_error_on_both_paths() {
    for path in [benchmark_path_a(), benchmark_path_b()] {
        let base =
            SimConfig { gains: SimConfig::with_path(path.clone()).gains.uncoupled(), ..SimConfig::with_path(path) };
        let result = sweep(&base, &kd_spec()).unwrap();
        let at_zero = result.points.iter().find(|p| p.gains.k_dx == 0.0).unwrap().objective;
        let best = result.best_point();
        assert!(best.gains.k_dx > 0.0);
        assert!(best.objective < at_zero, "{} !< {at_zero}", best.objective);
        assert!(result.points.iter().all(|p| best.objective <= p.objective));
        assert_eq!(best.objective, final_rms(&SimConfig { gains: best.gains, ..base.clone() }));
    }
}

#[test]
fn compare_reports_negative_change_for_coupled_candidate() {
    let candidate = SimConfig::default();
    let baseline = SimConfig { coupling_enabled: false, ..candidate.clone() };
    let report = compare(&baseline, &candidate).unwrap();
    let change = report.change_final_revolution.unwrap();
    assert!(change.rms_contour_error < 0.0);
    assert!(change.max_abs_contour_error < 0.0);

    let same = compare(&candidate, &candidate).unwrap();
    assert_eq!(same.change_full.rms_contour_error, 0.0);
}

#[test]
fn halving_dt_barely_moves_final_revolution_error() {
    let config = SimConfig::with_path(benchmark_path_b());
    let coarse = final_rms(&config);
    let fine = final_rms(&SimConfig { dt: config.dt / 2.0, ..config });
    assert!((fine - coarse).abs() / coarse < 0.01);
}

#[test]
fn logged_contour_error_matches_exact_distance_on_circle() {
    let config = SimConfig::default();
    let trace = run(&config).unwrap();
    let circle = config.path.circle;
    for r in trace.records.iter().filter(|r| r.segment == Segment::Circle) {
        let exact = circle_contour_error_exact(nanocontour::Point2::new(r.x_act, r.y_act), &circle).unwrap();
        assert_eq!(r.eps, exact);
    }
}

#[test]
fn pi_only_tracking_leaves_steady_contour_error() {
    let path = PathSpec { kind: PathKind::CircleOnly, circle_revolutions: 3, ..benchmark_path_b() };
    let config =
        SimConfig { gains: Gains { k_dx: 0.0, k_dy: 0.0, ..SimConfig::default().gains }, ..SimConfig::with_path(path) };
    let m = metrics(&run(&config).unwrap()).unwrap();
    let last = m.final_revolution.unwrap();
    assert!(last.rms_contour_error > 0.1);
    assert!(last.max_abs_contour_error < config.path.circle.radius / 10.0);
}
