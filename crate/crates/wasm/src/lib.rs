//! Browser bindings: a closed-loop run for plotting, a single-point contour
//! error probe, and a coupling-gain sweep curve.

use nanocontour::geometry::{
    circle_contour_error_exact, circle_contour_error_linearized, contour_error_components, Expansion,
};
use nanocontour::{
    benchmark_path_a, benchmark_path_b, metrics, run, sweep, AxialErrors, CircleSpec, GainAxis, GainRange, Gains,
    Objective, PathSpec, PathTangent, Point2, Scope, SimConfig, SweepSpec,
};
use wasm_bindgen::prelude::*;

/// Points kept per plotted series.
const PLOT_POINTS: usize = 3000;

fn path_named(name: &str) -> Result<PathSpec, String> {
    match name {
        "a" => Ok(benchmark_path_a()),
        "b" => Ok(benchmark_path_b()),
        other => Err(format!("unknown path {other:?}, expected \"a\" or \"b\"")),
    }
}

fn config(path: &str, k_p: f64, k_i: f64, k_d: f64, coupling: bool) -> Result<SimConfig, String> {
    let config = SimConfig {
        coupling_enabled: coupling,
        gains: Gains { k_px: k_p, k_ix: k_i, k_py: k_p, k_iy: k_i, k_dx: k_d, k_dy: k_d },
        ..SimConfig::with_path(path_named(path)?)
    };
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

/// Decimated trace plus summary statistics.
#[derive(Debug)]
#[wasm_bindgen]
pub struct RunView {
    t: Vec<f64>,
    x_ref: Vec<f64>,
    y_ref: Vec<f64>,
    x_act: Vec<f64>,
    y_act: Vec<f64>,
    eps: Vec<f64>,
    final_rms: f64,
    final_max: f64,
    full_max: f64,
}

#[wasm_bindgen]
impl RunView {
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }
    pub fn x_ref(&self) -> Vec<f64> {
        self.x_ref.clone()
    }
    pub fn y_ref(&self) -> Vec<f64> {
        self.y_ref.clone()
    }
    pub fn x_act(&self) -> Vec<f64> {
        self.x_act.clone()
    }
    pub fn y_act(&self) -> Vec<f64> {
        self.y_act.clone()
    }
    pub fn eps(&self) -> Vec<f64> {
        self.eps.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn final_rms(&self) -> f64 {
        self.final_rms
    }
    #[wasm_bindgen(getter)]
    pub fn final_max(&self) -> f64 {
        self.final_max
    }
    #[wasm_bindgen(getter)]
    pub fn full_max(&self) -> f64 {
        self.full_max
    }
}

/// Runs path `"a"` or `"b"` with gains shared by both axes.
#[wasm_bindgen]
pub fn simulate(path: &str, k_p: f64, k_i: f64, k_d: f64, coupling: bool) -> Result<RunView, String> {
    let config = config(path, k_p, k_i, k_d, coupling)?;
    let trace = run(&config).map_err(|e| e.to_string())?;
    let m = metrics(&trace).map_err(|e| e.to_string())?;
    let last = m.final_revolution.unwrap_or(m.full);

    let stride = trace.len().div_ceil(PLOT_POINTS).max(1);
    let kept: Vec<_> = trace.records.iter().step_by(stride).collect();
    let col = |f: fn(&nanocontour::TraceRecord) -> f64| kept.iter().map(|r| f(r)).collect::<Vec<_>>();
    Ok(RunView {
        t: col(|r| r.t),
        x_ref: col(|r| r.x_ref),
        y_ref: col(|r| r.y_ref),
        x_act: col(|r| r.x_act),
        y_act: col(|r| r.y_act),
        eps: col(|r| r.eps),
        final_rms: last.rms_contour_error,
        final_max: last.max_abs_contour_error,
        full_max: m.full.max_abs_contour_error,
    })
}

/// Contour error of a stage displaced by `(dx, dy)` from the command point
/// at polar angle `phi_deg` on a centered circle of `radius`. The axial
/// errors are `(-dx, -dy)`.
///
/// Returns `[exact, first_order, second_order, eps_x, eps_y]`.
#[wasm_bindgen]
pub fn probe(radius: f64, phi_deg: f64, dx: f64, dy: f64) -> Result<Vec<f64>, String> {
    let circle = CircleSpec::new(Point2::ORIGIN, radius).map_err(|e| e.to_string())?;
    let phi = phi_deg.to_radians();
    let command = circle.point_at(phi);
    let tangent = PathTangent::from_angle(phi + std::f64::consts::FRAC_PI_2);
    let e = AxialErrors::new(-dx, -dy);
    let exact = circle_contour_error_exact(e.actual_from(command), &circle).map_err(|e| e.to_string())?;
    let first =
        circle_contour_error_linearized(e, tangent, radius, Expansion::FirstOrder).map_err(|e| e.to_string())?;
    let second =
        circle_contour_error_linearized(e, tangent, radius, Expansion::SecondOrder).map_err(|e| e.to_string())?;
    let v = contour_error_components(e, tangent);
    Ok(vec![exact, first, second, v.eps_x, v.eps_y])
}

/// Final-revolution RMS contour error for `count` coupling gains evenly
/// spaced over `[0, k_d_max]`. Unstable gains give infinity.
#[wasm_bindgen]
pub fn coupling_sweep(path: &str, k_p: f64, k_i: f64, k_d_max: f64, count: usize) -> Result<Vec<f64>, String> {
    let base = config(path, k_p, k_i, 0.0, true)?;
    let spec = SweepSpec::new(
        vec![GainRange { gain: GainAxis::KD, min: 0.0, max: k_d_max, count }],
        Objective::RmsContour,
        Scope::FinalRevolution,
    );
    let result = sweep(&base, &spec).map_err(|e| e.to_string())?;
    Ok(result.points.iter().map(|p| p.objective).collect())
}
