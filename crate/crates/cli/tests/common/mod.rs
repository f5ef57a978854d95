//! Independent reference computations shared by the integration suites.
#![allow(dead_code)]

use std::f64::consts::TAU;
use std::path::PathBuf;

use nanocontour::{CircleSpec, PlantParams, Point2};

pub fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

/// Signed distance to the circle by brute-force sampling: 1000 samples over
/// the whole circle, then five rounds of 1000 samples in a window of four
/// steps around the best sample so far. Negative inside.
pub fn sampled_signed_distance(actual: Point2, circle: &CircleSpec) -> f64 {
    const SAMPLES: usize = 1000;
    let dist = |phi: f64| {
        let p = Point2::new(circle.center.x + circle.radius * phi.cos(), circle.center.y + circle.radius * phi.sin());
        ((actual.x - p.x).powi(2) + (actual.y - p.y).powi(2)).sqrt()
    };
    let (mut lo, mut hi) = (0.0, TAU);
    let mut best = f64::INFINITY;
    for _ in 0..6 {
        let step = (hi - lo) / SAMPLES as f64;
        let mut best_phi = lo;
        for i in 0..=SAMPLES {
            let phi = lo + step * i as f64;
            let d = dist(phi);
            if d < best {
                best = d;
                best_phi = phi;
            }
        }
        lo = best_phi - 2.0 * step;
        hi = best_phi + 2.0 * step;
    }
    let (dx, dy) = (actual.x - circle.center.x, actual.y - circle.center.y);
    if dx * dx + dy * dy < circle.radius * circle.radius {
        -best
    } else {
        best
    }
}

/// Closed-form unit-step response of an underdamped second-order system.
pub fn analytic_step(p: &PlantParams, t: f64) -> f64 {
    let (wn, z) = (p.natural_frequency, p.damping_ratio);
    assert!(z < 1.0, "closed form covers the underdamped case");
    let root = (1.0 - z * z).sqrt();
    let wd = wn * root;
    p.dc_gain * (1.0 - (-z * wn * t).exp() * ((wd * t).cos() + z / root * (wd * t).sin()))
}

/// Orthogonal projection of `a` onto the line through `p` with slope `m`.
pub fn vector_projection(p: Point2, a: Point2, m: f64) -> Point2 {
    let n = (1.0 + m * m).sqrt();
    let (tx, ty) = (1.0 / n, m / n);
    let s = (a.x - p.x) * tx + (a.y - p.y) * ty;
    Point2::new(p.x + s * tx, p.y + s * ty)
}
