//! Second-order model of one stage axis and its exact zero-order-hold
//! discretization.
//!
//! The continuous model is
//! `G(s) = dc_gain * wn^2 / (s^2 + 2 zeta wn s + wn^2)` from control units to
//! nanometers, with state `[position, velocity]`.

use std::f64::consts::TAU;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest sample period accepted by [`discretize`].
pub const MAX_DT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantParams {
    /// Undamped natural frequency in rad/s.
    pub natural_frequency: f64,
    pub damping_ratio: f64,
    /// Static gain in nm per control unit.
    pub dc_gain: f64,
}

impl PlantParams {
    /// Default X axis: 120 Hz, zeta = 0.7.
    pub fn default_x() -> Self {
        Self { natural_frequency: TAU * 120.0, damping_ratio: 0.7, dc_gain: 1.0 }
    }

    /// Default Y axis: 100 Hz, zeta = 0.6.
    pub fn default_y() -> Self {
        Self { natural_frequency: TAU * 100.0, damping_ratio: 0.6, dc_gain: 1.0 }
    }

    /// Checks the parameters, reporting failures under `prefix`
    /// (e.g. `plant_x`).
    pub fn validate(&self, prefix: &str) -> Result<()> {
        let check = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(format!("{prefix}.{name}"), format!("must be > 0, got {v}")))
            }
        };
        check("natural_frequency", self.natural_frequency)?;
        check("damping_ratio", self.damping_ratio)?;
        check("dc_gain", self.dc_gain)
    }

    pub fn discretize(&self, dt: f64) -> Result<DiscretePlant> {
        discretize(*self, dt)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlantState {
    /// nm
    pub position: f64,
    /// nm/s
    pub velocity: f64,
}

impl PlantState {
    pub fn at_rest(position: f64) -> Self {
        Self { position, velocity: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.position.is_finite() && self.velocity.is_finite()
    }
}

/// `x[k+1] = A x[k] + B u[k]` with `u` held constant over each sample.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePlant {
    params: PlantParams,
    dt: f64,
    a: [[f64; 2]; 2],
    b: [f64; 2],
}

/// Exact ZOH discretization over `dt` seconds, computed from the matrix
/// exponential of the augmented system `[[Ac, Bc], [0, 0]]`.
pub fn discretize(params: PlantParams, dt: f64) -> Result<DiscretePlant> {
    params.validate("plant")?;
    if !(dt.is_finite() && dt > 0.0 && dt <= MAX_DT) {
        return Err(Error::invalid("dt", format!("must lie in (0, {MAX_DT}] s, got {dt}")));
    }
    let wn = params.natural_frequency;
    let zeta = params.damping_ratio;

    // Work in (position, velocity / wn) so every entry of Ac*dt is of order
    // wn*dt; the raw state has entries of order wn^2*dt.
    let h = wn * dt;
    #[rustfmt::skip]
    let augmented = Matrix3::new(
        0.0, h, 0.0,
        -h, -2.0 * zeta * h, params.dc_gain * h,
        0.0, 0.0, 0.0,
    );
    let phi = augmented.exp();

    let a = [[phi[(0, 0)], phi[(0, 1)] / wn], [phi[(1, 0)] * wn, phi[(1, 1)]]];
    let b = [phi[(0, 2)], phi[(1, 2)] * wn];
    Ok(DiscretePlant { params, dt, a, b })
}

impl DiscretePlant {
    pub fn params(&self) -> PlantParams {
        self.params
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// State transition matrix.
    pub fn a(&self) -> [[f64; 2]; 2] {
        self.a
    }

    /// Input vector.
    pub fn b(&self) -> [f64; 2] {
        self.b
    }

    /// Advances one sample with `u` held over the interval.
    pub fn step(&self, state: PlantState, u: f64) -> Result<PlantState> {
        let [[a00, a01], [a10, a11]] = self.a;
        let next = PlantState {
            position: a00 * state.position + a01 * state.velocity + self.b[0] * u,
            velocity: a10 * state.position + a11 * state.velocity + self.b[1] * u,
        };
        if next.is_finite() {
            Ok(next)
        } else {
            Err(Error::NonFinite { what: "plant state" })
        }
    }
}
