//! Per-axis PI control plus the cross-coupling stage.
//!
//! Each axis command is `V = (K_p + K_i/s) e + K_d eps`, where `eps` is that
//! axis' component of the projected contour error. The integrator is a
//! backward-Euler accumulator at the loop rate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{contour_error_components, AxialErrors, PathTangent};

/// The six loop gains. PI gains are in control units per nm (and per nm*s);
/// coupling gains in control units per nm.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Gains {
    pub k_px: f64,
    pub k_ix: f64,
    pub k_py: f64,
    pub k_iy: f64,
    pub k_dx: f64,
    pub k_dy: f64,
}

impl Gains {
    pub const NAMES: [&'static str; 6] = ["k_px", "k_ix", "k_py", "k_iy", "k_dx", "k_dy"];

    pub fn from_array([k_px, k_ix, k_py, k_iy, k_dx, k_dy]: [f64; 6]) -> Self {
        Self { k_px, k_ix, k_py, k_iy, k_dx, k_dy }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.k_px, self.k_ix, self.k_py, self.k_iy, self.k_dx, self.k_dy]
    }

    /// Same PI gains with the coupling stage zeroed.
    pub fn uncoupled(self) -> Self {
        Self { k_dx: 0.0, k_dy: 0.0, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in Self::NAMES.iter().zip(self.to_array()) {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(format!("gains.{name}"), format!("must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PiState {
    /// Integral of the error, nm*s.
    pub integral: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ControlSignal {
    pub v_rx: f64,
    pub v_ry: f64,
}

impl ControlSignal {
    pub fn is_finite(&self) -> bool {
        self.v_rx.is_finite() && self.v_ry.is_finite()
    }
}

/// One PI update: integrate `e` over `dt`, then return `k_p e + k_i integral`.
pub fn pi_step(e: f64, state: PiState, k_p: f64, k_i: f64, dt: f64) -> (f64, PiState) {
    let next = PiState { integral: state.integral + e * dt };
    (k_p * e + k_i * next.integral, next)
}

/// One unsaturated update of both PI loops plus the cross-coupling stage.
pub fn coupled_control_step(
    e: AxialErrors,
    tangent: PathTangent,
    gains: &Gains,
    (state_x, state_y): (PiState, PiState),
    dt: f64,
) -> (ControlSignal, (PiState, PiState)) {
    let (pi_x, state_x) = pi_step(e.e_x, state_x, gains.k_px, gains.k_ix, dt);
    let (pi_y, state_y) = pi_step(e.e_y, state_y, gains.k_py, gains.k_iy, dt);
    let eps = contour_error_components(e, tangent);
    let signal = ControlSignal { v_rx: pi_x + gains.k_dx * eps.eps_x, v_ry: pi_y + gains.k_dy * eps.eps_y };
    (signal, (state_x, state_y))
}

/// Stateful two-axis controller used by the simulation loop.
///
/// With `coupling_enabled == false` the coupling stage is skipped entirely.
/// With a saturation bound, each axis output is clamped to `[-bound, bound]`
/// after both terms are summed, and that axis' integrator is frozen on any
/// sample whose output saturates.
#[derive(Debug, Clone)]
pub struct CrossCoupledController {
    gains: Gains,
    coupling_enabled: bool,
    saturation: Option<f64>,
    dt: f64,
    state_x: PiState,
    state_y: PiState,
}

impl CrossCoupledController {
    pub fn new(gains: Gains, coupling_enabled: bool, saturation: Option<f64>, dt: f64) -> Result<Self> {
        gains.validate()?;
        if let Some(bound) = saturation {
            if !(bound.is_finite() && bound > 0.0) {
                return Err(Error::invalid("saturation", format!("must be > 0, got {bound}")));
            }
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::invalid("dt", format!("must be > 0, got {dt}")));
        }
        Ok(Self { gains, coupling_enabled, saturation, dt, state_x: PiState::default(), state_y: PiState::default() })
    }

    pub fn gains(&self) -> &Gains {
        &self.gains
    }

    pub fn states(&self) -> (PiState, PiState) {
        (self.state_x, self.state_y)
    }

    pub fn reset(&mut self) {
        self.state_x = PiState::default();
        self.state_y = PiState::default();
    }

    pub fn update(&mut self, e: AxialErrors, tangent: PathTangent) -> ControlSignal {
        let (coupling_x, coupling_y) = if self.coupling_enabled {
            let eps = contour_error_components(e, tangent);
            (Some(self.gains.k_dx * eps.eps_x), Some(self.gains.k_dy * eps.eps_y))
        } else {
            (None, None)
        };
        let v_rx = axis_update(
            &mut self.state_x,
            e.e_x,
            self.gains.k_px,
            self.gains.k_ix,
            coupling_x,
            self.saturation,
            self.dt,
        );
        let v_ry = axis_update(
            &mut self.state_y,
            e.e_y,
            self.gains.k_py,
            self.gains.k_iy,
            coupling_y,
            self.saturation,
            self.dt,
        );
        ControlSignal { v_rx, v_ry }
    }
}

fn axis_update(
    state: &mut PiState,
    e: f64,
    k_p: f64,
    k_i: f64,
    coupling: Option<f64>,
    saturation: Option<f64>,
    dt: f64,
) -> f64 {
    let total = |pi: f64| match coupling {
        Some(c) => pi + c,
        None => pi,
    };
    let (pi, next) = pi_step(e, *state, k_p, k_i, dt);
    let v = total(pi);
    match saturation {
        Some(bound) if v.abs() > bound => {
            // Conditional integration: hold the accumulator while saturated.
            let held = total(k_p * e + k_i * state.integral);
            held.clamp(-bound, bound)
        }
        _ => {
            *state = next;
            v
        }
    }
}
