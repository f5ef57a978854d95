//! Fixed-step closed-loop simulation of the two-axis stage.
//!
//! Every step runs in the same order: sample the path at `t_k = k dt`, form
//! the axial errors against the measured plant positions, compute the
//! control signal, advance both plants, then append the record for `t_k`.
//! A record therefore holds the positions that produced its errors, not the
//! post-update positions.
//!
//! A run aborts with its step index when the control signal or plant state
//! goes non-finite, or when either stage leaves [`DIVERGENCE_LIMIT`].
//!
//! Initial conditions: both stages at rest on the t = 0 reference point with
//! the integrators cleared.

use serde::{Deserialize, Serialize};

use crate::controllers::{CrossCoupledController, Gains};
use crate::error::{Error, Result};
use crate::geometry::{circle_contour_error_exact, signed_contour_error, AxialErrors, Point2};
use crate::plant::{PlantParams, PlantState};
use crate::trajectory::{benchmark_path_a, PathSpec, Segment};

/// Default loop period, 10 kHz.
pub const DEFAULT_DT: f64 = 1e-4;

/// Stage excursion, in nm, beyond which a run is treated as diverged. One
/// meter is far outside any nano-positioning range.
pub const DIVERGENCE_LIMIT: f64 = 1e9;

fn default_coupling() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    /// Loop period, s.
    pub dt: f64,
    #[serde(default = "default_coupling")]
    pub coupling_enabled: bool,
    /// Symmetric bound on each control signal, control units.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturation: Option<f64>,
    pub path: PathSpec,
    pub gains: Gains,
    pub plant_x: PlantParams,
    pub plant_y: PlantParams,
}

impl SimConfig {
    /// Default plants, PI gains and coupling gains on `path`.
    pub fn with_path(path: PathSpec) -> Self {
        Self {
            dt: DEFAULT_DT,
            coupling_enabled: true,
            saturation: None,
            path,
            gains: default_gains(),
            plant_x: PlantParams::default_x(),
            plant_y: PlantParams::default_y(),
        }
    }

    /// Number of loop periods covering the path; the trace holds one more
    /// record than this.
    pub fn steps(&self) -> usize {
        (self.path.duration() / self.dt).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        self.path.validate()?;
        self.gains.validate()?;
        self.plant_x.validate("plant_x")?;
        self.plant_y.validate("plant_y")?;
        if !(self.dt.is_finite() && self.dt > 0.0 && self.dt <= crate::plant::MAX_DT) {
            return Err(Error::invalid("dt", format!("must lie in (0, {}] s, got {}", crate::plant::MAX_DT, self.dt)));
        }
        let max_dt = 1.0 / (20.0 * self.path.frequency);
        if self.dt > max_dt {
            return Err(Error::invalid("dt", format!("must be <= 1/(20 f) = {max_dt} s")));
        }
        let ratio = self.path.duration() / self.dt;
        if (ratio - ratio.round()).abs() > 1e-6 * ratio.max(1.0) {
            return Err(Error::invalid("dt", format!("must divide the path duration {} s", self.path.duration())));
        }
        if let Some(bound) = self.saturation {
            if !(bound.is_finite() && bound > 0.0) {
                return Err(Error::invalid("saturation", format!("must be > 0, got {bound}")));
            }
        }
        Ok(())
    }
}

impl Default for SimConfig {
    fn default() -> Self {
        Self::with_path(benchmark_path_a())
    }
}

/// Gains shipped with the bundled configurations.
pub fn default_gains() -> Gains {
    Gains { k_px: 0.0, k_ix: 40.0, k_py: 0.0, k_iy: 40.0, k_dx: 20.0, k_dy: 20.0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub t: f64,
    pub x_ref: f64,
    pub y_ref: f64,
    pub x_act: f64,
    pub y_act: f64,
    pub e_x: f64,
    pub e_y: f64,
    /// Signed contour error: exact distance to the circle on circle
    /// samples, projected normal error on approach samples.
    pub eps: f64,
    pub v_rx: f64,
    pub v_ry: f64,
    pub segment: Segment,
}

impl TraceRecord {
    pub fn axial_magnitude(&self) -> f64 {
        self.e_x.hypot(self.e_y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub dt: f64,
    /// Start time of the last commanded revolution, if any.
    pub final_revolution_start: Option<f64>,
    pub records: Vec<TraceRecord>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn in_final_revolution(&self, record: &TraceRecord) -> bool {
        match self.final_revolution_start {
            Some(start) => record.segment == Segment::Circle && record.t >= start - 0.5 * self.dt,
            None => false,
        }
    }

    pub fn final_revolution(&self) -> impl Iterator<Item = &TraceRecord> {
        self.records.iter().filter(move |r| self.in_final_revolution(r))
    }
}

/// Runs the closed loop over the whole path.
pub fn run(config: &SimConfig) -> Result<Trace> {
    config.validate()?;
    let path = &config.path;
    let dt = config.dt;
    let plant_x = config.plant_x.discretize(dt)?;
    let plant_y = config.plant_y.discretize(dt)?;
    let mut controller = CrossCoupledController::new(config.gains, config.coupling_enabled, config.saturation, dt)?;

    // Plant states are deviations from the t = 0 reference, so the stage
    // starts in equilibrium there.
    let origin = path.sample(0.0)?.reference;
    let mut state_x = PlantState::default();
    let mut state_y = PlantState::default();

    let steps = config.steps();
    let mut records = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let t = k as f64 * dt;
        let sample = path.sample(t)?;
        let actual = Point2::new(origin.x + state_x.position, origin.y + state_y.position);
        let e = AxialErrors::between(sample.reference, actual);
        let v = controller.update(e, sample.tangent);
        if !v.is_finite() {
            return Err(Error::SimulationAbort { step: k, t, what: "control signal" });
        }
        let eps = match sample.segment {
            Segment::Circle => circle_contour_error_exact(actual, &path.circle)
                .map_err(|_| Error::SimulationAbort { step: k, t, what: "contour error" })?,
            Segment::Approach => signed_contour_error(e, sample.tangent),
        };

        let abort = |_| Error::SimulationAbort { step: k, t, what: "plant state" };
        state_x = plant_x.step(state_x, v.v_rx).map_err(abort)?;
        state_y = plant_y.step(state_y, v.v_ry).map_err(abort)?;
        if state_x.position.abs() > DIVERGENCE_LIMIT || state_y.position.abs() > DIVERGENCE_LIMIT {
            return Err(Error::SimulationAbort { step: k, t, what: "plant state" });
        }

        records.push(TraceRecord {
            t,
            x_ref: sample.reference.x,
            y_ref: sample.reference.y,
            x_act: actual.x,
            y_act: actual.y,
            e_x: e.e_x,
            e_y: e.e_y,
            eps,
            v_rx: v.v_rx,
            v_ry: v.v_ry,
            segment: sample.segment,
        });
    }

    Ok(Trace { dt, final_revolution_start: path.final_revolution_start(), records })
}
