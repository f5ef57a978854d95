//! Simulation of a two-axis nano-positioning stage under per-axis PI control
//! with an optional cross-coupling contour controller.
//!
//! The pieces, bottom up:
//!
//! * [`geometry`]: contour-error formulas and the projection matrix.
//! * [`plant`]: second-order axis dynamics with exact ZOH discretization.
//! * [`controllers`]: PI loops plus the cross-coupling stage.
//! * [`trajectory`]: line/tangent approach followed by circular revolutions.
//! * [`sim`] and [`metrics`]: the fixed-step closed loop and its statistics.
//! * [`tuner`]: exhaustive gain sweeps.
//! * [`export`] and [`plot`]: CSV and SVG output.

pub mod controllers;
pub mod error;
pub mod export;
pub mod geometry;
pub mod metrics;
pub mod plant;
pub mod plot;
pub mod sim;
pub mod trajectory;
pub mod tuner;

pub use controllers::{ControlSignal, CrossCoupledController, Gains, PiState};
pub use error::{Error, Result};
pub use geometry::{AxialErrors, CircleSpec, ContourErrorVec, PathTangent, Point2};
pub use metrics::{compare, metrics, ComparisonReport, ErrorStats, Metrics, Scope};
pub use plant::{DiscretePlant, PlantParams, PlantState};
pub use sim::{run, SimConfig, Trace, TraceRecord};
pub use trajectory::{benchmark_path_a, benchmark_path_b, PathKind, PathSample, PathSpec, Segment};
pub use tuner::{sweep, GainAxis, GainRange, Objective, SweepResult, SweepSpec};
