//! Workflows behind the `nanocontour` binary: `simulate`, `compare` and
//! `sweep`. Each writes its outputs and a manifest under one directory.

pub mod config;
pub mod manifest;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use nanocontour::export::{write_sweep_csv, write_trace_csv};
use nanocontour::metrics::{compare_traces, ensure_comparable, Metrics};
use nanocontour::plot::{contour_error_plot, xy_path_plot};
use nanocontour::{metrics, run, ComparisonReport, Error, SimConfig, SweepResult, Trace};
use thiserror::Error;

use crate::manifest::Manifest;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_SIMULATION: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("simulation aborted: {0}")]
    Simulation(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Simulation(_) => EXIT_SIMULATION,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let simulation = match &e {
            Error::SimulationAbort { .. } | Error::EmptyTrace | Error::NonFinite { .. } => true,
            Error::GridPoint { source, .. } => matches!(**source, Error::SimulationAbort { .. }),
            _ => false,
        };
        if simulation {
            CliError::Simulation(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

/// Command-line overrides applied on top of a loaded config.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub dt: Option<f64>,
    pub no_coupling: bool,
}

impl Overrides {
    pub fn apply(&self, mut config: SimConfig) -> Result<SimConfig, CliError> {
        if let Some(dt) = self.dt {
            config.dt = dt;
        }
        if self.no_coupling {
            config.coupling_enabled = false;
        }
        config.validate()?;
        Ok(config)
    }
}

struct OutDir {
    root: PathBuf,
    written: Vec<(String, String)>,
}

impl OutDir {
    fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(Self { root: root.to_path_buf(), written: Vec::new() })
    }

    fn write_with(
        &mut self,
        key: &str,
        name: &str,
        f: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
    ) -> Result<PathBuf, CliError> {
        let path = self.root.join(name);
        let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
        let mut w = BufWriter::new(file);
        f(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::io(&path, e))?;
        self.written.push((key.to_string(), name.to_string()));
        Ok(path)
    }

    fn write_text(&mut self, key: &str, name: &str, text: &str) -> Result<PathBuf, CliError> {
        self.write_with(key, name, |w| w.write_all(text.as_bytes()))
    }

    fn finish(mut self, manifest: Manifest) -> Result<PathBuf, CliError> {
        let manifest = manifest.with_outputs(std::mem::take(&mut self.written));
        let text = config::to_toml(&manifest);
        let path = self.root.join(manifest::FILE_NAME);
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}

pub struct SimulateOutput {
    pub trace: Trace,
    pub metrics: Metrics,
    pub manifest: PathBuf,
}

/// Runs one simulation and writes the trace CSV, metrics summary, XY and
/// contour-error plots, and the manifest.
pub fn simulate(config: &SimConfig, out_dir: &Path) -> Result<SimulateOutput, CliError> {
    let trace = run(config)?;
    let metrics = metrics(&trace)?;

    let mut out = OutDir::create(out_dir)?;
    out.write_with("trace", "trace.csv", |w| write_trace_csv(&trace, w))?;
    out.write_text("metrics", "metrics.toml", &config::to_toml(&metrics))?;
    let title = format!("{:?} path", config.path.kind);
    out.write_text("path_plot", "path_xy.svg", &xy_path_plot(&trace, &title).to_svg())?;
    let label = if config.coupling_enabled { "contour error" } else { "contour error (uncoupled)" };
    out.write_text(
        "contour_plot",
        "contour_error.svg",
        &contour_error_plot(&[(label, &trace)], "Contour error").to_svg(),
    )?;
    let manifest = out.finish(Manifest::new("simulate", manifest::digest(&[&config::to_toml(config)])))?;
    Ok(SimulateOutput { trace, metrics, manifest })
}

/// Runs baseline and candidate, writes the report and an overlay plot.
pub fn compare(baseline: &SimConfig, candidate: &SimConfig, out_dir: &Path) -> Result<ComparisonReport, CliError> {
    ensure_comparable(baseline, candidate)?;
    let trace_a = run(baseline)?;
    let trace_b = run(candidate)?;
    let report = compare_traces(&trace_a, &trace_b)?;

    let mut out = OutDir::create(out_dir)?;
    out.write_text("report", "comparison.toml", &config::to_toml(&report))?;
    out.write_text(
        "overlay_plot",
        "contour_error_overlay.svg",
        &contour_error_plot(&[("baseline", &trace_a), ("candidate", &trace_b)], "Contour error").to_svg(),
    )?;
    let digest = manifest::digest(&[&config::to_toml(baseline), &config::to_toml(candidate)]);
    out.finish(Manifest::new("compare", digest))?;
    Ok(report)
}

pub struct SweepOutput {
    pub result: SweepResult,
    pub best_config: SimConfig,
    pub best_config_path: PathBuf,
}

/// Runs the grid, writes one CSV row per point, a ready-to-simulate config
/// holding the best gains and, when the best point is stable, its metrics.
pub fn sweep(base: &SimConfig, spec: &nanocontour::SweepSpec, out_dir: &Path) -> Result<SweepOutput, CliError> {
    let result = nanocontour::sweep(base, spec)?;
    let best_config = SimConfig { gains: result.best_point().gains, ..base.clone() };

    let mut out = OutDir::create(out_dir)?;
    out.write_with("sweep", "sweep.csv", |w| write_sweep_csv(&result, w))?;
    let best_config_path = out.write_text("best_gains", "best_gains.cfg", &config::to_toml(&best_config))?;
    if let Some(m) = &result.best_point().metrics {
        out.write_text("best_metrics", "best_metrics.toml", &config::to_toml(m))?;
    }
    let digest = manifest::digest(&[&config::to_toml(base), &config::to_toml(spec)]);
    out.finish(Manifest::new("sweep", digest))?;
    Ok(SweepOutput { result, best_config, best_config_path })
}
