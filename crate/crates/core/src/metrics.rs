//! Error statistics over a trace and paired comparisons of two runs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{run, SimConfig, Trace, TraceRecord};
use crate::trajectory::Segment;

/// Which samples a statistic covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Full,
    #[default]
    FinalRevolution,
}

/// Statistics over one group of samples. RMS values are per-sample, which
/// equals the time-weighted value for a uniform step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorStats {
    pub samples: usize,
    pub max_abs_contour_error: f64,
    pub rms_contour_error: f64,
    pub max_abs_e_x: f64,
    pub max_abs_e_y: f64,
    /// RMS of the axial error magnitude `sqrt(e_x^2 + e_y^2)`.
    pub rms_axial_error: f64,
}

impl ErrorStats {
    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a TraceRecord>) -> Option<Self> {
        let mut n = 0usize;
        let (mut max_eps, mut sum_eps2) = (0.0f64, 0.0f64);
        let (mut max_ex, mut max_ey, mut sum_axial2) = (0.0f64, 0.0f64, 0.0f64);
        for r in records {
            n += 1;
            max_eps = max_eps.max(r.eps.abs());
            sum_eps2 += r.eps * r.eps;
            max_ex = max_ex.max(r.e_x.abs());
            max_ey = max_ey.max(r.e_y.abs());
            sum_axial2 += r.e_x * r.e_x + r.e_y * r.e_y;
        }
        (n > 0).then(|| Self {
            samples: n,
            max_abs_contour_error: max_eps,
            // RMS can exceed the max by an ulp for constant data.
            rms_contour_error: (sum_eps2 / n as f64).sqrt().min(max_eps),
            max_abs_e_x: max_ex,
            max_abs_e_y: max_ey,
            rms_axial_error: (sum_axial2 / n as f64).sqrt(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub full: ErrorStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approach: Option<ErrorStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle: Option<ErrorStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_revolution: Option<ErrorStats>,
}

impl Metrics {
    pub fn scope(&self, scope: Scope) -> Option<&ErrorStats> {
        match scope {
            Scope::Full => Some(&self.full),
            Scope::FinalRevolution => self.final_revolution.as_ref(),
        }
    }
}

pub fn metrics(trace: &Trace) -> Result<Metrics> {
    let full = ErrorStats::from_records(&trace.records).ok_or(Error::EmptyTrace)?;
    let segment = |s: Segment| ErrorStats::from_records(trace.records.iter().filter(move |r| r.segment == s));
    Ok(Metrics {
        full,
        approach: segment(Segment::Approach),
        circle: segment(Segment::Circle),
        final_revolution: ErrorStats::from_records(trace.final_revolution()),
    })
}

/// Relative change `(candidate - baseline) / baseline` of each statistic.
/// Equal values give 0 even when both are zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelativeChange {
    pub max_abs_contour_error: f64,
    pub rms_contour_error: f64,
    pub max_abs_e_x: f64,
    pub max_abs_e_y: f64,
    pub rms_axial_error: f64,
}

fn relative(baseline: f64, candidate: f64) -> f64 {
    if baseline == candidate {
        0.0
    } else {
        (candidate - baseline) / baseline
    }
}

impl RelativeChange {
    pub fn between(baseline: &ErrorStats, candidate: &ErrorStats) -> Self {
        Self {
            max_abs_contour_error: relative(baseline.max_abs_contour_error, candidate.max_abs_contour_error),
            rms_contour_error: relative(baseline.rms_contour_error, candidate.rms_contour_error),
            max_abs_e_x: relative(baseline.max_abs_e_x, candidate.max_abs_e_x),
            max_abs_e_y: relative(baseline.max_abs_e_y, candidate.max_abs_e_y),
            rms_axial_error: relative(baseline.rms_axial_error, candidate.rms_axial_error),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub baseline: Metrics,
    pub candidate: Metrics,
    pub change_full: RelativeChange,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub change_final_revolution: Option<RelativeChange>,
}

/// Checks that two configurations can be compared sample-for-sample.
pub fn ensure_comparable(a: &SimConfig, b: &SimConfig) -> Result<()> {
    if a.path != b.path {
        return Err(Error::Mismatch("path"));
    }
    if a.dt != b.dt {
        return Err(Error::Mismatch("dt"));
    }
    Ok(())
}

/// Runs both configurations and reports paired metrics.
pub fn compare(baseline: &SimConfig, candidate: &SimConfig) -> Result<ComparisonReport> {
    ensure_comparable(baseline, candidate)?;
    compare_traces(&run(baseline)?, &run(candidate)?)
}

pub fn compare_traces(baseline: &Trace, candidate: &Trace) -> Result<ComparisonReport> {
    let baseline = metrics(baseline)?;
    let candidate = metrics(candidate)?;
    let change_full = RelativeChange::between(&baseline.full, &candidate.full);
    let change_final_revolution = match (&baseline.final_revolution, &candidate.final_revolution) {
        (Some(a), Some(b)) => Some(RelativeChange::between(a, b)),
        _ => None,
    };
    Ok(ComparisonReport { baseline, candidate, change_full, change_final_revolution })
}
