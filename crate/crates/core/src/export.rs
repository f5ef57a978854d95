//! CSV writers for traces and sweep results.

use std::io::{self, Write};

use crate::controllers::Gains;
use crate::metrics::ErrorStats;
use crate::sim::Trace;
use crate::tuner::SweepResult;

pub const TRACE_HEADER: &str = "t,x_ref,y_ref,x_act,y_act,e_x,e_y,eps,v_rx,v_ry";

/// Nine significant digits in scientific notation.
pub fn sig9(v: f64) -> String {
    format!("{v:.8e}")
}

pub fn write_trace_csv<W: Write>(trace: &Trace, mut out: W) -> io::Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    for r in &trace.records {
        let fields = [r.t, r.x_ref, r.y_ref, r.x_act, r.y_act, r.e_x, r.e_y, r.eps, r.v_rx, r.v_ry];
        let line = fields.iter().map(|&v| sig9(v)).collect::<Vec<_>>().join(",");
        writeln!(out, "{line}")?;
    }
    out.flush()
}

const STAT_COLUMNS: [&str; 5] =
    ["max_abs_contour_error", "rms_contour_error", "max_abs_e_x", "max_abs_e_y", "rms_axial_error"];

fn stat_fields(stats: Option<&ErrorStats>) -> Vec<String> {
    match stats {
        Some(s) => [s.max_abs_contour_error, s.rms_contour_error, s.max_abs_e_x, s.max_abs_e_y, s.rms_axial_error]
            .iter()
            .map(|&v| sig9(v))
            .collect(),
        None => vec![String::new(); STAT_COLUMNS.len()],
    }
}

pub fn sweep_header() -> String {
    let mut cols: Vec<String> = Gains::NAMES.iter().map(|s| s.to_string()).collect();
    cols.push("objective".into());
    cols.push("stable".into());
    cols.extend(STAT_COLUMNS.iter().map(|c| format!("full_{c}")));
    cols.extend(STAT_COLUMNS.iter().map(|c| format!("final_{c}")));
    cols.join(",")
}

/// One row per grid point. Gains are written in shortest round-trip form so
/// they parse back exactly; unstable points leave metric columns empty.
pub fn write_sweep_csv<W: Write>(result: &SweepResult, mut out: W) -> io::Result<()> {
    writeln!(out, "{}", sweep_header())?;
    for p in &result.points {
        let mut fields: Vec<String> = p.gains.to_array().iter().map(|g| g.to_string()).collect();
        fields.push(if p.objective.is_finite() { sig9(p.objective) } else { "inf".into() });
        fields.push(p.stable().to_string());
        fields.extend(stat_fields(p.metrics.as_ref().map(|m| &m.full)));
        fields.extend(stat_fields(p.metrics.as_ref().and_then(|m| m.final_revolution.as_ref())));
        writeln!(out, "{}", fields.join(","))?;
    }
    out.flush()
}
