//! Exhaustive grid search over controller gains.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::controllers::Gains;
use crate::error::{Error, Result};
use crate::metrics::{metrics, Metrics, Scope};
use crate::sim::{run, SimConfig};

pub const DEFAULT_GRID_CAP: usize = 100_000;

/// A swept gain. The two-letter names set one axis; `k_p`, `k_i` and `k_d`
/// set the X and Y gains together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GainAxis {
    KPx,
    KIx,
    KPy,
    KIy,
    KDx,
    KDy,
    KP,
    KI,
    KD,
}

impl GainAxis {
    /// Indices into [`Gains::to_array`] written by this axis.
    fn slots(self) -> &'static [usize] {
        match self {
            GainAxis::KPx => &[0],
            GainAxis::KIx => &[1],
            GainAxis::KPy => &[2],
            GainAxis::KIy => &[3],
            GainAxis::KDx => &[4],
            GainAxis::KDy => &[5],
            GainAxis::KP => &[0, 2],
            GainAxis::KI => &[1, 3],
            GainAxis::KD => &[4, 5],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GainRange {
    pub gain: GainAxis,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GainRange {
    /// Evenly spaced values from `min` to `max`; a single value is `min`.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.max } else { self.min + (self.max - self.min) * (i as f64 / last) })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    #[default]
    RmsContour,
    MaxContour,
    RmsAxial,
}

fn default_cap() -> usize {
    DEFAULT_GRID_CAP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub objective: Objective,
    #[serde(default)]
    pub scope: Scope,
    #[serde(default = "default_cap")]
    pub cap: usize,
    #[serde(rename = "axis")]
    pub axes: Vec<GainRange>,
}

impl SweepSpec {
    pub fn new(axes: Vec<GainRange>, objective: Objective, scope: Scope) -> Self {
        Self { objective, scope, cap: DEFAULT_GRID_CAP, axes }
    }

    /// Number of grid points, saturating on overflow.
    pub fn grid_size(&self) -> usize {
        self.axes.iter().fold(1usize, |acc, a| acc.saturating_mul(a.count))
    }

    pub fn validate(&self) -> Result<()> {
        let mut used = [false; 6];
        for (i, axis) in self.axes.iter().enumerate() {
            let field = |name: &str| format!("axis[{i}].{name}");
            if axis.count == 0 {
                return Err(Error::invalid(field("count"), "must be >= 1"));
            }
            if !(axis.min.is_finite() && axis.max.is_finite() && axis.min >= 0.0 && axis.max >= axis.min) {
                return Err(Error::invalid(field("min"), "range must be finite with 0 <= min <= max"));
            }
            for &slot in axis.gain.slots() {
                if std::mem::replace(&mut used[slot], true) {
                    return Err(Error::invalid(
                        field("gain"),
                        format!("{} is swept more than once", Gains::NAMES[slot]),
                    ));
                }
            }
        }
        let size = self.grid_size();
        if size > self.cap {
            return Err(Error::GridTooLarge { size, cap: self.cap });
        }
        Ok(())
    }

    /// Every grid point in row-major order (last axis fastest), applied on
    /// top of `base`.
    pub fn grid(&self, base: &Gains) -> Vec<Gains> {
        let values: Vec<Vec<f64>> = self.axes.iter().map(GainRange::values).collect();
        let mut points = vec![base.to_array()];
        for (axis, vals) in self.axes.iter().zip(&values) {
            points = points
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |&v| {
                        let mut q = p;
                        for &slot in axis.gain.slots() {
                            q[slot] = v;
                        }
                        q
                    })
                })
                .collect();
        }
        points.into_iter().map(Gains::from_array).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub gains: Gains,
    /// `None` when the loop went unstable.
    pub metrics: Option<Metrics>,
    /// Objective value; infinite for unstable points.
    pub objective: f64,
}

impl SweepPoint {
    pub fn stable(&self) -> bool {
        self.metrics.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub objective: Objective,
    pub scope: Scope,
    pub points: Vec<SweepPoint>,
    /// Index of the optimum in `points`.
    pub best: usize,
}

impl SweepResult {
    pub fn best_point(&self) -> &SweepPoint {
        &self.points[self.best]
    }
}

/// Objective value of a trace's metrics, `None` if the scope is absent.
pub fn objective_value(m: &Metrics, objective: Objective, scope: Scope) -> Option<f64> {
    let stats = m.scope(scope)?;
    Some(match objective {
        Objective::RmsContour => stats.rms_contour_error,
        Objective::MaxContour => stats.max_abs_contour_error,
        Objective::RmsAxial => stats.rms_axial_error,
    })
}

/// Lower objective first; ties go to the lexicographically smaller gains.
fn rank(a: &SweepPoint, b: &SweepPoint) -> Ordering {
    a.objective.total_cmp(&b.objective).then_with(|| {
        a.gains
            .to_array()
            .iter()
            .zip(b.gains.to_array().iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn evaluate(base: &SimConfig, gains: Gains, objective: Objective, scope: Scope) -> Result<SweepPoint> {
    let config = SimConfig { gains, ..base.clone() };
    match run(&config) {
        Ok(trace) => {
            let m = metrics(&trace)?;
            let value = objective_value(&m, objective, scope)
                .ok_or_else(|| Error::invalid("scope", "path has no final revolution"))?;
            Ok(SweepPoint { gains, metrics: Some(m), objective: value })
        }
        Err(Error::SimulationAbort { .. }) => Ok(SweepPoint { gains, metrics: None, objective: f64::INFINITY }),
        Err(e) => Err(e),
    }
}

/// Runs one simulation per gain vector in `points`, in whatever order the
/// executor chooses; the result lists points in input order.
pub fn evaluate_points(base: &SimConfig, points: &[Gains], objective: Objective, scope: Scope) -> Result<SweepResult> {
    if points.is_empty() {
        return Err(Error::invalid("axis", "grid is empty"));
    }
    base.validate()?;
    let eval = |(index, &gains): (usize, &Gains)| {
        evaluate(base, gains, objective, scope).map_err(|e| Error::GridPoint { index, gains, source: Box::new(e) })
    };

    #[cfg(feature = "parallel")]
    let evaluated: Vec<Result<SweepPoint>> = {
        use rayon::prelude::*;
        points.par_iter().enumerate().map(eval).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let evaluated: Vec<Result<SweepPoint>> = points.iter().enumerate().map(eval).collect();

    let points = evaluated.into_iter().collect::<Result<Vec<_>>>()?;
    let best = (0..points.len()).min_by(|&a, &b| rank(&points[a], &points[b])).expect("non-empty grid");
    Ok(SweepResult { objective, scope, points, best })
}

pub fn sweep(base: &SimConfig, spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    evaluate_points(base, &spec.grid(&base.gains), spec.objective, spec.scope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::benchmark_path_b;

    fn short_base() -> SimConfig {
        let mut path = benchmark_path_b();
        path.approach_duration = 0.25;
        path.circle_revolutions = 1;
        SimConfig::with_path(path)
    }

    #[test]
    fn range_values() {
        let r = GainRange { gain: GainAxis::KD, min: 0.0, max: 1.0, count: 5 };
        assert_eq!(r.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let r = GainRange { gain: GainAxis::KD, min: 2.0, max: 9.0, count: 1 };
        assert_eq!(r.values(), vec![2.0]);
    }

    #[test]
    fn grid_enumerates_cartesian_product() {
        let spec = SweepSpec::new(
            vec![
                GainRange { gain: GainAxis::KP, min: 1.0, max: 2.0, count: 2 },
                GainRange { gain: GainAxis::KDx, min: 0.0, max: 3.0, count: 3 },
            ],
            Objective::RmsContour,
            Scope::Full,
        );
        let base = Gains { k_ix: 10.0, k_iy: 20.0, k_dy: 7.0, ..Gains::default() };
        let grid = spec.grid(&base);
        assert_eq!(grid.len(), 6);
        assert_eq!(grid[0], Gains { k_px: 1.0, k_py: 1.0, k_dx: 0.0, ..base });
        assert_eq!(grid[5], Gains { k_px: 2.0, k_py: 2.0, k_dx: 3.0, ..base });
    }

    #[test]
    fn rejects_bad_specs() {
        let over = SweepSpec {
            cap: 10,
            ..SweepSpec::new(
                vec![GainRange { gain: GainAxis::KD, min: 0.0, max: 1.0, count: 11 }],
                Objective::RmsContour,
                Scope::Full,
            )
        };
        assert!(matches!(over.validate(), Err(Error::GridTooLarge { size: 11, cap: 10 })));

        let dup = SweepSpec::new(
            vec![
                GainRange { gain: GainAxis::KD, min: 0.0, max: 1.0, count: 2 },
                GainRange { gain: GainAxis::KDx, min: 0.0, max: 1.0, count: 2 },
            ],
            Objective::RmsContour,
            Scope::Full,
        );
        assert!(dup.validate().is_err());

        let zero = SweepSpec::new(
            vec![GainRange { gain: GainAxis::KD, min: 0.0, max: 1.0, count: 0 }],
            Objective::RmsContour,
            Scope::Full,
        );
        assert!(zero.validate().is_err());
    }

    #[test]
    fn single_point_grid_is_its_own_argmin() {
        let base = short_base();
        let spec = SweepSpec::new(
            vec![GainRange { gain: GainAxis::KD, min: 1.5, max: 1.5, count: 1 }],
            Objective::MaxContour,
            Scope::FinalRevolution,
        );
        let result = sweep(&base, &spec).unwrap();
        assert_eq!(result.points.len(), 1);
        assert_eq!(result.best, 0);
        assert_eq!(result.best_point().gains, Gains { k_dx: 1.5, k_dy: 1.5, ..base.gains });
    }

    #[test]
    fn argmin_dominates_and_ignores_order() {
        let base = short_base();
        let spec = SweepSpec::new(
            vec![
                GainRange { gain: GainAxis::KD, min: 0.0, max: 8.0, count: 5 },
                GainRange { gain: GainAxis::KP, min: 1.0, max: 3.0, count: 2 },
            ],
            Objective::RmsContour,
            Scope::FinalRevolution,
        );
        let forward = sweep(&base, &spec).unwrap();
        let best = forward.best_point().objective;
        assert!(forward.points.iter().all(|p| best <= p.objective));

        let mut reversed: Vec<Gains> = spec.grid(&base.gains);
        reversed.reverse();
        let backward = evaluate_points(&base, &reversed, spec.objective, spec.scope).unwrap();
        assert_eq!(backward.best_point(), forward.best_point());
        for p in &forward.points {
            let q = backward.points.iter().find(|q| q.gains == p.gains).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn ties_break_toward_smaller_gains() {
        let a = SweepPoint { gains: Gains { k_px: 2.0, ..Gains::default() }, metrics: None, objective: 1.0 };
        let b = SweepPoint { gains: Gains { k_px: 1.0, k_dy: 9.0, ..Gains::default() }, metrics: None, objective: 1.0 };
        assert_eq!(rank(&a, &b), Ordering::Greater);
        assert_eq!(rank(&b, &a), Ordering::Less);
    }

    #[test]
    fn unstable_points_are_kept_with_infinite_objective() {
        let base = short_base();
        let points = vec![base.gains, Gains { k_px: 1e6, k_py: 1e6, ..base.gains }];
        let result = evaluate_points(&base, &points, Objective::RmsContour, Scope::Full).unwrap();
        assert!(result.points[0].stable());
        assert!(!result.points[1].stable());
        assert_eq!(result.points[1].objective, f64::INFINITY);
        assert_eq!(result.best, 0);
    }

    #[test]
    fn invalid_grid_point_is_tagged() {
        let base = short_base();
        let points = vec![base.gains, Gains { k_px: -1.0, ..base.gains }];
        match evaluate_points(&base, &points, Objective::RmsContour, Scope::Full) {
            Err(Error::GridPoint { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
