//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nanocontour::geometry::{
    circle_contour_error_exact, circle_contour_error_linearized, contour_error_components, line_foot_of_perpendicular,
    projection_matrix, Expansion,
};
use nanocontour::tuner::evaluate_points;
use nanocontour::{
    metrics, run, sweep, AxialErrors, CircleSpec, Gains, PathTangent, PlantParams, PlantState, Point2, SimConfig,
    SweepResult,
};
use nanocontour_cli::config::{load_sim_config, load_sweep_spec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{analytic_step, configs_dir, sampled_signed_distance, vector_projection};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, ok: String, fail: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(fail)
    }
}

fn bundled_configs() -> Vec<(&'static str, SimConfig)> {
    ["paper_path_a", "paper_path_b"]
        .into_iter()
        .map(|name| (name, load_sim_config(&configs_dir().join(format!("{name}.cfg"))).unwrap()))
        .collect()
}

fn geometry_oracle() -> Outcome {
    const INSTANCES: usize = 10_000;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..INSTANCES {
        let circle =
            CircleSpec::new(Point2::new(rng.gen_range(-1e3..1e3), rng.gen_range(-1e3..1e3)), rng.gen_range(1.0..1e3))
                .unwrap();
        let phi = rng.gen_range(0.0..TAU);
        let r = circle.radius * rng.gen_range(0.0..2.0);
        let actual = Point2::new(circle.center.x + r * phi.cos(), circle.center.y + r * phi.sin());
        let exact = circle_contour_error_exact(actual, &circle).unwrap();
        worst = worst.max((exact - sampled_signed_distance(actual, &circle)).abs());
    }
    let elapsed = start.elapsed();
    check(
        worst <= 1e-6 && elapsed < Duration::from_secs(10),
        format!("max deviation {worst:.2e} nm over {INSTANCES} instances in {elapsed:.2?}"),
        format!("max deviation {worst:.2e} nm (limit 1e-6), runtime {elapsed:.2?} (limit 10 s)"),
    )
}

fn projection_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst_sym = 0.0f64;
    let mut worst_idem = 0.0f64;
    let mut worst_trace = 0.0f64;
    let mut worst_null = 0.0f64;
    let mut expansions = 0usize;
    for _ in 0..1000 {
        let tangent = PathTangent::from_angle(rng.gen_range(-PI..PI));
        let m = projection_matrix(tangent);
        worst_sym = worst_sym.max((m[(0, 1)] - m[(1, 0)]).abs());
        worst_idem = worst_idem.max((m * m - m).abs().max());
        worst_trace = worst_trace.max((m.trace() - 1.0).abs());
        let null = m * nalgebra::Vector2::new(tangent.m_x(), tangent.m_y());
        worst_null = worst_null.max(null.amax());
        let e = AxialErrors::new(rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0));
        if contour_error_components(e, tangent).magnitude() > e.magnitude() * (1.0 + 1e-12) {
            expansions += 1;
        }
    }
    check(
        worst_sym == 0.0 && worst_idem <= 1e-12 && worst_trace <= 1e-12 && worst_null <= 1e-12 && expansions == 0,
        format!("|M^2-M| {worst_idem:.1e}, |tr-1| {worst_trace:.1e}, |M t| {worst_null:.1e} over 1000 angles"),
        format!(
            "asym {worst_sym:.1e}, |M^2-M| {worst_idem:.1e}, |tr-1| {worst_trace:.1e}, |M t| {worst_null:.1e}, {expansions} expansions"
        ),
    )
}

fn linearization_suite() -> Outcome {
    let circle = CircleSpec::new(Point2::new(30.0, -20.0), 400.0).unwrap();
    let mut violations = 0usize;
    let mut worst_ratio = 0.0f64;
    for i in 0..64 {
        let theta = TAU * i as f64 / 64.0;
        let tangent = PathTangent::from_angle(theta);
        // Counter-clockwise command point whose tangent angle is theta.
        let command = circle.point_at(theta - FRAC_PI_2);
        for j in 0..64 {
            let dir = TAU * j as f64 / 64.0;
            for k in 1..=16 {
                let mag = circle.radius / 100.0 * k as f64 / 16.0;
                let e = AxialErrors::new(mag * dir.cos(), mag * dir.sin());
                let exact = circle_contour_error_exact(e.actual_from(command), &circle).unwrap();
                let lin = circle_contour_error_linearized(e, tangent, circle.radius, Expansion::FirstOrder).unwrap();
                let bound = (e.e_x * e.e_x + e.e_y * e.e_y) / circle.radius;
                worst_ratio = worst_ratio.max((lin - exact).abs() / bound);
                if (lin - exact).abs() > bound {
                    violations += 1;
                }
            }
        }
    }
    check(
        violations == 0,
        format!("65536 grid points, worst |lin-exact| / bound = {worst_ratio:.3}"),
        format!("{violations} grid points exceed the bound (worst ratio {worst_ratio:.3})"),
    )
}

fn matrix_foot_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let mut worst = 0.0f64;
    let mut worst_oracle = 0.0f64;
    let mut n = 0;
    while n < 1000 {
        let tangent = PathTangent::from_angle(rng.gen_range(-PI..PI));
        let Some(slope) = tangent.slope() else { continue };
        if slope.abs() > 1e3 {
            continue;
        }
        n += 1;
        let command = Point2::new(rng.gen_range(-500.0..500.0), rng.gen_range(-500.0..500.0));
        let e = AxialErrors::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        let actual = e.actual_from(command);
        let foot = line_foot_of_perpendicular(command, actual, slope).unwrap();
        let eps = contour_error_components(e, tangent);
        worst = worst.max((eps.eps_x - (foot.x - actual.x)).abs().max((eps.eps_y - (foot.y - actual.y)).abs()));
        worst_oracle = worst_oracle.max(foot.distance(vector_projection(command, actual, slope)));
    }
    check(
        worst <= 1e-9 && worst_oracle <= 1e-9,
        format!("max component gap {worst:.1e} nm, foot vs vector projection {worst_oracle:.1e} nm"),
        format!("component gap {worst:.1e} nm, foot vs projection {worst_oracle:.1e} nm (limit 1e-9)"),
    )
}

fn plant_fidelity() -> Outcome {
    let mut worst = 0.0f64;
    for params in [PlantParams::default_x(), PlantParams::default_y()] {
        let dt = 1e-4;
        let plant = params.discretize(dt).unwrap();
        let mut state = PlantState::default();
        for k in 1..=60_000 {
            state = plant.step(state, 1.0).unwrap();
            let rel = (state.position - analytic_step(&params, k as f64 * dt)).abs() / params.dc_gain;
            worst = worst.max(rel);
        }
    }
    check(
        worst <= 1e-9,
        format!("max relative step-response deviation {worst:.2e} over 6 s per axis"),
        format!("relative deviation {worst:.2e} exceeds 1e-9"),
    )
}

fn decoupling_identity() -> Outcome {
    for (name, config) in bundled_configs() {
        let coupled = SimConfig { gains: config.gains.uncoupled(), coupling_enabled: true, ..config.clone() };
        let uncoupled = SimConfig { coupling_enabled: false, ..coupled.clone() };
        let a = run(&coupled).unwrap();
        let b = run(&uncoupled).unwrap();
        let identical = a.records.len() == b.records.len()
            && a.records.iter().zip(&b.records).all(|(x, y)| {
                [x.x_act, x.y_act, x.e_x, x.e_y, x.eps, x.v_rx, x.v_ry]
                    .iter()
                    .zip([y.x_act, y.y_act, y.e_x, y.e_y, y.eps, y.v_rx, y.v_ry])
                    .all(|(p, q)| p.to_bits() == q.to_bits())
            });
        if !identical {
            return Err(format!("{name}: traces differ"));
        }
    }
    Ok("k_d = 0 and coupling-disabled traces are bit-identical on both bundled paths".into())
}

fn value_at(result: &SweepResult, pred: impl Fn(&Gains) -> bool) -> Option<f64> {
    result.points.iter().find(|p| pred(&p.gains)).map(|p| p.objective)
}

fn central_claim() -> Outcome {
    let start = Instant::now();
    let pi_spec = load_sweep_spec(&configs_dir().join("sweep_pi.cfg")).unwrap();
    let kd_spec = load_sweep_spec(&configs_dir().join("sweep_coupling.cfg")).unwrap();
    let mut total_points = 0;
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for (name, config) in bundled_configs() {
        let pi = sweep(&config, &pi_spec).unwrap();
        total_points += pi.points.len();
        let pi_best = pi.best_point().gains;
        assert_eq!(pi_best.k_dx, 0.0);

        let tuned = SimConfig { gains: pi_best, ..config.clone() };
        let kd = sweep(&tuned, &kd_spec).unwrap();
        total_points += kd.points.len();
        let baseline = value_at(&kd, |g| g.k_dx == 0.0).expect("grid contains k_d = 0");
        let best = kd.best_point();
        let improved = best.gains.k_dx > 0.0 && best.objective < baseline;

        let final_stats = |gains: Gains| {
            let m = metrics(&run(&SimConfig { gains, ..config.clone() }).unwrap()).unwrap();
            (m.final_revolution.unwrap(), m.full)
        };
        let (pi_final, pi_full) = final_stats(pi_best);
        let (cc_final, cc_full) = final_stats(best.gains);
        let unstable = kd.points.iter().filter(|p| !p.stable()).count();
        let line = format!(
            "{name}: PI k_p={} k_i={} -> final rms {:.4} nm / max {:.4} nm (full max {:.4}); \
             k_d={} -> final rms {:.4} nm / max {:.4} nm (full max {:.4}); change {:+.1}%; {unstable} unstable k_d points",
            pi_best.k_px,
            pi_best.k_ix,
            pi_final.rms_contour_error,
            pi_final.max_abs_contour_error,
            pi_full.max_abs_contour_error,
            best.gains.k_dx,
            cc_final.rms_contour_error,
            cc_final.max_abs_contour_error,
            cc_full.max_abs_contour_error,
            100.0 * (best.objective - baseline) / baseline
        );
        if !improved {
            failures.push(format!("{name}: no k_d > 0 beats k_d = 0 ({baseline})"));
        }
        lines.push(line);
    }
    let elapsed = start.elapsed();
    let summary = format!("{}; {total_points} grid points in {elapsed:.1?}", lines.join("\n         "));
    if total_points > 500 {
        failures.push(format!("{total_points} grid points exceeds 500"));
    }
    if elapsed > Duration::from_secs(300) {
        failures.push(format!("took {elapsed:.1?}, limit 5 min"));
    }
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{}\n         {summary}", failures.join("; ")))
    }
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_nanocontour");
    let dir = tempfile::tempdir().unwrap();
    let config = configs_dir().join("paper_path_a.cfg");
    let mut csvs = Vec::new();
    for run_dir in ["first", "second"] {
        let out = dir.path().join(run_dir);
        let status =
            Command::new(bin).args(["simulate", "--config"]).arg(&config).arg("--out").arg(&out).output().unwrap();
        if !status.status.success() {
            return Err(format!("simulate failed: {}", String::from_utf8_lossy(&status.stderr)));
        }
        csvs.push(fs::read(out.join("trace.csv")).unwrap());
    }
    if csvs[0] != csvs[1] {
        return Err("trace CSVs differ between runs".into());
    }

    let (_, base) = bundled_configs().remove(1);
    let spec = load_sweep_spec(&configs_dir().join("sweep_coupling.cfg")).unwrap();
    let forward = sweep(&base, &spec).unwrap();
    let mut shuffled = spec.grid(&base.gains);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in (1..shuffled.len()).rev() {
        shuffled.swap(i, rng.gen_range(0..=i));
    }
    let permuted = evaluate_points(&base, &shuffled, spec.objective, spec.scope).unwrap();
    let same_points = forward.points.iter().all(|p| permuted.points.iter().any(|q| q == p));
    check(
        permuted.best_point() == forward.best_point() && same_points,
        format!(
            "{} byte-identical trace CSVs; shuffled sweep argmin k_d={} matches",
            csvs[0].len(),
            forward.best_point().gains.k_dx
        ),
        "sweep results depend on enumeration order".into(),
    )
}

fn sampling_convergence() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, config) in bundled_configs() {
        let rms = |dt: f64| {
            let m = metrics(&run(&SimConfig { dt, ..config.clone() }).unwrap()).unwrap();
            m.final_revolution.unwrap().rms_contour_error
        };
        let coarse = rms(config.dt);
        let fine = rms(config.dt / 2.0);
        let change = (fine - coarse).abs() / coarse;
        ok &= change < 0.01;
        lines.push(format!("{name}: {coarse:.6} -> {fine:.6} nm ({:.3}%)", 100.0 * change));
    }
    check(ok, lines.join(", "), lines.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("geometry oracle", geometry_oracle),
        ("projection suite", projection_suite),
        ("linearization suite", linearization_suite),
        ("matrix/foot equivalence", matrix_foot_equivalence),
        ("plant fidelity", plant_fidelity),
        ("decoupling identity", decoupling_identity),
        ("central claim", central_claim),
        ("determinism", determinism),
        ("sampling convergence", sampling_convergence),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
