use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nanocontour::metrics::{ErrorStats, RelativeChange};
use nanocontour_cli::config::{load_sim_config, load_sweep_spec};
use nanocontour_cli::{compare, simulate, sweep, CliError, Overrides};

/// Cross-coupled contour control simulator for a two-axis nano-positioning
/// stage.
#[derive(Parser)]
#[command(name = "nanocontour", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output directory; created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Override the loop period in seconds.
    #[arg(long)]
    dt: Option<f64>,
    /// Disable the cross-coupling stage (equivalent to k_d = 0).
    #[arg(long)]
    no_coupling: bool,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides { dt: self.dt, no_coupling: self.no_coupling }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one closed-loop simulation.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run two configurations on the same path and report relative changes.
    ///
    /// With one --config, the baseline is that config with coupling disabled.
    /// With two, the first is the baseline; --no-coupling applies to it only.
    Compare {
        #[arg(long, num_args = 1, required = true, action = clap::ArgAction::Append)]
        config: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Grid-search controller gains.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        sweep: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn print_stats(label: &str, s: &ErrorStats) {
    println!(
        "  {label:<16} max |eps| {:>12.6} nm   rms eps {:>12.6} nm   max |e_x| {:>10.4} nm   max |e_y| {:>10.4} nm",
        s.max_abs_contour_error, s.rms_contour_error, s.max_abs_e_x, s.max_abs_e_y
    );
}

fn print_change(label: &str, c: &RelativeChange) {
    println!(
        "  {label:<16} max |eps| {:+8.2}%   rms eps {:+8.2}%   rms axial {:+8.2}%",
        100.0 * c.max_abs_contour_error,
        100.0 * c.rms_contour_error,
        100.0 * c.rms_axial_error
    );
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, common } => {
            let config = common.overrides().apply(load_sim_config(&config)?)?;
            let out = simulate(&config, &common.out)?;
            println!("simulated {} samples", out.trace.len());
            print_stats("full", &out.metrics.full);
            if let Some(f) = &out.metrics.final_revolution {
                print_stats("final revolution", f);
            }
            println!("manifest: {}", out.manifest.display());
        }
        Command::Compare { config, common } => {
            let (baseline, candidate) = match config.as_slice() {
                [single] => {
                    let loaded = load_sim_config(single)?;
                    let baseline = Overrides { no_coupling: true, ..common.overrides() }.apply(loaded.clone())?;
                    let candidate = Overrides { no_coupling: false, ..common.overrides() }.apply(loaded)?;
                    (baseline, candidate)
                }
                [a, b] => {
                    let baseline = common.overrides().apply(load_sim_config(a)?)?;
                    let candidate =
                        Overrides { no_coupling: false, ..common.overrides() }.apply(load_sim_config(b)?)?;
                    (baseline, candidate)
                }
                _ => return Err(CliError::Config("compare takes one or two --config files".into())),
            };
            let report = compare(&baseline, &candidate, &common.out)?;
            print_stats("baseline", &report.baseline.full);
            print_stats("candidate", &report.candidate.full);
            print_change("change (full)", &report.change_full);
            if let Some(c) = &report.change_final_revolution {
                print_change("change (final)", c);
            }
        }
        Command::Sweep { config, sweep: sweep_path, common } => {
            let base = common.overrides().apply(load_sim_config(&config)?)?;
            let spec = load_sweep_spec(&sweep_path)?;
            let out = sweep(&base, &spec, &common.out)?;
            let best = out.result.best_point();
            let unstable = out.result.points.iter().filter(|p| !p.stable()).count();
            println!("evaluated {} grid points ({unstable} unstable)", out.result.points.len());
            println!("best objective {:.9e} at {:?}", best.objective, best.gains);
            println!("best-gains config: {}", out.best_config_path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nanocontour: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
