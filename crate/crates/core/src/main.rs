//! Command-line front end: mode tables, single runs, figure presets,
//! method cross-checks, and parameter sweeps.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wgqed::mode_physics::{
    calibrate_coupling, list_coupled_modes, mode_params, AtomPairConfig, WaveguideGeometry,
};
use wgqed::scenario::{
    compare_methods, figure_preset, preset_names, run_scenario, write_concurrence_svg,
    write_config_echo, write_csv, MethodTrajectory, OmegaSpec, RunError, RunReport,
    ScenarioConfig, TimeSpec,
};

#[derive(Parser)]
#[command(
    name = "wgqed",
    version,
    about = "Concurrence dynamics of an atom pair coupled through waveguide TM modes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Suppress progress and summary output on stdout.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coupled propagating modes and their derived parameters.
    Modes(ModesArgs),
    /// Run one scenario config and write its trajectories as CSV.
    Run {
        config: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run a built-in figure preset (a named family of scenarios).
    Figure {
        /// One of: fig2a, fig2b, fig2c, fig3, fig4a, fig4b, fig4c, fig4d.
        name: String,
        #[command(flatten)]
        output: OutputOpts,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Solve with both methods and report their worst disagreement.
    Compare {
        config: PathBuf,
        /// Maximum allowed amplitude deviation between methods.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run the config once per value of its [sweep] parameter.
    Sweep {
        config: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Args)]
struct ModesArgs {
    /// Transition frequency in c/a: a number or "mid(mn,mn)".
    #[arg(long, default_value = "mid(11,31)")]
    omega_a: String,
    /// Waveguide width.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Waveguide height (defaults to a/2).
    #[arg(long)]
    b: Option<f64>,
    /// Dimensionless coupling gamma_1 lambda_1 / v_1 used for the rate column.
    #[arg(long, default_value_t = 0.05)]
    coupling_d: f64,
    /// Atom separation in units of a, used for the tau and phi columns.
    #[arg(long, default_value_t = 0.0)]
    d: f64,
}

#[derive(Args)]
struct OutputOpts {
    /// Output directory (created if missing).
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Also write an SVG concurrence plot per scenario.
    #[arg(long)]
    plot: bool,
}

#[derive(Args, Clone, Copy)]
struct Overrides {
    /// Steps per shortest delay (min 8).
    #[arg(long)]
    step_fraction_tau: Option<u32>,
    /// Steps per decay time 1/gamma (min 8).
    #[arg(long)]
    step_fraction_gamma: Option<u32>,
    /// Absolute integration horizon in a/c, replacing the config's [time] key.
    #[arg(long)]
    t_max: Option<f64>,
    /// Output grid points.
    #[arg(long)]
    samples: Option<usize>,
}

impl Overrides {
    fn apply(&self, config: &mut ScenarioConfig) -> Result<(), RunError> {
        if let Some(x) = self.step_fraction_tau {
            config.solver.step_fraction_tau = x;
        }
        if let Some(x) = self.step_fraction_gamma {
            config.solver.step_fraction_gamma = x;
        }
        if let Some(x) = self.t_max {
            if !(x > 0.0) || !x.is_finite() {
                return Err(wgqed::scenario::ConfigError::Validation(format!(
                    "--t-max must be positive and finite (got {x})"
                ))
                .into());
            }
            config.time = TimeSpec::Absolute(x);
        }
        if let Some(n) = self.samples {
            if n < 2 {
                return Err(wgqed::scenario::ConfigError::Validation(format!(
                    "--samples must be at least 2 (got {n})"
                ))
                .into());
            }
            config.samples = n;
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Modes(args) => cmd_modes(args),
        Command::Run { config, output, overrides } => cmd_run(config, output, overrides, cli.quiet),
        Command::Figure { name, output, overrides } => {
            cmd_figure(name, output, overrides, cli.quiet)
        }
        Command::Compare { config, tolerance, overrides } => {
            cmd_compare(config, *tolerance, overrides, cli.quiet)
        }
        Command::Sweep { config, output, overrides } => {
            cmd_sweep(config, output, overrides, cli.quiet)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn cmd_modes(args: &ModesArgs) -> Result<ExitCode, RunError> {
    let geom = WaveguideGeometry::new(args.a, args.b.unwrap_or(args.a / 2.0))?;
    let omega_a = OmegaSpec::parse(&args.omega_a)?.frequency(&geom);
    let modes = list_coupled_modes(&geom, omega_a);
    println!(
        "omega_A = {omega_a:.16e}  a = {}  b = {}  coupled propagating modes: {}",
        geom.a,
        geom.b,
        modes.len()
    );
    if modes.is_empty() {
        return Err(RunError::NoPropagatingModes { omega_a });
    }
    let scale = calibrate_coupling(args.coupling_d, &geom, omega_a, modes[0])?;
    let atoms = AtomPairConfig { omega_a, d: args.d, coupling_scale: scale };
    for mode in modes {
        let p = mode_params(&geom, &atoms, mode)?;
        println!(
            "{} cutoff={:.16e} k0={:.16e} v={:.16e} gamma={:.16e} tau={:.16e} phi={:.16e}",
            p.mode, p.cutoff, p.k0, p.v, p.gamma, p.tau, p.phi
        );
    }
    Ok(ExitCode::SUCCESS)
}

/// Writes the config echo, one CSV per method, and optionally the plot.
fn write_scenario_files(
    out: &Path,
    name: &str,
    config: &ScenarioConfig,
    report: &RunReport,
    plot: bool,
    quiet: bool,
) -> Result<(), RunError> {
    std::fs::create_dir_all(out)?;
    let echo = File::create(out.join(format!("{name}.toml")))?;
    write_config_echo(BufWriter::new(echo), config)?;
    for traj in report.trajectories() {
        let path = out.join(format!("{name}_{}.csv", traj.method));
        let file = File::create(&path)?;
        write_csv(BufWriter::new(file), &report.resolved, traj)?;
        if !quiet {
            println!("wrote {}", path.display());
        }
    }
    if plot {
        let curves: Vec<(String, &MethodTrajectory)> = report
            .trajectories()
            .map(|t| (t.method.to_string(), t))
            .collect();
        let path = out.join(format!("{name}.svg"));
        let file = File::create(&path)?;
        write_concurrence_svg(BufWriter::new(file), &report.resolved, &curves)?;
        if !quiet {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn print_summary(name: &str, report: &RunReport, quiet: bool) {
    for warning in &report.resolved.warnings {
        eprintln!("warning: {name}: {warning}");
    }
    if quiet {
        return;
    }
    let r = &report.resolved;
    print!(
        "{name}: {} mode(s), gamma = {:.6e}, tau_1 = {:.6e}, t_max = {:.6e}",
        r.modes.len(),
        r.gamma,
        r.tau1,
        r.t_max
    );
    if let Some(dev) = report.max_deviation {
        print!(", method deviation = {dev:.3e}");
    }
    println!();
}

fn cmd_run(
    path: &Path,
    output: &OutputOpts,
    overrides: &Overrides,
    quiet: bool,
) -> Result<ExitCode, RunError> {
    let mut config = ScenarioConfig::load(path)?;
    overrides.apply(&mut config)?;
    let report = run_scenario(&config)?;
    print_summary("run", &report, quiet);
    write_scenario_files(&output.out, "run", &config, &report, output.plot, quiet)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_figure(
    name: &str,
    output: &OutputOpts,
    overrides: &Overrides,
    quiet: bool,
) -> Result<ExitCode, RunError> {
    if !preset_names().contains(&name) {
        return Err(RunError::UnknownPreset(name.to_string()));
    }
    for (label, mut config) in figure_preset(name)? {
        overrides.apply(&mut config)?;
        let report = run_scenario(&config)?;
        let full = format!("{name}_{label}");
        print_summary(&full, &report, quiet);
        write_scenario_files(&output.out, &full, &config, &report, output.plot, quiet)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(
    path: &Path,
    tolerance: f64,
    overrides: &Overrides,
    quiet: bool,
) -> Result<ExitCode, RunError> {
    let mut config = ScenarioConfig::load(path)?;
    overrides.apply(&mut config)?;
    let compared = compare_methods(&config, tolerance)?;
    print_summary("compare", &compared.report, quiet);
    println!(
        "max deviation {:.6e} vs tolerance {:.6e}: {}",
        compared.max_deviation,
        compared.tolerance,
        if compared.passed() { "PASS" } else { "FAIL" }
    );
    if compared.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn cmd_sweep(
    path: &Path,
    output: &OutputOpts,
    overrides: &Overrides,
    quiet: bool,
) -> Result<ExitCode, RunError> {
    let mut config = ScenarioConfig::load(path)?;
    overrides.apply(&mut config)?;
    let sweep = config.sweep.clone().ok_or(RunError::NoSweep)?;
    for (i, &value) in sweep.values.iter().enumerate() {
        let point = config.with_sweep_value(&sweep.key, value)?;
        let report = run_scenario(&point)?;
        let label = format!("sweep_{i:03}");
        if !quiet {
            println!("{} = {value}", sweep.key);
        }
        print_summary(&label, &report, quiet);
        write_scenario_files(&output.out, &label, &point, &report, output.plot, quiet)?;
    }
    Ok(ExitCode::SUCCESS)
}
