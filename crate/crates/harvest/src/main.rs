use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use harvest::output::{emit_outputs, profile_table, regimes_text, write_file};
use harvest::{
    classify_regimes, distance_dir, run_ladder, run_sweep, Engine, HarvestError, Overrides,
    RegimeThresholds, RunOptions, SweepConfig, EXIT_POINT_FAILURE,
};
use harvest_core::squid_map::{discretize_profile, feasibility, FeasibilityThresholds};
use harvest_core::{ArraySpec, WormholeGeometry};

/// Entanglement harvesting across an analogue wormhole.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep (ξ_x, ε_b) at one qubit distance.
    Sweep(SweepArgs),
    /// Sweep every ladder distance and label the regimes.
    Fig1(SweepArgs),
    /// Wavelength, throat ratio and thermal occupation of a circuit.
    Feasibility(FeasibilityArgs),
    /// Flux-bias table of a SQUID array.
    Profile(ProfileArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Flat key = value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// perturbative | oracle | both.
    #[arg(long)]
    engine: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// ρ_x/λ; a comma list sets the ladder.
    #[arg(long)]
    distance: Option<String>,
    /// ξ_x grid as min,max,steps.
    #[arg(long)]
    grid_xi: Option<String>,
    /// ε_b grid as min,max,steps.
    #[arg(long)]
    grid_eb: Option<String>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Ignore and do not write the resume cache.
    #[arg(long)]
    no_resume: bool,
}

#[derive(Args)]
struct FeasibilityArgs {
    /// Field speed far from the throat (m/s).
    #[arg(long, default_value_t = 1e6)]
    c_flat: f64,
    /// Qubit frequency (GHz).
    #[arg(long, default_value_t = 10.0)]
    frequency_ghz: f64,
    /// Throat radius b₀ (m).
    #[arg(long, default_value_t = 2.5e-4)]
    b0: f64,
    /// Qubit separation ρ_x (m).
    #[arg(long, default_value_t = 1e-4)]
    rho_x: f64,
    /// Temperatures (K), comma separated.
    #[arg(long, default_value = "0.03,0.005")]
    temperatures: String,
    /// Smallest ε_b counted as wormhole-enabled.
    #[arg(long, default_value_t = 5.0)]
    min_epsilon_b: f64,
    /// Largest throat the bias can emulate (m).
    #[arg(long, default_value_t = 1e-3)]
    max_throat: f64,
}

#[derive(Args)]
struct ProfileArgs {
    /// Throat radius b₀ (m).
    #[arg(long, default_value_t = 1e-3)]
    b0: f64,
    /// Cell pitch (m).
    #[arg(long, default_value_t = 10e-6)]
    pitch: f64,
    /// Number of cells.
    #[arg(long, default_value_t = 1000)]
    cells: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_config(args: &SweepArgs) -> Result<SweepConfig, HarvestError> {
    let mut config = match &args.config {
        Some(path) => SweepConfig::load(path)?,
        None => SweepConfig::default(),
    };
    config.apply(&Overrides {
        engine: args.engine.clone(),
        out: args.out.clone(),
        distance: args.distance.clone(),
        grid_xi: args.grid_xi.clone(),
        grid_eb: args.grid_eb.clone(),
        jobs: args.jobs,
    })?;
    config.validate()?;
    Ok(config)
}

fn run_options(config: &SweepConfig, args: &SweepArgs) -> RunOptions {
    RunOptions { resume_dir: (!args.no_resume).then(|| config.out.join(".resume")) }
}

fn report_points(result: &harvest::SweepResult) -> bool {
    let failed = result.records.iter().filter(|r| r.failed()).count();
    let unconverged = result.records.iter().filter(|r| !r.converged).count();
    let invalid = result.records.iter().filter(|r| !r.valid).count();
    eprintln!(
        "rho_x/lambda = {}: {} records, {failed} failed, {unconverged} not converged, {invalid} outside K*Omega*t <= {}",
        result.config.distance,
        result.records.len(),
        result.config.validity_bound
    );
    for check in &result.metadata.truncation_checks {
        eprintln!(
            "  truncation check at point {}: relative change {:.3e} ({})",
            check.index,
            check.relative_change,
            if check.passed { "ok" } else { "above 1e-4" }
        );
    }
    failed > 0
}

fn sweep(args: &SweepArgs) -> Result<bool, HarvestError> {
    let config = load_config(args)?;
    let result = run_sweep(&config, &run_options(&config, args))?;
    emit_outputs(&result, &config.out)?;
    Ok(report_points(&result))
}

fn fig1(args: &SweepArgs) -> Result<bool, HarvestError> {
    let config = load_config(args)?;
    let results = run_ladder(&config, &run_options(&config, args))?;
    let mut any_failed = false;
    for r in &results {
        emit_outputs(r, &config.out.join(distance_dir(r.config.distance)))?;
        any_failed |= report_points(r);
    }
    let engine = if config.engine == Engine::Oracle { Engine::Oracle } else { Engine::Perturbative };
    let labels = classify_regimes(&results, engine, &RegimeThresholds::default());
    let text = regimes_text(&labels);
    write_file(&config.out.join("regimes.txt"), &text)?;
    write_file(
        &config.out.join("regimes.json"),
        &serde_json::to_string_pretty(&labels).expect("labels serialize"),
    )?;
    print!("{text}");
    Ok(any_failed)
}

fn feasibility_report(args: &FeasibilityArgs) -> Result<(), HarvestError> {
    let config_err = |e: harvest_core::Error| HarvestError::Config(e.to_string());
    let geom = if args.b0 == 0.0 {
        WormholeGeometry::flat(args.c_flat)
    } else {
        WormholeGeometry::new(args.b0, args.c_flat)
    }
    .map_err(config_err)?;
    let omega = 2.0 * std::f64::consts::PI * args.frequency_ghz * 1e9;
    let thresholds = FeasibilityThresholds { min_epsilon_b: args.min_epsilon_b, max_throat: args.max_throat };
    let temperatures = args
        .temperatures
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| HarvestError::Config(format!("bad temperature list `{}`", args.temperatures)))?;
    let mut first = true;
    for t in temperatures {
        let r = feasibility(&geom, omega, args.rho_x, t, thresholds).map_err(config_err)?;
        if first {
            println!("wavelength_m {:e}", r.wavelength);
            println!("epsilon_b {}", r.epsilon_b);
            println!("speed_for_rho_x_equal_lambda_m_per_s {:e}", r.speed_required);
            println!("throat_for_min_epsilon_b_at_lambda_m {:e}", r.required_throat);
            println!("flat {}", r.flat);
            println!("feasible {}", r.feasible);
            println!("achievable_at_wavelength {}", r.achievable_at_wavelength);
            first = false;
        }
        println!("thermal_occupation_at_{t}_K {:e}", r.thermal_occupation);
    }
    Ok(())
}

fn profile(args: &ProfileArgs) -> Result<(), HarvestError> {
    let config_err = |e: harvest_core::Error| HarvestError::Config(e.to_string());
    let geom = if args.b0 == 0.0 { WormholeGeometry::flat(1.0) } else { WormholeGeometry::new(args.b0, 1.0) }
        .map_err(config_err)?;
    let array = ArraySpec::new(args.pitch, args.cells, 1.0).map_err(config_err)?;
    let table = profile_table(&discretize_profile(&geom, &array));
    match &args.out {
        Some(path) => write_file(path, &table),
        None => {
            print!("{table}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Fig1(a) => fig1(a),
        Command::Feasibility(a) => feasibility_report(a).map(|_| false),
        Command::Profile(a) => profile(a).map(|_| false),
    };
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(EXIT_POINT_FAILURE as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
