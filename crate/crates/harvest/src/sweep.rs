//! Grid sweeps over (ξ_x, ε_b) at fixed coupling and qubit distance.
//!
//! Grid index `i = i_eb · n_xi + i_xi`. Points are evaluated on a worker
//! pool and merged by index, so results do not depend on the number of
//! workers. Completed records are appended to
//! `<out>/.resume/<config hash>.jsonl`; a rerun with the same config reads
//! them back instead of recomputing.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use harvest_core::kinematics::{self, time_for_xi_x};
use harvest_core::oracle::{self, OracleOptions, ReducedDensityMatrix};
use harvest_core::perturbation::evaluate_wormhole;
use harvest_core::{
    FieldModeSet, InteractionSpec, ModeBudget, QubitPairConfig, WormholeGeometry,
};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Engine, SweepConfig};
use crate::HarvestError;

/// Relative change allowed when one more photon is admitted.
pub const TRUNCATION_TOLERANCE: f64 = 1e-4;

/// One engine's result at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    /// Grid index.
    pub index: usize,
    /// Laboratory light-cone parameter.
    pub xi_x: f64,
    /// Throat ratio b₀/x_B.
    pub epsilon_b: f64,
    /// Concurrence, clamped to [0, 1].
    pub concurrence: f64,
    /// Engine that produced the record.
    pub engine: Engine,
    /// K·Ω·t is within the validity bound.
    pub valid: bool,
    /// The engine's own accuracy check passed.
    pub converged: bool,
    /// K·Ω·t.
    pub perturbative_parameter: f64,
    /// Free-falling light-cone parameter ξ_l.
    pub xi_l: f64,
    /// Perturbative `2(|X| − √(p_A p_B))` before clamping.
    pub raw: Option<f64>,
    /// Failure message; the other numbers are then placeholders.
    pub error: Option<String>,
}

impl SweepRecord {
    /// The point could not be evaluated.
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

/// Outcome of re-running an oracle point with `n_max + 1` photons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationCheck {
    /// Grid index.
    pub index: usize,
    /// Concurrence at the configured cap.
    pub concurrence: f64,
    /// Concurrence with one more photon.
    pub refined: f64,
    /// `|refined − concurrence| / refined`.
    pub relative_change: f64,
    /// `relative_change < TRUNCATION_TOLERANCE`.
    pub passed: bool,
}

/// Run metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    /// Config hash used for resume keys.
    pub config_hash: String,
    /// Version of this crate.
    pub version: String,
    /// Wall-clock seconds.
    pub elapsed_seconds: f64,
    /// ρ_x/λ.
    pub distance: f64,
    /// Perturbative mode count.
    pub n_modes: usize,
    /// Perturbative box length.
    pub box_length: f64,
    /// Records read from the resume cache.
    pub resumed: usize,
    /// Oracle truncation checks.
    pub truncation_checks: Vec<TruncationCheck>,
}

/// Records of one sweep in grid order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// Config that produced the result.
    pub config: SweepConfig,
    /// One record per grid point per engine, sorted by (index, engine).
    pub records: Vec<SweepRecord>,
    /// Run metadata.
    pub metadata: SweepMetadata,
    /// Oracle reduced states by grid index, when requested.
    #[serde(skip)]
    pub densities: BTreeMap<usize, ReducedDensityMatrix>,
}

impl SweepResult {
    /// Any record failed.
    pub fn any_failed(&self) -> bool {
        self.records.iter().any(SweepRecord::failed)
    }

    /// Records of one engine.
    pub fn engine_records(&self, engine: Engine) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(move |r| r.engine == engine)
    }
}

/// Geometry and configuration of one grid point.
pub struct Point {
    /// Grid index.
    pub index: usize,
    /// ξ_x.
    pub xi_x: f64,
    /// ε_b.
    pub epsilon_b: f64,
    /// Geometry (flat when ε_b = 0).
    pub geometry: WormholeGeometry,
    /// Qubit pair.
    pub pair: QubitPairConfig,
}

/// All grid points in index order.
pub fn grid_points(config: &SweepConfig) -> Result<Vec<Point>, HarvestError> {
    let x_b = 0.5 * config.distance * config.wavelength();
    let xis = config.xi_x.values();
    let mut points = Vec::with_capacity(xis.len() * config.epsilon_b.steps);
    for (j, eb) in config.epsilon_b.values().into_iter().enumerate() {
        let geometry = if eb == 0.0 {
            WormholeGeometry::flat(config.c_flat)
        } else {
            WormholeGeometry::new(eb * x_b, config.c_flat)
        }
        .map_err(|e| HarvestError::Config(e.to_string()))?;
        for (i, &xi) in xis.iter().enumerate() {
            let t = time_for_xi_x(&geometry, x_b, xi).map_err(|e| HarvestError::Config(e.to_string()))?;
            let pair = QubitPairConfig::new(x_b, config.omega, config.coupling, t)
                .map_err(|e| HarvestError::Config(e.to_string()))?;
            points.push(Point { index: j * xis.len() + i, xi_x: xi, epsilon_b: eb, geometry, pair });
        }
    }
    Ok(points)
}

/// Mode set shared by every perturbative point of a sweep.
pub fn sweep_mode_set(config: &SweepConfig) -> Result<FieldModeSet, HarvestError> {
    let x_b = 0.5 * config.distance * config.wavelength();
    let widest = WormholeGeometry::new(config.epsilon_b.max * x_b, config.c_flat)
        .map_err(|e| HarvestError::Config(e.to_string()))?;
    let rho_l_max = kinematics::rho_l_from_lab(&widest, x_b).map_err(|e| HarvestError::Config(e.to_string()))?;
    let light_max = config.xi_x.max * rho_l_max;
    let budget = ModeBudget {
        cutoff_ratio: config.cutoff_ratio,
        box_factor: config.box_factor,
        min_box_wavelengths: config.min_box_wavelengths,
        taper_start: config.taper_start,
    };
    budget
        .mode_set(rho_l_max, light_max, config.c_flat, config.omega)
        .map_err(|e| HarvestError::Config(e.to_string()))
}

/// Mode set of the oracle engine.
pub fn oracle_mode_set(config: &SweepConfig) -> Result<FieldModeSet, HarvestError> {
    harvest_core::field_model::build_mode_set(
        config.oracle_box_wavelengths * config.wavelength(),
        config.oracle_modes,
        config.c_flat,
        config.omega,
    )
    .map_err(|e| HarvestError::Config(e.to_string()))
}

fn base_record(point: &Point, engine: Engine, config: &SweepConfig) -> SweepRecord {
    let kappa = point.pair.perturbative_parameter();
    SweepRecord {
        index: point.index,
        xi_x: point.xi_x,
        epsilon_b: point.epsilon_b,
        concurrence: 0.0,
        engine,
        valid: kappa <= config.validity_bound,
        converged: false,
        perturbative_parameter: kappa,
        xi_l: 0.0,
        raw: None,
        error: None,
    }
}

fn perturbative_point(
    point: &Point,
    config: &SweepConfig,
    modes: &FieldModeSet,
    refined: &FieldModeSet,
) -> SweepRecord {
    let mut record = base_record(point, Engine::Perturbative, config);
    let outcome = evaluate_wormhole(&point.geometry, &point.pair, modes)
        .and_then(|coarse| Ok((coarse, evaluate_wormhole(&point.geometry, &point.pair, refined)?)));
    match outcome {
        Ok((coarse, fine)) => {
            let a = &coarse.amplitudes;
            let raw = a.raw_concurrence();
            let scale = a.exchange.norm() + (a.p_a * a.p_b).sqrt();
            let drift = (raw - fine.amplitudes.raw_concurrence()).abs();
            record.raw = Some(raw);
            record.concurrence = coarse.concurrence().min(1.0);
            record.xi_l = coarse.params.xi_l;
            record.converged = drift <= config.convergence_tolerance * scale;
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

fn oracle_spec(point: &Point) -> harvest_core::Result<(InteractionSpec, f64)> {
    let params = kinematics::params_from_physical(&point.geometry, &point.pair)?;
    let spec = InteractionSpec::symmetric(
        params.rho_l,
        point.pair.omega(),
        point.pair.coupling(),
        point.pair.time(),
    )?;
    Ok((spec, params.xi_l))
}

fn oracle_point(
    point: &Point,
    config: &SweepConfig,
    modes: &FieldModeSet,
) -> (SweepRecord, Option<ReducedDensityMatrix>) {
    let mut record = base_record(point, Engine::Oracle, config);
    let options = OracleOptions { n_max: config.oracle_n_max, ..OracleOptions::default() };
    let outcome = oracle_spec(point).and_then(|(spec, xi_l)| Ok((oracle::run(&spec, modes, &options)?, xi_l)));
    match outcome {
        Ok((run, xi_l)) => {
            record.concurrence = run.concurrence.min(1.0);
            record.xi_l = xi_l;
            record.converged = run.norm_error <= 1e-10 && run.reduced.validate().is_valid();
            (record, Some(run.reduced))
        }
        Err(e) => {
            record.error = Some(e.to_string());
            (record, None)
        }
    }
}

fn truncation_check(point: &Point, config: &SweepConfig, modes: &FieldModeSet) -> Option<TruncationCheck> {
    let (spec, _) = oracle_spec(point).ok()?;
    let base = OracleOptions { n_max: config.oracle_n_max, ..OracleOptions::default() };
    let more = OracleOptions { n_max: config.oracle_n_max + 1, ..base };
    let c = oracle::run(&spec, modes, &base).ok()?.concurrence;
    let refined = oracle::run(&spec, modes, &more).ok()?.concurrence;
    let relative_change = if refined == 0.0 { (c - refined).abs() } else { (c - refined).abs() / refined };
    Some(TruncationCheck {
        index: point.index,
        concurrence: c,
        refined,
        relative_change,
        passed: relative_change < TRUNCATION_TOLERANCE,
    })
}

/// Options that do not change the numbers.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Read and append the resume cache under this directory.
    pub resume_dir: Option<PathBuf>,
}

struct ResumeCache {
    path: PathBuf,
    done: BTreeMap<(usize, Engine), SweepRecord>,
    writer: Mutex<File>,
}

impl ResumeCache {
    fn open(dir: &Path, hash: &str) -> Result<Self, HarvestError> {
        std::fs::create_dir_all(dir).map_err(|e| HarvestError::io(dir, e))?;
        let path = dir.join(format!("{hash}.jsonl"));
        let mut done = BTreeMap::new();
        if path.exists() {
            let file = File::open(&path).map_err(|e| HarvestError::io(&path, e))?;
            for line in BufReader::new(file).lines() {
                let line = line.map_err(|e| HarvestError::io(&path, e))?;
                // a torn final line from an interrupted run is skipped
                if let Ok(r) = serde_json::from_str::<SweepRecord>(&line) {
                    if !r.failed() {
                        done.insert((r.index, r.engine), r);
                    }
                }
            }
        }
        let mut writer = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| HarvestError::io(&path, e))?;
        let torn = std::fs::read(&path).map_err(|e| HarvestError::io(&path, e))?.last().is_some_and(|&b| b != b'\n');
        if torn {
            writer.write_all(b"\n").map_err(|e| HarvestError::io(&path, e))?;
        }
        Ok(Self { path, done, writer: Mutex::new(writer) })
    }

    fn append(&self, record: &SweepRecord) -> Result<(), HarvestError> {
        let line = serde_json::to_string(record).expect("record serializes");
        let mut w = self.writer.lock().expect("cache writer");
        writeln!(w, "{line}").and_then(|_| w.flush()).map_err(|e| HarvestError::io(&self.path, e))
    }
}

/// Runs a validated config.
pub fn run_sweep(config: &SweepConfig, options: &RunOptions) -> Result<SweepResult, HarvestError> {
    config.validate()?;
    let start = Instant::now();
    let hash = config.hash();
    let points = grid_points(config)?;
    let engines = config.engine.expand();
    let use_pert = engines.contains(&Engine::Perturbative);
    let use_oracle = engines.contains(&Engine::Oracle);
    let modes = sweep_mode_set(config)?;
    let refined = if use_pert { Some(modes.refined()) } else { None };
    let oracle_modes = if use_oracle { Some(oracle_mode_set(config)?) } else { None };

    let cache = match &options.resume_dir {
        Some(dir) => Some(ResumeCache::open(dir, &hash)?),
        None => None,
    };
    let resumed = cache.as_ref().map_or(0, |c| c.done.len());

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| HarvestError::Config(format!("worker pool: {e}")))?;

    let tasks: Vec<(usize, Engine)> = points
        .iter()
        .flat_map(|p| engines.iter().map(move |&e| (p.index, e)))
        .collect();
    let evaluated: Vec<Result<(SweepRecord, Option<ReducedDensityMatrix>), HarvestError>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(index, engine)| {
                let point = &points[index];
                let cached = cache.as_ref().and_then(|c| c.done.get(&(index, engine)).cloned());
                let fresh_density = engine == Engine::Oracle && config.dump_density;
                if let Some(record) = cached.filter(|_| !fresh_density) {
                    return Ok((record, None));
                }
                let (record, density) = match engine {
                    Engine::Perturbative => (
                        perturbative_point(point, config, &modes, refined.as_ref().expect("refined set")),
                        None,
                    ),
                    _ => oracle_point(point, config, oracle_modes.as_ref().expect("oracle modes")),
                };
                if let Some(c) = &cache {
                    c.append(&record)?;
                }
                Ok((record, density))
            })
            .collect()
    });

    let mut records = Vec::with_capacity(evaluated.len());
    let mut densities = BTreeMap::new();
    for item in evaluated {
        let (record, density) = item?;
        if let Some(d) = density {
            densities.insert(record.index, d);
        }
        records.push(record);
    }

    let mut truncation_checks = Vec::new();
    if use_oracle && config.truncation_samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let count = config.truncation_samples.min(points.len());
        let mut chosen: Vec<usize> = sample(&mut rng, points.len(), count).into_vec();
        chosen.sort_unstable();
        let om = oracle_modes.as_ref().expect("oracle modes");
        truncation_checks = pool.install(|| {
            chosen.par_iter().filter_map(|&i| truncation_check(&points[i], config, om)).collect()
        });
    }

    Ok(SweepResult {
        config: config.clone(),
        records,
        metadata: SweepMetadata {
            config_hash: hash,
            version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_seconds: start.elapsed().as_secs_f64(),
            distance: config.distance,
            n_modes: modes.len(),
            box_length: modes.box_length(),
            resumed,
            truncation_checks,
        },
        densities,
    })
}
