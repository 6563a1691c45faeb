//! Sweep configuration: a flat `key = value` file plus command-line
//! overrides.
//!
//! The file uses TOML syntax restricted to top-level keys. Grids are
//! written as `[min, max, steps]`:
//!
//! ```toml
//! engine = "perturbative"      # perturbative | oracle | both
//! coupling = 7.5e-3            # K = (g/Ω)²
//! distance = 1.0               # ρ_x / λ for `sweep`
//! ladder = [0.05, 0.3, 1.0]    # ρ_x / λ values for `fig1`
//! xi_x = [0.0, 3.0, 31]
//! epsilon_b = [0.0, 10.0, 21]
//! ```
//!
//! Every key is optional; see [`SweepConfig::default`] for the values used
//! when a key is absent.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::HarvestError;

/// Which engine evaluates each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Second-order amplitudes on the sweep mode set.
    Perturbative,
    /// Exact evolution in a truncated Fock space.
    Oracle,
    /// One record from each engine per point.
    Both,
}

impl Engine {
    /// Lower-case name used in files and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Engine::Perturbative => "perturbative",
            Engine::Oracle => "oracle",
            Engine::Both => "both",
        }
    }

    /// Parses a lower-case name.
    pub fn parse(s: &str) -> Result<Self, HarvestError> {
        match s {
            "perturbative" => Ok(Engine::Perturbative),
            "oracle" => Ok(Engine::Oracle),
            "both" => Ok(Engine::Both),
            _ => Err(HarvestError::Config(format!("unknown engine `{s}`"))),
        }
    }

    /// Concrete engines that produce records.
    pub fn expand(self) -> &'static [Engine] {
        match self {
            Engine::Perturbative => &[Engine::Perturbative],
            Engine::Oracle => &[Engine::Oracle],
            Engine::Both => &[Engine::Perturbative, Engine::Oracle],
        }
    }
}

/// Evenly spaced grid `min, …, max` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64, usize)", into = "(f64, f64, usize)")]
pub struct Grid {
    /// First value.
    pub min: f64,
    /// Last value.
    pub max: f64,
    /// Number of points.
    pub steps: usize,
}

impl From<(f64, f64, usize)> for Grid {
    fn from((min, max, steps): (f64, f64, usize)) -> Self {
        Self { min, max, steps }
    }
}

impl From<Grid> for (f64, f64, usize) {
    fn from(g: Grid) -> Self {
        (g.min, g.max, g.steps)
    }
}

impl Grid {
    /// Builds a grid.
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps }
    }

    /// Parses `min,max,steps`.
    pub fn parse(s: &str) -> Result<Self, HarvestError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || HarvestError::Config(format!("grid `{s}` must be `min,max,steps`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let min = parts[0].parse().map_err(|_| bad())?;
        let max = parts[1].parse().map_err(|_| bad())?;
        let steps = parts[2].parse().map_err(|_| bad())?;
        Ok(Self { min, max, steps })
    }

    /// The `i`-th value; the last one is exactly `max`.
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }

    /// All values.
    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }

    fn validate(&self, name: &str) -> Result<(), HarvestError> {
        if !self.min.is_finite() || !self.max.is_finite() || !(self.min < self.max) {
            return Err(HarvestError::Config(format!("{name}: need finite min < max")));
        }
        if self.steps < 2 {
            return Err(HarvestError::Config(format!("{name}: need at least 2 steps")));
        }
        Ok(())
    }
}

/// Everything that determines a sweep.
///
/// Lengths are in units where Ω = `omega` and c = `c_flat`; distances are
/// given in qubit wavelengths λ = 2πc/Ω.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    /// Engine selection.
    pub engine: Engine,
    /// Dimensionless coupling K.
    pub coupling: f64,
    /// ρ_x/λ for a single sweep.
    pub distance: f64,
    /// ρ_x/λ values for the three-panel figure.
    pub ladder: Vec<f64>,
    /// Laboratory light-cone parameter grid.
    pub xi_x: Grid,
    /// Throat ratio grid ε_b = b₀/x_B.
    pub epsilon_b: Grid,
    /// Qubit angular frequency.
    pub omega: f64,
    /// Asymptotic field speed.
    pub c_flat: f64,
    /// Largest K·Ω·t for which a point is flagged valid.
    pub validity_bound: f64,
    /// UV cutoff of the perturbative mode set in units of Ω.
    pub cutoff_ratio: f64,
    /// Box length in units of the longest light path or separation.
    pub box_factor: f64,
    /// Smallest box length in wavelengths.
    pub min_box_wavelengths: f64,
    /// Start of the smooth UV window as a fraction of the cutoff.
    pub taper_start: f64,
    /// Relative tolerance of the mode-refinement check.
    pub convergence_tolerance: f64,
    /// Mode count of the oracle field.
    pub oracle_modes: usize,
    /// Oracle box length in wavelengths.
    pub oracle_box_wavelengths: f64,
    /// Photon-number cap of the oracle.
    pub oracle_n_max: usize,
    /// Oracle points re-run with one more photon to check truncation.
    pub truncation_samples: usize,
    /// Seed for choosing the truncation samples.
    pub seed: u64,
    /// Output directory.
    pub out: PathBuf,
    /// Worker threads; 0 picks the number of cores.
    pub jobs: usize,
    /// Write each oracle point's reduced density matrix.
    pub dump_density: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            engine: Engine::Perturbative,
            coupling: 7.5e-3,
            distance: 1.0,
            ladder: vec![0.05, 0.3, 1.0],
            xi_x: Grid::new(0.0, 3.0, 31),
            epsilon_b: Grid::new(0.0, 10.0, 21),
            omega: 1.0,
            c_flat: 1.0,
            validity_bound: 0.5,
            cutoff_ratio: 40.0,
            box_factor: 8.0,
            min_box_wavelengths: 16.0,
            taper_start: 0.5,
            convergence_tolerance: 1e-3,
            oracle_modes: 32,
            oracle_box_wavelengths: 8.0,
            oracle_n_max: 2,
            truncation_samples: 0,
            seed: 0,
            out: PathBuf::from("out"),
            jobs: 0,
            dump_density: false,
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    /// `--engine`.
    pub engine: Option<String>,
    /// `--out`.
    pub out: Option<PathBuf>,
    /// `--distance`, one value or a comma list.
    pub distance: Option<String>,
    /// `--grid-xi`.
    pub grid_xi: Option<String>,
    /// `--grid-eb`.
    pub grid_eb: Option<String>,
    /// `--jobs`.
    pub jobs: Option<usize>,
}

#[derive(Serialize)]
struct HashedFields<'a> {
    version: &'a str,
    engine: Engine,
    coupling: f64,
    distance: f64,
    xi_x: Grid,
    epsilon_b: Grid,
    omega: f64,
    c_flat: f64,
    validity_bound: f64,
    cutoff_ratio: f64,
    box_factor: f64,
    min_box_wavelengths: f64,
    taper_start: f64,
    convergence_tolerance: f64,
    oracle_modes: usize,
    oracle_box_wavelengths: f64,
    oracle_n_max: usize,
    truncation_samples: usize,
    seed: u64,
}

impl SweepConfig {
    /// Parses the file contents.
    pub fn from_toml(text: &str) -> Result<Self, HarvestError> {
        toml::from_str(text).map_err(|e| HarvestError::Config(e.to_string()))
    }

    /// Reads and parses a file.
    pub fn load(path: &Path) -> Result<Self, HarvestError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarvestError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Applies command-line overrides. A comma list in `--distance` sets the
    /// ladder; its first entry also sets `distance`.
    pub fn apply(&mut self, o: &Overrides) -> Result<(), HarvestError> {
        if let Some(e) = &o.engine {
            self.engine = Engine::parse(e)?;
        }
        if let Some(out) = &o.out {
            self.out = out.clone();
        }
        if let Some(d) = &o.distance {
            let values = d
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| HarvestError::Config(format!("distance `{d}` is not a number list")))?;
            self.distance = values[0];
            self.ladder = values;
        }
        if let Some(g) = &o.grid_xi {
            self.xi_x = Grid::parse(g)?;
        }
        if let Some(g) = &o.grid_eb {
            self.epsilon_b = Grid::parse(g)?;
        }
        if let Some(j) = o.jobs {
            self.jobs = j;
        }
        Ok(())
    }

    /// Checks every invariant; failures map to exit code 2.
    pub fn validate(&self) -> Result<(), HarvestError> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(HarvestError::Config(format!("{name} must be finite and > 0")))
            }
        };
        positive("coupling", self.coupling)?;
        positive("distance", self.distance)?;
        positive("omega", self.omega)?;
        positive("c_flat", self.c_flat)?;
        positive("validity_bound", self.validity_bound)?;
        positive("cutoff_ratio", self.cutoff_ratio)?;
        positive("box_factor", self.box_factor)?;
        positive("convergence_tolerance", self.convergence_tolerance)?;
        positive("oracle_box_wavelengths", self.oracle_box_wavelengths)?;
        if !(self.taper_start > 0.0 && self.taper_start <= 1.0) {
            return Err(HarvestError::Config("taper_start must be in (0, 1]".into()));
        }
        if !(self.min_box_wavelengths >= 0.0) {
            return Err(HarvestError::Config("min_box_wavelengths must be >= 0".into()));
        }
        for &d in &self.ladder {
            positive("ladder entry", d)?;
        }
        if self.ladder.is_empty() {
            return Err(HarvestError::Config("ladder must not be empty".into()));
        }
        self.xi_x.validate("xi_x")?;
        self.epsilon_b.validate("epsilon_b")?;
        if self.xi_x.min < 0.0 || self.epsilon_b.min < 0.0 {
            return Err(HarvestError::Config("grids must be non-negative".into()));
        }
        if self.oracle_modes < 2 || self.oracle_modes % 2 != 0 {
            return Err(HarvestError::Config("oracle_modes must be even and >= 2".into()));
        }
        Ok(())
    }

    /// Qubit wavelength 2πc/Ω.
    pub fn wavelength(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.c_flat / self.omega
    }

    /// Copy with a different single distance.
    pub fn at_distance(&self, distance: f64) -> Self {
        Self { distance, ..self.clone() }
    }

    /// SHA-256 over every field that affects the numbers, hex encoded.
    pub fn hash(&self) -> String {
        let fields = HashedFields {
            version: env!("CARGO_PKG_VERSION"),
            engine: self.engine,
            coupling: self.coupling,
            distance: self.distance,
            xi_x: self.xi_x,
            epsilon_b: self.epsilon_b,
            omega: self.omega,
            c_flat: self.c_flat,
            validity_bound: self.validity_bound,
            cutoff_ratio: self.cutoff_ratio,
            box_factor: self.box_factor,
            min_box_wavelengths: self.min_box_wavelengths,
            taper_start: self.taper_start,
            convergence_tolerance: self.convergence_tolerance,
            oracle_modes: self.oracle_modes,
            oracle_box_wavelengths: self.oracle_box_wavelengths,
            oracle_n_max: self.oracle_n_max,
            truncation_samples: self.truncation_samples,
            seed: self.seed,
        };
        let json = serde_json::to_string(&fields).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}
