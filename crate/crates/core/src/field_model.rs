//! Discretized massless field on a ring of circumference `L` in the
//! free-falling coordinate `l`, and the qubit–field interaction
//! `H_I = Σ_α Σ_k g f_k σ^x_α (e^{ikχ_α} a_k + e^{−ikχ_α} a_k†)`.
//!
//! Both the perturbative engine and the exact oracle read the same
//! [`FieldModeSet`], so any normalization choice cancels in their
//! comparison. The mode weights are
//!
//! `f_k² = (ω_k/Ω)·(Δω/Ω)/(4π)`, with `Δω = 2πc/L`,
//!
//! so the spectral density `Σ_k g²f_k² δ(ω − ω_k)` tends to `Kω/(2π)`
//! independently of `L`, and the golden-rule emission probability of an
//! excited qubit is `K·Ω·t`.
//!
//! A set may carry a smooth UV taper: `f_k²` is multiplied by a `C^∞` window
//! that equals one below `s·ω_max` and falls to zero at `ω_max`. The local
//! part of the exchange sum does not decay with `ω`, so without the taper
//! mode sums oscillate with the cutoff and converge only as `O(Δω)` when the
//! box grows.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// One travelling-wave mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldMode {
    /// Wave number `2πn/L`.
    pub k: f64,
    /// Frequency `c|k|`.
    pub omega: f64,
    /// Dimensionless coupling weight `f_k`.
    pub weight: f64,
}

/// Symmetric set of `±k` modes with the zero mode excluded.
///
/// Modes are stored as `[+k₁, −k₁, +k₂, −k₂, …]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldModeSet {
    box_length: f64,
    c_flat: f64,
    reference_frequency: f64,
    taper_start: f64,
    modes: Vec<FieldMode>,
}

/// Planck-taper window on `[start·cutoff, cutoff]`.
pub fn uv_window(omega: f64, cutoff: f64, start: f64) -> f64 {
    let lo = start * cutoff;
    if omega <= lo {
        return 1.0;
    }
    if omega >= cutoff {
        return 0.0;
    }
    let x = (omega - lo) / (cutoff - lo);
    let z = 1.0 / (1.0 - x) - 1.0 / x;
    if z > 700.0 {
        0.0
    } else {
        1.0 / (1.0 + libm::exp(z))
    }
}

/// Builds the mode set for a ring of length `box_length` with `n_modes`
/// modes (even, ≥ 2). `reference_frequency` is the qubit frequency Ω used
/// to make the weights dimensionless.
pub fn build_mode_set(
    box_length: f64,
    n_modes: usize,
    c_flat: f64,
    reference_frequency: f64,
) -> Result<FieldModeSet> {
    if !(box_length > 0.0) || !box_length.is_finite() {
        return Err(Error::InvalidParameter("box length must be > 0"));
    }
    if n_modes < 2 || n_modes % 2 != 0 {
        return Err(Error::InvalidParameter("mode count must be even and >= 2"));
    }
    if !(c_flat > 0.0) || !(reference_frequency > 0.0) {
        return Err(Error::InvalidParameter("speed and reference frequency must be > 0"));
    }
    let spacing = 2.0 * PI * c_flat / box_length;
    let modes = (1..=n_modes / 2)
        .flat_map(|n| {
            let k = 2.0 * PI * n as f64 / box_length;
            let omega = c_flat * k;
            let weight = libm::sqrt(
                (omega / reference_frequency) * (spacing / reference_frequency) / (4.0 * PI),
            );
            [FieldMode { k, omega, weight }, FieldMode { k: -k, omega, weight }]
        })
        .collect();
    Ok(FieldModeSet { box_length, c_flat, reference_frequency, taper_start: 1.0, modes })
}

impl FieldModeSet {
    /// Ring circumference `L`.
    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    /// Propagation speed.
    pub fn c_flat(&self) -> f64 {
        self.c_flat
    }

    /// Frequency Ω used to normalize the weights.
    pub fn reference_frequency(&self) -> f64 {
        self.reference_frequency
    }

    /// All modes.
    pub fn modes(&self) -> &[FieldMode] {
        &self.modes
    }

    /// Number of modes.
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    /// Never true for a constructed set; present for API completeness.
    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Frequency spacing `2πc/L`.
    pub fn spacing(&self) -> f64 {
        2.0 * PI * self.c_flat / self.box_length
    }

    /// Fraction of the cutoff where the UV window starts; `1` means a hard
    /// cutoff.
    pub fn taper_start(&self) -> f64 {
        self.taper_start
    }

    /// Copy with the UV window starting at `start·ω_max` applied to the
    /// untapered weights. `start` must lie in `(0, 1]`.
    pub fn tapered(&self, start: f64) -> Result<FieldModeSet> {
        if !(start > 0.0 && start <= 1.0) {
            return Err(Error::InvalidParameter("taper start must be in (0, 1]"));
        }
        let base = build_mode_set(self.box_length, self.len() + self.len() % 2, self.c_flat, self.reference_frequency)?;
        let cutoff = base.uv_cutoff();
        let modes = base
            .modes
            .iter()
            .take(self.len())
            .map(|m| {
                let w = if start < 1.0 { uv_window(m.omega, cutoff, start) } else { 1.0 };
                FieldMode { weight: m.weight * libm::sqrt(w), ..*m }
            })
            .collect();
        Ok(FieldModeSet { taper_start: start, modes, ..self.clone() })
    }

    /// Highest mode frequency `πc·n_modes/L`.
    pub fn uv_cutoff(&self) -> f64 {
        self.modes.last().map_or(0.0, |m| m.omega)
    }

    /// The first `count` modes in storage order. An odd count keeps the
    /// last `+k` without its `−k` partner.
    pub fn leading(&self, count: usize) -> Result<FieldModeSet> {
        if count == 0 || count > self.modes.len() {
            return Err(Error::InvalidParameter("count must be in 1..=n_modes"));
        }
        Ok(FieldModeSet { modes: self.modes[..count].to_vec(), ..self.clone() })
    }

    /// Same cutoff and taper with twice the box length and twice as many
    /// modes.
    pub fn refined(&self) -> FieldModeSet {
        build_mode_set(2.0 * self.box_length, 2 * self.len(), self.c_flat, self.reference_frequency)
            .and_then(|set| set.tapered(self.taper_start))
            .expect("refining a valid mode set")
    }
}

/// Sizing rule for a mode set that must describe a whole sweep window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeBudget {
    /// UV cutoff in units of the qubit frequency.
    pub cutoff_ratio: f64,
    /// Box length in units of the longest of `c·t_max` and `ρ_l,max`.
    pub box_factor: f64,
    /// Lower bound on the box length in qubit wavelengths.
    pub min_box_wavelengths: f64,
    /// Start of the UV window as a fraction of the cutoff.
    pub taper_start: f64,
}

impl Default for ModeBudget {
    fn default() -> Self {
        Self { cutoff_ratio: 40.0, box_factor: 8.0, min_box_wavelengths: 16.0, taper_start: 0.5 }
    }
}

impl ModeBudget {
    /// Mode set covering distances up to `max_distance` and light paths up
    /// to `max_light_path` (both in `l`), for qubit frequency `omega`.
    pub fn mode_set(
        &self,
        max_distance: f64,
        max_light_path: f64,
        c_flat: f64,
        omega: f64,
    ) -> Result<FieldModeSet> {
        if !(self.cutoff_ratio > 0.0) || !(self.box_factor > 0.0) {
            return Err(Error::InvalidParameter("mode budget factors must be > 0"));
        }
        let wavelength = 2.0 * PI * c_flat / omega;
        let box_length = (self.box_factor * max_distance.max(max_light_path))
            .max(self.min_box_wavelengths * wavelength);
        let half = libm::ceil(self.cutoff_ratio * omega * box_length / (2.0 * PI * c_flat));
        build_mode_set(box_length, 2 * (half as usize).max(1), c_flat, omega)?.tapered(self.taper_start)
    }
}

/// Which qubit a coupling refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    /// Qubit A, initially excited.
    A,
    /// Qubit B, initially in the ground state.
    B,
}

/// Positions (in `l`), frequency, coupling and duration of one interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionSpec {
    chi_a: f64,
    chi_b: f64,
    omega: f64,
    g: f64,
    time: f64,
}

impl InteractionSpec {
    /// Requires `chi_b > chi_a`, `omega > 0`, `g ≥ 0`, `time ≥ 0`. A zero
    /// coupling is accepted as the free limit.
    pub fn new(chi_a: f64, chi_b: f64, omega: f64, g: f64, time: f64) -> Result<Self> {
        if !(chi_b > chi_a) {
            return Err(Error::InvalidParameter("chi_B must exceed chi_A"));
        }
        if !(omega > 0.0) || !(g >= 0.0) || !g.is_finite() {
            return Err(Error::InvalidParameter("omega must be > 0 and g >= 0"));
        }
        if !(time >= 0.0) || !time.is_finite() {
            return Err(Error::InvalidParameter("time must be >= 0"));
        }
        Ok(Self { chi_a, chi_b, omega, g, time })
    }

    /// Qubits at `∓ρ_l/2` with `g = Ω√K`.
    pub fn symmetric(rho_l: f64, omega: f64, coupling: f64, time: f64) -> Result<Self> {
        if !(coupling > 0.0) {
            return Err(Error::InvalidParameter("coupling K must be > 0"));
        }
        Self::new(-0.5 * rho_l, 0.5 * rho_l, omega, omega * libm::sqrt(coupling), time)
    }

    /// Position of `qubit`.
    pub fn position(&self, qubit: Qubit) -> f64 {
        match qubit {
            Qubit::A => self.chi_a,
            Qubit::B => self.chi_b,
        }
    }

    /// Separation `χ_B − χ_A`.
    pub fn separation(&self) -> f64 {
        self.chi_b - self.chi_a
    }

    /// Qubit frequency.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Coupling `g`.
    pub fn g(&self) -> f64 {
        self.g
    }

    /// Interaction duration.
    pub fn time(&self) -> f64 {
        self.time
    }

    /// Same spec with a different coupling `g`.
    pub fn with_g(&self, g: f64) -> Result<Self> {
        Self::new(self.chi_a, self.chi_b, self.omega, g, self.time)
    }

    /// Same spec with a different duration.
    pub fn with_time(&self, time: f64) -> Result<Self> {
        Self::new(self.chi_a, self.chi_b, self.omega, self.g, time)
    }
}

/// Coefficient of `a_k` in the interaction for `qubit`: `g·f_k·e^{ikχ}`.
/// The `a_k†` coefficient is its complex conjugate.
pub fn coupling_matrix_element(spec: &InteractionSpec, mode: &FieldMode, qubit: Qubit) -> Complex64 {
    Complex64::from_polar(spec.g * mode.weight, mode.k * spec.position(qubit))
}
