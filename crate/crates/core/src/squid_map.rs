//! Mapping of the wormhole metric onto the external flux bias of a
//! dc-SQUID array, and the order-of-magnitude arithmetic that decides
//! whether a given circuit can show the effect.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::constants::{BOLTZMANN, FLUX_QUANTUM, HBAR};
use crate::geometry::WormholeGeometry;
use crate::{Error, Result};

/// A finite SQUID array centred on the throat.
///
/// Cell `i` covers `[−n·p/2 + i·p, −n·p/2 + (i+1)·p]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArraySpec {
    cell_pitch: f64,
    n_cells: usize,
    flux_quantum: f64,
}

impl ArraySpec {
    /// Array with the given pitch (m), cell count and flux quantum (Wb).
    pub fn new(cell_pitch: f64, n_cells: usize, flux_quantum: f64) -> Result<Self> {
        if !(cell_pitch > 0.0) || !cell_pitch.is_finite() {
            return Err(Error::InvalidParameter("cell pitch must be > 0"));
        }
        if n_cells == 0 {
            return Err(Error::InvalidParameter("array needs at least one cell"));
        }
        if !(flux_quantum > 0.0) {
            return Err(Error::InvalidParameter("flux quantum must be > 0"));
        }
        Ok(Self { cell_pitch, n_cells, flux_quantum })
    }

    /// Array using the physical flux quantum h/2e.
    pub fn with_physical_flux_quantum(cell_pitch: f64, n_cells: usize) -> Result<Self> {
        Self::new(cell_pitch, n_cells, FLUX_QUANTUM)
    }

    /// Distance between neighbouring cells.
    pub fn cell_pitch(&self) -> f64 {
        self.cell_pitch
    }

    /// Number of cells.
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    /// Flux quantum used to scale the bias.
    pub fn flux_quantum(&self) -> f64 {
        self.flux_quantum
    }

    /// Total length spanned by the array.
    pub fn span(&self) -> f64 {
        self.cell_pitch * self.n_cells as f64
    }

    /// Whether the array covers two qubits at `±x_b`.
    pub fn covers(&self, x_b: f64) -> bool {
        2.0 * x_b.abs() <= self.span()
    }

    /// Position of the midpoint of cell `index`.
    pub fn midpoint(&self, index: usize) -> f64 {
        let n = self.n_cells as f64;
        (index as f64 + 0.5 - 0.5 * n) * self.cell_pitch
    }
}

/// External flux `φ_ext(x) = (φ₀/π)·arccos(1 − b₀²/(|x| + b₀)²)`.
///
/// Evaluated as `(2φ₀/π)·asin(q/√2)` with `q = b₀/(|x| + b₀)`, which is the
/// same function without the loss of precision of `arccos(1 − ε)`.
pub fn flux_profile(geom: &WormholeGeometry, x: f64, flux_quantum: f64) -> f64 {
    if geom.is_flat() {
        return 0.0;
    }
    let q = geom.throat() / (x.abs() + geom.throat());
    2.0 * flux_quantum / PI * libm::asin(q * core::f64::consts::FRAC_1_SQRT_2)
}

/// Samples [`flux_profile`] at every cell midpoint.
pub fn discretize_profile(geom: &WormholeGeometry, array: &ArraySpec) -> Vec<(usize, f64)> {
    (0..array.n_cells())
        .map(|i| (i, flux_profile(geom, array.midpoint(i), array.flux_quantum())))
        .collect()
}

/// Bose–Einstein occupation `1/(exp(ħΩ/k_B T) − 1)` of a mode at angular
/// frequency `omega` (rad/s) and temperature `temperature` (K).
pub fn thermal_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain("frequency must be > 0"));
    }
    if !(temperature > 0.0) {
        return Err(Error::Domain("temperature must be > 0"));
    }
    let ratio = HBAR * omega / (BOLTZMANN * temperature);
    Ok(1.0 / libm::expm1(ratio))
}

/// Thresholds used by [`feasibility`]. Defaults: ε_b ≥ 5 and b₀ ≤ 1 mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityThresholds {
    /// Smallest throat-to-distance ratio at which the wormhole enables entanglement.
    pub min_epsilon_b: f64,
    /// Largest throat radius the flux bias can emulate (m).
    pub max_throat: f64,
}

impl Default for FeasibilityThresholds {
    fn default() -> Self {
        Self { min_epsilon_b: 5.0, max_throat: 1e-3 }
    }
}

/// Feasibility numbers for one circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    /// Qubit transition wavelength `2πc/Ω` in flat space.
    pub wavelength: f64,
    /// Throat-to-distance ratio `2b₀/ρ_x`.
    pub epsilon_b: f64,
    /// Thermal photon number of the qubit mode.
    pub thermal_occupation: f64,
    /// Field speed for which the wavelength equals the qubit separation.
    pub speed_required: f64,
    /// Throat radius needed for the threshold ε_b when `ρ_x = λ`.
    pub required_throat: f64,
    /// No throat at all.
    pub flat: bool,
    /// The threshold ε_b is reached with a throat the bias can emulate.
    pub feasible: bool,
    /// `required_throat` is below the emulation limit.
    pub achievable_at_wavelength: bool,
}

/// Evaluates [`FeasibilityReport`] for a geometry, qubit frequency `omega`,
/// qubit separation `rho_x` and temperature.
pub fn feasibility(
    geom: &WormholeGeometry,
    omega: f64,
    rho_x: f64,
    temperature: f64,
    thresholds: FeasibilityThresholds,
) -> Result<FeasibilityReport> {
    if !(rho_x > 0.0) {
        return Err(Error::Domain("qubit separation must be > 0"));
    }
    let thermal = thermal_occupation(omega, temperature)?;
    let wavelength = 2.0 * PI * geom.c_flat() / omega;
    let epsilon_b = 2.0 * geom.throat() / rho_x;
    let required_throat = 0.5 * thresholds.min_epsilon_b * wavelength;
    let flat = geom.is_flat();
    Ok(FeasibilityReport {
        wavelength,
        epsilon_b,
        thermal_occupation: thermal,
        speed_required: omega * rho_x / (2.0 * PI),
        required_throat,
        flat,
        feasible: !flat
            && epsilon_b >= thresholds.min_epsilon_b
            && geom.throat() <= thresholds.max_throat,
        achievable_at_wavelength: required_throat <= thresholds.max_throat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MM: f64 = 1e-3;

    #[test]
    fn flux_examples() {
        let g = WormholeGeometry::new(1.0 * MM, 1e6).unwrap();
        let phi0 = 1.0;
        assert!((flux_profile(&g, 0.0, phi0) - 0.5).abs() < 1e-15);
        let flat = WormholeGeometry::flat(1e6).unwrap();
        assert_eq!(flux_profile(&flat, 0.3, phi0), 0.0);
        let g = WormholeGeometry::new(1.0, 1.0).unwrap();
        let expected = libm::acos(0.75) / PI;
        assert!((flux_profile(&g, 1.0, phi0) - expected).abs() < 1e-15);
        assert!((expected - 0.2301).abs() < 1e-4);
    }

    #[test]
    fn flux_is_even_and_bounded() {
        let g = WormholeGeometry::new(2e-4, 1e6).unwrap();
        for i in 0..200 {
            let x = 1e-6 * (i as f64) * (i as f64);
            let f = flux_profile(&g, x, 1.0);
            assert_eq!(f, flux_profile(&g, -x, 1.0));
            assert!((0.0..=0.5 + 1e-15).contains(&f));
        }
    }

    #[test]
    fn discretized_flat_profile_is_zero() {
        let flat = WormholeGeometry::flat(1e6).unwrap();
        let array = ArraySpec::new(1e-5, 11, 1.0).unwrap();
        assert!(discretize_profile(&flat, &array).iter().all(|&(_, f)| f == 0.0));
    }

    #[test]
    fn three_cell_array_peaks_in_the_middle() {
        let g = WormholeGeometry::new(1e-4, 1e6).unwrap();
        let array = ArraySpec::new(1e-5, 3, 1.0).unwrap();
        let table = discretize_profile(&g, &array);
        assert!(table[1].1 > table[0].1);
        assert_eq!(table[0].1, table[2].1);
    }

    #[test]
    fn thermal_examples() {
        let omega = 2.0 * PI * 1e10;
        assert_eq!(thermal_occupation(omega, 1e-6).unwrap(), 0.0);
        let t = 0.02;
        let omega_ln2 = BOLTZMANN * t * core::f64::consts::LN_2 / HBAR;
        assert!((thermal_occupation(omega_ln2, t).unwrap() - 1.0).abs() < 1e-14);
        assert!(thermal_occupation(0.0, 1.0).is_err());
        assert!(thermal_occupation(1.0, -1.0).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let omega = 2.0 * PI * 1e10;
        let g = WormholeGeometry::new(0.25 * MM, 1e6).unwrap();
        let r = feasibility(&g, omega, 0.1 * MM, 0.03, FeasibilityThresholds::default()).unwrap();
        assert!((r.wavelength - 1e-4).abs() < 1e-16);
        assert!((r.epsilon_b - 5.0).abs() < 1e-12);
        assert!(r.feasible && !r.flat);
        let flat = WormholeGeometry::flat(1e6).unwrap();
        let r = feasibility(&flat, omega, 0.1 * MM, 0.03, FeasibilityThresholds::default()).unwrap();
        assert_eq!(r.epsilon_b, 0.0);
        assert!(r.flat && !r.feasible);
    }
}
