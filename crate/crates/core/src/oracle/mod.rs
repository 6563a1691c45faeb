//! Exact evolution of the two qubits and a truncated multimode field.
//!
//! The Schrödinger-picture Hamiltonian is time independent, so the state
//! at time `t` is `e^{−iHt}|eg,0⟩` with the coupling switched on at `0`
//! and off at `t`. Free phases `e^{−iE_j t}` separate the two pictures;
//! [`to_interaction_picture`] removes them before amplitude-level
//! comparisons with the perturbative engine. The reduced two-qubit state
//! differs between pictures only by local qubit phases, so its
//! concurrence does not.

mod density;
mod hamiltonian;
mod krylov;
mod space;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

pub use density::{concurrence_wootters, reduce_to_qubits, DensityCheck, ReducedDensityMatrix};
pub use hamiltonian::{build_hamiltonian, SparseHamiltonian};
pub use krylov::{evolve, KrylovOptions};
pub use space::{Sector, TruncatedHilbertSpace, DEFAULT_DIMENSION_CAP};

use crate::field_model::{FieldModeSet, InteractionSpec};
use crate::Result;

/// Truncation and propagator settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Photon-number cap.
    pub n_max: usize,
    /// Largest basis accepted.
    pub dimension_cap: usize,
    /// Propagator settings.
    pub krylov: KrylovOptions,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { n_max: 2, dimension_cap: DEFAULT_DIMENSION_CAP, krylov: KrylovOptions::default() }
    }
}

/// `|eg⟩ ⊗ |0⟩`.
pub fn initial_state(space: &TruncatedHilbertSpace) -> Vec<Complex64> {
    let mut psi = vec![Complex64::new(0.0, 0.0); space.dimension()];
    psi[space.vacuum(Sector::Eg)] = Complex64::new(1.0, 0.0);
    psi
}

/// Multiplies each component by `e^{iE_j t}` with `E_j` the free energy of
/// basis state `j`.
pub fn to_interaction_picture(h: &SparseHamiltonian, state: &[Complex64], t: f64) -> Vec<Complex64> {
    state
        .iter()
        .zip(h.free_energies())
        .map(|(c, &e)| c * Complex64::from_polar(1.0, e * t))
        .collect()
}

/// Output of one exact evolution.
#[derive(Debug, Clone)]
pub struct OracleRun {
    /// Basis used.
    pub space: TruncatedHilbertSpace,
    /// Hamiltonian used.
    pub hamiltonian: SparseHamiltonian,
    /// Schrödinger-picture state at the final time.
    pub state: Vec<Complex64>,
    /// Reduced two-qubit state.
    pub reduced: ReducedDensityMatrix,
    /// Wootters concurrence of `reduced`.
    pub concurrence: f64,
    /// `|‖ψ(t)‖ − 1|`.
    pub norm_error: f64,
}

impl OracleRun {
    /// Final state in the interaction picture.
    pub fn interaction_state(&self, t: f64) -> Vec<Complex64> {
        to_interaction_picture(&self.hamiltonian, &self.state, t)
    }
}

/// Evolves `|eg,0⟩` for `spec.time()` and reduces to the qubits.
pub fn run(spec: &InteractionSpec, modes: &FieldModeSet, options: &OracleOptions) -> Result<OracleRun> {
    let space = TruncatedHilbertSpace::new(modes.len(), options.n_max, options.dimension_cap)?;
    let hamiltonian = build_hamiltonian(&space, modes, spec)?;
    let state = evolve(&hamiltonian, &initial_state(&space), spec.time(), &options.krylov)?;
    let norm_error = (libm::sqrt(state.iter().map(|z| z.norm_sqr()).sum::<f64>()) - 1.0).abs();
    let reduced = reduce_to_qubits(&space, &state);
    let concurrence = concurrence_wootters(&reduced);
    Ok(OracleRun { space, hamiltonian, state, reduced, concurrence, norm_error })
}
