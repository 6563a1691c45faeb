//! Reduced two-qubit states and the Wootters concurrence.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::space::{Sector, TruncatedHilbertSpace};
use crate::linalg::{hermitian_eigen, singular_values};

/// 4×4 density matrix over `{gg, ge, eg, ee}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensityMatrix {
    /// Row-major entries `ρ[i][j] = ⟨i|ρ|j⟩`.
    pub entries: [[Complex64; 4]; 4],
}

/// Violations found by [`ReducedDensityMatrix::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityCheck {
    /// `max |ρ − ρ†|`.
    pub hermiticity: f64,
    /// `|tr ρ − 1|`.
    pub trace_error: f64,
    /// Smallest eigenvalue.
    pub min_eigenvalue: f64,
}

impl DensityCheck {
    /// Hermitian to 1e-12, unit trace to 1e-10, eigenvalues ≥ −1e-10.
    pub fn is_valid(&self) -> bool {
        self.hermiticity <= 1e-12 && self.trace_error <= 1e-10 && self.min_eigenvalue >= -1e-10
    }
}

impl ReducedDensityMatrix {
    /// Projector onto a normalized two-qubit pure state.
    pub fn pure(amplitudes: [Complex64; 4]) -> Self {
        let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                entries[i][j] = amplitudes[i] * amplitudes[j].conj();
            }
        }
        Self { entries }
    }

    /// Entry between two sectors.
    pub fn get(&self, row: Sector, col: Sector) -> Complex64 {
        self.entries[row.index()][col.index()]
    }

    /// Sum of the diagonal.
    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i].re).sum()
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vec<Complex64> {
        self.entries.iter().flat_map(|r| r.iter().copied()).collect()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.flatten(), 4).0
    }

    /// Hermiticity, trace and positivity diagnostics.
    pub fn validate(&self) -> DensityCheck {
        let mut herm: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                herm = herm.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        DensityCheck {
            hermiticity: herm,
            trace_error: (self.trace() - 1.0).abs(),
            min_eigenvalue: self.eigenvalues()[0],
        }
    }
}

/// Partial trace over the field.
pub fn reduce_to_qubits(space: &TruncatedHilbertSpace, state: &[Complex64]) -> ReducedDensityMatrix {
    let n = space.n_fock();
    let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let a = &state[i * n..(i + 1) * n];
            let b = &state[j * n..(j + 1) * n];
            let v: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
            entries[i][j] = v;
            entries[j][i] = v.conj();
        }
        entries[i][i].im = 0.0;
    }
    ReducedDensityMatrix { entries }
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`.
///
/// With `ρ = Σ_k w_k w_k†` over the eigenvectors `w_k = √p_k ψ_k`, the `λᵢ`
/// are the singular values of `τ = Wᵀ (σ^y⊗σ^y) W`. Eigenvalues at rounding
/// level (below `4ε·tr ρ`) are dropped from `W`.
pub fn concurrence_wootters(rho: &ReducedDensityMatrix) -> f64 {
    let flat = rho.flatten();
    let (vals, vecs) = hermitian_eigen(&flat, 4);
    let cutoff = 4.0 * f64::EPSILON * vals.iter().map(|v| v.max(0.0)).sum::<f64>();
    let kept: Vec<usize> = (0..4).filter(|&k| vals[k] > cutoff).collect();
    let r = kept.len();
    if r == 0 {
        return 0.0;
    }
    // σ^y⊗σ^y maps |i⟩ to ±|3 − i⟩ with sign − for i ∈ {gg, ee}
    let sign = [-1.0, 1.0, 1.0, -1.0];
    let column = |k: usize, i: usize| vecs[i * 4 + k] * libm::sqrt(vals[k]);
    let mut tau = alloc::vec![Complex64::new(0.0, 0.0); r * r];
    for (a, &k) in kept.iter().enumerate() {
        for (b, &l) in kept.iter().enumerate() {
            tau[a * r + b] = (0..4).map(|i| column(k, i) * column(l, 3 - i) * sign[i]).sum();
        }
    }
    let mut lambdas = singular_values(&tau, r);
    lambdas.resize(4, 0.0);
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}
