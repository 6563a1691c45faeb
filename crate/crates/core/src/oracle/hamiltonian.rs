//! Sparse Hamiltonian of two qubits coupled through `σ^x` to the field.
//!
//! ```text
//! H = (Ω/2)(σ^z_A + σ^z_B) + Σ_k ω_k a_k†a_k
//!   + Σ_{q∈{A,B}} Σ_k g f_k σ^x_q (e^{ikχ_q} a_k + e^{−ikχ_q} a_k†)
//! ```
//!
//! Both the rotating and counter-rotating parts of `σ^x` are kept.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::space::{Sector, TruncatedHilbertSpace};
use crate::field_model::{coupling_matrix_element, FieldModeSet, InteractionSpec, Qubit};
use crate::{Error, Result};

/// Hermitian operator in compressed sparse row form with its diagonal
/// free energies kept separately.
#[derive(Debug, Clone)]
pub struct SparseHamiltonian {
    dimension: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<Complex64>,
    free_energies: Vec<f64>,
}

impl SparseHamiltonian {
    /// Dimension of the space.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Eigenvalues of `H₀` on each basis state.
    pub fn free_energies(&self) -> &[f64] {
        &self.free_energies
    }

    /// `y = H x`.
    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (row, out) in y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for idx in self.row_ptr[row]..self.row_ptr[row + 1] {
                acc += self.values[idx] * x[self.cols[idx]];
            }
            *out = acc;
        }
    }

    /// Entry `⟨i|H|j⟩`.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[range.clone()].binary_search(&j) {
            Ok(pos) => self.values[range.start + pos],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Stored entries of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |idx| (self.cols[idx], self.values[idx]))
    }

    /// Dense row-major copy, for small test systems.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let n = self.dimension;
        let mut m = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for (j, v) in self.row(i) {
                m[i * n + j] = v;
            }
        }
        m
    }

    /// `‖H‖_∞`, an upper bound on the spectral radius.
    pub fn norm_bound(&self) -> f64 {
        (0..self.dimension)
            .map(|i| self.row(i).map(|(_, v)| v.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, psi: &[Complex64]) -> f64 {
        let mut hpsi = vec![Complex64::new(0.0, 0.0); self.dimension];
        self.apply(psi, &mut hpsi);
        psi.iter().zip(&hpsi).map(|(a, b)| (a.conj() * b).re).sum()
    }
}

/// Builds `H = H₀ + H_I` on a truncated space.
pub fn build_hamiltonian(
    space: &TruncatedHilbertSpace,
    modes: &FieldModeSet,
    spec: &InteractionSpec,
) -> Result<SparseHamiltonian> {
    if modes.len() != space.n_modes() {
        return Err(Error::InvalidParameter("mode set and space disagree on mode count"));
    }
    let n = space.dimension();
    let n_fock = space.n_fock();
    let omega = spec.omega();

    let mut free_energies = vec![0.0; n];
    for sector in Sector::ALL {
        let qubits = 0.5
            * omega
            * ((if sector.a_excited() { 1.0 } else { -1.0 }) + (if sector.b_excited() { 1.0 } else { -1.0 }));
        for f in 0..n_fock {
            let field: f64 = space.config(f).iter().map(|&k| modes.modes()[k as usize].omega).sum();
            free_energies[space.index(sector, f)] = qubits + field;
        }
    }

    let mut entries: Vec<(usize, usize, Complex64)> = Vec::new();
    for (i, &e) in free_energies.iter().enumerate() {
        entries.push((i, i, Complex64::new(e, 0.0)));
    }
    // ⟨target| σ^x_q a_k |source⟩ where target has one photon fewer; the
    // transposed creation entry is its exact conjugate
    let mut reduced: Vec<u32> = Vec::with_capacity(space.n_max());
    for f in 0..n_fock {
        let config = space.config(f);
        let mut pos = 0;
        while pos < config.len() {
            let k = config[pos];
            let mut occupation = 0;
            while pos + occupation < config.len() && config[pos + occupation] == k {
                occupation += 1;
            }
            reduced.clear();
            reduced.extend_from_slice(&config[..pos]);
            reduced.extend_from_slice(&config[pos + 1..]);
            let target_f = space
                .fock_index(&reduced)
                .expect("basis is closed under photon removal");
            let bosonic = libm::sqrt(occupation as f64);
            let mode = &modes.modes()[k as usize];
            for (qubit, flip) in [(Qubit::A, 2usize), (Qubit::B, 1usize)] {
                let amp = coupling_matrix_element(spec, mode, qubit) * bosonic;
                if amp == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for sector in Sector::ALL {
                    let source = space.index(sector, f);
                    let target = space.index(Sector::from_index(sector.index() ^ flip), target_f);
                    entries.push((target, source, amp));
                    entries.push((source, target, amp.conj()));
                }
            }
            pos += occupation;
        }
    }

    entries.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let mut row_ptr = vec![0usize; n + 1];
    let mut cols = Vec::with_capacity(entries.len());
    let mut values: Vec<Complex64> = Vec::with_capacity(entries.len());
    let mut last: Option<(usize, usize)> = None;
    for (i, j, v) in entries {
        if last == Some((i, j)) {
            *values.last_mut().expect("non-empty") += v;
        } else {
            cols.push(j);
            values.push(v);
            row_ptr[i + 1] += 1;
            last = Some((i, j));
        }
    }
    for i in 0..n {
        row_ptr[i + 1] += row_ptr[i];
    }
    Ok(SparseHamiltonian { dimension: n, row_ptr, cols, values, free_energies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_model::build_mode_set;
    use crate::oracle::space::DEFAULT_DIMENSION_CAP;

    fn setup(n_modes: usize, n_max: usize, g: f64) -> (TruncatedHilbertSpace, SparseHamiltonian) {
        let modes = build_mode_set(20.0, n_modes, 1.0, 1.0).unwrap();
        let spec = InteractionSpec::new(-0.7, 0.7, 1.0, g, 1.0).unwrap();
        let space = TruncatedHilbertSpace::new(n_modes, n_max, DEFAULT_DIMENSION_CAP).unwrap();
        let h = build_hamiltonian(&space, &modes, &spec).unwrap();
        (space, h)
    }

    #[test]
    fn exactly_hermitian() {
        let (_, h) = setup(6, 2, 0.05);
        let n = h.dimension();
        let d = h.to_dense();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(d[i * n + j], d[j * n + i].conj());
            }
        }
    }

    #[test]
    fn zero_coupling_is_diagonal() {
        let (space, h) = setup(4, 2, 0.0);
        assert_eq!(h.nnz(), h.dimension());
        let e = h.get(space.vacuum(Sector::Eg), space.vacuum(Sector::Eg));
        assert_eq!(e, Complex64::new(0.0, 0.0));
        let e = h.get(space.vacuum(Sector::Ee), space.vacuum(Sector::Ee));
        assert_eq!(e, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn bosonic_factor_on_double_occupation() {
        let modes = build_mode_set(20.0, 2, 1.0, 1.0).unwrap();
        let spec = InteractionSpec::new(0.0, 1.0, 1.0, 0.1, 1.0).unwrap();
        let space = TruncatedHilbertSpace::new(2, 2, 100).unwrap();
        let h = build_hamiltonian(&space, &modes, &spec).unwrap();
        let one = space.one_photon(Sector::Gg, 0).unwrap();
        let two = space.index(Sector::Eg, space.fock_index(&[0, 0]).unwrap());
        let single = h.get(space.vacuum(Sector::Eg), one);
        let double = h.get(one, two);
        assert!((double.norm() - libm::sqrt(2.0) * single.norm()).abs() < 1e-15);
    }
}
