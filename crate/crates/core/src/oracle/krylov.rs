//! `e^{−iHt}ψ` by Lanczos projection with adaptive time steps.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::hamiltonian::SparseHamiltonian;
use crate::linalg::tridiagonal_eigen;
use crate::{Error, Result};

/// Propagator settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrylovOptions {
    /// Krylov subspace dimension.
    pub subspace: usize,
    /// Allowed error over the full evolution, in state norm.
    pub tolerance: f64,
    /// Maximum number of attempted steps.
    pub max_steps: usize,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        Self { subspace: 30, tolerance: 1e-12, max_steps: 1_000_000 }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

struct Lanczos {
    basis: Vec<Vec<Complex64>>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    residual: f64,
}

fn lanczos(h: &SparseHamiltonian, start: &[Complex64], m: usize) -> Lanczos {
    let n = h.dimension();
    let beta0 = norm(start);
    let mut basis: Vec<Vec<Complex64>> = vec![start.iter().map(|z| z / beta0).collect()];
    let mut alpha = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    let mut residual = 0.0;
    for j in 0..m {
        h.apply(&basis[j], &mut w);
        let a = dot(&basis[j], &w).re;
        alpha.push(a);
        for _pass in 0..2 {
            for v in &basis {
                let proj = dot(v, &w);
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi -= proj * vi;
                }
            }
        }
        let b = norm(&w);
        residual = b;
        if j + 1 == m || b <= 1e-14 * (a.abs() + beta.last().copied().unwrap_or(0.0) + 1e-300) {
            break;
        }
        beta.push(b);
        basis.push(w.iter().map(|z| z / b).collect());
    }
    Lanczos { basis, alpha, beta, residual }
}

/// Coefficients `y = e^{−iTτ} e₁` in the Lanczos basis.
fn small_exponential(alpha: &[f64], beta: &[f64], tau: f64) -> Result<Vec<Complex64>> {
    let (vals, z) = tridiagonal_eigen(alpha, beta).ok_or(Error::Convergence { time: tau })?;
    let m = alpha.len();
    Ok((0..m)
        .map(|j| {
            (0..m)
                .map(|k| Complex64::from_polar(z[j * m + k] * z[k], -vals[k] * tau))
                .sum()
        })
        .collect())
}

/// Propagates `psi` by `e^{−iHt}`.
///
/// Steps are halved until the Lanczos error estimate
/// `β_m |y_m|` falls below the share of the tolerance owed to that step.
pub fn evolve(
    h: &SparseHamiltonian,
    psi: &[Complex64],
    t: f64,
    options: &KrylovOptions,
) -> Result<Vec<Complex64>> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain("evolution time must be finite and >= 0"));
    }
    if psi.len() != h.dimension() {
        return Err(Error::InvalidParameter("state and operator dimensions differ"));
    }
    let mut state = psi.to_vec();
    if t == 0.0 {
        return Ok(state);
    }
    let m = options.subspace.max(2).min(h.dimension());
    let scale = h.norm_bound().max(1e-300);
    let mut tau = (0.5 * m as f64 / scale).min(t);
    let mut elapsed = 0.0;
    let mut steps = 0;
    while elapsed < t {
        tau = tau.min(t - elapsed);
        let amplitude = norm(&state);
        let lz = lanczos(h, &state, m);
        loop {
            steps += 1;
            if steps > options.max_steps {
                return Err(Error::Convergence { time: elapsed });
            }
            let y = small_exponential(&lz.alpha, &lz.beta, tau)?;
            let exhausted = lz.alpha.len() < m;
            let err = if exhausted { 0.0 } else { amplitude * lz.residual * y[y.len() - 1].norm() };
            let allowed = options.tolerance * tau / t;
            if err <= allowed || tau < 1e-12 * t {
                if err > allowed {
                    return Err(Error::Convergence { time: elapsed });
                }
                for s in state.iter_mut() {
                    *s = Complex64::new(0.0, 0.0);
                }
                for (coef, v) in y.iter().zip(&lz.basis) {
                    let c = coef * amplitude;
                    for (s, vi) in state.iter_mut().zip(v) {
                        *s += c * vi;
                    }
                }
                elapsed += tau;
                if err < 0.01 * allowed {
                    tau *= 1.5;
                }
                break;
            }
            tau *= 0.5;
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_model::{build_mode_set, InteractionSpec};
    use crate::linalg::hermitian_eigen;
    use crate::oracle::hamiltonian::build_hamiltonian;
    use crate::oracle::space::{Sector, TruncatedHilbertSpace};

    #[test]
    fn matches_dense_exponential() {
        let modes = build_mode_set(12.0, 4, 1.0, 1.0).unwrap();
        let spec = InteractionSpec::new(-0.5, 0.5, 1.0, 0.3, 1.0).unwrap();
        let space = TruncatedHilbertSpace::new(4, 2, 10_000).unwrap();
        let h = build_hamiltonian(&space, &modes, &spec).unwrap();
        let n = h.dimension();
        let mut psi = vec![Complex64::new(0.0, 0.0); n];
        psi[space.vacuum(Sector::Eg)] = Complex64::new(1.0, 0.0);
        let t = 7.3;
        let out = evolve(&h, &psi, t, &KrylovOptions::default()).unwrap();

        let (vals, vecs) = hermitian_eigen(&h.to_dense(), n);
        let e = space.vacuum(Sector::Eg);
        for i in 0..n {
            let exact: Complex64 = (0..n)
                .map(|k| vecs[i * n + k] * vecs[e * n + k].conj() * Complex64::from_polar(1.0, -vals[k] * t))
                .sum();
            assert!((exact - out[i]).norm() < 1e-10, "component {i}");
        }
        assert!((norm(&out) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_time_is_identity() {
        let modes = build_mode_set(12.0, 2, 1.0, 1.0).unwrap();
        let spec = InteractionSpec::new(-0.5, 0.5, 1.0, 0.3, 1.0).unwrap();
        let space = TruncatedHilbertSpace::new(2, 2, 10_000).unwrap();
        let h = build_hamiltonian(&space, &modes, &spec).unwrap();
        let mut psi = vec![Complex64::new(0.0, 0.0); h.dimension()];
        psi[3] = Complex64::new(0.6, 0.8);
        assert_eq!(evolve(&h, &psi, 0.0, &KrylovOptions::default()).unwrap(), psi);
        assert!(evolve(&h, &psi, -1.0, &KrylovOptions::default()).is_err());
    }
}
