//! Small dense eigensolvers and summation helpers.
//!
//! Matrices are row-major `Vec`s. These routines serve the 4×4 density
//! matrices and the Krylov tridiagonals; they are not meant for large
//! problems.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

const PAIRWISE_BLOCK: usize = 16;

/// Pairwise (tree) summation of complex terms.
pub fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    if terms.len() <= PAIRWISE_BLOCK {
        return terms.iter().fold(Complex64::new(0.0, 0.0), |acc, &z| acc + z);
    }
    let (lo, hi) = terms.split_at(terms.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

/// Pairwise (tree) summation of real terms.
pub fn pairwise_sum_real(terms: &[f64]) -> f64 {
    if terms.len() <= PAIRWISE_BLOCK {
        return terms.iter().sum();
    }
    let (lo, hi) = terms.split_at(terms.len() / 2);
    pairwise_sum_real(lo) + pairwise_sum_real(hi)
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// the columns of a row-major `n×n` matrix. Only the Hermitian part of the
/// input is used.
pub fn hermitian_eigen(matrix: &[Complex64], n: usize) -> (Vec<f64>, Vec<Complex64>) {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    let mut a: Vec<Complex64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            (matrix[i * n + j] + matrix[j * n + i].conj()) * 0.5
        })
        .collect();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum();
        let diag: f64 = (0..n).map(|i| a[i * n + i].norm_sqr()).sum();
        if off <= 1e-32 * diag || off < 1e-300 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                // U = [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]] on (p, q)
                let pc = phase.conj();
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * pc * s;
                    a[k * n + q] = akp * s + akq * pc * c;
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c - vkq * pc * s;
                    v[k * n + q] = vkp * s + vkq * pc * c;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * phase * s;
                    a[q * n + k] = apk * s + aqk * phase * c;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = vec![Complex64::new(0.0, 0.0); n * n];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + col] = v[row * n + src];
        }
    }
    (values, vectors)
}

/// Singular values of a complex `n×n` matrix by one-sided Jacobi
/// rotations, in descending order.
///
/// Columns are orthogonalized in place and the singular values are the
/// final column norms, so small values carry absolute error of order
/// `ε·‖A‖` rather than `√ε·‖A‖`.
pub fn singular_values(matrix: &[Complex64], n: usize) -> Vec<f64> {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    let mut a = matrix.to_vec();
    for _ in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, Complex64::new(0.0, 0.0));
                for r in 0..n {
                    let (x, y) = (a[r * n + p], a[r * n + q]);
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for r in 0..n {
                    let x = a[r * n + p];
                    let y = a[r * n + q] * phase.conj();
                    a[r * n + p] = x * c - y * s;
                    a[r * n + q] = x * s + y * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut values: Vec<f64> =
        (0..n).map(|j| libm::sqrt((0..n).map(|r| a[r * n + j].norm_sqr()).sum())).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

/// Eigen-decomposition of a real symmetric tridiagonal matrix by the
/// implicit QL algorithm.
///
/// `diag` has length `m`, `offdiag[i]` couples rows `i` and `i + 1`.
/// Returns the eigenvalues (unsorted) and the eigenvectors as columns of a
/// row-major `m×m` matrix, or `None` if an eigenvalue fails to converge.
pub fn tridiagonal_eigen(diag: &[f64], offdiag: &[f64]) -> Option<(Vec<f64>, Vec<f64>)> {
    let m = diag.len();
    assert!(offdiag.len() + 1 >= m, "offdiag too short");
    let mut d = diag.to_vec();
    let mut e = vec![0.0; m];
    e[..m.saturating_sub(1)].copy_from_slice(&offdiag[..m.saturating_sub(1)]);
    let mut z = vec![0.0; m * m];
    for i in 0..m {
        z[i * m + i] = 1.0;
    }
    for l in 0..m {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm + 1 < m {
                let dd = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= f64::EPSILON * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return None;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[mm] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = mm;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..m {
                    let zk1 = z[k * m + i + 1];
                    z[k * m + i + 1] = s * z[k * m + i] + c * zk1;
                    z[k * m + i] = c * z[k * m + i] - s * zk1;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        }
    }
    Some((d, z))
}
