//! Self-contained dense complex linear algebra.
//!
//! Everything here is hand-rolled on plain `Vec<Complex64>` storage: the
//! matrices in this crate stay at a few hundred rows, and owning the
//! algorithms keeps results bitwise deterministic across runs and builds
//! (fixed sweep orders, no vendored BLAS dispatch).  Three pieces:
//!
//! * [`schur`] — Householder Hessenberg reduction plus implicit single-shift
//!   QR for general complex matrices, with eigenvectors by Schur
//!   back-substitution.
//! * [`hermitian`] — cyclic complex Jacobi for Hermitian matrices (used on
//!   Gram matrices, whose eigenvalues are needed with high relative
//!   accuracy near zero).
//! * [`small`] — closed-form 2x2 singular value decomposition and
//!   pseudo-inverse solves for monodromy kernel extraction.

pub mod hermitian;
pub mod schur;
pub mod small;

pub use hermitian::hermitian_eigenvalues;
pub use schur::{eigen_dense, Eigen};

use num_complex::Complex64;

/// Dense complex square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    n: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Matrix-vector product `A x`.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * x[j]).sum())
            .collect()
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Plain complex dot product `sum_i x_i conj(y_i)`.
pub fn vec_dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// Normalize to unit Euclidean norm and rotate the phase so the entry of
/// largest modulus (first such index on ties) is real and positive.  This
/// pins the one-dimensional gauge freedom of eigenvectors so repeated runs
/// and different extraction orders produce identical output.
pub fn normalize_with_phase(v: &mut [Complex64]) {
    let norm = vec_norm(v);
    if norm == 0.0 {
        return;
    }
    for c in v.iter_mut() {
        *c /= norm;
    }
    let mut best = 0;
    let mut best_norm = 0.0;
    for (i, c) in v.iter().enumerate() {
        let m = c.norm_sqr();
        if m > best_norm {
            best_norm = m;
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.norm() > 0.0 {
        let phase = pivot / pivot.norm();
        let rot = phase.conj();
        for c in v.iter_mut() {
            *c *= rot;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_with_phase_is_idempotent_and_unit() {
        let mut v = vec![
            Complex64::new(0.0, 2.0),
            Complex64::new(-1.0, 1.0),
            Complex64::new(0.5, 0.0),
        ];
        normalize_with_phase(&mut v);
        assert!((vec_norm(&v) - 1.0).abs() < 1e-14);
        // Largest-modulus entry is the first one; it must be real positive.
        assert!(v[0].im.abs() < 1e-15);
        assert!(v[0].re > 0.0);
        let w = v.clone();
        normalize_with_phase(&mut v);
        for (a, b) in v.iter().zip(&w) {
            assert!((a - b).norm() < 1e-15);
        }
    }
}
