//! Cyclic complex Jacobi eigenvalue iteration for Hermitian matrices.
//!
//! Jacobi is the right tool for Gram matrices: it is unconditionally stable,
//! computes small eigenvalues of positive semidefinite matrices with high
//! relative accuracy (important because the Riesz ratio divides by the
//! smallest one), and its fixed cyclic sweep order makes results bitwise
//! reproducible.

use num_complex::Complex64;

use super::CMat;
use crate::error::{Error, Result};

/// All eigenvalues of a Hermitian matrix, ascending.
///
/// The input must be Hermitian up to rounding; the strictly lower triangle
/// is taken as the conjugate of the upper one.
pub fn hermitian_eigenvalues(a: &CMat) -> Result<Vec<f64>> {
    let n = a.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    // Work on a symmetrized copy so tiny Hermiticity violations cannot bias
    // the rotations.
    let mut m = CMat::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(a[(i, i)].re, 0.0)
        } else if i < j {
            (a[(i, j)] + a[(j, i)].conj()) * 0.5
        } else {
            (a[(i, j)] + a[(j, i)].conj()) * 0.5
        }
    });

    let norm = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let target = 1e-14 * norm;
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        if off_diagonal_norm(&m) <= target {
            let mut diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
            diag.sort_by(f64::total_cmp);
            return Ok(diag);
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, p, q);
            }
        }
    }
    Err(Error::EigNonConvergence)
}

fn off_diagonal_norm(m: &CMat) -> f64 {
    let n = m.n();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += m[(i, j)].norm_sqr();
        }
    }
    (2.0 * sum).sqrt()
}

/// One Jacobi rotation annihilating `m[p][q]`.
///
/// With `a_pq = |a_pq| e^{i phi}`, the unitary
/// `G[p][p] = c`, `G[p][q] = s e^{i phi}`, `G[q][p] = -s e^{-i phi}`,
/// `G[q][q] = c` (identity elsewhere) makes `(G^H M G)[p][q] = 0` when
/// `tan` is chosen from the standard real Jacobi equation
/// `t^2 + 2 tau t - 1 = 0`, `tau = (a_qq - a_pp) / (2 |a_pq|)`.
fn rotate(m: &mut CMat, p: usize, q: usize) {
    let apq = m[(p, q)];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let phase = apq / abs;
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = m.n();
    let s_phase = s * phase;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        let new_kp = c * akp - s_phase.conj() * akq;
        let new_kq = s_phase * akp + c * akq;
        m[(k, p)] = new_kp;
        m[(k, q)] = new_kq;
        m[(p, k)] = new_kp.conj();
        m[(q, k)] = new_kq.conj();
    }
    m[(p, p)] = Complex64::new(app - t * abs, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * abs, 0.0);
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
}
