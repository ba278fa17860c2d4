//! Dense complex eigensolver: Householder Hessenberg reduction followed by
//! implicit single-shift QR with Wilkinson shifts, then eigenvectors by
//! back-substitution in the Schur form.
//!
//! The iteration maintains the full similarity `A = Q T Q^H`, so after
//! convergence `T` is upper triangular with the eigenvalues on its diagonal
//! and `Q` maps Schur vectors back to the original basis.  Rotations are
//! applied across entire rows/columns (not just the active block) to keep
//! that factorization exact up to rounding.

use num_complex::Complex64;

use super::{normalize_with_phase, vec_norm, CMat};
use crate::error::{Error, Result};

/// Eigenvalues with matching unit eigenvectors, sorted by `(re, im)`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<Complex64>,
    /// `vectors[i]` is a unit eigenvector for `values[i]`, with the
    /// deterministic phase convention of
    /// [`normalize_with_phase`](super::normalize_with_phase).
    pub vectors: Vec<Vec<Complex64>>,
}

/// Full eigendecomposition of a dense complex matrix.
pub fn eigen_dense(a: &CMat) -> Result<Eigen> {
    let n = a.n();
    if n == 0 {
        return Ok(Eigen {
            values: Vec::new(),
            vectors: Vec::new(),
        });
    }
    let mut t = a.clone();
    let mut q = CMat::identity(n);
    hessenberg(&mut t, &mut q);
    qr_iterate(&mut t, &mut q)?;

    // Eigenvectors in Schur order, then a joint deterministic sort.
    let scale = t.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut pairs: Vec<(Complex64, Vec<Complex64>)> = (0..n)
        .map(|i| {
            let lambda = t[(i, i)];
            let y = triangular_null_vector(&t, i, scale);
            // v = Q y; only the leading i+1 Schur vectors contribute.
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            for (l, yl) in y.iter().enumerate().take(i + 1) {
                if yl.norm_sqr() == 0.0 {
                    continue;
                }
                for r in 0..n {
                    v[r] += q[(r, l)] * yl;
                }
            }
            normalize_with_phase(&mut v);
            (lambda, v)
        })
        .collect();
    pairs.sort_by(|(a, _), (b, _)| a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im)));
    Ok(Eigen {
        values: pairs.iter().map(|(l, _)| *l).collect(),
        vectors: pairs.into_iter().map(|(_, v)| v).collect(),
    })
}

/// Reduce `t` to upper Hessenberg form by Householder reflections,
/// accumulating the transformation into `q` (so `A = Q H Q^H`).
fn hessenberg(t: &mut CMat, q: &mut CMat) {
    let n = t.n();
    for k in 0..n.saturating_sub(2) {
        // Reflector for the subcolumn t[k+1.., k].
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| t[(i, k)]).collect();
        let norm = vec_norm(&v);
        if norm == 0.0 {
            continue;
        }
        let alpha = if v[0].norm() > 0.0 {
            -(v[0] / v[0].norm()) * norm
        } else {
            Complex64::new(-norm, 0.0)
        };
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        for c in v.iter_mut() {
            *c /= vnorm;
        }

        // t <- P t with P = I - 2 w w^H acting on rows k+1..n.
        for j in k..n {
            let s: Complex64 = (0..v.len()).map(|l| v[l].conj() * t[(k + 1 + l, j)]).sum();
            let s2 = s * 2.0;
            for l in 0..v.len() {
                let val = v[l] * s2;
                t[(k + 1 + l, j)] -= val;
            }
        }
        // t <- t P on columns k+1..n.
        for i in 0..n {
            let s: Complex64 = (0..v.len()).map(|l| t[(i, k + 1 + l)] * v[l]).sum();
            let s2 = s * 2.0;
            for l in 0..v.len() {
                let val = s2 * v[l].conj();
                t[(i, k + 1 + l)] -= val;
            }
        }
        // q <- q P.
        for i in 0..n {
            let s: Complex64 = (0..v.len()).map(|l| q[(i, k + 1 + l)] * v[l]).sum();
            let s2 = s * 2.0;
            for l in 0..v.len() {
                let val = s2 * v[l].conj();
                q[(i, k + 1 + l)] -= val;
            }
        }
        // Exact zeros below the subdiagonal of this column.
        t[(k + 1, k)] = alpha;
        for i in k + 2..n {
            t[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Implicit single-shift QR with deflation, driving `t` to triangular form.
fn qr_iterate(t: &mut CMat, q: &mut CMat) -> Result<()> {
    let n = t.n();
    let scale = t.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut stagnation = 0usize;
    let mut budget = 60 * n;

    while hi > 0 {
        // Deflate converged trailing eigenvalues.
        if subdiag_negligible(t, hi, scale) {
            t[(hi, hi - 1)] = Complex64::new(0.0, 0.0);
            hi -= 1;
            stagnation = 0;
            continue;
        }
        // Find the start of the active block.
        let mut lo = hi;
        while lo > 0 && !subdiag_negligible(t, lo, scale) {
            lo -= 1;
        }
        if lo > 0 {
            t[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
        }

        if budget == 0 {
            return Err(Error::EigNonConvergence);
        }
        budget -= 1;
        stagnation += 1;

        let mu = if stagnation % 12 == 0 {
            // Exceptional shift to break symmetry-induced cycling.
            t[(hi, hi)] + Complex64::new(0.75 * t[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(t, hi)
        };

        bulge_chase(t, q, lo, hi, mu);
    }
    Ok(())
}

/// Convergence test for the subdiagonal entry `t[m, m-1]`.
fn subdiag_negligible(t: &CMat, m: usize, scale: f64) -> bool {
    let local = t[(m - 1, m - 1)].norm() + t[(m, m)].norm();
    let tol = f64::EPSILON * if local > 0.0 { local } else { scale };
    t[(m, m - 1)].norm() <= tol
}

/// Eigenvalue of the trailing 2x2 block closest to the corner entry.
fn wilkinson_shift(t: &CMat, hi: usize) -> Complex64 {
    let a = t[(hi - 1, hi - 1)];
    let b = t[(hi - 1, hi)];
    let c = t[(hi, hi - 1)];
    let d = t[(hi, hi)];
    let tr2 = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (tr2 * tr2 - det).sqrt();
    let l1 = tr2 + disc;
    let l2 = tr2 - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One implicit QR sweep on the block `[lo, hi]` with shift `mu`: create the
/// bulge from the shifted first column and chase it off the bottom,
/// accumulating every rotation into `q`.
fn bulge_chase(t: &mut CMat, q: &mut CMat, lo: usize, hi: usize, mu: Complex64) {
    let n = t.n();
    let mut x = t[(lo, lo)] - mu;
    let mut y = t[(lo + 1, lo)];
    for k in lo..hi {
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        if r > 0.0 {
            let u = x / r;
            let v = y / r;
            // Left rotation on rows (k, k+1): G = [[u*, v*], [-v, u]].
            let col_start = k.saturating_sub(1).max(lo.saturating_sub(1));
            for j in col_start..n {
                let tk = t[(k, j)];
                let tk1 = t[(k + 1, j)];
                t[(k, j)] = u.conj() * tk + v.conj() * tk1;
                t[(k + 1, j)] = -v * tk + u * tk1;
            }
            // Right rotation G^H on columns (k, k+1).
            let row_end = (k + 3).min(hi + 1);
            for i in 0..row_end {
                let tk = t[(i, k)];
                let tk1 = t[(i, k + 1)];
                t[(i, k)] = u * tk + v * tk1;
                t[(i, k + 1)] = -v.conj() * tk + u.conj() * tk1;
            }
            for i in 0..n {
                let qk = q[(i, k)];
                let qk1 = q[(i, k + 1)];
                q[(i, k)] = u * qk + v * qk1;
                q[(i, k + 1)] = -v.conj() * qk + u.conj() * qk1;
            }
        }
        if k + 1 < hi {
            x = t[(k + 1, k)];
            y = t[(k + 2, k)];
        }
    }
}

/// Null vector of `(T - lambda_i I)` restricted to the leading `(i+1)`-block
/// of the triangular matrix, with small pivots regularized so defective or
/// repeated diagonals still produce a usable direction.
fn triangular_null_vector(t: &CMat, i: usize, scale: f64) -> Vec<Complex64> {
    let n = t.n();
    let lambda = t[(i, i)];
    let smin = f64::EPSILON * scale + f64::MIN_POSITIVE;
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    y[i] = Complex64::new(1.0, 0.0);
    for j in (0..i).rev() {
        let s: Complex64 = (j + 1..=i).map(|l| t[(j, l)] * y[l]).sum();
        let mut d = t[(j, j)] - lambda;
        if d.norm() < smin {
            d = Complex64::new(smin, 0.0);
        }
        y[j] = -s / d;
        // Rescale to dodge overflow in pathologically graded triangles.
        let m = y[j].norm();
        if m > 1e250 {
            for c in y.iter_mut() {
                *c /= m;
            }
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Deterministic pseudo-random complex entries (no external RNG needed
    /// at this layer).
    fn lcg_matrix(n: usize, seed: u64) -> CMat {
        let mut state = seed;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        CMat::from_fn(n, |_, _| c(next(), next()))
    }

    fn residual(a: &CMat, e: &Eigen) -> f64 {
        let mut worst: f64 = 0.0;
        for (lambda, v) in e.values.iter().zip(&e.vectors) {
            let av = a.mul_vec(v);
            let r: f64 = av
                .iter()
                .zip(v)
                .map(|(x, y)| (x - lambda * y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        worst
    }

    #[test]
    fn diagonal_matrix_is_its_own_spectrum() {
        let mut a = CMat::zeros(4);
        let diag = [c(3.0, 0.0), c(-1.0, 2.0), c(0.5, 0.0), c(0.0, -4.0)];
        for (i, d) in diag.iter().enumerate() {
            a[(i, i)] = *d;
        }
        let e = eigen_dense(&a).unwrap();
        let mut expect = diag.to_vec();
        expect.sort_by(|x, y| x.re.total_cmp(&y.re).then_with(|| x.im.total_cmp(&y.im)));
        for (got, want) in e.values.iter().zip(expect) {
            assert!((got - want).norm() < 1e-14);
        }
        assert!(residual(&a, &e) < 1e-13);
    }

    #[test]
    fn random_dense_eigenpairs_have_small_residuals() {
        for (n, seed) in [(6usize, 7u64), (12, 11), (25, 13)] {
            let a = lcg_matrix(n, seed);
            let e = eigen_dense(&a).unwrap();
            assert_eq!(e.values.len(), n);
            let res = residual(&a, &e);
            let tol = 1e-11 * a.frobenius_norm() * n as f64;
            assert!(res < tol, "n = {n}: residual {res} vs {tol}");
            // Trace check: sum of eigenvalues equals trace.
            let tr: Complex64 = (0..n).map(|i| a[(i, i)]).sum();
            let sum: Complex64 = e.values.iter().sum();
            assert!((tr - sum).norm() < 1e-10 * a.frobenius_norm() * n as f64);
        }
    }

    #[test]
    fn defective_block_still_returns_vectors() {
        // 2x2 Jordan block: one eigenvalue, one true eigendirection.
        let mut a = CMat::zeros(2);
        a[(0, 0)] = c(2.0, 0.0);
        a[(0, 1)] = c(1.0, 0.0);
        a[(1, 1)] = c(2.0, 0.0);
        let e = eigen_dense(&a).unwrap();
        for v in &e.values {
            assert!((v - c(2.0, 0.0)).norm() < 1e-8);
        }
        // Both returned vectors are (numerically) along e1.
        for v in &e.vectors {
            assert!(v[0].norm() > 0.99);
        }
    }

    #[test]
    fn eigenvalues_are_deterministic_across_runs() {
        let a = lcg_matrix(15, 42);
        let e1 = eigen_dense(&a).unwrap();
        let e2 = eigen_dense(&a).unwrap();
        assert_eq!(e1.values, e2.values);
        assert_eq!(e1.vectors, e2.vectors);
    }

    #[test]
    fn similarity_to_companion_of_known_polynomial() {
        // Companion matrix of z^3 - 6z^2 + 11z - 6 = (z-1)(z-2)(z-3).
        let mut a = CMat::zeros(3);
        a[(0, 2)] = c(6.0, 0.0);
        a[(1, 0)] = c(1.0, 0.0);
        a[(1, 2)] = c(-11.0, 0.0);
        a[(2, 1)] = c(1.0, 0.0);
        a[(2, 2)] = c(6.0, 0.0);
        let e = eigen_dense(&a).unwrap();
        let expect = [1.0, 2.0, 3.0];
        for (got, want) in e.values.iter().zip(expect) {
            assert!((got - c(want, 0.0)).norm() < 1e-10, "{got} vs {want}");
        }
    }
}
