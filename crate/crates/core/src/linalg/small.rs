//! Closed-form singular-value analysis of 2x2 complex matrices.
//!
//! Monodromy matrices are 2x2, and the eigenfunction / associated-function
//! constructions need two things from them: the best kernel direction of
//! `M - sI` (with an honest residual), and a minimal-norm least-squares
//! solve against a nearly rank-deficient `M - sI`. Both come from the
//! closed-form eigendecomposition of the 2x2 Hermitian matrix `M^H M`,
//! which is exact up to rounding and has no iteration to seed or order.

use num_complex::Complex64;

/// A 2x2 complex matrix in row-major order.
pub type Mat2 = [[Complex64; 2]; 2];

/// A complex 2-vector.
pub type Vec2 = [Complex64; 2];

/// `m * v`.
pub fn mat2_mul_vec(m: &Mat2, v: &Vec2) -> Vec2 {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// Euclidean norm of a 2-vector.
pub fn vec2_norm(v: &Vec2) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

/// `<x, y> = x[0] conj(y[0]) + x[1] conj(y[1])`.
pub fn vec2_dot(x: &Vec2, y: &Vec2) -> Complex64 {
    x[0] * y[0].conj() + x[1] * y[1].conj()
}

/// The unit vector orthogonal to `u` (assumed unit): `(-conj(u1), conj(u0))`.
pub fn orthogonal_complement(u: &Vec2) -> Vec2 {
    [-u[1].conj(), u[0].conj()]
}

/// Frobenius norm of a 2x2 matrix.
pub fn mat2_frobenius(m: &Mat2) -> f64 {
    (m[0][0].norm_sqr() + m[0][1].norm_sqr() + m[1][0].norm_sqr() + m[1][1].norm_sqr()).sqrt()
}

/// Unit right singular vectors of `m`: `(v1, v2, sigma1)` with `v1` for the
/// largest singular value `sigma1` and `v2` orthogonal to it.
///
/// `v1` is computed from the dominant eigenvector of `m^H m`, which is the
/// well-conditioned direction; `v2` follows by orthogonal complement, so the
/// pair is exactly orthonormal regardless of how close the singular values
/// are.
fn right_singular_basis(m: &Mat2) -> (Vec2, Vec2, f64) {
    // h = m^H m = [[a, b], [conj(b), d]] with a, d real.
    let a = m[0][0].norm_sqr() + m[1][0].norm_sqr();
    let d = m[0][1].norm_sqr() + m[1][1].norm_sqr();
    let b = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];

    let mid = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let lambda1 = mid + disc;
    let sigma1 = lambda1.max(0.0).sqrt();

    // Two algebraically equivalent eigenvector formulas; pick the one with
    // the larger norm to avoid cancellation.
    let cand_a = [b, Complex64::new(lambda1 - a, 0.0)];
    let cand_b = [Complex64::new(lambda1 - d, 0.0), b.conj()];
    let na = vec2_norm(&cand_a);
    let nb = vec2_norm(&cand_b);
    let v1 = if na >= nb && na > 0.0 {
        [cand_a[0] / na, cand_a[1] / na]
    } else if nb > 0.0 {
        [cand_b[0] / nb, cand_b[1] / nb]
    } else {
        // m^H m is a multiple of the identity (including m = 0).
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
    };
    let v2 = orthogonal_complement(&v1);
    (v1, v2, sigma1)
}

/// Best-kernel direction of `m`: a unit vector `v` minimizing `||m v||`,
/// together with that minimum (the smallest singular value).
pub fn kernel_vector(m: &Mat2) -> (Vec2, f64) {
    let (_, v2, _) = right_singular_basis(m);
    let residual = vec2_norm(&mat2_mul_vec(m, &v2));
    (v2, residual)
}

/// Minimal-norm least-squares solve of `m x = rhs`.
///
/// Singular values at or below `floor` are treated as exact zeros, so the
/// corresponding direction contributes nothing to `x` no matter how large
/// the right-hand side's component there is. Returns `(x, ||m x - rhs||)`;
/// the residual reports how much of `rhs` fell outside the retained range.
pub fn pinv_solve(m: &Mat2, rhs: &Vec2, floor: f64) -> (Vec2, f64) {
    let (v1, v2, sigma1) = right_singular_basis(m);
    let mut x = [Complex64::new(0.0, 0.0); 2];
    if sigma1 > floor {
        let mv1 = mat2_mul_vec(m, &v1);
        let u1 = [mv1[0] / sigma1, mv1[1] / sigma1];
        let coeff = vec2_dot(rhs, &u1) / sigma1;
        x[0] += coeff * v1[0];
        x[1] += coeff * v1[1];
    }
    let mv2 = mat2_mul_vec(m, &v2);
    let sigma2 = vec2_norm(&mv2);
    if sigma2 > floor {
        let u2 = [mv2[0] / sigma2, mv2[1] / sigma2];
        let coeff = vec2_dot(rhs, &u2) / sigma2;
        x[0] += coeff * v2[0];
        x[1] += coeff * v2[1];
    }
    let mx = mat2_mul_vec(m, &x);
    let residual = vec2_norm(&[mx[0] - rhs[0], mx[1] - rhs[1]]);
    (x, residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_of_singular_matrix_is_exact() {
        // Rows proportional: kernel spanned by (2, -1)/sqrt(5).
        let m = [[c(1.0, 0.0), c(2.0, 0.0)], [c(2.0, 0.0), c(4.0, 0.0)]];
        let (v, res) = kernel_vector(&m);
        assert!(
            res < 1e-14,
            "singular matrix must have near-zero best residual, got {res}"
        );
        assert!(
            (vec2_norm(&v) - 1.0).abs() < 1e-14,
            "kernel direction must be unit length"
        );
        let mv = mat2_mul_vec(&m, &v);
        assert!(vec2_norm(&mv) < 1e-14);
    }

    #[test]
    fn kernel_residual_of_unitary_matrix_is_one() {
        // A rotation has both singular values equal to 1, so the smallest
        // achievable ||m v|| over unit v is exactly 1.
        let m = [[c(0.0, 0.0), c(1.0, 0.0)], [c(-1.0, 0.0), c(0.0, 0.0)]];
        let (_, res) = kernel_vector(&m);
        assert!(
            (res - 1.0).abs() < 1e-14,
            "unitary matrix kernel residual should be 1, got {res}"
        );
    }

    #[test]
    fn pinv_solve_recovers_exact_solution_when_invertible() {
        let m = [[c(2.0, 0.0), c(0.0, 1.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        let rhs = [c(1.0, -2.0), c(3.0, 0.5)];
        let (x, res) = pinv_solve(&m, &rhs, 0.0);
        assert!(
            res < 1e-13,
            "invertible solve must have tiny residual, got {res}"
        );
        let mx = mat2_mul_vec(&m, &x);
        assert!(vec2_norm(&[mx[0] - rhs[0], mx[1] - rhs[1]]) < 1e-13);
    }

    #[test]
    fn pinv_solve_drops_floored_direction_and_reports_residual() {
        // diag(1, 0) with rhs having a component outside the range: the
        // minimal-norm solution ignores the second coordinate entirely and
        // the residual is exactly that dropped component.
        let m = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        let rhs = [c(3.0, 0.0), c(4.0, 0.0)];
        let (x, res) = pinv_solve(&m, &rhs, 1e-8);
        assert!((x[0] - c(3.0, 0.0)).norm() < 1e-14);
        assert!(
            x[1].norm() < 1e-14,
            "floored direction must not leak into the solution"
        );
        assert!(
            (res - 4.0).abs() < 1e-14,
            "residual must equal the out-of-range mass, got {res}"
        );
    }

    #[test]
    fn orthogonal_complement_is_orthonormal() {
        let u = [c(0.6, 0.0), c(0.0, 0.8)];
        let w = orthogonal_complement(&u);
        assert!(vec2_dot(&w, &u).norm() < 1e-15);
        assert!((vec2_norm(&w) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn near_singular_kernel_residual_tracks_true_smallest_singular_value() {
        // diag(1, eps) rotated by a unitary keeps singular values {1, eps}.
        let eps = 3e-9;
        let q = std::f64::consts::FRAC_PI_6;
        let (cq, sq) = (q.cos(), q.sin());
        // m = R diag(1, eps) R^T with a complex phase thrown in.
        let phase = Complex64::from_polar(1.0, 0.7);
        let m = [
            [
                phase * c(cq * cq + eps * sq * sq, 0.0),
                phase * c(cq * sq * (1.0 - eps), 0.0),
            ],
            [
                c(cq * sq * (1.0 - eps), 0.0),
                c(sq * sq + eps * cq * cq, 0.0),
            ],
        ];
        let (_, res) = kernel_vector(&m);
        assert!(
            (res - eps).abs() < 1e-6 * eps + 1e-15,
            "kernel residual {res} should approximate the smallest singular value {eps}"
        );
    }
}
