//! Uniform grids on `[0, 1)`, discrete `L^2` geometry, and spectral
//! differentiation.
//!
//! Functions are sampled at `x_j = j / M`, `j = 0, ..., M - 1`.  With the
//! inner product `<f, g> = (1/M) sum_j f_j conj(g_j)` the exponentials
//! `e^{2 pi i k x}` with `|k| <= (M - 1) / 2` are exactly orthonormal, so all
//! discrete operations below are exact on band-limited data.  Transforms are
//! evaluated by direct summation: grid sizes in this crate stay in the
//! hundreds, where the `O(M^2)` cost is negligible and the summation order
//! (hence the rounding) is fixed.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::bc::BcCase;

/// Sample points `j / m`, `j = 0, ..., m - 1`.
pub fn uniform_grid(m: usize) -> Vec<f64> {
    (0..m).map(|j| j as f64 / m as f64).collect()
}

/// Discrete `L^2(0, 1)` inner product `(1/M) sum_j f_j conj(g_j)`,
/// conjugate-linear in the second argument.
pub fn inner_product(f: &[Complex64], g: &[Complex64]) -> Complex64 {
    assert_eq!(f.len(), g.len(), "inner product needs equal grid sizes");
    let sum: Complex64 = f.iter().zip(g).map(|(a, b)| a * b.conj()).sum();
    sum / f.len() as f64
}

/// Discrete `L^2` norm induced by [`inner_product`].
pub fn l2_norm(f: &[Complex64]) -> f64 {
    let sum: f64 = f.iter().map(|a| a.norm_sqr()).sum();
    (sum / f.len() as f64).sqrt()
}

/// Discrete `L^1(0, 1)` norm `(1/M) sum_j |f_j|`.
pub fn l1_norm(f: &[Complex64]) -> f64 {
    f.iter().map(|a| a.norm()).sum::<f64>() / f.len() as f64
}

/// Trapezoidal Fourier coefficient `c_k ~ integral f(x) e^{-2 pi i k x} dx`
/// from samples on the uniform grid.  Exact when `f` is a trigonometric
/// polynomial and `|k| + bandwidth(f) < M`.
pub fn dft_coefficient(f: &[Complex64], k: i64) -> Complex64 {
    let m = f.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, v) in f.iter().enumerate() {
        let phase = -TAU * k as f64 * j as f64 / m as f64;
        acc += v * Complex64::from_polar(1.0, phase);
    }
    acc / m as f64
}

/// Second derivative of a grid function by spectral differentiation.
///
/// The samples are interpreted as a function satisfying the boundary
/// condition of `bc`: directly 1-periodic in the periodic case, and
/// `f(x + 1) = -f(x)` in the antiperiodic case.  Antiperiodic data are
/// demodulated by `e^{-i pi x}` (which makes them 1-periodic, shifting every
/// frequency by one half), differentiated on the half-integer ladder, and
/// remodulated.  Exact for band-limited data away from the grid's Nyquist
/// mode.
pub fn second_derivative(f: &[Complex64], bc: BcCase) -> Vec<Complex64> {
    let m = f.len();
    assert!(m >= 3, "need at least 3 samples to differentiate");
    match bc {
        BcCase::Periodic => second_derivative_periodic(f, 0.0),
        BcCase::Antiperiodic => {
            let demodulated: Vec<Complex64> = f
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    v * Complex64::from_polar(1.0, -std::f64::consts::PI * j as f64 / m as f64)
                })
                .collect();
            let ddm = second_derivative_periodic(&demodulated, 0.5);
            ddm.iter()
                .enumerate()
                .map(|(j, v)| {
                    v * Complex64::from_polar(1.0, std::f64::consts::PI * j as f64 / m as f64)
                })
                .collect()
        }
    }
}

/// Core of [`second_derivative`]: multiply mode `k` by `-(2 pi (k + shift))^2`.
/// Frequencies are unwrapped to the symmetric window around zero.
fn second_derivative_periodic(f: &[Complex64], shift: f64) -> Vec<Complex64> {
    let m = f.len();
    let half = (m / 2) as i64;
    // Forward transform, one coefficient per unwrapped frequency.
    let mut weighted = vec![Complex64::new(0.0, 0.0); m];
    for k_idx in 0..m as i64 {
        let k = if k_idx <= half {
            k_idx
        } else {
            k_idx - m as i64
        };
        let ck = dft_coefficient(f, k);
        let omega = TAU * (k as f64 + shift);
        weighted[k_idx as usize] = -(omega * omega) * ck;
    }
    // Inverse transform by direct synthesis.
    (0..m)
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k_idx, w) in weighted.iter().enumerate() {
                let k = if k_idx as i64 <= half {
                    k_idx as i64
                } else {
                    k_idx as i64 - m as i64
                };
                let phase = TAU * k as f64 * j as f64 / m as f64;
                acc += w * Complex64::from_polar(1.0, phase);
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn wave(m: usize, freq: f64) -> Vec<Complex64> {
        uniform_grid(m)
            .into_iter()
            .map(|x| Complex64::from_polar(1.0, TAU * freq * x))
            .collect()
    }

    #[test]
    fn exponentials_are_orthonormal() {
        let m = 33;
        for k in [-5i64, 0, 7] {
            for l in [-5i64, 0, 7] {
                let ip = inner_product(&wave(m, k as f64), &wave(m, l as f64));
                let expect = if k == l { 1.0 } else { 0.0 };
                assert!((ip - expect).norm() < 1e-13, "k={k} l={l} ip={ip}");
            }
        }
    }

    #[test]
    fn dft_recovers_band_limited_coefficients() {
        let m = 17;
        let grid = uniform_grid(m);
        let c3 = Complex64::new(0.25, -0.5);
        let cm2 = Complex64::new(-1.0, 0.125);
        let f: Vec<Complex64> = grid
            .iter()
            .map(|&x| {
                c3 * Complex64::from_polar(1.0, TAU * 3.0 * x)
                    + cm2 * Complex64::from_polar(1.0, -TAU * 2.0 * x)
            })
            .collect();
        assert!((dft_coefficient(&f, 3) - c3).norm() < 1e-14);
        assert!((dft_coefficient(&f, -2) - cm2).norm() < 1e-14);
        assert!(dft_coefficient(&f, 1).norm() < 1e-14);
    }

    #[test]
    fn second_derivative_is_exact_on_periodic_modes() {
        let m = 41;
        let f = wave(m, 4.0);
        let dd = second_derivative(&f, BcCase::Periodic);
        let omega2 = (TAU * 4.0) * (TAU * 4.0);
        for (v, w) in f.iter().zip(&dd) {
            assert!((w + omega2 * v).norm() < 1e-9 * omega2);
        }
    }

    #[test]
    fn second_derivative_is_exact_on_antiperiodic_modes() {
        // f(x) = e^{i pi (2k+1) x} with k = 2: frequency 5/2 in cycles.
        let m = 41;
        let f = wave(m, 2.5);
        let dd = second_derivative(&f, BcCase::Antiperiodic);
        let omega2 = (5.0 * PI) * (5.0 * PI);
        for (v, w) in f.iter().zip(&dd) {
            assert!((w + omega2 * v).norm() < 1e-9 * omega2);
        }
    }

    #[test]
    fn l1_norm_of_unimodular_wave_is_one() {
        let f = wave(24, 3.0);
        assert!((l1_norm(&f) - 1.0).abs() < 1e-14);
    }
}
