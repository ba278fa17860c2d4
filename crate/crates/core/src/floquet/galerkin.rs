//! Fourier–Galerkin discretization of the Hill operator.
//!
//! The operator `u -> -u'' + q u` acts on the exponentials
//! `e_f(x) = exp(2 pi i f x)` as
//!
//! ```text
//! (-d^2/dx^2 + q) e_f = (2 pi f)^2 e_f + sum_k c_k e_{f + k},
//! ```
//!
//! so on a window of basis frequencies it is represented by the matrix
//! `A[j, k] = (2 pi f_j)^2 delta_{jk} + c_{f_j - f_k}`.  Periodic boundary
//! conditions select integer frequencies `f = -K, ..., K`; antiperiodic
//! conditions select the half-integers `-K + 1/2, ..., K - 1/2`.  In both
//! cases frequency differences are integers, so the off-diagonal part is a
//! banded Toeplitz matrix built from the Fourier coefficients of `q`.
//!
//! The matrix is not Hermitian for complex `q`; its eigenvalues come from
//! the dense Schur solver and approximate the periodic (case 1) or
//! antiperiodic (case 2) spectrum.  High-index pairs sit close to the
//! unperturbed points `rho_n + c_0`, which is what the pair-extraction
//! helpers on [`GalerkinSpectrum`] exploit: walking the pair windows in
//! ascending order, each pair takes the two unused eigenvalues nearest its
//! unperturbed location.
//!
//! This path is entirely linear algebra: no differential equation is
//! integrated, so it provides an independent cross-check for the
//! shooting-based pair search and a bulk source of eigenvalue pairs when
//! many indices are needed at once.

use num_complex::Complex64;

use crate::bc::BcCase;
use crate::error::{Error, Result};
use crate::linalg::{schur::eigen_dense, CMat};
use crate::potential::Potential;

use std::f64::consts::TAU;

/// Minimum margin, in basis modes, between the matrix cutoff and the
/// bandwidth of the potential.
pub(crate) const ASSEMBLY_MARGIN: u32 = 4;

/// Margin, in basis modes, required between a requested pair index and the
/// matrix cutoff for the extracted eigenvalues to be trustworthy.
pub(crate) const PAIR_MARGIN: u32 = 2;

/// Eigenvalues of one Galerkin matrix, sorted by real part (ties by
/// imaginary part), together with the data needed to carve them into
/// boundary-condition pairs.
#[derive(Debug, Clone)]
pub struct GalerkinSpectrum {
    /// Which boundary condition the basis frequencies encode.
    pub bc_case: BcCase,
    /// Mode cutoff `K` used to build the matrix.
    pub k_matrix: u32,
    /// Mean value of the potential; pair `n` is searched near `rho_n + c0`.
    pub c0: Complex64,
    /// All matrix eigenvalues, sorted by `(re, im)`.
    pub eigenvalues: Vec<Complex64>,
}

/// One extracted eigenvalue pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GalerkinPair {
    /// Pair index within its boundary-condition case.
    pub n: u32,
    /// Fourier index `2n` or `2n + 1` coupled to this pair.
    pub coeff_index: u32,
    /// Member with the smaller `(re, im)` key.
    pub lambda_minus: Complex64,
    /// Member with the larger `(re, im)` key.
    pub lambda_plus: Complex64,
}

impl GalerkinPair {
    /// Difference `lambda_plus - lambda_minus`.
    pub fn splitting(&self) -> Complex64 {
        self.lambda_plus - self.lambda_minus
    }

    /// Midpoint of the pair.
    pub fn center(&self) -> Complex64 {
        0.5 * (self.lambda_plus + self.lambda_minus)
    }
}

/// Basis frequencies for the given case and cutoff, in ascending order.
fn frequencies(bc: BcCase, k_matrix: u32) -> Vec<f64> {
    let k = i64::from(k_matrix);
    match bc {
        BcCase::Periodic => (-k..=k).map(|m| bc.galerkin_frequency(m)).collect(),
        BcCase::Antiperiodic => (-k..=k)
            .filter(|&m| m != 0)
            .map(|m| bc.galerkin_frequency(m))
            .collect(),
    }
}

/// Assemble the Galerkin matrix for `q` with mode cutoff `k_matrix`.
///
/// Requires `k_matrix >= bandwidth(q) + 4`, so that every Fourier
/// coefficient of the truncated potential couples at least some pair of
/// retained modes and the retained band is wider than the potential's.
pub fn galerkin_matrix(q: &Potential, bc: BcCase, k_matrix: u32) -> Result<CMat> {
    if k_matrix < q.bandwidth() + ASSEMBLY_MARGIN {
        return Err(Error::InvalidParameter(format!(
            "matrix cutoff {} too small for potential bandwidth {}: need at least {}",
            k_matrix,
            q.bandwidth(),
            q.bandwidth() + ASSEMBLY_MARGIN
        )));
    }
    let freqs = frequencies(bc, k_matrix);
    let dim = freqs.len();
    let mut a = CMat::zeros(dim);
    for (r, &fr) in freqs.iter().enumerate() {
        let omega = TAU * fr;
        for (s, &fs) in freqs.iter().enumerate() {
            // Frequency differences are integers in both cases.
            let offset = (fr - fs).round() as i64;
            let mut entry = q.truncated_coefficient(offset);
            if r == s {
                entry += Complex64::new(omega * omega, 0.0);
            }
            a[(r, s)] = entry;
        }
    }
    Ok(a)
}

/// Eigenvalues of the Galerkin matrix, sorted and packaged for pair
/// extraction.
pub fn galerkin_spectrum(q: &Potential, bc: BcCase, k_matrix: u32) -> Result<GalerkinSpectrum> {
    let a = galerkin_matrix(q, bc, k_matrix)?;
    let eig = eigen_dense(&a)?;
    Ok(GalerkinSpectrum {
        bc_case: bc,
        k_matrix,
        c0: q.truncated_coefficient(0),
        eigenvalues: eig.values,
    })
}

impl GalerkinSpectrum {
    /// Highest basis mode occupied by pair `n`.
    fn pair_mode(&self, n: u32) -> u32 {
        match self.bc_case {
            BcCase::Periodic => n,
            // |frequency| = n + 1/2 corresponds to signed mode n + 1.
            BcCase::Antiperiodic => n + 1,
        }
    }

    /// Extract pairs `n_lo ..= n_hi`, walking indices in ascending order and
    /// giving each pair the two unused eigenvalues nearest `rho_n + c0`.
    ///
    /// For the periodic case `n_lo` must be at least 1 (index 0 is the
    /// isolated lowest eigenvalue, see [`GalerkinSpectrum::lowest`]); the
    /// highest pair must stay [`PAIR_MARGIN`] modes below the cutoff.
    pub fn pairs(&self, n_lo: u32, n_hi: u32) -> Result<Vec<GalerkinPair>> {
        if self.bc_case == BcCase::Periodic && n_lo == 0 {
            return Err(Error::InvalidParameter(
                "periodic pairs are indexed from n = 1".into(),
            ));
        }
        if n_lo > n_hi {
            return Err(Error::InvalidParameter(format!(
                "empty pair window: n_lo = {n_lo} > n_hi = {n_hi}"
            )));
        }
        if self.pair_mode(n_hi) + PAIR_MARGIN > self.k_matrix {
            return Err(Error::InvalidParameter(format!(
                "pair {} occupies mode {} but the matrix cutoff {} requires \
                 a margin of {} modes",
                n_hi,
                self.pair_mode(n_hi),
                self.k_matrix,
                PAIR_MARGIN
            )));
        }

        let mut used = vec![false; self.eigenvalues.len()];
        let mut out = Vec::with_capacity((n_hi - n_lo + 1) as usize);
        for n in n_lo..=n_hi {
            let target = Complex64::new(self.bc_case.rho(n), 0.0) + self.c0;
            let first = self.take_nearest(target, &mut used);
            let second = self.take_nearest(target, &mut used);
            let (first, second) = match (first, second) {
                (Some(a), Some(b)) => (a, b),
                (found, _) => {
                    return Err(Error::SearchFailure {
                        bc_case: self.bc_case.label(),
                        n,
                        found: usize::from(found.is_some()),
                    })
                }
            };
            let (lambda_minus, lambda_plus) = order_pair(first, second);
            out.push(GalerkinPair {
                n,
                coeff_index: self.bc_case.coeff_index(n),
                lambda_minus,
                lambda_plus,
            });
        }
        Ok(out)
    }

    /// The isolated lowest periodic eigenvalue: the unique spectral point
    /// near `c0` that has no pair partner.
    pub fn lowest(&self) -> Result<Complex64> {
        if self.bc_case != BcCase::Periodic {
            return Err(Error::InvalidParameter(
                "only the periodic case has an unpaired lowest eigenvalue".into(),
            ));
        }
        let mut used = vec![false; self.eigenvalues.len()];
        self.take_nearest(self.c0, &mut used)
            .ok_or(Error::SearchFailure {
                bc_case: self.bc_case.label(),
                n: 0,
                found: 0,
            })
    }

    /// Claim the unused eigenvalue nearest `target` (ties broken by sort
    /// position, which is deterministic).
    fn take_nearest(&self, target: Complex64, used: &mut [bool]) -> Option<Complex64> {
        let mut best: Option<(f64, usize)> = None;
        for (i, lambda) in self.eigenvalues.iter().enumerate() {
            if used[i] {
                continue;
            }
            let dist = (lambda - target).norm();
            if best.map_or(true, |(d, _)| dist < d) {
                best = Some((dist, i));
            }
        }
        let (_, i) = best?;
        used[i] = true;
        Some(self.eigenvalues[i])
    }
}

/// Order two eigenvalues by `(re, im)`.
fn order_pair(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    if (a.re, a.im) <= (b.re, b.im) {
        (a, b)
    } else {
        (b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn free_periodic_spectrum_is_the_ladder_of_squared_even_multiples_of_pi() {
        let q = Potential::zero();
        let spec = galerkin_spectrum(&q, BcCase::Periodic, 6).unwrap();
        assert_eq!(spec.eigenvalues.len(), 13);
        let lowest = spec.lowest().unwrap();
        assert!(
            lowest.norm() < 1e-8,
            "free lowest eigenvalue is 0, got {lowest}"
        );
        for pair in spec.pairs(1, 4).unwrap() {
            let rho = BcCase::Periodic.rho(pair.n);
            assert!(
                (pair.lambda_minus - c(rho, 0.0)).norm() < 1e-8 * rho,
                "pair {} should sit at {rho}, got {}",
                pair.n,
                pair.lambda_minus
            );
            assert!(
                pair.splitting().norm() < 1e-8 * rho,
                "free pairs are degenerate, pair {} split by {}",
                pair.n,
                pair.splitting()
            );
        }
    }

    #[test]
    fn free_antiperiodic_spectrum_is_the_ladder_of_squared_odd_multiples_of_pi() {
        let q = Potential::zero();
        let spec = galerkin_spectrum(&q, BcCase::Antiperiodic, 6).unwrap();
        assert_eq!(spec.eigenvalues.len(), 12);
        for pair in spec.pairs(0, 3).unwrap() {
            let rho = BcCase::Antiperiodic.rho(pair.n);
            assert!(
                (pair.center() - c(rho, 0.0)).norm() < 1e-8 * rho.max(1.0),
                "antiperiodic pair {} should sit at {rho}, got {}",
                pair.n,
                pair.center()
            );
        }
    }

    #[test]
    fn constant_potential_shifts_every_eigenvalue() {
        let shift = c(0.7, -0.3);
        let q = Potential::constant(shift);
        let free = galerkin_spectrum(&Potential::zero(), BcCase::Periodic, 5).unwrap();
        let spec = galerkin_spectrum(&q, BcCase::Periodic, 5).unwrap();
        for (a, b) in free.eigenvalues.iter().zip(&spec.eigenvalues) {
            assert!(
                (a + shift - b).norm() < 1e-8 * (1.0 + b.norm()),
                "constant shift must move every eigenvalue rigidly: {a} vs {b}"
            );
        }
        let lowest = spec.lowest().unwrap();
        assert!((lowest - shift).norm() < 1e-8);
    }

    #[test]
    fn symmetric_coupling_splits_the_matching_pair_at_first_order() {
        let a = 0.05;
        let q = Potential::from_coeffs([(2, c(a, 0.0)), (-2, c(a, 0.0))]);
        let spec = galerkin_spectrum(&q, BcCase::Periodic, 10).unwrap();
        let pair = &spec.pairs(1, 1).unwrap()[0];
        assert_eq!(pair.coeff_index, 2);
        let split = pair.splitting().norm();
        assert!(
            (split - 2.0 * a).abs() < 0.1 * a + 5.0 * a * a,
            "expected first-order splitting {} for the coupled pair, got {split}",
            2.0 * a
        );
        // The same coefficients leave an uncoupled pair nearly degenerate.
        let pair2 = &spec.pairs(2, 2).unwrap()[0];
        assert!(
            pair2.splitting().norm() < a * a,
            "pair 2 is only coupled at higher order, split {}",
            pair2.splitting()
        );
    }

    #[test]
    fn one_sided_coupling_keeps_the_pair_collapsed() {
        // A potential with only negative-index coefficients yields a
        // triangular matrix: eigenvalues equal the free diagonal exactly.
        let q = Potential::from_coeffs([(-2, c(0.05, 0.0))]);
        let spec = galerkin_spectrum(&q, BcCase::Periodic, 8).unwrap();
        let pair = &spec.pairs(1, 1).unwrap()[0];
        let rho = BcCase::Periodic.rho(1);
        assert!(
            pair.splitting().norm() <= 1e-8 * (1.0 + rho),
            "one-sided coupling cannot split the pair, got {}",
            pair.splitting()
        );
        assert!((pair.center() - c(rho, 0.0)).norm() < 1e-8 * rho);
    }

    #[test]
    fn antiperiodic_matrix_places_couplings_by_integer_frequency_offsets() {
        // Half-integer frequencies -9/2, ..., 9/2.  A single coefficient
        // c_1 must appear exactly on the band of entries whose frequency
        // offset is f_r - f_s = 1, and nowhere else.
        let q = Potential::from_coeffs([(1, c(0.25, 0.0))]);
        let m = galerkin_matrix(&q, BcCase::Antiperiodic, 5).unwrap();
        let freqs = frequencies(BcCase::Antiperiodic, 5);
        for (r, &fr) in freqs.iter().enumerate() {
            for (s, &fs) in freqs.iter().enumerate() {
                let expected = if r == s {
                    c((TAU * fr) * (TAU * fr), 0.0)
                } else if (fr - fs - 1.0).abs() < 1e-12 {
                    c(0.25, 0.0)
                } else {
                    c(0.0, 0.0)
                };
                assert_eq!(m[(r, s)], expected, "entry ({r}, {s}) misplaced");
            }
        }
        // Frequencies really are the half-integers.
        assert_eq!(freqs[0], -4.5);
        assert!((BcCase::Antiperiodic.rho(0) - PI * PI).abs() < 1e-12);
    }

    #[test]
    fn cutoff_below_bandwidth_margin_is_rejected() {
        let q = Potential::make_counterexample(BcCase::Periodic, 0.3, 0.7, 8).unwrap();
        let err = galerkin_matrix(&q, BcCase::Periodic, q.bandwidth() + 3).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn pair_window_beyond_the_cutoff_is_rejected() {
        let spec = galerkin_spectrum(&Potential::zero(), BcCase::Periodic, 6).unwrap();
        let err = spec.pairs(1, 5).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        let err = spec.pairs(0, 2).unwrap_err();
        assert!(
            matches!(err, Error::InvalidParameter(_)),
            "periodic n = 0 is not a pair"
        );
    }

    #[test]
    fn spectrum_is_deterministic() {
        let q = Potential::from_coeffs([(1, c(0.2, 0.1)), (-1, c(0.1, -0.3)), (0, c(0.4, 0.0))]);
        let s1 = galerkin_spectrum(&q, BcCase::Antiperiodic, 9).unwrap();
        let s2 = galerkin_spectrum(&q, BcCase::Antiperiodic, 9).unwrap();
        assert_eq!(
            s1.eigenvalues, s2.eigenvalues,
            "identical runs must agree bitwise"
        );
    }
}
