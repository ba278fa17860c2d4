//! Both diagnostic classes are dense: an `L^1`-perturbation of
//! arbitrarily small size flips the verdicts.
//!
//! Basisness of the root system is not a stable property of the
//! potential.  Around any starting point `q` and for any budget
//! `delta > 0` there are potentials within `L^1` distance `delta` whose
//! coefficient tails are strongly unbalanced (lacunary growth of
//! `|alpha_n / beta_n|`, inconsistent with a Riesz basis) and others
//! whose tails are perfectly balanced on fresh indices.  The reason is
//! that the defining quantities are *ratios*: on indices where `q`'s
//! coefficients vanish, an arbitrarily small additive term controls the
//! ratio completely.
//!
//! [`density_demo`] makes this concrete.  It freezes the starting
//! potential to its truncated coefficients, builds a perturbation
//! direction appropriate for the requested target class on indices where
//! the start is negligible, rescales it to exact `L^1` mass `delta`, and
//! runs the full diagnostic suite — both balance checkers plus a Gram
//! window — on the potential before and after.  The report keeps both
//! sides so the flip is visible in one object.

use serde::Serialize;

use crate::bc::BcCase;
use crate::diagnostics::gram::{gram_report, GramOptions, GramReport};
use crate::diagnostics::theorem::{check_theorem1, check_theorem2, TheoremVerdict};
use crate::error::{Error, Result};
use crate::potential::{Parity, Potential, PotentialFile};

/// Bandwidth of the constructed perturbation directions.
const DIRECTION_BANDWIDTH: u32 = 64;

/// Lacunary support offsets tried before giving up on a collision-free
/// direction.
const SUPPORT_OFFSETS: [u32; 5] = [0, 2, 4, 6, 8];

/// Top pair index of the Gram window computed on both sides.
const GRAM_WINDOW_TOP: u32 = 8;

/// Which diagnostic class the perturbation should steer towards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DensityTarget {
    /// Balanced fresh tail: the growth scan loses its signal.
    BasisLike,
    /// Lacunary unbalanced tail: the growth scan turns consistent.
    NonBasisLike,
}

/// Checker verdicts and Gram conditioning of one potential.
#[derive(Debug, Clone, Serialize)]
pub struct DensitySide {
    pub theorem1: TheoremVerdict,
    pub theorem2: TheoremVerdict,
    pub gram: GramReport,
}

/// Before/after diagnostics of one density demonstration.
#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub target: DensityTarget,
    pub bc_case: BcCase,
    /// Requested `L^1` budget.
    pub delta: f64,
    /// Exact `L^1` mass of the added perturbation (equals `delta` by
    /// construction).
    pub perturbation_l1: f64,
    /// Lacunary support offset used by the direction (0 unless a
    /// collision forced a shift; always 0 for the balanced target).
    pub direction_offset: u32,
    /// The perturbed potential, in file form for reuse.
    pub perturbed: PotentialFile,
    pub before: DensitySide,
    pub after: DensitySide,
    /// Whether the growth-scan verdict changed between the sides.
    pub flipped: bool,
}

/// Demonstrate density of the `target` class at `q_start`.
///
/// The start is frozen to its truncated coefficients so both sides see
/// identical data outside the perturbation.  The direction lives on
/// indices of the coupled parity where the start's coefficients are
/// negligible: a lacunary two-exponent family for `NonBasisLike`
/// (support shifted if it collides with the start, then
/// [`Error::DirectionCollision`]), or a symmetric slowly-decaying family
/// on all free indices for `BasisLike` (needs at least 8 free indices).
/// The returned report carries both checkers and a Gram window
/// `[.., 8]` for the potential before and after.
pub fn density_demo(
    q_start: &Potential,
    bc: BcCase,
    delta: f64,
    target: DensityTarget,
    n_max: u32,
) -> Result<DensityReport> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "perturbation budget must be positive and finite, got {delta}"
        )));
    }
    if n_max < 8 {
        return Err(Error::InvalidParameter(format!(
            "checker window needs n_max >= 8, got {n_max}"
        )));
    }

    let start = q_start.materialized();
    // A start coefficient is negligible when it is far below the scale an
    // added direction coefficient would set; such indices are free for
    // the perturbation to control.
    let negligible = 1e-9 * start.l1_coefficient_bound().max(1.0);

    let (direction, direction_offset) = match target {
        DensityTarget::NonBasisLike => lacunary_direction(&start, bc, negligible)?,
        DensityTarget::BasisLike => (balanced_direction(&start, bc, negligible)?, 0),
    };

    let perturbed = start.perturb(delta, &direction)?;

    let before = diagnose(&start, bc, n_max)?;
    let after = diagnose(&perturbed, bc, n_max)?;
    let flipped = before.theorem2.verdict != after.theorem2.verdict;

    Ok(DensityReport {
        target,
        bc_case: bc,
        delta,
        perturbation_l1: delta,
        direction_offset,
        perturbed: perturbed.to_file(),
        before,
        after,
        flipped,
    })
}

/// Lacunary direction on indices free of the start's support, shifting
/// the support when it collides.
fn lacunary_direction(start: &Potential, bc: BcCase, negligible: f64) -> Result<(Potential, u32)> {
    let mut first_collision = 0u32;
    for offset in SUPPORT_OFFSETS {
        let direction =
            Potential::make_counterexample_shifted(bc, 0.3, 0.7, DIRECTION_BANDWIDTH, offset)?;
        match collision(start, &direction, negligible) {
            None => return Ok((direction, offset)),
            Some(index) => {
                if first_collision == 0 {
                    first_collision = index;
                }
            }
        }
    }
    Err(Error::DirectionCollision {
        index: first_collision,
    })
}

/// First direction-support index where the start's coefficients are not
/// negligible, if any.
fn collision(start: &Potential, direction: &Potential, negligible: f64) -> Option<u32> {
    for n in 1..=DIRECTION_BANDWIDTH {
        let dir = direction.fourier_pair(n);
        if dir.alpha.norm() == 0.0 && dir.beta.norm() == 0.0 {
            continue;
        }
        let own = start.fourier_pair(n);
        if own.alpha.norm() > negligible || own.beta.norm() > negligible {
            return Some(n);
        }
    }
    None
}

/// Symmetric slowly-decaying direction on every coupled-parity index
/// where the start is negligible, so each touched index gets an exactly
/// balanced coefficient pair.
fn balanced_direction(start: &Potential, bc: BcCase, negligible: f64) -> Result<Potential> {
    let parity = Parity::for_case(bc);
    let mut coeffs: Vec<(i64, num_complex::Complex64)> = Vec::new();
    let mut touched = 0usize;
    for n in 1..=DIRECTION_BANDWIDTH {
        if !parity.admits(n) {
            continue;
        }
        let own = start.fourier_pair(n);
        if own.alpha.norm() > negligible || own.beta.norm() > negligible {
            continue;
        }
        let amplitude = f64::from(n).powf(-0.3);
        let c = num_complex::Complex64::new(amplitude, 0.0);
        coeffs.push((-i64::from(n), c));
        coeffs.push((i64::from(n), c));
        touched += 1;
    }
    if touched < 8 {
        // The start occupies nearly the whole parity class; report the
        // first blocked index.
        let blocked = (1..=DIRECTION_BANDWIDTH)
            .find(|n| {
                parity.admits(*n)
                    && (start.fourier_pair(*n).alpha.norm() > negligible
                        || start.fourier_pair(*n).beta.norm() > negligible)
            })
            .unwrap_or(1);
        return Err(Error::DirectionCollision { index: blocked });
    }
    Ok(Potential::from_coeffs(coeffs))
}

/// Run both checkers and a Gram window on one potential.
fn diagnose(q: &Potential, bc: BcCase, n_max: u32) -> Result<DensitySide> {
    let m = q.smoothness();
    let theorem1 = check_theorem1(q, bc, m, 2, n_max, 4.0)?;
    let theorem2 = check_theorem2(q, bc, m, n_max, 1e-6, 0.1)?;
    let n_lo = match bc {
        BcCase::Periodic => 1,
        BcCase::Antiperiodic => 0,
    };
    let grid_size = (4 * GRAM_WINDOW_TOP as usize + 1).max(2 * q.bandwidth() as usize + 1);
    let gram = gram_report(
        q,
        bc,
        n_lo,
        GRAM_WINDOW_TOP,
        grid_size,
        &GramOptions::default(),
    )?;
    Ok(DensitySide {
        theorem1,
        theorem2,
        gram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::theorem::Verdict;
    use num_complex::Complex64;

    #[test]
    fn zero_start_flips_to_unbalanced_under_a_tiny_perturbation() {
        let q = Potential::zero();
        let report =
            density_demo(&q, BcCase::Periodic, 1e-3, DensityTarget::NonBasisLike, 64).unwrap();
        assert_eq!(report.before.theorem2.verdict, Verdict::Inconclusive);
        assert_eq!(
            report.after.theorem2.verdict,
            Verdict::Consistent,
            "reason: {}",
            report.after.theorem2.reason
        );
        assert!(report.flipped);
        assert_eq!(
            report.direction_offset, 0,
            "no collision from the zero start"
        );

        // The added mass is exactly the budget and the ratios are exactly
        // the designed power law (scaling cancels).
        let perturbed = report.perturbed.clone().into_potential().unwrap();
        assert!(
            (perturbed.l1_coefficient_bound() - 1e-3).abs() < 1e-15,
            "perturbation mass must equal delta, got {}",
            perturbed.l1_coefficient_bound()
        );
        let pair = perturbed.fourier_pair(8);
        assert!(
            (pair.ratio() - 8f64.powf(0.4)).abs() < 1e-12,
            "ratio at n = 8 must be 8^0.4, got {}",
            pair.ratio()
        );
        let slope = report.after.theorem2.trend.unwrap().slope;
        assert!(
            (slope - 0.4).abs() < 1e-10,
            "the rescaled lacunary family keeps its exact slope, got {slope}"
        );
    }

    #[test]
    fn lacunary_start_flips_to_balanced_under_a_tiny_perturbation() {
        let q = Potential::make_counterexample(BcCase::Periodic, 0.3, 0.7, 64).unwrap();
        let report =
            density_demo(&q, BcCase::Periodic, 1e-3, DensityTarget::BasisLike, 64).unwrap();
        assert_eq!(
            report.before.theorem2.verdict,
            Verdict::Consistent,
            "the start shows the lacunary growth: {}",
            report.before.theorem2.reason
        );
        assert_eq!(
            report.after.theorem2.verdict,
            Verdict::Inconclusive,
            "balanced fresh indices swamp the trend: {}",
            report.after.theorem2.reason
        );
        assert!(report.flipped);

        // The perturbation avoided the start's support entirely.
        let perturbed = report.perturbed.clone().into_potential().unwrap();
        for n in [2u32, 4, 8, 16, 32, 64] {
            let before = q.fourier_pair(n);
            let after = perturbed.fourier_pair(n);
            assert_eq!(
                before.alpha, after.alpha,
                "support coefficient alpha_{n} must be untouched"
            );
            assert_eq!(before.beta, after.beta);
        }
        // Fresh indices carry exactly balanced pairs.
        let fresh = perturbed.fourier_pair(6);
        assert!(fresh.alpha.norm() > 0.0);
        assert!((fresh.ratio() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fully_occupied_start_reports_a_direction_collision() {
        // Occupy every even index up to the direction bandwidth plus the
        // largest support shift, so every offset collides.
        let coeffs: Vec<(i64, Complex64)> = (1..=((DIRECTION_BANDWIDTH as i64) + 8))
            .filter(|k| k % 2 == 0)
            .flat_map(|k| {
                [
                    (k, Complex64::new(0.1, 0.0)),
                    (-k, Complex64::new(0.1, 0.0)),
                ]
            })
            .collect();
        let q = Potential::from_coeffs(coeffs);
        let err =
            density_demo(&q, BcCase::Periodic, 1e-3, DensityTarget::NonBasisLike, 64).unwrap_err();
        assert!(
            matches!(err, Error::DirectionCollision { index } if index >= 2),
            "expected a collision with the occupied support, got {err}"
        );
    }

    #[test]
    fn budget_and_window_preconditions_are_enforced() {
        let q = Potential::zero();
        assert!(matches!(
            density_demo(&q, BcCase::Periodic, 0.0, DensityTarget::NonBasisLike, 64),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            density_demo(&q, BcCase::Periodic, 1e-3, DensityTarget::NonBasisLike, 4),
            Err(Error::InvalidParameter(_))
        ));
    }
}
