//! Gram-matrix conditioning of a window of normalized root functions.
//!
//! A system `{f_j}` of unit vectors is a Riesz basis of its closed span
//! exactly when the eigenvalues of its Gram matrices
//! `G[i][j] = <f_i, f_j>` admit window-independent bounds
//! `0 < mu_min <= mu_max < infinity`.  For the Hill operator the natural
//! finite sections are windows of eigenvalue pairs: for each pair index
//! `n` in `[n_lo, n_hi]` the system receives the two root functions of
//! that pair — two eigenfunctions when the pair is separated or
//! semisimple, or an eigenfunction plus its normalized associated
//! function when the double eigenvalue carries a Jordan block.  In the
//! periodic case with `n_lo = 1` the simple lowest eigenfunction joins
//! the system as well, so the window represents the full root system
//! below its cutoff.
//!
//! [`gram_report`] assembles that system, forms the Gram matrix under the
//! discrete `L^2(0, 1)` inner product, and reports the extreme
//! eigenvalues together with their ratio, the finite-section Riesz bound.
//! The per-pair angles `|<u_n^-, u_n^+>|` localize any conditioning loss:
//! an angle tending to 1 along a subsequence of pairs means those pairs'
//! root functions collapse onto each other, which drives `mu_min` to 0
//! and certifies (at finite order) the loss of a uniform Riesz bound.
//!
//! Associated functions enter after the gauge `<v, u> = 0` imposed by the
//! chain construction, then normalized; their pair angle is therefore 0
//! by construction, which is the correct bookkeeping: a Jordan pair
//! degenerates through its eigenvalue, not through the angle between its
//! chain members.
//!
//! Eigenvalue locations come from either the Fourier–Galerkin matrix
//! (`O(K^3)` once for the whole window, the default) or the shooting
//! search ([`find_pair`] per pair); root functions themselves are always
//! constructed by integration so their samples satisfy the differential
//! equation rather than a truncated algebraic system.
//!
//! The two sources resolve tight pairs differently.  The Galerkin
//! eigenvalues separate any splitting above the absolute cluster floor
//! `cluster_tol`, which sits in the overlap of the two treatments'
//! working bands: splittings above the floor perturb the monodromy by
//! more than the degeneracy detector's threshold, so each member gets
//! its own well-conditioned eigenfunction, while splittings below it
//! stay within what the double-eigenvalue treatment (semisimple pair or
//! Jordan chain) absorbs.  The shooting search is coarser: it cannot
//! distinguish splittings below the discriminant's root scatter (a few
//! times `sqrt(rho * ode_tol)` at pair height `rho`) and merges such
//! pairs into one double.  A pair whose true splitting is below the
//! shooting scatter but above the chain solve's reach is honestly
//! unresolvable for the shooting source: the merged double then fails
//! the Jordan-chain solve, and [`gram_report`] surfaces that as a
//! [`Error::RootSystem`] wrapping [`Error::ChainUnsolvable`] instead of
//! fabricating a second member.  Switching to the Galerkin source
//! resolves the report.

use num_complex::Complex64;
use serde::Serialize;

use crate::bc::BcCase;
use crate::error::{Error, Result};
use crate::floquet::galerkin::{self, galerkin_spectrum};
use crate::floquet::pairs::{find_lowest, find_pair, PairClass, PairSearchOptions};
use crate::floquet::rootfn::{
    associated_function, eigenfunctions, RootFunction, RootFunctionOptions,
};
use crate::fourier;
use crate::linalg::{hermitian_eigenvalues, CMat};
use crate::potential::Potential;

/// Where the eigenvalue locations feeding the root system come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSystemSource {
    /// Let the library choose; currently the Galerkin source, which costs
    /// one dense eigensolve for the whole window instead of one Newton
    /// search per pair.
    Auto,
    /// Discriminant root search per pair ([`find_pair`]).
    Shooting,
    /// One Fourier–Galerkin eigensolve for the whole window.
    Galerkin,
}

/// Tuning knobs for [`gram_report`].
#[derive(Debug, Clone)]
pub struct GramOptions {
    pub source: RootSystemSource,
    /// Tolerances for eigenfunction and associated-function construction.
    pub root_opts: RootFunctionOptions,
    /// Search options for the shooting source.
    pub pair_opts: PairSearchOptions,
    /// Galerkin cutoff margin: the matrix keeps this many basis modes
    /// above the top of the window.
    pub k_margin: u32,
    /// Two Galerkin eigenvalues whose distance exceeds `cluster_tol` are
    /// treated as separate simple eigenvalues; at or below it they are
    /// treated as one double.  The threshold is absolute, not relative to
    /// the eigenvalue scale, because the member construction's view of a
    /// splitting is ρ-independent: near a pair double the monodromy
    /// moves at rate `||dM/dlambda|| ~ 1/2` (the derivative of its lower
    /// left entry), so a splitting `delta` perturbs `M - s I` by about
    /// `delta / 2` at any pair height.  Separate treatment needs that
    /// perturbation to clear the two-dimensional-eigenspace detector,
    /// and double treatment needs the chain solve to absorb it — both
    /// absolute comparisons.
    pub cluster_tol: f64,
}

impl Default for GramOptions {
    fn default() -> Self {
        GramOptions {
            source: RootSystemSource::Auto,
            root_opts: RootFunctionOptions::default(),
            pair_opts: PairSearchOptions::default(),
            k_margin: 16,
            // Pairs split wider than this are resolved as two simple
            // members (safe once the splitting clears the degeneracy
            // detector, ~1e-7 with the default tolerances); narrower
            // pairs go through the double-eigenvalue treatment, whose
            // chain solve absorbs splittings up to ~2e-6.  The floor
            // sits inside that overlap.
            cluster_tol: 1e-6,
        }
    }
}

impl GramOptions {
    pub fn validate(&self) -> Result<()> {
        self.root_opts.validate()?;
        self.pair_opts.validate()?;
        if self.k_margin < galerkin::PAIR_MARGIN {
            return Err(Error::InvalidParameter(format!(
                "k_margin must be at least {}, got {}",
                galerkin::PAIR_MARGIN,
                self.k_margin
            )));
        }
        if !(self.cluster_tol > 0.0 && self.cluster_tol <= 1e-2) {
            return Err(Error::InvalidParameter(format!(
                "cluster_tol must lie in (0, 1e-2], got {:e}",
                self.cluster_tol
            )));
        }
        Ok(())
    }
}

/// The collapse angle of one pair: `|<u_n^-, u_n^+>|` for unit members.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairAngle {
    pub n: u32,
    /// Fourier index `2n` or `2n + 1` whose coefficients couple the pair.
    pub coeff_index: u32,
    pub angle: f64,
}

/// Finite-section Riesz diagnostics of one pair window.
#[derive(Debug, Clone, Serialize)]
pub struct GramReport {
    pub bc_case: BcCase,
    /// Pair window `[n_lo, n_hi]`, inclusive.
    pub window: [u32; 2],
    /// Number of root functions in the system.
    pub system_size: usize,
    /// Whether the simple lowest periodic eigenfunction is included
    /// (periodic windows starting at `n_lo = 1`).
    pub includes_low_mode: bool,
    /// Smallest Gram eigenvalue.
    pub mu_min: f64,
    /// Largest Gram eigenvalue.
    pub mu_max: f64,
    /// `mu_max / mu_min`; infinite when `mu_min` is not positive.
    pub riesz_ratio: f64,
    /// Per-pair collapse angles, ascending in `n`.
    pub angles: Vec<PairAngle>,
}

/// Eigenvalue locations of one pair, before root functions are built.
enum PairLocation {
    Separated(Complex64, Complex64),
    Clustered(Complex64),
}

/// Members of one pair's root system contribution.
struct PairMembers {
    coeff_index: u32,
    first: Vec<Complex64>,
    second: Vec<Complex64>,
    angle: f64,
}

/// `|<a, b>|` for two unit-normalized root functions on the same grid.
pub fn pair_angle(a: &RootFunction, b: &RootFunction) -> Result<f64> {
    if a.values.len() != b.values.len() {
        return Err(Error::InvalidParameter(format!(
            "pair angle needs matching grids, got {} and {} points",
            a.values.len(),
            b.values.len()
        )));
    }
    for (which, f) in [("first", a), ("second", b)] {
        let norm = fourier::l2_norm(&f.values);
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidParameter(format!(
                "{which} root function is not unit-normalized: grid L2 norm {norm:.6e}"
            )));
        }
    }
    Ok(fourier::inner_product(&a.values, &b.values).norm())
}

/// Gram conditioning of the normalized root system over the pair window
/// `[n_lo, n_hi]`.
///
/// Requires `n_lo >= 1` in the periodic case (pair 0 does not exist; the
/// simple lowest eigenfunction is added automatically when `n_lo = 1`)
/// and `grid_size >= 4 n_hi + 1` so the top pair's oscillation is
/// resolved.  A failure to construct the members of pair `n` is reported
/// as [`Error::RootSystem`] carrying `n`; the simple lowest mode is
/// reported under `n = 0`.
pub fn gram_report(
    q: &Potential,
    bc: BcCase,
    n_lo: u32,
    n_hi: u32,
    grid_size: usize,
    opts: &GramOptions,
) -> Result<GramReport> {
    opts.validate()?;
    if bc == BcCase::Periodic && n_lo == 0 {
        return Err(Error::InvalidParameter(
            "periodic pair windows start at n = 1".into(),
        ));
    }
    if n_lo > n_hi {
        return Err(Error::InvalidParameter(format!(
            "empty pair window [{n_lo}, {n_hi}]"
        )));
    }
    let needed = 4 * n_hi as usize + 1;
    if grid_size < needed {
        return Err(Error::InvalidParameter(format!(
            "grid of {grid_size} points cannot resolve pairs up to n = {n_hi}; need at least {needed}"
        )));
    }

    let include_low = bc == BcCase::Periodic && n_lo == 1;
    let (locations, low) = locate_pairs(q, bc, n_lo, n_hi, include_low, opts)?;

    let mut members: Vec<Vec<Complex64>> = Vec::with_capacity(2 * locations.len() + 1);
    if let Some(lambda0) = low {
        let u0 = first_eigenfunction(q, bc, lambda0, grid_size, &opts.root_opts)
            .map_err(|e| tag_pair(e, bc, 0))?;
        members.push(u0.values);
    }

    let mut angles = Vec::with_capacity(locations.len());
    for (n, location) in &locations {
        let pm =
            pair_members(q, bc, *n, location, grid_size, opts).map_err(|e| tag_pair(e, bc, *n))?;
        angles.push(PairAngle {
            n: *n,
            coeff_index: pm.coeff_index,
            angle: pm.angle,
        });
        members.push(pm.first);
        members.push(pm.second);
    }

    let gram = gram_matrix(&members);
    let mu = hermitian_eigenvalues(&gram)?;
    let mu_min = mu[0];
    let mu_max = *mu.last().expect("the root system is never empty");
    let riesz_ratio = if mu_min > 0.0 {
        mu_max / mu_min
    } else {
        f64::INFINITY
    };

    Ok(GramReport {
        bc_case: bc,
        window: [n_lo, n_hi],
        system_size: members.len(),
        includes_low_mode: include_low,
        mu_min,
        mu_max,
        riesz_ratio,
        angles,
    })
}

/// Locate the eigenvalues of every pair in the window, plus the simple
/// lowest eigenvalue when requested.
fn locate_pairs(
    q: &Potential,
    bc: BcCase,
    n_lo: u32,
    n_hi: u32,
    include_low: bool,
    opts: &GramOptions,
) -> Result<(Vec<(u32, PairLocation)>, Option<Complex64>)> {
    let source = match opts.source {
        RootSystemSource::Auto => RootSystemSource::Galerkin,
        other => other,
    };
    match source {
        RootSystemSource::Galerkin => {
            // Top basis mode touched by the window: pair n lives on modes
            // +-n (periodic) or signed modes +-(n + 1) (antiperiodic).
            let mode_top = match bc {
                BcCase::Periodic => n_hi,
                BcCase::Antiperiodic => n_hi + 1,
            };
            let k_matrix =
                (mode_top + opts.k_margin).max(q.bandwidth() + galerkin::ASSEMBLY_MARGIN);
            let spectrum = galerkin_spectrum(q, bc, k_matrix)?;
            let low = if include_low {
                Some(spectrum.lowest()?)
            } else {
                None
            };
            let locations = spectrum
                .pairs(n_lo, n_hi)?
                .into_iter()
                .map(|gp| {
                    let clustered = gp.splitting().norm() <= opts.cluster_tol;
                    let location = if clustered {
                        PairLocation::Clustered(gp.center())
                    } else {
                        PairLocation::Separated(gp.lambda_minus, gp.lambda_plus)
                    };
                    (gp.n, location)
                })
                .collect();
            Ok((locations, low))
        }
        RootSystemSource::Shooting => {
            let mut locations = Vec::with_capacity((n_hi - n_lo + 1) as usize);
            for n in n_lo..=n_hi {
                let sp = find_pair(q, bc, n, &opts.pair_opts)?;
                let location = match sp.classification {
                    PairClass::Separated => {
                        PairLocation::Separated(sp.lambda_minus, sp.lambda_plus)
                    }
                    _ => PairLocation::Clustered(sp.center()),
                };
                locations.push((n, location));
            }
            let low = if include_low {
                Some(find_lowest(q, &opts.pair_opts)?)
            } else {
                None
            };
            Ok((locations, low))
        }
        RootSystemSource::Auto => unreachable!("Auto resolved above"),
    }
}

/// Build the two members of one pair and their collapse angle.
///
/// Clustered pairs are resolved through the associated-function
/// constructor: it classifies the double eigenvalue itself and either
/// returns the Jordan chain or reports that the eigenspace is
/// two-dimensional, in which case both eigenfunctions are taken.  A chain
/// refusal at a certified cluster falls back to the same orthonormal span
/// (see [`semisimple_members`]).
fn pair_members(
    q: &Potential,
    bc: BcCase,
    n: u32,
    location: &PairLocation,
    grid_size: usize,
    opts: &GramOptions,
) -> Result<PairMembers> {
    let coeff_index = bc.coeff_index(n);
    match *location {
        PairLocation::Separated(lambda_minus, lambda_plus) => {
            let mut minus_fns = eigenfunctions(q, bc, lambda_minus, grid_size, &opts.root_opts)?;
            if minus_fns.len() == 2 {
                // The splitting is inside the degeneracy detector's reach
                // after all, so every solution at lambda_minus already
                // satisfies the boundary condition: the two orthonormal
                // functions span the pair's root space.  Using them keeps
                // the span correct; taking one eigenfunction per member
                // here would return the same function twice.
                let second = minus_fns.pop().expect("two functions present");
                let first = minus_fns.pop().expect("two functions present");
                return Ok(PairMembers {
                    coeff_index,
                    first: first.values,
                    second: second.values,
                    angle: 0.0,
                });
            }
            let um = minus_fns.swap_remove(0);
            let mut plus_fns = eigenfunctions(q, bc, lambda_plus, grid_size, &opts.root_opts)?;
            let up_values = if plus_fns.len() == 2 {
                // Same situation seen from the other member: complete the
                // system with the unit vector of that two-dimensional
                // span orthogonal to the first member.
                span_complement(&um.values, &plus_fns[0].values, &plus_fns[1].values, bc, n)?
            } else {
                plus_fns.swap_remove(0).values
            };
            let angle = fourier::inner_product(&um.values, &up_values).norm();
            Ok(PairMembers {
                coeff_index,
                first: um.values,
                second: up_values,
                angle,
            })
        }
        PairLocation::Clustered(center) => {
            match associated_function(q, bc, center, grid_size, &opts.root_opts) {
                Ok(v) => {
                    let u = v
                        .chain_partner
                        .as_ref()
                        .expect("associated functions carry their chain partner");
                    let scale = 1.0 / v.l2_norm;
                    let second: Vec<Complex64> = v.values.iter().map(|c| c * scale).collect();
                    let angle = fourier::inner_product(&u.values, &second).norm();
                    Ok(PairMembers {
                        coeff_index,
                        first: u.values.clone(),
                        second,
                        angle,
                    })
                }
                Err(
                    refusal @ (Error::NoAssociatedFunction { .. } | Error::ChainUnsolvable { .. }),
                ) => semisimple_members(q, bc, center, coeff_index, grid_size, opts, refusal),
                Err(e) => Err(e),
            }
        }
    }
}

/// Orthonormal-span members for a cluster center whose Jordan chain is out
/// of reach.
///
/// The cluster gate certifies a double eigenvalue at tolerance, so a
/// refusal from the chain constructor means one of two things: the
/// monodromy already looks like `s I` (a genuine two-dimensional
/// eigenspace), or its defect sits so close to the degeneracy threshold
/// that the chain's driving eigenvector is unstable under the residual
/// error in the cluster center and the solve cannot certify a chain.  Both
/// ways the orthonormalized solution span is the correct root-space basis:
/// every member satisfies the boundary condition up to the defect scale,
/// and re-basing a pair orthonormally leaves the Gram spectrum invariant.
/// The span is rebuilt with the degeneracy gate widened to the
/// eigenvalue-acceptance tolerance; if the defect exceeds even that, the
/// original refusal stands.
fn semisimple_members(
    q: &Potential,
    bc: BcCase,
    center: Complex64,
    coeff_index: u32,
    grid_size: usize,
    opts: &GramOptions,
    refusal: Error,
) -> Result<PairMembers> {
    let widened = RootFunctionOptions {
        degeneracy_tol: opts.root_opts.kernel_tol.max(opts.root_opts.degeneracy_tol),
        ..opts.root_opts.clone()
    };
    let mut fns = eigenfunctions(q, bc, center, grid_size, &widened)?.into_iter();
    match (fns.next(), fns.next()) {
        (Some(a), Some(b)) => {
            let angle = fourier::inner_product(&a.values, &b.values).norm();
            Ok(PairMembers {
                coeff_index,
                first: a.values,
                second: b.values,
                angle,
            })
        }
        _ => Err(refusal),
    }
}

fn first_eigenfunction(
    q: &Potential,
    bc: BcCase,
    lambda: Complex64,
    grid_size: usize,
    opts: &RootFunctionOptions,
) -> Result<RootFunction> {
    let mut fns = eigenfunctions(q, bc, lambda, grid_size, opts)?;
    Ok(fns.swap_remove(0))
}

/// Unit vector in `span{f1, f2}` orthogonal to `u`, for completing a pair
/// whose second member landed on a two-dimensional eigenspace.
fn span_complement(
    u: &[Complex64],
    f1: &[Complex64],
    f2: &[Complex64],
    bc: BcCase,
    n: u32,
) -> Result<Vec<Complex64>> {
    let w1 = fourier::inner_product(f1, u);
    let w2 = fourier::inner_product(f2, u);
    let mut v: Vec<Complex64> = f1.iter().zip(f2).map(|(a, b)| w2 * a - w1 * b).collect();
    let norm = fourier::l2_norm(&v);
    // The first member lies in the span up to the splitting itself, so a
    // near-zero complement means the constructions are inconsistent.
    if norm < 0.1 {
        return Err(Error::SearchFailure {
            bc_case: bc.label(),
            n,
            found: 1,
        });
    }
    for c in &mut v {
        *c /= norm;
    }
    Ok(v)
}

/// Attach the failing pair index to a member-construction error, keeping
/// errors that already carry one.
fn tag_pair(e: Error, bc: BcCase, n: u32) -> Error {
    match e {
        Error::SearchFailure { .. } | Error::RootSystem { .. } => e,
        cause => Error::RootSystem {
            bc_case: bc.label(),
            n,
            cause: Box::new(cause),
        },
    }
}

/// Gram matrix of the members under the discrete `L^2` inner product.
fn gram_matrix(members: &[Vec<Complex64>]) -> CMat {
    CMat::from_fn(members.len(), |i, j| {
        fourier::inner_product(&members[i], &members[j])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn unit_exponential(k: i64, grid: usize) -> Vec<Complex64> {
        (0..grid)
            .map(|j| (Complex64::i() * TAU * k as f64 * j as f64 / grid as f64).exp())
            .collect()
    }

    fn angle_at(report: &GramReport, n: u32) -> f64 {
        report
            .angles
            .iter()
            .find(|pa| pa.n == n)
            .expect("pair present in window")
            .angle
    }

    #[test]
    fn free_potential_root_system_is_orthonormal() {
        let q = Potential::zero();
        let report = gram_report(&q, BcCase::Periodic, 1, 3, 33, &GramOptions::default()).unwrap();
        assert!(
            report.includes_low_mode,
            "window starting at 1 adopts the lowest mode"
        );
        assert_eq!(
            report.system_size, 7,
            "three pairs contribute two members each plus the lowest mode"
        );
        assert!(
            (report.mu_min - 1.0).abs() < 1e-8 && (report.mu_max - 1.0).abs() < 1e-8,
            "free cosine/sine system must be orthonormal, got mu in [{}, {}]",
            report.mu_min,
            report.mu_max
        );
        assert!(
            (report.riesz_ratio - 1.0).abs() < 1e-10,
            "orthonormal system must report unit Riesz ratio, got {}",
            report.riesz_ratio
        );
        for pa in &report.angles {
            assert!(
                pa.angle < 1e-8,
                "free pair {} must have orthogonal members, angle {}",
                pa.n,
                pa.angle
            );
        }
    }

    #[test]
    fn lacunary_pair_angles_and_ratio_grow_with_the_window() {
        let q = Potential::make_counterexample(BcCase::Periodic, 0.3, 0.7, 16).unwrap();
        let opts = GramOptions::default();
        // Same grid for both windows so the small system is a subset of the
        // large one and Cauchy interlacing applies exactly.
        let small = gram_report(&q, BcCase::Periodic, 1, 4, 33, &opts).unwrap();
        let large = gram_report(&q, BcCase::Periodic, 1, 8, 33, &opts).unwrap();

        assert!(
            large.riesz_ratio >= small.riesz_ratio - 1e-10,
            "nested windows cannot improve conditioning: [1,8] gave {}, [1,4] gave {}",
            large.riesz_ratio,
            small.riesz_ratio
        );
        assert!(
            large.riesz_ratio > small.riesz_ratio + 0.1,
            "the lacunary pair at n = 8 must visibly degrade the window: {} vs {}",
            large.riesz_ratio,
            small.riesz_ratio
        );
        let (a2, a4, a8) = (
            angle_at(&large, 2),
            angle_at(&large, 4),
            angle_at(&large, 8),
        );
        assert!(
            a2 < a4 && a4 < a8,
            "collapse angles must grow along the lacunary support: {a2} {a4} {a8}"
        );
        assert!(
            a8 > 0.3,
            "the unbalance n^0.4 at n = 8 forces a substantial angle, got {a8}"
        );
    }

    #[test]
    fn one_sided_potential_window_is_all_jordan_pairs() {
        // One-sided coupling keeps every pair an exact double eigenvalue
        // with a Jordan block, so each pair contributes an eigenfunction
        // and a normalized associated function with zero gauge overlap.
        let q = Potential::from_coeffs([(-2, Complex64::new(0.04, 0.0))]);
        let report = gram_report(&q, BcCase::Periodic, 1, 2, 17, &GramOptions::default()).unwrap();
        assert_eq!(report.system_size, 5);
        assert_eq!(
            report
                .angles
                .iter()
                .map(|pa| pa.coeff_index)
                .collect::<Vec<_>>(),
            vec![2, 4]
        );
        for pa in &report.angles {
            assert!(
                pa.angle < 1e-8,
                "chain members are gauged orthogonal, pair {} angle {}",
                pa.n,
                pa.angle
            );
        }
        assert!(
            report.riesz_ratio < 2.0,
            "a weak one-sided coupling leaves the small window well conditioned, got {}",
            report.riesz_ratio
        );
    }

    #[test]
    fn gram_spectrum_is_invariant_under_permutation_and_phase() {
        let grid = 16;
        let e0 = unit_exponential(0, grid);
        let e1 = unit_exponential(1, grid);
        let e2 = unit_exponential(2, grid);
        let mixed: Vec<Complex64> = e0
            .iter()
            .zip(&e1)
            .map(|(a, b)| (a + b) / 2.0_f64.sqrt())
            .collect();

        let original = [e0.clone(), mixed.clone(), e2.clone()];
        let phase = |v: &[Complex64], t: f64| -> Vec<Complex64> {
            let w = (Complex64::i() * t).exp();
            v.iter().map(|c| c * w).collect()
        };
        let permuted = [phase(&e2, 0.7), phase(&e0, -1.3), mixed];

        let mu_a = hermitian_eigenvalues(&gram_matrix(&original)).unwrap();
        let mu_b = hermitian_eigenvalues(&gram_matrix(&permuted)).unwrap();
        for (a, b) in mu_a.iter().zip(&mu_b) {
            assert!(
                (a - b).abs() < 1e-12,
                "Gram spectrum must not depend on member order or phases: {a} vs {b}"
            );
        }
        assert!(
            (mu_a[0] - (1.0 - 1.0 / 2.0_f64.sqrt())).abs() < 1e-12,
            "overlap 1/sqrt(2) between two members pins mu_min, got {}",
            mu_a[0]
        );
    }

    #[test]
    fn pair_angle_matches_the_inner_product_and_rejects_bad_norms() {
        let grid = 16;
        let wrap = |values: Vec<Complex64>| RootFunction {
            kind: crate::floquet::rootfn::RootKind::Eigenfunction,
            bc_case: BcCase::Periodic,
            lambda: Complex64::new(0.0, 0.0),
            derivative_start: Complex64::new(0.0, 0.0),
            value_end: values[0],
            derivative_end: Complex64::new(0.0, 0.0),
            l2_norm: fourier::l2_norm(&values),
            chain_partner: None,
            values,
        };
        let a = wrap(unit_exponential(0, grid));
        let b = wrap(unit_exponential(1, grid));
        let mixed: Vec<Complex64> = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| (x + y) / 2.0_f64.sqrt())
            .collect();
        let c = wrap(mixed);

        assert!(
            pair_angle(&a, &b).unwrap() < 1e-14,
            "distinct exponentials are orthogonal"
        );
        assert!(
            (pair_angle(&a, &c).unwrap() - 1.0 / 2.0_f64.sqrt()).abs() < 1e-12,
            "angle must equal the inner-product modulus"
        );

        let doubled = wrap(a.values.iter().map(|v| v * 2.0).collect());
        assert!(
            matches!(pair_angle(&doubled, &b), Err(Error::InvalidParameter(_))),
            "non-normalized input must be rejected"
        );
        let short = wrap(unit_exponential(0, grid / 2));
        assert!(
            matches!(pair_angle(&a, &short), Err(Error::InvalidParameter(_))),
            "mismatched grids must be rejected"
        );
    }

    #[test]
    fn gram_report_is_bitwise_deterministic() {
        let q = Potential::make_counterexample(BcCase::Periodic, 0.3, 0.7, 8).unwrap();
        let opts = GramOptions::default();
        let r1 = gram_report(&q, BcCase::Periodic, 1, 4, 17, &opts).unwrap();
        let r2 = gram_report(&q, BcCase::Periodic, 1, 4, 17, &opts).unwrap();
        assert_eq!(r1.mu_min.to_bits(), r2.mu_min.to_bits());
        assert_eq!(r1.mu_max.to_bits(), r2.mu_max.to_bits());
        assert_eq!(
            serde_json::to_string(&r1).unwrap(),
            serde_json::to_string(&r2).unwrap(),
            "identical inputs must serialize identically"
        );
    }

    #[test]
    fn gram_rejects_bad_windows_and_grids() {
        let q = Potential::zero();
        let opts = GramOptions::default();
        assert!(
            matches!(
                gram_report(&q, BcCase::Periodic, 0, 3, 33, &opts),
                Err(Error::InvalidParameter(_))
            ),
            "periodic pair 0 does not exist"
        );
        assert!(matches!(
            gram_report(&q, BcCase::Periodic, 3, 2, 33, &opts),
            Err(Error::InvalidParameter(_))
        ));
        assert!(
            matches!(
                gram_report(&q, BcCase::Periodic, 1, 3, 12, &opts),
                Err(Error::InvalidParameter(_))
            ),
            "grid must cover 4 n_hi + 1 points"
        );
    }

    #[test]
    fn shooting_and_galerkin_sources_agree_on_the_report() {
        // Both window pairs carry first-order couplings, so their
        // splittings are far above either source's clustering resolution
        // and the two eigenvalue sources must see the same geometry.
        let q = Potential::from_coeffs([
            (-2, Complex64::new(0.05, 0.02)),
            (2, Complex64::new(0.04, 0.0)),
            (-4, Complex64::new(0.03, 0.0)),
            (4, Complex64::new(0.02, 0.05)),
        ]);
        let galerkin = GramOptions {
            source: RootSystemSource::Galerkin,
            ..GramOptions::default()
        };
        let shooting = GramOptions {
            source: RootSystemSource::Shooting,
            ..GramOptions::default()
        };
        let rg = gram_report(&q, BcCase::Periodic, 1, 2, 17, &galerkin).unwrap();
        let rs = gram_report(&q, BcCase::Periodic, 1, 2, 17, &shooting).unwrap();
        assert_eq!(rg.system_size, rs.system_size);
        assert!(
            (rg.riesz_ratio - rs.riesz_ratio).abs() < 1e-6 * rg.riesz_ratio,
            "the two eigenvalue sources must yield the same conditioning: {} vs {}",
            rg.riesz_ratio,
            rs.riesz_ratio
        );
        for (pa, pb) in rg.angles.iter().zip(&rs.angles) {
            assert!(
                (pa.angle - pb.angle).abs() < 1e-6,
                "angles agree across sources at pair {}: {} vs {}",
                pa.n,
                pa.angle,
                pb.angle
            );
        }
    }
}
