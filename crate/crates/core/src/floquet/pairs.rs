//! Location and classification of periodic / antiperiodic eigenvalue pairs.
//!
//! For the Hill operator with potential `q`, the eigenvalues satisfying
//! `u(1) = s u(0)`, `u'(1) = s u'(0)` (`s = +1` periodic, `s = -1`
//! antiperiodic) are the roots of `D(lambda) - 2s` where `D` is the Hill
//! discriminant. For large mode numbers they come in pairs inside disjoint
//! disks around `rho_n`, the free eigenvalue of double multiplicity. Each
//! pair either stays separated, collapses to a double eigenvalue with a
//! two-dimensional eigenspace, or collapses to a double eigenvalue with a
//! Jordan chain - the distinction that drives every basis-property
//! diagnostic in this crate.
//!
//! The search freezes one integration mesh per pair (so the numerical
//! discriminant is analytic in `lambda`), Newton-iterates from seeds offset
//! by the first-order splitting radius, deflates the first root out of the
//! function to find the second, and classifies clusters by how far the
//! monodromy matrix at the refined double point is from `s I`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::bc::BcCase;
use crate::error::{Error, Result};
use crate::floquet::monodromy::{discriminant_fixed, monodromy_fixed, PotentialEval};
use crate::floquet::ode::fixed_step_count;
use crate::potential::Potential;

/// How the two eigenvalues of one pair relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    /// Two distinct eigenvalues, each with a one-dimensional eigenspace.
    Separated,
    /// One double eigenvalue whose monodromy is `s I`: two independent
    /// eigenfunctions, no associated function.
    DoubleSemisimple,
    /// One double eigenvalue with a nontrivial Jordan block: a single
    /// eigenfunction plus an associated function.
    DoubleJordan,
}

impl PairClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PairClass::Separated => "separated",
            PairClass::DoubleSemisimple => "double-semisimple",
            PairClass::DoubleJordan => "double-jordan",
        }
    }

    pub fn is_degenerate(self) -> bool {
        !matches!(self, PairClass::Separated)
    }
}

impl std::fmt::Display for PairClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One located pair of eigenvalues.
#[derive(Debug, Clone, Copy)]
pub struct SpectralPair {
    pub bc_case: BcCase,
    /// Pair index within its boundary condition.
    pub n: u32,
    /// Fourier index whose coefficients couple this pair at first order.
    pub coeff_index: u32,
    /// The eigenvalue with the smaller `(re, im)` order; equals
    /// `lambda_plus` for degenerate pairs.
    pub lambda_minus: Complex64,
    pub lambda_plus: Complex64,
    pub classification: PairClass,
}

impl SpectralPair {
    /// `lambda_plus - lambda_minus`; zero for degenerate pairs.
    pub fn splitting(&self) -> Complex64 {
        self.lambda_plus - self.lambda_minus
    }

    /// Midpoint of the pair.
    pub fn center(&self) -> Complex64 {
        (self.lambda_plus + self.lambda_minus) * 0.5
    }
}

/// Tuning knobs for [`find_pair`].
#[derive(Debug, Clone)]
pub struct PairSearchOptions {
    /// Target accuracy of the frozen integration mesh.
    pub ode_tol: f64,
    /// Two roots closer than `pairing_tol * (1 + |center|)` are treated as
    /// one double eigenvalue.
    pub pairing_tol: f64,
    /// A double eigenvalue whose monodromy lies within this Frobenius
    /// distance of `s I` has a two-dimensional eigenspace.
    pub degeneracy_tol: f64,
    /// Upper bound on the search disk radius.
    pub radius_cap: f64,
    /// Newton iteration budget per root.
    pub max_newton_iters: usize,
}

impl Default for PairSearchOptions {
    fn default() -> Self {
        // ode_tol is chosen so that the root scatter of an exact double
        // eigenvalue, about 4 sqrt(rho * eta) for discriminant error eta,
        // stays below the clustering threshold pairing_tol * (1 + rho)
        // down to the lowest pair disk at rho = pi^2.
        PairSearchOptions {
            ode_tol: 1e-12,
            pairing_tol: 1e-6,
            degeneracy_tol: 1e-6,
            radius_cap: 1e4,
            max_newton_iters: 60,
        }
    }
}

impl PairSearchOptions {
    pub fn validate(&self) -> Result<()> {
        if !(1e-14..=1e-3).contains(&self.ode_tol) {
            return Err(Error::InvalidParameter(format!(
                "ode_tol must lie in [1e-14, 1e-3], got {:e}",
                self.ode_tol
            )));
        }
        if !(self.pairing_tol > 0.0 && self.pairing_tol <= 1e-2) {
            return Err(Error::InvalidParameter(format!(
                "pairing_tol must lie in (0, 1e-2], got {:e}",
                self.pairing_tol
            )));
        }
        if !(self.degeneracy_tol > 0.0 && self.degeneracy_tol < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "degeneracy_tol must lie in (0, 1), got {:e}",
                self.degeneracy_tol
            )));
        }
        if !(self.radius_cap > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "radius_cap must be positive, got {:e}",
                self.radius_cap
            )));
        }
        if self.max_newton_iters < 10 {
            return Err(Error::InvalidParameter(format!(
                "max_newton_iters must be at least 10, got {}",
                self.max_newton_iters
            )));
        }
        Ok(())
    }
}

/// Relative step size for complex central differences in `lambda`.
fn diff_step(lambda: Complex64) -> f64 {
    1e-3 * (1.0 + lambda.norm()).sqrt()
}

/// Newton iteration on an analytic function given by `(value, derivative)`
/// evaluations. Converges either by step size or by detecting the rounding
/// plateau: once steps stop shrinking while already small, further
/// iterations only bounce inside the noise ball of the frozen-mesh
/// discriminant. The plateau ratio 0.7 stays above the exact-halving
/// signature of Newton on a double root, so slow linear convergence is
/// never mistaken for a plateau.
fn newton_root<F>(
    mut f: F,
    seed: Complex64,
    center: Complex64,
    radius: f64,
    max_iters: usize,
) -> Option<Complex64>
where
    F: FnMut(Complex64) -> (Complex64, Complex64),
{
    let mut lambda = seed;
    let mut prev_step = f64::INFINITY;
    for _ in 0..max_iters {
        let (value, slope) = f(lambda);
        if !value.is_finite() || !slope.is_finite() || slope.norm() == 0.0 {
            return None;
        }
        let delta = -value / slope;
        if !delta.is_finite() {
            return None;
        }
        let next = lambda + delta;
        if (next - center).norm() > 3.0 * radius + 1.0 {
            return None;
        }
        let scale = 1.0 + next.norm();
        let step = delta.norm();
        if step <= 3e-13 * scale {
            return Some(next);
        }
        if step <= 1e-7 * scale && step > 0.7 * prev_step {
            return Some(next);
        }
        prev_step = step;
        lambda = next;
    }
    None
}

/// Seed directions tried in order: along the splitting axis first, then
/// perpendicular, then diagonals.
const SEED_ANGLES: [f64; 8] = [
    0.0,
    PI,
    0.5 * PI,
    1.5 * PI,
    0.25 * PI,
    1.25 * PI,
    0.75 * PI,
    1.75 * PI,
];

/// Locate and classify the `n`-th eigenvalue pair of `q` under the given
/// boundary condition.
///
/// The search disk is centered at `rho_n + c_0` with radius
/// `min(2 pi^2 (coeff_index + 1), radius_cap)` - half the distance to the
/// neighboring free eigenvalues, so roots of other pairs are excluded.
/// Failure to place two roots in the disk is a [`Error::SearchFailure`]
/// carrying how many were found.
pub fn find_pair(
    q: &Potential,
    bc: BcCase,
    n: u32,
    opts: &PairSearchOptions,
) -> Result<SpectralPair> {
    opts.validate()?;
    if bc == BcCase::Periodic && n == 0 {
        return Err(Error::InvalidParameter(
            "periodic pairs are indexed from n = 1; the lowest periodic eigenvalue is \
             simple and located by find_lowest"
                .into(),
        ));
    }
    let ci = bc.coeff_index(n);
    let rho = bc.rho(n);
    let c0 = q.truncated_coefficient(0);
    let center = Complex64::new(rho, 0.0) + c0;
    let radius = (2.0 * PI * PI * f64::from(ci + 1)).min(opts.radius_cap);

    let eval = PotentialEval::new(q);
    let omega = (center.norm() + radius + eval.l1_bound() + 1.0).sqrt();
    let steps = fixed_step_count(omega, opts.ode_tol);
    let target = 2.0 * bc.monodromy_sign();

    let disc = |lambda: Complex64| discriminant_fixed(&eval, lambda, steps) - target;
    let stencil = |lambda: Complex64| {
        let h = diff_step(lambda);
        let f0 = disc(lambda);
        let fp = disc(lambda + Complex64::new(h, 0.0));
        let fm = disc(lambda - Complex64::new(h, 0.0));
        (f0, fp, fm, h)
    };
    let value_slope = |lambda: Complex64| {
        let (f0, fp, fm, h) = stencil(lambda);
        (f0, (fp - fm) / (2.0 * h))
    };

    // Seed offset: first-order splitting radius of the truncated potential
    // plus a mesh-scale nudge so exactly degenerate pairs are approached
    // from the side rather than from the critical point itself.
    let alpha = q.truncated_coefficient(-i64::from(ci));
    let beta = q.truncated_coefficient(i64::from(ci));
    let offset = (0.3 * (alpha.norm() * beta.norm()).sqrt() + 1e-3 * rho.sqrt()).min(0.5 * radius);

    let mut first = None;
    for angle in SEED_ANGLES {
        let seed = center + Complex64::from_polar(offset, angle);
        if let Some(root) = newton_root(value_slope, seed, center, radius, opts.max_newton_iters) {
            if (root - center).norm() <= radius {
                first = Some(root);
                break;
            }
        }
    }
    let r1 = first.ok_or(Error::SearchFailure {
        bc_case: bc.label(),
        n,
        found: 0,
    })?;

    // Deflate the first root out and search again; the mirrored seed sits
    // where the partner root is expected at first order.
    let deflated_slope = |lambda: Complex64| {
        let (f0, fp, fm, h) = stencil(lambda);
        let g0 = f0 / (lambda - r1);
        let gp = fp / (lambda + Complex64::new(h, 0.0) - r1);
        let gm = fm / (lambda - Complex64::new(h, 0.0) - r1);
        (g0, (gp - gm) / (2.0 * h))
    };
    let mut second = None;
    let mirror = center + (center - r1);
    let mut seeds2 = vec![mirror];
    seeds2.extend(
        SEED_ANGLES
            .iter()
            .map(|&angle| center + Complex64::from_polar(offset, angle)),
    );
    for seed in seeds2 {
        if let Some(root) = newton_root(deflated_slope, seed, center, radius, opts.max_newton_iters)
        {
            if (root - center).norm() <= radius {
                second = Some(root);
                break;
            }
        }
    }
    let r2 = second.ok_or(Error::SearchFailure {
        bc_case: bc.label(),
        n,
        found: 1,
    })?;

    let cluster_tol = opts.pairing_tol * (1.0 + center.norm());
    let midpoint = (r1 + r2) * 0.5;
    // A double eigenvalue is recognized either by the two roots clustering,
    // or - when integration noise scatters them just past the cluster
    // tolerance - by the midpoint monodromy already being s I to within the
    // degeneracy tolerance. The second test cannot absorb a genuinely
    // separated pair: its midpoint deviation is at least
    // split / (4 sqrt(rho)), which exceeds the tolerance whenever the split
    // itself exceeds the clustering threshold.
    let clustered = (r1 - r2).norm() <= cluster_tol
        || monodromy_fixed(&eval, midpoint, steps).deviation_from(bc.monodromy_sign())
            <= opts.degeneracy_tol;
    if clustered {
        // Refine the critical point of the discriminant, where D - 2s has
        // a genuinely simple derivative zero. The stencil is finer than the
        // root search's: the refined point inherits an O(h^2) bias from the
        // central differences, while the frozen mesh keeps the truncation
        // error smooth in lambda so it cancels in the differences; only
        // rounding noise caps how small the step may go.
        let critical_slope = |lambda: Complex64| {
            let h = 0.3 * diff_step(lambda);
            let f0 = disc(lambda);
            let fp = disc(lambda + Complex64::new(h, 0.0));
            let fm = disc(lambda - Complex64::new(h, 0.0));
            let d1 = (fp - fm) / (2.0 * h);
            let d2 = (fp - 2.0 * f0 + fm) / (h * h);
            (d1, d2)
        };
        let lambda_c = newton_root(
            critical_slope,
            midpoint,
            center,
            radius,
            opts.max_newton_iters,
        )
        .unwrap_or(midpoint);
        let m = monodromy_fixed(&eval, lambda_c, steps);
        let classification = if m.deviation_from(bc.monodromy_sign()) <= opts.degeneracy_tol {
            PairClass::DoubleSemisimple
        } else {
            PairClass::DoubleJordan
        };
        return Ok(SpectralPair {
            bc_case: bc,
            n,
            coeff_index: ci,
            lambda_minus: lambda_c,
            lambda_plus: lambda_c,
            classification,
        });
    }

    let (lambda_minus, lambda_plus) = order_pair(r1, r2);
    Ok(SpectralPair {
        bc_case: bc,
        n,
        coeff_index: ci,
        lambda_minus,
        lambda_plus,
        classification: PairClass::Separated,
    })
}

/// Deterministic ordering of a separated pair by `(re, im)`.
fn order_pair(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    match a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im)) {
        std::cmp::Ordering::Greater => (b, a),
        _ => (a, b),
    }
}

/// The lowest periodic eigenvalue, which is simple and sits near `c_0`
/// rather than in any pair disk.
pub fn find_lowest(q: &Potential, opts: &PairSearchOptions) -> Result<Complex64> {
    opts.validate()?;
    let c0 = q.truncated_coefficient(0);
    let center = c0;
    // Halfway to the first pair disk around (2 pi)^2.
    let radius = 2.0 * PI * PI;

    let eval = PotentialEval::new(q);
    let omega = (center.norm() + radius + eval.l1_bound() + 1.0).sqrt();
    let steps = fixed_step_count(omega, opts.ode_tol);
    let disc = |lambda: Complex64| discriminant_fixed(&eval, lambda, steps) - 2.0;
    let value_slope = |lambda: Complex64| {
        let h = diff_step(lambda);
        let f0 = disc(lambda);
        let fp = disc(lambda + Complex64::new(h, 0.0));
        let fm = disc(lambda - Complex64::new(h, 0.0));
        (f0, (fp - fm) / (2.0 * h))
    };
    let spread = 1.0 + c0.norm();
    let mut seeds = vec![center];
    seeds.extend(
        SEED_ANGLES
            .iter()
            .map(|&angle| center + Complex64::from_polar(spread, angle)),
    );
    for seed in seeds {
        if let Some(root) = newton_root(value_slope, seed, center, radius, opts.max_newton_iters) {
            if (root - center).norm() <= radius {
                return Ok(root);
            }
        }
    }
    Err(Error::SearchFailure {
        bc_case: BcCase::Periodic.label(),
        n: 0,
        found: 0,
    })
}

/// First-order prediction of the pair splitting,
/// `2 sqrt(alpha beta)` over the coefficients coupling the pair.
pub fn splitting_first_order(q: &Potential, bc: BcCase, n: u32) -> Complex64 {
    let pair = q.fourier_pair(bc.coeff_index(n));
    2.0 * (pair.alpha * pair.beta).sqrt()
}
