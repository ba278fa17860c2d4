//! Eigenfunctions and associated functions of the Hill operator on a grid.
//!
//! At an eigenvalue `lambda` of the boundary condition `u(1) = s u(0)`,
//! `u'(1) = s u'(0)`, the eigenfunctions correspond to the kernel of
//! `M(lambda) - s I`. That kernel is one-dimensional for a simple or
//! Jordan-type eigenvalue and all of `C^2` when the monodromy is exactly
//! `s I`; this module materializes the matching one or two grid functions.
//!
//! When the eigenvalue is a Jordan-type double point, the root subspace is
//! completed by an associated function `v` solving the chain equation
//! `v'' - q v + lambda v = u` under the same boundary condition. `v` is
//! constructed from a particular solution with zero Cauchy data plus the
//! homogeneous correction obtained from a minimal-norm solve of
//! `(M - s I) c = -(v_p(1), v_p'(1))`, and is gauged by `<v, u> = 0`, which
//! fixes it uniquely. Its scale is tied to `u` by the chain equation and is
//! therefore not normalized.
//!
//! All samples are produced by stepping the same frozen mesh used for the
//! monodromy matrix, landing exactly on the grid nodes `x_j = j / M`.

use num_complex::Complex64;

use crate::bc::BcCase;
use crate::error::{Error, Result};
use crate::floquet::monodromy::{solution_frequency, PotentialEval};
use crate::floquet::ode::{fixed_step_count, integrate_mesh};
use crate::fourier;
use crate::linalg::small::{kernel_vector, mat2_frobenius, pinv_solve, vec2_norm, Mat2, Vec2};
use crate::potential::Potential;

/// Role of a root function within its chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// Satisfies `-u'' + q u = lambda u` with the boundary condition.
    Eigenfunction,
    /// Satisfies the Jordan chain equation `v'' - q v + lambda v = u`.
    Associated,
}

impl RootKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RootKind::Eigenfunction => "eigenfunction",
            RootKind::Associated => "associated",
        }
    }
}

/// A sampled eigen- or associated function.
#[derive(Debug, Clone)]
pub struct RootFunction {
    pub kind: RootKind,
    pub bc_case: BcCase,
    pub lambda: Complex64,
    /// Samples at `x_j = j / values.len()` for `j = 0 .. values.len()`;
    /// the endpoint `x = 1` is reported separately in `value_end`.
    pub values: Vec<Complex64>,
    /// Derivative at `x = 0`.
    pub derivative_start: Complex64,
    /// Value at `x = 1`; equals `s * values[0]` up to integration error.
    pub value_end: Complex64,
    /// Derivative at `x = 1`.
    pub derivative_end: Complex64,
    /// Grid L2 norm of `values`; 1 for eigenfunctions by construction.
    pub l2_norm: f64,
    /// For an associated function, the eigenfunction it extends.
    pub chain_partner: Option<Box<RootFunction>>,
}

impl RootFunction {
    /// `|u(1) - s u(0)| + |u'(1) - s u'(0)|`, the boundary defect.
    pub fn boundary_defect(&self) -> f64 {
        let s = self.bc_case.monodromy_sign();
        (self.value_end - s * self.values[0]).norm()
            + (self.derivative_end - s * self.derivative_start).norm()
    }
}

/// Tolerances for root-function construction.
#[derive(Debug, Clone)]
pub struct RootFunctionOptions {
    /// Target accuracy of the frozen integration mesh.
    pub ode_tol: f64,
    /// `lambda` is accepted as an eigenvalue when the best kernel residual
    /// of `M - s I` is at most `kernel_tol * (1 + ||M||_F)`.
    pub kernel_tol: f64,
    /// The eigenspace is treated as two-dimensional when
    /// `||M - s I||_F <= degeneracy_tol * (1 + ||M||_F)`.  A pair
    /// splitting `delta` perturbs `M - s I` by about `delta / 2`, so this
    /// threshold also decides how close to its partner an eigenvalue may
    /// sit before the two members become indistinguishable here; it must
    /// stay well above the integration noise (about `ode_tol`) and well
    /// below half the smallest splitting that should be resolved as two
    /// separate members.
    pub degeneracy_tol: f64,
    /// The chain solve must leave a relative residual at most this.
    pub chain_tol: f64,
}

impl Default for RootFunctionOptions {
    fn default() -> Self {
        RootFunctionOptions {
            ode_tol: 1e-12,
            kernel_tol: 1e-6,
            // Three decades above the ode_tol = 1e-12 noise floor, one
            // decade below half the 1e-6 splitting at which pairs are
            // resolved as two separate members.
            degeneracy_tol: 1e-8,
            chain_tol: 1e-6,
        }
    }
}

impl RootFunctionOptions {
    pub fn validate(&self) -> Result<()> {
        if !(1e-14..=1e-3).contains(&self.ode_tol) {
            return Err(Error::InvalidParameter(format!(
                "ode_tol must lie in [1e-14, 1e-3], got {:e}",
                self.ode_tol
            )));
        }
        for (name, value) in [
            ("kernel_tol", self.kernel_tol),
            ("degeneracy_tol", self.degeneracy_tol),
            ("chain_tol", self.chain_tol),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in (0, 1), got {value:e}"
                )));
            }
        }
        Ok(())
    }
}

fn check_grid(q: &Potential, grid_size: usize) -> Result<()> {
    let needed = (2 * q.bandwidth() as usize + 1).max(4);
    if grid_size < needed {
        return Err(Error::GridTooSmall {
            bandwidth: q.bandwidth(),
            needed,
            got: grid_size,
        });
    }
    Ok(())
}

/// Substeps per grid cell so the total step count reaches the accuracy
/// target of [`fixed_step_count`].
fn substeps_for(eval: &PotentialEval, lambda: Complex64, grid_size: usize, ode_tol: f64) -> usize {
    let steps = fixed_step_count(solution_frequency(eval, lambda), ode_tol);
    steps.div_ceil(grid_size).max(1)
}

/// Scale factor taking `values` to unit grid-L2 norm with the
/// largest-modulus sample rotated real-positive - the deterministic gauge
/// shared by all returned eigenfunctions.
fn canonical_grid_scale(values: &[Complex64]) -> Complex64 {
    let norm = fourier::l2_norm(values);
    if norm == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut best = 0;
    let mut best_norm = 0.0;
    for (i, c) in values.iter().enumerate() {
        let m = c.norm_sqr();
        if m > best_norm {
            best_norm = m;
            best = i;
        }
    }
    let pivot = values[best];
    if pivot.norm() == 0.0 {
        return Complex64::new(1.0 / norm, 0.0);
    }
    (pivot / pivot.norm()).conj() / norm
}

/// Raw grid data of one solution before gauge fixing.
struct RawFunction {
    values: Vec<Complex64>,
    derivative_start: Complex64,
    value_end: Complex64,
    derivative_end: Complex64,
}

impl RawFunction {
    fn scaled(mut self, factor: Complex64) -> Self {
        for v in &mut self.values {
            *v *= factor;
        }
        self.derivative_start *= factor;
        self.value_end *= factor;
        self.derivative_end *= factor;
        self
    }

    fn subtract(&mut self, coeff: Complex64, other: &RawFunction) {
        for (v, o) in self.values.iter_mut().zip(&other.values) {
            *v -= coeff * o;
        }
        self.derivative_start -= coeff * other.derivative_start;
        self.value_end -= coeff * other.value_end;
        self.derivative_end -= coeff * other.derivative_end;
    }

    fn into_root(self, kind: RootKind, bc: BcCase, lambda: Complex64) -> RootFunction {
        let l2_norm = fourier::l2_norm(&self.values);
        RootFunction {
            kind,
            bc_case: bc,
            lambda,
            values: self.values,
            derivative_start: self.derivative_start,
            value_end: self.value_end,
            derivative_end: self.derivative_end,
            l2_norm,
            chain_partner: None,
        }
    }
}

/// Node records of the fundamental system `(u1, u1', u2, u2')`.
struct FundamentalRun {
    /// `rows[j]` is the state at `x = j / grid_size`, `j = 0 ..= grid_size`.
    rows: Vec<[Complex64; 4]>,
}

impl FundamentalRun {
    fn integrate(
        eval: &PotentialEval,
        lambda: Complex64,
        grid_size: usize,
        substeps: usize,
    ) -> Self {
        let mut y = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        let mut rows = Vec::with_capacity(grid_size + 1);
        integrate_mesh(
            |x, y: &[Complex64], dy: &mut [Complex64]| {
                let a = eval.eval(x) - lambda;
                dy[0] = y[1];
                dy[1] = a * y[0];
                dy[2] = y[3];
                dy[3] = a * y[2];
            },
            grid_size,
            substeps,
            &mut y,
            |_, state| rows.push([state[0], state[1], state[2], state[3]]),
        );
        FundamentalRun { rows }
    }

    fn monodromy(&self) -> Mat2 {
        let end = self.rows[self.rows.len() - 1];
        [[end[0], end[2]], [end[1], end[3]]]
    }

    /// Grid data of `a * u1 + b * u2` (endpoint row excluded from values).
    fn combine(&self, a: Complex64, b: Complex64) -> RawFunction {
        let cells = self.rows.len() - 1;
        let values = self.rows[..cells]
            .iter()
            .map(|r| a * r[0] + b * r[2])
            .collect();
        let end = self.rows[cells];
        RawFunction {
            values,
            derivative_start: b,
            value_end: a * end[0] + b * end[2],
            derivative_end: a * end[1] + b * end[3],
        }
    }
}

fn shifted_by_sign(m: &Mat2, s: f64) -> Mat2 {
    let sc = Complex64::new(s, 0.0);
    [[m[0][0] - sc, m[0][1]], [m[1][0], m[1][1] - sc]]
}

/// All eigenfunctions of `q` at the eigenvalue `lambda`, sampled on the
/// uniform grid.
///
/// Returns two orthonormal functions when the monodromy at `lambda` is
/// `s I` (a double eigenvalue with full eigenspace) and one otherwise. If
/// `lambda` is not an eigenvalue to within the kernel tolerance, the error
/// reports the achieved boundary-defect residual.
pub fn eigenfunctions(
    q: &Potential,
    bc: BcCase,
    lambda: Complex64,
    grid_size: usize,
    opts: &RootFunctionOptions,
) -> Result<Vec<RootFunction>> {
    opts.validate()?;
    check_grid(q, grid_size)?;
    let eval = PotentialEval::new(q);
    let substeps = substeps_for(&eval, lambda, grid_size, opts.ode_tol);
    let run = FundamentalRun::integrate(&eval, lambda, grid_size, substeps);
    let m = run.monodromy();
    let s = bc.monodromy_sign();
    let shifted = shifted_by_sign(&m, s);
    let scale = 1.0 + mat2_frobenius(&m);

    if mat2_frobenius(&shifted) <= opts.degeneracy_tol * scale {
        // Full two-dimensional eigenspace: return the canonical pair built
        // from the normalized solutions, orthonormalized in grid L2.
        let raw1 = run.combine(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        let mut raw2 = run.combine(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        let overlap = fourier::inner_product(&raw2.values, &raw1.values)
            / fourier::inner_product(&raw1.values, &raw1.values);
        raw2.subtract(overlap, &raw1);
        let scale1 = canonical_grid_scale(&raw1.values);
        let scale2 = canonical_grid_scale(&raw2.values);
        let f1 = raw1.scaled(scale1);
        let f2 = raw2.scaled(scale2);
        return Ok(vec![
            f1.into_root(RootKind::Eigenfunction, bc, lambda),
            f2.into_root(RootKind::Eigenfunction, bc, lambda),
        ]);
    }

    let (kernel, residual) = kernel_vector(&shifted);
    let tol = opts.kernel_tol * scale;
    if residual > tol {
        return Err(Error::NotAnEigenvalue { residual, tol });
    }
    let raw = run.combine(kernel[0], kernel[1]);
    let factor = canonical_grid_scale(&raw.values);
    let raw = raw.scaled(factor);
    Ok(vec![raw.into_root(RootKind::Eigenfunction, bc, lambda)])
}

/// The associated function at a Jordan-type double eigenvalue, solving
/// `v'' - q v + lambda v = u` with the boundary condition, gauged by
/// `<v, u> = 0`. The returned function carries its eigenfunction as
/// `chain_partner`.
pub fn associated_function(
    q: &Potential,
    bc: BcCase,
    lambda: Complex64,
    grid_size: usize,
    opts: &RootFunctionOptions,
) -> Result<RootFunction> {
    opts.validate()?;
    check_grid(q, grid_size)?;
    let eval = PotentialEval::new(q);
    let substeps = substeps_for(&eval, lambda, grid_size, opts.ode_tol);
    let s = bc.monodromy_sign();

    // First pass: fundamental system alone, to classify the point and
    // extract the eigenfunction's Cauchy data. The mesh matches the second
    // pass exactly, so both passes see bitwise-identical monodromy data.
    let probe = FundamentalRun::integrate(&eval, lambda, grid_size, substeps);
    let m = probe.monodromy();
    let shifted = shifted_by_sign(&m, s);
    let scale = 1.0 + mat2_frobenius(&m);
    if mat2_frobenius(&shifted) <= opts.degeneracy_tol * scale {
        return Err(Error::NoAssociatedFunction {
            class: "double-semisimple",
        });
    }
    let (kernel, residual) = kernel_vector(&shifted);
    let tol = opts.kernel_tol * scale;
    if residual > tol {
        return Err(Error::NotAnEigenvalue { residual, tol });
    }
    let (a, b) = (kernel[0], kernel[1]);

    // Second pass: co-integrate the particular solution v_p driven by the
    // eigenfunction u = a u1 + b u2, with zero initial Cauchy data.
    let mut y = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    let mut rows: Vec<[Complex64; 6]> = Vec::with_capacity(grid_size + 1);
    integrate_mesh(
        |x, y: &[Complex64], dy: &mut [Complex64]| {
            let w = eval.eval(x) - lambda;
            dy[0] = y[1];
            dy[1] = w * y[0];
            dy[2] = y[3];
            dy[3] = w * y[2];
            dy[4] = y[5];
            dy[5] = w * y[4] + a * y[0] + b * y[2];
        },
        grid_size,
        substeps,
        &mut y,
        |_, state| {
            rows.push([state[0], state[1], state[2], state[3], state[4], state[5]]);
        },
    );
    let end = rows[grid_size];

    // Boundary fix: (M - s I) c = -(v_p(1), v_p'(1)). The kernel direction
    // of M - s I is excluded from the minimal-norm solve by flooring at the
    // geometric mean of the two singular scales, so noise in the
    // (near-)singular direction cannot inflate the correction.
    let defect: Vec2 = [-end[4], -end[5]];
    let floor = (mat2_frobenius(&shifted) * residual).sqrt();
    let (correction, chain_residual) = pinv_solve(&shifted, &defect, floor);
    let chain_tol = opts.chain_tol * (1.0 + vec2_norm(&defect));
    if chain_residual > chain_tol {
        return Err(Error::ChainUnsolvable {
            residual: chain_residual,
            tol: chain_tol,
        });
    }

    let u_raw = FundamentalRun {
        rows: rows.iter().map(|r| [r[0], r[1], r[2], r[3]]).collect(),
    }
    .combine(a, b);
    let v_values: Vec<Complex64> = rows[..grid_size]
        .iter()
        .map(|r| r[4] + correction[0] * r[0] + correction[1] * r[2])
        .collect();
    let v_raw = RawFunction {
        values: v_values,
        derivative_start: correction[1],
        value_end: end[4] + correction[0] * end[0] + correction[1] * end[2],
        derivative_end: end[5] + correction[0] * end[1] + correction[1] * end[3],
    };

    // Normalize u canonically; the chain equation forces v to carry the
    // same factor. Then project u out of v: the gauge <v, u> = 0 picks one
    // member of the affine family v + t u.
    let factor = canonical_grid_scale(&u_raw.values);
    let u_fn = u_raw
        .scaled(factor)
        .into_root(RootKind::Eigenfunction, bc, lambda);
    let mut v_raw = v_raw.scaled(factor);
    let overlap = fourier::inner_product(&v_raw.values, &u_fn.values);
    let u_as_raw = RawFunction {
        values: u_fn.values.clone(),
        derivative_start: u_fn.derivative_start,
        value_end: u_fn.value_end,
        derivative_end: u_fn.derivative_end,
    };
    v_raw.subtract(overlap, &u_as_raw);

    let mut v_fn = v_raw.into_root(RootKind::Associated, bc, lambda);
    v_fn.chain_partner = Some(Box::new(u_fn));
    Ok(v_fn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet::pairs::{find_pair, PairClass, PairSearchOptions};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Grid L2 norm of the eigen-equation residual `-u'' + q u - lambda u`.
    fn eigen_residual(q: &Potential, f: &RootFunction) -> f64 {
        let grid = q.evaluate(f.values.len()).unwrap();
        let second = fourier::second_derivative(&f.values, f.bc_case);
        let r: Vec<Complex64> = f
            .values
            .iter()
            .zip(&second)
            .zip(&grid)
            .map(|((u, upp), qx)| -upp + qx * u - f.lambda * u)
            .collect();
        fourier::l2_norm(&r)
    }

    #[test]
    fn free_double_eigenvalue_yields_two_orthonormal_eigenfunctions() {
        let q = Potential::zero();
        let lambda = c(BcCase::Periodic.rho(1), 0.0);
        let fns = eigenfunctions(
            &q,
            BcCase::Periodic,
            lambda,
            64,
            &RootFunctionOptions::default(),
        )
        .unwrap();
        assert_eq!(fns.len(), 2, "monodromy = I must produce a full eigenpair");
        for f in &fns {
            assert!(
                (f.l2_norm - 1.0).abs() < 1e-10,
                "eigenfunctions are unit normalized"
            );
            assert!(
                eigen_residual(&q, f) < 1e-6 * (1.0 + lambda.norm()),
                "eigen-equation residual too large"
            );
            assert!(
                f.boundary_defect() < 1e-8,
                "periodicity defect {} exceeds tolerance",
                f.boundary_defect()
            );
        }
        let overlap = fourier::inner_product(&fns[0].values, &fns[1].values);
        assert!(
            overlap.norm() < 1e-10,
            "the two eigenfunctions must be orthogonal, got <u1, u2> = {overlap}"
        );
    }

    #[test]
    fn antiperiodic_free_pair_satisfies_its_boundary_condition() {
        let q = Potential::zero();
        let lambda = c(BcCase::Antiperiodic.rho(0), 0.0); // pi^2
        let fns = eigenfunctions(
            &q,
            BcCase::Antiperiodic,
            lambda,
            64,
            &RootFunctionOptions::default(),
        )
        .unwrap();
        assert_eq!(fns.len(), 2);
        for f in &fns {
            assert!(
                (f.value_end + f.values[0]).norm() < 1e-8,
                "antiperiodic functions must flip sign across the period"
            );
            assert!(eigen_residual(&q, f) < 1e-6 * (1.0 + lambda.norm()));
        }
    }

    #[test]
    fn separated_eigenvalue_yields_one_unit_eigenfunction() {
        let a = 0.1;
        let q = Potential::from_coeffs([(2, c(a, 0.0)), (-2, c(a, 0.0))]);
        let pair = find_pair(&q, BcCase::Periodic, 1, &PairSearchOptions::default()).unwrap();
        assert_eq!(pair.classification, PairClass::Separated);
        let fns = eigenfunctions(
            &q,
            BcCase::Periodic,
            pair.lambda_minus,
            128,
            &RootFunctionOptions::default(),
        )
        .unwrap();
        assert_eq!(
            fns.len(),
            1,
            "a simple eigenvalue has a single eigenfunction"
        );
        let f = &fns[0];
        assert!((f.l2_norm - 1.0).abs() < 1e-10);
        assert!(eigen_residual(&q, f) < 1e-6 * (1.0 + pair.lambda_minus.norm()));
        assert!(f.boundary_defect() < 1e-8);
    }

    #[test]
    fn off_spectrum_lambda_is_rejected_with_residual() {
        let q = Potential::from_coeffs([(1, c(0.1, 0.0)), (-1, c(0.1, 0.0))]);
        let lambda = c(BcCase::Periodic.rho(1) + 5.0, 0.0);
        let err = eigenfunctions(
            &q,
            BcCase::Periodic,
            lambda,
            64,
            &RootFunctionOptions::default(),
        )
        .unwrap_err();
        match err {
            Error::NotAnEigenvalue { residual, tol } => {
                assert!(
                    residual > tol,
                    "rejection must report residual above tolerance"
                );
            }
            other => panic!("expected NotAnEigenvalue, got {other:?}"),
        }
    }

    /// Max-norm gap between the stored chain samples and a fresh, finer
    /// co-integration of `u'' = (q - lambda) u`, `z'' = (q - lambda) z + u`
    /// from the stored Cauchy data. Unlike spectral differentiation, this
    /// measurement is insensitive to the tiny boundary jump the numerically
    /// refined double point leaves in `v`.
    fn chain_reintegration_error(q: &Potential, v: &RootFunction) -> f64 {
        let u = v.chain_partner.as_ref().expect("chain partner present");
        let grid_size = v.values.len();
        let eval = PotentialEval::new(q);
        let lambda = v.lambda;
        let substeps = substeps_for(&eval, lambda, grid_size, 1e-13);
        let mut y = [
            u.values[0],
            u.derivative_start,
            v.values[0],
            v.derivative_start,
        ];
        let mut err: f64 = 0.0;
        integrate_mesh(
            |x, y: &[Complex64], dy: &mut [Complex64]| {
                let w = eval.eval(x) - lambda;
                dy[0] = y[1];
                dy[1] = w * y[0];
                dy[2] = y[3];
                dy[3] = w * y[2] + y[0];
            },
            grid_size,
            substeps,
            &mut y,
            |j, state| {
                if j < grid_size {
                    err = err.max((state[0] - u.values[j]).norm());
                    err = err.max((state[2] - v.values[j]).norm());
                } else {
                    err = err.max((state[2] - v.value_end).norm());
                    err = err.max((state[3] - v.derivative_end).norm());
                }
            },
        );
        err
    }

    #[test]
    fn jordan_double_point_gets_an_associated_function() {
        // One-sided coupling produces a defective double eigenvalue.
        let q = Potential::from_coeffs([(-2, c(0.1, 0.0))]);
        let pair = find_pair(&q, BcCase::Periodic, 1, &PairSearchOptions::default()).unwrap();
        assert_eq!(pair.classification, PairClass::DoubleJordan);
        let lambda = pair.lambda_minus;
        let v = associated_function(
            &q,
            BcCase::Periodic,
            lambda,
            128,
            &RootFunctionOptions::default(),
        )
        .unwrap();
        let u = v
            .chain_partner
            .as_ref()
            .expect("associated function carries its chain partner");

        // The eigenfunction half of the chain.
        assert!((u.l2_norm - 1.0).abs() < 1e-10);
        assert!(eigen_residual(&q, u) < 1e-6 * (1.0 + lambda.norm()));
        assert!(u.boundary_defect() < 1e-8);

        // Chain equation v'' - q v + lambda v = u: every stored sample must
        // be reproduced by re-integrating the chain system from the stored
        // Cauchy data on a finer mesh.
        let chain_err = chain_reintegration_error(&q, &v);
        assert!(
            chain_err < 1e-8 * (1.0 + v.l2_norm),
            "chain samples drift {chain_err} from an independent integration"
        );

        // Gauge and boundary condition of the associated function. The
        // boundary defect is limited by how precisely the double point was
        // located, which the chain solve tolerance also reflects.
        let overlap = fourier::inner_product(&v.values, &u.values);
        assert!(
            overlap.norm() < 1e-10,
            "gauge <v, u> = 0 violated: {overlap}"
        );
        assert!(
            v.boundary_defect() < 1e-6 * (1.0 + v.l2_norm),
            "associated function periodicity defect {} too large",
            v.boundary_defect()
        );
    }

    #[test]
    fn semisimple_double_point_has_no_associated_function() {
        let q = Potential::zero();
        let lambda = c(BcCase::Periodic.rho(1), 0.0);
        let err = associated_function(
            &q,
            BcCase::Periodic,
            lambda,
            64,
            &RootFunctionOptions::default(),
        )
        .unwrap_err();
        match err {
            Error::NoAssociatedFunction { class } => assert_eq!(class, "double-semisimple"),
            other => panic!("expected NoAssociatedFunction, got {other:?}"),
        }
    }

    #[test]
    fn simple_eigenvalue_chain_is_unsolvable() {
        let a = 0.2;
        let q = Potential::from_coeffs([(2, c(a, 0.0)), (-2, c(a, 0.0))]);
        let pair = find_pair(&q, BcCase::Periodic, 1, &PairSearchOptions::default()).unwrap();
        let err = associated_function(
            &q,
            BcCase::Periodic,
            pair.lambda_minus,
            64,
            &RootFunctionOptions::default(),
        )
        .unwrap_err();
        assert!(
            matches!(err, Error::ChainUnsolvable { .. }),
            "a simple eigenvalue admits no associated function, got {err:?}"
        );
    }

    #[test]
    fn undersized_grid_is_rejected() {
        let q = Potential::make_counterexample(BcCase::Periodic, 0.3, 0.7, 8).unwrap();
        let err = eigenfunctions(
            &q,
            BcCase::Periodic,
            c(1.0, 0.0),
            10,
            &RootFunctionOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::GridTooSmall { .. }));
    }

    #[test]
    fn construction_is_deterministic() {
        let q = Potential::from_coeffs([(-2, c(0.1, 0.0))]);
        let pair = find_pair(&q, BcCase::Periodic, 1, &PairSearchOptions::default()).unwrap();
        let mk = || {
            associated_function(
                &q,
                BcCase::Periodic,
                pair.lambda_minus,
                64,
                &RootFunctionOptions::default(),
            )
            .unwrap()
        };
        let v1 = mk();
        let v2 = mk();
        assert_eq!(
            v1.values, v2.values,
            "identical inputs must give bitwise-identical output"
        );
    }
}
