//! Monodromy matrix and Hill discriminant of `-u'' + q u = lambda u`.
//!
//! The monodromy matrix transports Cauchy data across one period:
//!
//! ```text
//! M(lambda) = [ u1(1)  u2(1) ]      u1(0) = 1, u1'(0) = 0
//!             [ u1'(1) u2'(1) ]     u2(0) = 0, u2'(0) = 1
//! ```
//!
//! where `u'' = (q - lambda) u`. Its trace is the Hill discriminant
//! `D(lambda)`; periodic eigenvalues solve `D = 2`, antiperiodic ones
//! `D = -2`, and Liouville's identity forces `det M = 1` identically -
//! a free integration-accuracy check used throughout the tests.
//!
//! Two drivers are exposed: an adaptive one for one-off evaluations, and a
//! frozen-mesh one whose step count is fixed per root search so that the
//! computed discriminant is an analytic function of `lambda` (see the
//! module docs of [`crate::floquet::ode`]).

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::floquet::ode::{self, AdaptiveOptions};
use crate::linalg::small::Mat2;
use crate::potential::Potential;

/// A potential compiled for fast pointwise evaluation.
///
/// Holds the truncated Fourier coefficients (all `|k| <= bandwidth`) and
/// synthesizes `q(x)` with incremental powers of `e^{2 pi i x}`, costing
/// one trig call and `O(bandwidth)` multiplications per point.
#[derive(Debug, Clone)]
pub struct PotentialEval {
    c0: Complex64,
    /// `pos[k-1]` is the coefficient of `e^{2 pi i k x}`.
    pos: Vec<Complex64>,
    /// `neg[k-1]` is the coefficient of `e^{-2 pi i k x}`.
    neg: Vec<Complex64>,
    l1: f64,
}

impl PotentialEval {
    pub fn new(q: &Potential) -> Self {
        let coeffs = q.materialized_coeffs();
        let bandwidth = q.bandwidth() as usize;
        let zero = Complex64::new(0.0, 0.0);
        let mut c0 = zero;
        let mut pos = vec![zero; bandwidth];
        let mut neg = vec![zero; bandwidth];
        for (&k, &c) in &coeffs {
            if k == 0 {
                c0 = c;
            } else if k > 0 {
                pos[(k - 1) as usize] = c;
            } else {
                neg[(-k - 1) as usize] = c;
            }
        }
        let l1 = q.l1_coefficient_bound();
        PotentialEval { c0, pos, neg, l1 }
    }

    /// `q(x)` from the truncated coefficient list.
    pub fn eval(&self, x: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, TAU * x);
        let mut power = Complex64::new(1.0, 0.0);
        let mut sum = self.c0;
        for k in 0..self.pos.len() {
            power *= z;
            sum += self.pos[k] * power + self.neg[k] * power.conj();
        }
        sum
    }

    /// Sum of coefficient moduli; bounds `|q(x)|` on the line.
    pub fn l1_bound(&self) -> f64 {
        self.l1
    }
}

/// The monodromy matrix at one spectral parameter.
#[derive(Debug, Clone, Copy)]
pub struct Monodromy {
    pub lambda: Complex64,
    /// Column `j` holds the endpoint Cauchy data of the `j`-th normalized
    /// solution: `matrix[0][j] = u_j(1)`, `matrix[1][j] = u_j'(1)`.
    pub matrix: Mat2,
}

impl Monodromy {
    /// Hill discriminant `D(lambda) = tr M(lambda)`.
    pub fn discriminant(&self) -> Complex64 {
        self.matrix[0][0] + self.matrix[1][1]
    }

    /// Wronskian determinant; equals 1 up to integration error.
    pub fn det(&self) -> Complex64 {
        self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0]
    }

    /// Frobenius distance from `sign * I`; a pair is an exact double
    /// eigenvalue precisely when this vanishes.
    pub fn deviation_from(&self, sign: f64) -> f64 {
        let s = Complex64::new(sign, 0.0);
        ((self.matrix[0][0] - s).norm_sqr()
            + self.matrix[0][1].norm_sqr()
            + self.matrix[1][0].norm_sqr()
            + (self.matrix[1][1] - s).norm_sqr())
        .sqrt()
    }
}

/// Right-hand side of the first-order system for `(u1, u1', u2, u2')`.
#[inline]
fn hill_rhs(
    eval: &PotentialEval,
    lambda: Complex64,
    x: f64,
    y: &[Complex64],
    dy: &mut [Complex64],
) {
    let a = eval.eval(x) - lambda;
    dy[0] = y[1];
    dy[1] = a * y[0];
    dy[2] = y[3];
    dy[3] = a * y[2];
}

fn initial_state() -> [Complex64; 4] {
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    ]
}

fn state_to_matrix(y: &[Complex64]) -> Mat2 {
    [[y[0], y[2]], [y[1], y[3]]]
}

/// Characteristic angular frequency of solutions at `lambda`, used to size
/// integration meshes: `sqrt(|lambda| + sum |c_k| + 1)`.
pub fn solution_frequency(eval: &PotentialEval, lambda: Complex64) -> f64 {
    (lambda.norm() + eval.l1_bound() + 1.0).sqrt()
}

/// Monodromy matrix by adaptive integration at relative tolerance `tol`.
pub fn monodromy(q: &Potential, lambda: Complex64, tol: f64) -> Result<Monodromy> {
    if !(1e-14..=1e-2).contains(&tol) {
        return Err(Error::InvalidParameter(format!(
            "monodromy tolerance must lie in [1e-14, 1e-2], got {tol:e}"
        )));
    }
    let eval = PotentialEval::new(q);
    let mut y = initial_state();
    let omega = solution_frequency(&eval, lambda);
    let opts = AdaptiveOptions {
        rtol: tol,
        atol: tol * 1e-2,
        h_init: Some((0.5 / omega).min(1.0)),
        ..AdaptiveOptions::default()
    };
    ode::integrate_adaptive(
        |x, y, dy| hill_rhs(&eval, lambda, x, y, dy),
        0.0,
        1.0,
        &mut y,
        &opts,
    )?;
    Ok(Monodromy {
        lambda,
        matrix: state_to_matrix(&y),
    })
}

/// Hill discriminant by adaptive integration.
pub fn discriminant(q: &Potential, lambda: Complex64, tol: f64) -> Result<Complex64> {
    Ok(monodromy(q, lambda, tol)?.discriminant())
}

/// Monodromy matrix on a frozen uniform mesh with `steps` fixed steps.
///
/// Infallible: the fixed stepper has no failure modes. Step counts should
/// come from [`ode::fixed_step_count`] at the largest `|lambda|` the search
/// will touch, and must stay frozen while `lambda` varies.
pub fn monodromy_fixed(eval: &PotentialEval, lambda: Complex64, steps: usize) -> Monodromy {
    let mut y = initial_state();
    ode::integrate_fixed(
        |x, y, dy| hill_rhs(eval, lambda, x, y, dy),
        0.0,
        1.0,
        &mut y,
        steps,
    );
    Monodromy {
        lambda,
        matrix: state_to_matrix(&y),
    }
}

/// Hill discriminant on a frozen mesh.
pub fn discriminant_fixed(eval: &PotentialEval, lambda: Complex64, steps: usize) -> Complex64 {
    monodromy_fixed(eval, lambda, steps).discriminant()
}
