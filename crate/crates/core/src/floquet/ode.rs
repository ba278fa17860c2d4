//! Dormand-Prince 5(4) integration of complex first-order systems.
//!
//! Three driving modes share one Runge-Kutta core:
//!
//! * [`integrate_adaptive`] - embedded 5(4) error control with step
//!   rejection, used where accuracy per cost matters and the result is a
//!   single endpoint state (discriminant evaluation at one `lambda`).
//! * [`integrate_fixed`] - a frozen uniform mesh with no error control.
//!   Root searches differentiate the discriminant numerically in `lambda`,
//!   and an adaptive mesh would re-grid between nearby `lambda` values,
//!   turning the numerical discriminant into a jagged function whose
//!   central differences are dominated by re-gridding noise. On a frozen
//!   mesh the computed discriminant is an analytic function of `lambda`
//!   and Newton iterations converge to machine-consistent roots.
//! * [`integrate_mesh`] - the fixed stepper with an observer invoked at
//!   the nodes of a uniform partition, so solution samples land exactly on
//!   the evaluation grid without interpolation.
//!
//! State vectors are slices of `Complex64`; each complex component is
//! treated as a single quantity in the error norm.

use num_complex::Complex64;

use crate::error::{Error, Result};

// Dormand-Prince coefficients (the classic DOPRI5 tableau).
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// Difference between the 5th-order weights and the embedded 4th-order ones.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Controls for the adaptive integrator.
#[derive(Debug, Clone)]
pub struct AdaptiveOptions {
    /// Relative tolerance per component.
    pub rtol: f64,
    /// Absolute tolerance per component.
    pub atol: f64,
    /// Hard cap on accepted plus rejected steps.
    pub max_steps: usize,
    /// Initial step size; a conservative fraction of the interval if absent.
    pub h_init: Option<f64>,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        AdaptiveOptions {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 1_000_000,
            h_init: None,
        }
    }
}

/// Step counts from one adaptive run.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Scratch buffers for one Runge-Kutta step, reused across steps.
struct Stages {
    k: [Vec<Complex64>; 7],
    y_stage: Vec<Complex64>,
    y_new: Vec<Complex64>,
}

impl Stages {
    fn new(dim: usize) -> Self {
        Stages {
            k: std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); dim]),
            y_stage: vec![Complex64::new(0.0, 0.0); dim],
            y_new: vec![Complex64::new(0.0, 0.0); dim],
        }
    }
}

/// One Dormand-Prince step from `(x, y)` with size `h`, assuming `k[0]`
/// already holds `f(x, y)`. Fills `y_new` with the 5th-order solution and
/// `k[6]` with the slope there (the FSAL stage).
fn dp_step<F>(f: &mut F, x: f64, y: &[Complex64], h: f64, st: &mut Stages)
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let dim = y.len();
    for i in 0..dim {
        st.y_stage[i] = y[i] + h * A21 * st.k[0][i];
    }
    let (k0, rest) = st.k.split_at_mut(1);
    let k0 = &k0[0];
    f(x + C2 * h, &st.y_stage, &mut rest[0]);
    let k1 = &rest[0];
    for i in 0..dim {
        st.y_stage[i] = y[i] + h * (A31 * k0[i] + A32 * k1[i]);
    }
    let (k1s, rest) = rest.split_at_mut(1);
    let k1 = &k1s[0];
    f(x + C3 * h, &st.y_stage, &mut rest[0]);
    let k2 = &rest[0];
    for i in 0..dim {
        st.y_stage[i] = y[i] + h * (A41 * k0[i] + A42 * k1[i] + A43 * k2[i]);
    }
    let (k2s, rest) = rest.split_at_mut(1);
    let k2 = &k2s[0];
    f(x + C4 * h, &st.y_stage, &mut rest[0]);
    let k3 = &rest[0];
    for i in 0..dim {
        st.y_stage[i] = y[i] + h * (A51 * k0[i] + A52 * k1[i] + A53 * k2[i] + A54 * k3[i]);
    }
    let (k3s, rest) = rest.split_at_mut(1);
    let k3 = &k3s[0];
    f(x + C5 * h, &st.y_stage, &mut rest[0]);
    let k4 = &rest[0];
    for i in 0..dim {
        st.y_stage[i] =
            y[i] + h * (A61 * k0[i] + A62 * k1[i] + A63 * k2[i] + A64 * k3[i] + A65 * k4[i]);
    }
    let (k4s, rest) = rest.split_at_mut(1);
    let k4 = &k4s[0];
    f(x + h, &st.y_stage, &mut rest[0]);
    let k5 = &rest[0];
    for i in 0..dim {
        st.y_new[i] = y[i] + h * (B1 * k0[i] + B3 * k2[i] + B4 * k3[i] + B5 * k4[i] + B6 * k5[i]);
    }
    f(x + h, &st.y_new, &mut rest[1]);
}

/// Weighted RMS error of the embedded pair over the step just taken.
fn error_norm(y: &[Complex64], st: &Stages, h: f64, atol: f64, rtol: f64) -> f64 {
    let dim = y.len();
    let mut sum = 0.0;
    for i in 0..dim {
        let e = h
            * (E1 * st.k[0][i]
                + E3 * st.k[2][i]
                + E4 * st.k[3][i]
                + E5 * st.k[4][i]
                + E6 * st.k[5][i]
                + E7 * st.k[6][i]);
        let sc = atol + rtol * y[i].norm().max(st.y_new[i].norm());
        sum += e.norm_sqr() / (sc * sc);
    }
    (sum / dim as f64).sqrt()
}

/// Integrate `y' = f(x, y)` from `x0` to `x1 > x0` in place with embedded
/// 5(4) step control. Returns step statistics.
pub fn integrate_adaptive<F>(
    mut f: F,
    x0: f64,
    x1: f64,
    y: &mut [Complex64],
    opts: &AdaptiveOptions,
) -> Result<IntegrationStats>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    assert!(x1 > x0, "integration interval must be forward and nonempty");
    assert!(!y.is_empty(), "state must have at least one component");
    let mut st = Stages::new(y.len());
    let mut x = x0;
    let mut h = opts.h_init.unwrap_or((x1 - x0) * 1e-2).min(x1 - x0);
    let mut stats = IntegrationStats::default();
    let mut fac_max = 5.0;

    f(x, y, &mut st.k[0]);
    loop {
        if x >= x1 {
            return Ok(stats);
        }
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(Error::StepLimitExceeded(opts.max_steps));
        }
        let h_min = 16.0 * f64::EPSILON * x.abs().max(1.0);
        if h < h_min {
            return Err(Error::StepSizeUnderflow { x });
        }
        let last = x + h >= x1;
        let h_step = if last { x1 - x } else { h };

        dp_step(&mut f, x, y, h_step, &mut st);
        let err = error_norm(y, &st, h_step, opts.atol, opts.rtol);

        if err <= 1.0 {
            stats.accepted += 1;
            x = if last { x1 } else { x + h_step };
            y.copy_from_slice(&st.y_new);
            st.k.swap(0, 6); // FSAL: the last stage is the next first one.
            let factor = if err == 0.0 {
                fac_max
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, fac_max)
            };
            h = h_step * factor;
            fac_max = 5.0;
        } else {
            stats.rejected += 1;
            h = h_step * (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
            fac_max = 1.0; // no growth immediately after a rejection
        }
    }
}

/// Integrate with exactly `n_steps` uniform 5th-order steps, no error
/// control. Deterministic in the step count alone, which is what root
/// searches freeze per search.
pub fn integrate_fixed<F>(mut f: F, x0: f64, x1: f64, y: &mut [Complex64], n_steps: usize)
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    assert!(x1 > x0, "integration interval must be forward and nonempty");
    assert!(n_steps > 0, "at least one step is required");
    let mut st = Stages::new(y.len());
    let span = x1 - x0;
    for step in 0..n_steps {
        let xa = x0 + span * (step as f64 / n_steps as f64);
        let xb = if step + 1 == n_steps {
            x1
        } else {
            x0 + span * ((step + 1) as f64 / n_steps as f64)
        };
        let h = xb - xa;
        f(xa, y, &mut st.k[0]);
        dp_step(&mut f, xa, y, h, &mut st);
        y.copy_from_slice(&st.y_new);
    }
}

/// Integrate over `[0, 1]` split into `cells` uniform cells with `substeps`
/// fixed steps per cell, invoking `observe(j, y)` at every node `x = j/cells`
/// including both endpoints. Node states are produced by stepping exactly
/// onto the node, never by interpolation.
pub fn integrate_mesh<F, G>(
    mut f: F,
    cells: usize,
    substeps: usize,
    y: &mut [Complex64],
    mut observe: G,
) where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
    G: FnMut(usize, &[Complex64]),
{
    assert!(cells > 0 && substeps > 0);
    observe(0, y);
    for j in 0..cells {
        let xa = j as f64 / cells as f64;
        let xb = (j + 1) as f64 / cells as f64;
        integrate_fixed(&mut f, xa, xb, y, substeps);
        observe(j + 1, y);
    }
}

/// Number of uniform 5th-order steps that brings the global error of an
/// oscillation at angular frequency `omega` down to about `tol` over a unit
/// interval. Derived from the leading truncation term of the 5th-order
/// solution: global error ~ 4e-4 * omega * (omega / n)^5.
pub fn fixed_step_count(omega: f64, tol: f64) -> usize {
    let omega = omega.max(1.0);
    let tol = tol.clamp(1e-15, 1e-2);
    let n = omega.powf(1.2) * (1e-3 / tol).powf(0.2);
    (n.ceil() as usize).max(50)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adaptive_matches_exponential_decay() {
        let mut y = [Complex64::new(1.0, 0.0)];
        let opts = AdaptiveOptions::default();
        let stats = integrate_adaptive(|_, y, dy| dy[0] = -y[0], 0.0, 1.0, &mut y, &opts).unwrap();
        let exact = (-1.0f64).exp();
        assert!(
            (y[0].re - exact).abs() < 5e-9 && y[0].im.abs() < 1e-14,
            "e^-1 should be reproduced to tolerance, got {} after {} steps",
            y[0],
            stats.accepted
        );
    }

    #[test]
    fn adaptive_tracks_complex_rotation_without_amplitude_drift() {
        // y' = i w y has |y| constant; the 5(4) pair must hold both the
        // modulus and the phase at the requested tolerance.
        let w = 40.0;
        let mut y = [Complex64::new(1.0, 0.0)];
        let opts = AdaptiveOptions {
            rtol: 1e-11,
            atol: 1e-13,
            ..AdaptiveOptions::default()
        };
        integrate_adaptive(
            |_, y, dy| dy[0] = Complex64::new(0.0, w) * y[0],
            0.0,
            1.0,
            &mut y,
            &opts,
        )
        .unwrap();
        let exact = Complex64::from_polar(1.0, w);
        assert!(
            (y[0] - exact).norm() < 1e-8,
            "rotation endpoint off by {}",
            (y[0] - exact).norm()
        );
    }

    #[test]
    fn harmonic_oscillator_returns_to_start_after_full_period() {
        // u'' = -(2 pi)^2 u over one unit interval is exactly periodic.
        let w = 2.0 * std::f64::consts::PI;
        let mut y = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        integrate_adaptive(
            |_, y, dy| {
                dy[0] = y[1];
                dy[1] = -Complex64::new(w * w, 0.0) * y[0];
            },
            0.0,
            1.0,
            &mut y,
            &AdaptiveOptions::default(),
        )
        .unwrap();
        assert!((y[0] - Complex64::new(1.0, 0.0)).norm() < 1e-7);
        assert!(y[1].norm() < 1e-7 * w);
    }

    #[test]
    fn fixed_step_error_shrinks_at_fifth_order() {
        let w = 2.0 * std::f64::consts::PI;
        let run = |n: usize| {
            let mut y = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
            integrate_fixed(
                |_, y, dy| {
                    dy[0] = y[1];
                    dy[1] = -Complex64::new(w * w, 0.0) * y[0];
                },
                0.0,
                1.0,
                &mut y,
                n,
            );
            (y[0] - Complex64::new(1.0, 0.0)).norm()
        };
        let e40 = run(40);
        let e80 = run(80);
        let order = (e40 / e80).log2();
        assert!(
            order > 4.5,
            "doubling the step count should gain about 2^5, observed order {order:.2}"
        );
    }

    #[test]
    fn step_limit_is_enforced() {
        let mut y = [Complex64::new(1.0, 0.0)];
        let opts = AdaptiveOptions {
            max_steps: 3,
            ..AdaptiveOptions::default()
        };
        let err = integrate_adaptive(
            |_, y, dy| dy[0] = Complex64::new(0.0, 500.0) * y[0],
            0.0,
            1.0,
            &mut y,
            &opts,
        )
        .unwrap_err();
        assert!(matches!(err, Error::StepLimitExceeded(3)));
    }

    #[test]
    fn mesh_observer_sees_every_node_and_matches_plain_fixed_run() {
        let w = 5.0;
        let f = |_: f64, y: &[Complex64], dy: &mut [Complex64]| {
            dy[0] = Complex64::new(0.0, w) * y[0];
        };
        let cells = 16;
        let substeps = 4;
        let mut y = [Complex64::new(1.0, 0.0)];
        let mut seen = Vec::new();
        integrate_mesh(f, cells, substeps, &mut y, |j, state| {
            seen.push((j, state[0]));
        });
        assert_eq!(seen.len(), cells + 1, "observer must fire at every node");
        assert_eq!(seen[0].1, Complex64::new(1.0, 0.0));
        let mut y2 = [Complex64::new(1.0, 0.0)];
        integrate_fixed(f, 0.0, 1.0, &mut y2, cells * substeps);
        assert_eq!(
            y[0], y2[0],
            "mesh mode must reproduce the plain fixed stepper bit for bit"
        );
    }

    #[test]
    fn fixed_step_count_grows_with_frequency_and_accuracy() {
        assert!(fixed_step_count(100.0, 1e-11) > fixed_step_count(10.0, 1e-11));
        assert!(fixed_step_count(50.0, 1e-13) > fixed_step_count(50.0, 1e-9));
        assert!(fixed_step_count(0.0, 1e-10) >= 50);
    }
}
