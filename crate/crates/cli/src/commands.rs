//! Command implementations.
//!
//! Every function receives already-parsed, validated inputs, runs the
//! library once, and returns the canonical JSON value plus a CSV
//! projection when the report flattens to a single table (`coeffs`,
//! `spectrum`, `check` margins, `gram` angles, sweep rows).  Nested
//! reports (`density`, emitted potential files) are JSON-only.

use num_complex::Complex64;
use serde_json::{json, Value};

use hillspec::diagnostics::density::density_demo;
use hillspec::diagnostics::gram::gram_report;
use hillspec::diagnostics::theorem::{check_theorem1, check_theorem2};
use hillspec::floquet::galerkin::galerkin_spectrum;
use hillspec::floquet::pairs::{find_pair, PairSearchOptions};
use hillspec::floquet::rootfn::RootFunctionOptions;
use hillspec::{BcCase, DensityTarget, Error, GramOptions, Potential, Result};

use crate::output::csv_f64;

/// One finished command: canonical JSON plus the optional CSV projection.
pub struct CommandOutput {
    pub json: Value,
    pub csv: Option<String>,
}

/// Sampling grid that resolves both the potential band and the pair window.
fn default_grid(q: &Potential, n_hi: u32) -> usize {
    (4 * n_hi as usize + 1)
        .max(2 * q.bandwidth() as usize + 1)
        .max(33)
}

fn complex_pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Coefficient and margin table over `n in [n0, n_max]`.
pub fn coeffs(q: &Potential, bc: BcCase, n0: u32, n_max: u32) -> Result<CommandOutput> {
    if n0 < 1 {
        return Err(Error::InvalidParameter(
            "coefficient tables start at n = 1 (index 0 is the mean)".into(),
        ));
    }
    if n0 > n_max {
        return Err(Error::InvalidParameter(format!(
            "empty index window: n0 = {n0} > n_max = {n_max}"
        )));
    }
    let m = q.smoothness();
    let mut rows = Vec::new();
    let mut csv = String::from(
        "n,alpha_re,alpha_im,beta_re,beta_im,alpha_margin,beta_margin,ratio,ratio_sum\n",
    );
    for n in n0..=n_max {
        let pair = q.fourier_pair(n);
        let weight = f64::from(n).powf(f64::from(m) + 1.0);
        let (alpha_margin, beta_margin) = (pair.alpha.norm() * weight, pair.beta.norm() * weight);
        let ratio = pair.ratio();
        let ratio_sum = ratio + 1.0 / ratio;
        rows.push(json!({
            "n": n,
            "alpha": complex_pair(pair.alpha),
            "beta": complex_pair(pair.beta),
            "alpha_margin": alpha_margin,
            "beta_margin": beta_margin,
            "ratio": ratio,
            "ratio_sum": ratio_sum,
        }));
        csv.push_str(&format!(
            "{n},{},{},{},{},{},{},{},{}\n",
            csv_f64(pair.alpha.re),
            csv_f64(pair.alpha.im),
            csv_f64(pair.beta.re),
            csv_f64(pair.beta.im),
            csv_f64(alpha_margin),
            csv_f64(beta_margin),
            csv_f64(ratio),
            csv_f64(ratio_sum),
        ));
    }
    Ok(CommandOutput {
        json: json!({
            "command": "coeffs",
            "bc_case": bc,
            "smoothness": m,
            "window": [n0, n_max],
            "rows": rows,
        }),
        csv: Some(csv),
    })
}

/// Eigenvalue pair table over `n in [n0, n_max]`; per-index search failures
/// become error rows instead of aborting the run.
pub fn spectrum(
    q: &Potential,
    bc: BcCase,
    n0: u32,
    n_max: u32,
    tol: f64,
    oracle_compare: bool,
) -> Result<CommandOutput> {
    if bc == BcCase::Periodic && n0 < 1 {
        return Err(Error::InvalidParameter(
            "periodic pairs are indexed from n = 1".into(),
        ));
    }
    if n0 > n_max {
        return Err(Error::InvalidParameter(format!(
            "empty pair window: n0 = {n0} > n_max = {n_max}"
        )));
    }
    let opts = PairSearchOptions {
        ode_tol: tol,
        ..PairSearchOptions::default()
    };
    opts.validate()?;

    let k_matrix = n_max + 16;
    let oracle = if oracle_compare {
        let spectrum = galerkin_spectrum(q, bc, k_matrix)?;
        Some(spectrum.pairs(n0, n_max)?)
    } else {
        None
    };

    let mut rows = Vec::new();
    let mut max_deviation: Option<f64> = None;
    let mut csv = String::from(
        "n,coeff_index,classification,lambda_minus_re,lambda_minus_im,\
         lambda_plus_re,lambda_plus_im,splitting_abs",
    );
    if oracle.is_some() {
        csv.push_str(
            ",galerkin_minus_re,galerkin_minus_im,galerkin_plus_re,galerkin_plus_im,\
             relative_deviation",
        );
    }
    csv.push('\n');

    for n in n0..=n_max {
        match find_pair(q, bc, n, &opts) {
            Ok(pair) => {
                let mut row = json!({
                    "n": n,
                    "status": "ok",
                    "coeff_index": pair.coeff_index,
                    "classification": pair.classification.as_str(),
                    "lambda_minus": complex_pair(pair.lambda_minus),
                    "lambda_plus": complex_pair(pair.lambda_plus),
                    "splitting": complex_pair(pair.splitting()),
                });
                let mut csv_row = format!(
                    "{n},{},{},{},{},{},{},{}",
                    pair.coeff_index,
                    pair.classification.as_str(),
                    csv_f64(pair.lambda_minus.re),
                    csv_f64(pair.lambda_minus.im),
                    csv_f64(pair.lambda_plus.re),
                    csv_f64(pair.lambda_plus.im),
                    csv_f64(pair.splitting().norm()),
                );
                if let Some(algebraic) = &oracle {
                    let gp = algebraic[(n - n0) as usize];
                    let scale = 1.0 + gp.center().norm();
                    let deviation = ((pair.lambda_minus - gp.lambda_minus).norm())
                        .max((pair.lambda_plus - gp.lambda_plus).norm())
                        / scale;
                    max_deviation = Some(max_deviation.map_or(deviation, |d| d.max(deviation)));
                    row["galerkin_minus"] = complex_pair(gp.lambda_minus);
                    row["galerkin_plus"] = complex_pair(gp.lambda_plus);
                    row["relative_deviation"] = json!(deviation);
                    csv_row.push_str(&format!(
                        ",{},{},{},{},{}",
                        csv_f64(gp.lambda_minus.re),
                        csv_f64(gp.lambda_minus.im),
                        csv_f64(gp.lambda_plus.re),
                        csv_f64(gp.lambda_plus.im),
                        csv_f64(deviation),
                    ));
                }
                rows.push(row);
                csv.push_str(&csv_row);
                csv.push('\n');
            }
            Err(e) => rows.push(json!({
                "n": n,
                "status": "error",
                "error": e.to_string(),
            })),
        }
    }

    let mut report = json!({
        "command": "spectrum",
        "bc_case": bc,
        "window": [n0, n_max],
        "rows": rows,
    });
    if oracle.is_some() {
        report["k_matrix"] = json!(k_matrix);
        report["max_relative_deviation"] = json!(max_deviation);
    }
    Ok(CommandOutput {
        json: report,
        csv: Some(csv),
    })
}

/// Coefficient-balance checker: `theorem` selects the band criterion (1)
/// or the ratio-growth scan (2).
#[allow(clippy::too_many_arguments)]
pub fn check(
    q: &Potential,
    bc: BcCase,
    theorem: u8,
    n0: u32,
    n_max: u32,
    theta: f64,
    sigma_min: f64,
    c_floor: f64,
) -> Result<CommandOutput> {
    let verdict = match theorem {
        1 => check_theorem1(q, bc, q.smoothness(), n0, n_max, theta)?,
        2 => check_theorem2(q, bc, q.smoothness(), n_max, c_floor, sigma_min)?,
        other => {
            return Err(Error::InvalidParameter(format!(
                "theorem must be 1 or 2, got {other}"
            )))
        }
    };
    let mut csv = String::from("n,alpha_margin,beta_margin,ratio,ratio_sum\n");
    for row in &verdict.margins {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n,
            csv_f64(row.alpha_margin),
            csv_f64(row.beta_margin),
            csv_f64(row.ratio),
            csv_f64(row.ratio_sum),
        ));
    }
    Ok(CommandOutput {
        json: serde_json::to_value(&verdict)?,
        csv: Some(csv),
    })
}

fn gram_options(tol: f64) -> GramOptions {
    GramOptions {
        root_opts: RootFunctionOptions {
            ode_tol: tol,
            ..RootFunctionOptions::default()
        },
        pair_opts: PairSearchOptions {
            ode_tol: tol,
            ..PairSearchOptions::default()
        },
        ..GramOptions::default()
    }
}

/// Gram conditioning of one pair window.
pub fn gram(
    q: &Potential,
    bc: BcCase,
    n_lo: u32,
    n_hi: u32,
    grid: Option<usize>,
    tol: f64,
) -> Result<CommandOutput> {
    let grid_size = grid.unwrap_or_else(|| default_grid(q, n_hi));
    let report = gram_report(q, bc, n_lo, n_hi, grid_size, &gram_options(tol))?;
    let mut csv = String::from("n,coeff_index,angle\n");
    for pa in &report.angles {
        csv.push_str(&format!(
            "{},{},{}\n",
            pa.n,
            pa.coeff_index,
            csv_f64(pa.angle)
        ));
    }
    Ok(CommandOutput {
        json: serde_json::to_value(&report)?,
        csv: Some(csv),
    })
}

/// Gram sweep over nested dyadic windows `[n_lo, 2^j]`, `2^j <= n_max`,
/// starting at `2^3`, all on one shared grid so the finite sections nest.
pub fn gram_sweep(
    q: &Potential,
    bc: BcCase,
    n_lo: u32,
    n_max: u32,
    grid: Option<usize>,
    tol: f64,
) -> Result<CommandOutput> {
    let mut tops = Vec::new();
    let mut top = 8u32;
    while top <= n_max {
        tops.push(top);
        top *= 2;
    }
    if tops.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "sweep windows are [n_lo, 2^j] from 2^3 up; n_max = {n_max} leaves none"
        )));
    }
    if n_lo > tops[0] {
        return Err(Error::InvalidParameter(format!(
            "sweep base n_lo = {n_lo} exceeds the first window top {}",
            tops[0]
        )));
    }
    let grid_size = grid.unwrap_or_else(|| default_grid(q, *tops.last().expect("nonempty")));
    let opts = gram_options(tol);

    let mut windows = Vec::new();
    let mut csv = String::from("n_lo,n_hi,system_size,mu_min,mu_max,riesz_ratio,top_angle\n");
    for &hi in &tops {
        let report = gram_report(q, bc, n_lo, hi, grid_size, &opts)?;
        let top_angle = report.angles.last().map_or(f64::NAN, |pa| pa.angle);
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            n_lo,
            hi,
            report.system_size,
            csv_f64(report.mu_min),
            csv_f64(report.mu_max),
            csv_f64(report.riesz_ratio),
            csv_f64(top_angle),
        ));
        windows.push(serde_json::to_value(&report)?);
    }
    Ok(CommandOutput {
        json: json!({
            "command": "gram-sweep",
            "bc_case": bc,
            "grid_size": grid_size,
            "windows": windows,
        }),
        csv: Some(csv),
    })
}

/// Density demonstration; the nested before/after report is JSON-only.
pub fn density(
    q: &Potential,
    bc: BcCase,
    delta: f64,
    target: DensityTarget,
    n_max: u32,
) -> Result<CommandOutput> {
    let report = density_demo(q, bc, delta, target, n_max)?;
    Ok(CommandOutput {
        json: serde_json::to_value(&report)?,
        csv: None,
    })
}

/// Emit the lacunary counterexample family as a potential file.
pub fn counterexample(
    case: BcCase,
    eps1: f64,
    eps2: f64,
    bandwidth: u32,
    smoothness: u32,
) -> Result<CommandOutput> {
    let q =
        Potential::make_counterexample(case, eps1, eps2, bandwidth)?.with_smoothness(smoothness);
    Ok(CommandOutput {
        json: serde_json::to_value(q.to_file())?,
        csv: None,
    })
}
