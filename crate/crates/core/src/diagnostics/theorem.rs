//! Coefficient-balance criteria for basisness of the root system.
//!
//! For a potential in the Sobolev class of order `m`, whether the
//! periodic (or antiperiodic) root functions form a Riesz basis is
//! governed by the tail behaviour of the Fourier functionals
//! `alpha_n = c_{-n}` and `beta_n = c_{n}` over the parity class coupled
//! to the boundary condition — even indices for the periodic case, odd
//! for the antiperiodic one.  Two regimes matter:
//!
//! * **Balanced tails.**  If both `|alpha_n| n^{m+1}` and
//!   `|beta_n| n^{m+1}` stay bounded away from zero while the ratios
//!   `r_n = |alpha_n / beta_n|` stay inside a fixed band
//!   `[c_1, c_2] subset (0, infinity)`, the pair eigenfunctions keep a
//!   uniform angle and the system behaves like a Riesz basis.
//!   [`check_theorem1`] measures exactly these margins on a window.
//! * **Drifting ratios.**  If `R_n = r_n + 1/r_n` grows like a power
//!   `n^sigma` along a subsequence (lacunary families are the sharpest
//!   examples), the pairs collapse at a polynomial rate and no Riesz
//!   basis is possible.  [`check_theorem2`] detects that growth by a
//!   log-log fit over the indices where both functionals are
//!   numerically alive.
//!
//! A finite window can never prove an asymptotic statement, so both
//! checkers return three-valued [`Verdict`]s: `Consistent` when the data
//! matches the hypothesis with margin, `Violated` when it contradicts it
//! outright (a vanishing `alpha_n`, or a monotone ratio drift beyond the
//! tolerance `theta`), and `Inconclusive` otherwise.  In particular
//! [`check_theorem2`] never claims non-basisness as a fact: absence of
//! detected growth is reported as `Inconclusive`, not as evidence for a
//! basis.
//!
//! The checkers read the coefficient rule exactly (no quadrature, no
//! truncation), so their verdicts are scale-invariant: replacing `q` by
//! `s q` multiplies both margins by `|s|` and leaves every ratio,
//! trend, and verdict unchanged.

use serde::Serialize;

use crate::bc::BcCase;
use crate::error::{Error, Result};
use crate::potential::Potential;

/// Three-valued outcome of a finite-window hypothesis check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// The window data matches the hypothesis with margin.
    Consistent,
    /// The window data contradicts the hypothesis outright.
    Violated,
    /// The window is too small, too sparse, or too flat to decide.
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Weighted coefficient data at one Fourier index.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MarginRow {
    /// Fourier index (coupled parity only).
    pub n: u32,
    /// `|alpha_n| n^{m+1}` where `alpha_n = c_{-n}`.
    pub alpha_margin: f64,
    /// `|beta_n| n^{m+1}` where `beta_n = c_{n}`.
    pub beta_margin: f64,
    /// `r_n = |alpha_n| / |beta_n|`; infinite when `beta_n = 0`.
    pub ratio: f64,
    /// `R_n = r_n + 1/r_n`; infinite when either coefficient vanishes.
    pub ratio_sum: f64,
}

/// Least-squares fit of `log max(r_n, 1/r_n)` against `log n`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrendFit {
    pub slope: f64,
    pub intercept: f64,
    /// Number of indices that entered the fit.
    pub candidates: usize,
    /// Ratio of largest to smallest candidate index.
    pub span: f64,
}

/// Outcome of one checker run: margin table, summary statistics, verdict.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremVerdict {
    /// Which balance criterion was checked: 1 or 2.
    pub theorem: u8,
    pub bc_case: BcCase,
    /// Sobolev order `m` used for the `n^{m+1}` weighting.
    pub smoothness: u32,
    /// Index window: `(window[0], window[1]]` for theorem 1 (the lower
    /// edge is exclusive), `[1, window[1]]` scanned for theorem 2.
    pub window: [u32; 2],
    /// Per-index data: the full parity window for theorem 1, the
    /// above-floor candidates for theorem 2.
    pub margins: Vec<MarginRow>,
    /// `min |alpha_n| n^{m+1}` over the window (theorem 1 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c0: Option<f64>,
    /// `min r_n` over the window (theorem 1 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    /// `max r_n` over the window (theorem 1 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    /// Cumulative monotone ratio drift along the dyadic subsequence
    /// (theorem 1; present when at least two dyadic indices with finite
    /// ratios fall in the window and the drift is monotone).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dyadic_factor: Option<f64>,
    /// Log-log growth fit (theorem 2; present from 2 candidates up).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trend: Option<TrendFit>,
    pub verdict: Verdict,
    /// One-line justification of the verdict.
    pub reason: String,
}

/// First index of the parity class coupled to `bc`.
fn parity_start(bc: BcCase) -> u32 {
    match bc {
        BcCase::Periodic => 2,
        BcCase::Antiperiodic => 1,
    }
}

/// Margin row at index `n` with weight `n^{m+1}`.
fn margin_row(q: &Potential, n: u32, m: u32) -> MarginRow {
    let pair = q.fourier_pair(n);
    let weight = f64::from(n).powf(f64::from(m) + 1.0);
    let alpha = pair.alpha.norm();
    let beta = pair.beta.norm();
    let ratio = if beta == 0.0 {
        f64::INFINITY
    } else {
        alpha / beta
    };
    let ratio_sum = if alpha == 0.0 || beta == 0.0 {
        f64::INFINITY
    } else {
        ratio + 1.0 / ratio
    };
    MarginRow {
        n,
        alpha_margin: alpha * weight,
        beta_margin: beta * weight,
        ratio,
        ratio_sum,
    }
}

/// Indices of the coupled parity in `(n_lo, n_hi]`, ascending.
fn parity_indices(bc: BcCase, n_lo: u32, n_hi: u32) -> Vec<u32> {
    (n_lo + 1..=n_hi)
        .filter(|n| n % 2 == parity_start(bc) % 2)
        .collect()
}

/// Dyadic subsequence of the coupled parity: `2^j` (periodic) or
/// `2^j + 1` (antiperiodic), `j >= 1`, intersected with `(n_lo, n_hi]`.
fn dyadic_indices(bc: BcCase, n_lo: u32, n_hi: u32) -> Vec<u32> {
    let shift = match bc {
        BcCase::Periodic => 0,
        BcCase::Antiperiodic => 1,
    };
    let mut out = Vec::new();
    let mut power = 2u32;
    while power <= n_hi.saturating_sub(shift) {
        let n = power + shift;
        if n > n_lo && n <= n_hi {
            out.push(n);
        }
        match power.checked_mul(2) {
            Some(next) => power = next,
            None => break,
        }
    }
    out
}

/// Check the balanced-tail hypothesis on the window `(n0, n_max]`.
///
/// Bounds computed over the coupled parity indices in the window:
/// `c0 = min |alpha_n| n^{m+1}`, `c1 = min r_n`, `c2 = max r_n`.  The
/// verdict is `Violated` when some `alpha_n` vanishes or when the ratio
/// drifts monotonically by a cumulative factor `>= theta` along the
/// dyadic subsequence; `Consistent` when `c0 > 0` and `c2 / c1 <= theta`;
/// `Inconclusive` otherwise.
pub fn check_theorem1(
    q: &Potential,
    bc: BcCase,
    m: u32,
    n0: u32,
    n_max: u32,
    theta: f64,
) -> Result<TheoremVerdict> {
    if n0 < 1 {
        return Err(Error::InvalidParameter(
            "window base n0 must be at least 1".into(),
        ));
    }
    if n_max < 2 * n0 {
        return Err(Error::InvalidParameter(format!(
            "window must satisfy n_max >= 2 n0, got n0 = {n0}, n_max = {n_max}"
        )));
    }
    if !(theta.is_finite() && theta > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "drift tolerance theta must be finite and exceed 1, got {theta}"
        )));
    }

    let margins: Vec<MarginRow> = parity_indices(bc, n0, n_max)
        .into_iter()
        .map(|n| margin_row(q, n, m))
        .collect();

    let base = TheoremVerdict {
        theorem: 1,
        bc_case: bc,
        smoothness: m,
        window: [n0, n_max],
        margins,
        c0: None,
        c1: None,
        c2: None,
        dyadic_factor: None,
        trend: None,
        verdict: Verdict::Inconclusive,
        reason: String::new(),
    };
    let mut out = base;

    if out.margins.is_empty() {
        out.reason = "window contains no indices of the coupled parity".into();
        return Ok(out);
    }

    let c0 = out
        .margins
        .iter()
        .map(|r| r.alpha_margin)
        .fold(f64::INFINITY, f64::min);
    let c1 = out
        .margins
        .iter()
        .map(|r| r.ratio)
        .fold(f64::INFINITY, f64::min);
    let c2 = out.margins.iter().map(|r| r.ratio).fold(0.0, f64::max);
    out.c0 = Some(c0);
    out.c1 = Some(c1);
    out.c2 = Some(c2);

    // Monotone drift along the dyadic subsequence (finite nonzero ratios
    // only; a vanishing coefficient is handled by the zero rule below).
    let dyadic: Vec<f64> = dyadic_indices(bc, n0, n_max)
        .into_iter()
        .map(|n| margin_row(q, n, m).ratio)
        .filter(|r| r.is_finite() && *r > 0.0)
        .collect();
    if dyadic.len() >= 2 {
        let increasing = dyadic.windows(2).all(|w| w[1] > w[0]);
        let decreasing = dyadic.windows(2).all(|w| w[1] < w[0]);
        if increasing || decreasing {
            let first = dyadic[0];
            let last = dyadic[dyadic.len() - 1];
            let factor = if increasing {
                last / first
            } else {
                first / last
            };
            out.dyadic_factor = Some(factor);
            if factor >= theta {
                out.verdict = Verdict::Violated;
                out.reason = format!(
                    "coefficient ratio drifts monotonically by a factor {factor:.3} \
                     across the dyadic subsequence (tolerance {theta})"
                );
            }
        }
    }

    if let Some(row) = out.margins.iter().find(|r| r.alpha_margin == 0.0) {
        out.verdict = Verdict::Violated;
        out.reason = format!("alpha_{} = 0 inside the window", row.n);
        return Ok(out);
    }
    if out.verdict == Verdict::Violated {
        return Ok(out);
    }

    if c0 > 0.0 && c2.is_finite() && c2 / c1 <= theta {
        out.verdict = Verdict::Consistent;
        out.reason =
            format!("weighted margins at least {c0:.3e} with ratios inside [{c1:.3}, {c2:.3}]");
    } else if !c2.is_finite() {
        out.reason = "some beta_n vanishes in the window, so the ratio is unbounded".into();
    } else {
        out.reason = format!(
            "ratio spread {:.3} exceeds the tolerance theta = {theta}",
            c2 / c1
        );
    }
    Ok(out)
}

/// Scan `[1, n_max]` for polynomial growth of the pair unbalance
/// `R_n = r_n + 1/r_n`.
///
/// Candidates are the coupled-parity indices whose weighted margins both
/// reach `c_floor`.  The fit regresses `log max(r_n, 1/r_n)` on `log n`;
/// the verdict is `Consistent` (with non-basisness) when the slope is at
/// least `sigma_min` over at least 4 candidates spanning a factor of 8
/// in `n`, and `Inconclusive` otherwise — never `Violated`, because a
/// flat finite window is not evidence for a basis.
pub fn check_theorem2(
    q: &Potential,
    bc: BcCase,
    m: u32,
    n_max: u32,
    c_floor: f64,
    sigma_min: f64,
) -> Result<TheoremVerdict> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "scan needs n_max >= 2, got {n_max}"
        )));
    }
    if !(c_floor > 0.0 && c_floor.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "margin floor must be positive and finite, got {c_floor:e}"
        )));
    }
    if !(sigma_min > 0.0 && sigma_min.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "slope threshold must be positive and finite, got {sigma_min}"
        )));
    }

    let candidates: Vec<MarginRow> = parity_indices(bc, parity_start(bc) - 1, n_max)
        .into_iter()
        .map(|n| margin_row(q, n, m))
        .filter(|r| r.alpha_margin >= c_floor && r.beta_margin >= c_floor)
        .collect();

    let mut out = TheoremVerdict {
        theorem: 2,
        bc_case: bc,
        smoothness: m,
        window: [1, n_max],
        margins: candidates,
        c0: None,
        c1: None,
        c2: None,
        dyadic_factor: None,
        trend: None,
        verdict: Verdict::Inconclusive,
        reason: String::new(),
    };

    let count = out.margins.len();
    if count < 2 {
        out.reason = format!(
            "only {count} coefficient pair(s) clear the margin floor {c_floor:e}; \
             need at least 2 to fit a trend"
        );
        return Ok(out);
    }

    // Least squares on (log n, log max(r, 1/r)).  The unbalance is fitted
    // through max(r, 1/r) rather than r + 1/r so an exact power law
    // r_n = n^sigma yields the slope sigma exactly.
    let points: Vec<(f64, f64)> = out
        .margins
        .iter()
        .map(|row| {
            let unbalance = row.ratio.max(1.0 / row.ratio);
            (f64::from(row.n).ln(), unbalance.ln())
        })
        .collect();
    let len = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let span = f64::from(out.margins[count - 1].n) / f64::from(out.margins[0].n);
    out.trend = Some(TrendFit {
        slope,
        intercept,
        candidates: count,
        span,
    });

    if slope >= sigma_min && count >= 4 && span >= 8.0 {
        out.verdict = Verdict::Consistent;
        out.reason =
            format!("pair unbalance grows like n^{slope:.3} across {count} supported indices");
    } else if count < 4 {
        out.reason = format!("only {count} candidates above the floor; need 4 for a trend");
    } else if span < 8.0 {
        out.reason = format!("candidate indices span a factor {span:.2}; need 8");
    } else {
        out.reason = format!(
            "fitted slope {slope:.4} stays below the threshold {sigma_min}; \
             no growth detected (not evidence for a basis)"
        );
    }
    Ok(out)
}
