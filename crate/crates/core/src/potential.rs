//! Complex 1-periodic potentials represented by Fourier data.
//!
//! A potential is a finite linear combination of coefficient *rules*: an
//! explicit coefficient map (trigonometric polynomial), a lacunary family
//! supported on powers of two with two decay exponents, or a two-sided
//! power-decay family.  The rule view is exact at every integer frequency
//! and is what the hypothesis checkers consume; pointwise evaluation (and
//! everything built on it, such as the ODE solvers) truncates the series at
//! the stored bandwidth `K`.
//!
//! The two Fourier functionals that drive all spectral asymptotics in this
//! crate are
//!
//! ```text
//! alpha_n = integral q(x) e^{ 2 pi i n x} dx = c_{-n}
//! beta_n  = integral q(x) e^{-2 pi i n x} dx = c_{ n}
//! ```
//!
//! returned together as a [`CoeffPair`].  The ratio `|alpha_n / beta_n|`
//! measures the asymmetry between the `e^{-2 pi i n x}` and `e^{2 pi i n x}`
//! sides of the spectrum and controls whether eigenfunction pairs stay
//! uniformly linearly independent.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::bc::BcCase;
use crate::error::{Error, Result};
use crate::fourier;

/// Parity mask for the power-decay family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    All,
}

impl Parity {
    /// Whether index `n` belongs to this parity class.
    pub fn admits(self, n: u32) -> bool {
        match self {
            Parity::Even => n % 2 == 0,
            Parity::Odd => n % 2 == 1,
            Parity::All => true,
        }
    }

    /// Parity of the coefficient indices coupled to the pairs of `bc`.
    pub fn for_case(bc: BcCase) -> Parity {
        match bc {
            BcCase::Periodic => Parity::Even,
            BcCase::Antiperiodic => Parity::Odd,
        }
    }
}

/// Coarse classification of how a potential is represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PotentialKind {
    /// Finitely many explicitly stored coefficients.
    TrigPolynomial,
    /// At least one closed-form coefficient rule (valid at every index).
    ClosedFormSeries,
}

/// The Fourier functionals `(alpha_n, beta_n)` at one index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffPair {
    pub n: u32,
    /// `alpha_n = c_{-n}`.
    pub alpha: Complex64,
    /// `beta_n = c_{n}`.
    pub beta: Complex64,
}

impl CoeffPair {
    /// `|alpha / beta|`, infinite when `beta = 0` and `alpha != 0`, and `NaN`
    /// when both vanish.
    pub fn ratio(&self) -> f64 {
        self.alpha.norm() / self.beta.norm()
    }
}

/// One closed-form coefficient rule.
#[derive(Debug, Clone)]
enum Rule {
    /// Explicit finite coefficient map `k -> c_k`.
    Coeffs(BTreeMap<i64, Complex64>),
    /// Lacunary two-exponent family: `c_{-n} = gamma_n n^{-eps1}`,
    /// `c_{n} = gamma_n n^{-eps2}`, where `gamma_n = 1` exactly when
    /// `n = 2^p + offset` (periodic case) or `n = 2^p + 1 + offset`
    /// (antiperiodic case) for `p >= 1`, else `gamma_n = 0`.
    Lacunary {
        case: BcCase,
        eps1: f64,
        eps2: f64,
        offset: u32,
    },
    /// `c_{-n} = n^{-s_plus}`, `c_{n} = n^{-s_minus}` on one parity class.
    PowerDecay {
        s_plus: f64,
        s_minus: f64,
        parity: Parity,
    },
}

impl Rule {
    fn coefficient(&self, k: i64) -> Complex64 {
        if k == 0 {
            return match self {
                Rule::Coeffs(map) => map.get(&0).copied().unwrap_or_default(),
                _ => Complex64::new(0.0, 0.0),
            };
        }
        let n = k.unsigned_abs();
        match self {
            Rule::Coeffs(map) => map.get(&k).copied().unwrap_or_default(),
            Rule::Lacunary {
                case,
                eps1,
                eps2,
                offset,
            } => {
                if !lacunary_support(*case, *offset, n) {
                    return Complex64::new(0.0, 0.0);
                }
                let exponent = if k < 0 { *eps1 } else { *eps2 };
                Complex64::new((n as f64).powf(-exponent), 0.0)
            }
            Rule::PowerDecay {
                s_plus,
                s_minus,
                parity,
            } => {
                let n32 = u32::try_from(n).unwrap_or(u32::MAX);
                if !parity.admits(n32) {
                    return Complex64::new(0.0, 0.0);
                }
                let exponent = if k < 0 { *s_plus } else { *s_minus };
                Complex64::new((n as f64).powf(-exponent), 0.0)
            }
        }
    }

    fn is_explicit(&self) -> bool {
        matches!(self, Rule::Coeffs(_))
    }
}

/// Membership test for the shifted lacunary index set: `n - offset = 2^p`
/// (periodic) or `n - offset = 2^p + 1` (antiperiodic), `p >= 1`.
fn lacunary_support(case: BcCase, offset: u32, n: u64) -> bool {
    let Some(base) = n.checked_sub(u64::from(offset)) else {
        return false;
    };
    let core = match case {
        BcCase::Periodic => base,
        BcCase::Antiperiodic => match base.checked_sub(1) {
            Some(c) => c,
            None => return false,
        },
    };
    core >= 2 && core.is_power_of_two()
}

/// A complex 1-periodic potential `q(x) = sum_k c_k e^{2 pi i k x}`.
///
/// Immutable after construction; every operation is a pure function.
#[derive(Debug, Clone)]
pub struct Potential {
    /// Weighted rules; the coefficient at `k` is the weighted sum of the
    /// rule values.
    terms: Vec<(Complex64, Rule)>,
    /// Truncation bandwidth for pointwise evaluation.
    bandwidth: u32,
    /// Claimed Sobolev smoothness order `m` (metadata used by checkers for
    /// the `n^{m+1}` coefficient weighting).
    smoothness: u32,
}

impl Potential {
    /// The zero potential.
    pub fn zero() -> Self {
        Potential {
            terms: Vec::new(),
            bandwidth: 0,
            smoothness: 0,
        }
    }

    /// Constant potential `q(x) = c`.
    pub fn constant(c: Complex64) -> Self {
        Potential::from_coeffs([(0, c)])
    }

    /// Trigonometric polynomial from explicit `(k, c_k)` pairs.  Zero
    /// amplitudes are dropped; the bandwidth is the largest retained `|k|`.
    pub fn from_coeffs<I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut map = BTreeMap::new();
        for (k, c) in coeffs {
            if c != Complex64::new(0.0, 0.0) {
                *map.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
            }
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        let bandwidth = map.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0) as u32;
        Potential {
            terms: vec![(Complex64::new(1.0, 0.0), Rule::Coeffs(map))],
            bandwidth,
            smoothness: 0,
        }
    }

    /// Lacunary family with two decay exponents: coefficients
    /// `c_{-n} = n^{-eps1}`, `c_n = n^{-eps2}` exactly on the lacunary index
    /// set `{2^p}` (periodic) or `{2^p + 1}` (antiperiodic), `p >= 1`.  The
    /// coefficient ratio `|alpha_n / beta_n| = n^{eps2 - eps1}` on the
    /// support is unbounded, so eigenfunction pairs of the matching
    /// boundary-condition case degenerate as `n` grows.
    pub fn make_counterexample(case: BcCase, eps1: f64, eps2: f64, bandwidth: u32) -> Result<Self> {
        Self::make_counterexample_shifted(case, eps1, eps2, bandwidth, 0)
    }

    /// [`Potential::make_counterexample`] with the support translated by
    /// `offset` (kept even so the index parity matches the case).  Used to
    /// re-seat the family on fresh indices when a perturbation direction
    /// must avoid an existing potential's support.
    pub fn make_counterexample_shifted(
        case: BcCase,
        eps1: f64,
        eps2: f64,
        bandwidth: u32,
        offset: u32,
    ) -> Result<Self> {
        if !(0.0 < eps1 && eps1 < eps2 && eps2 < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < eps1 < eps2 < 1, got eps1 = {eps1}, eps2 = {eps2}"
            )));
        }
        if bandwidth < 2 {
            return Err(Error::InvalidParameter(format!(
                "lacunary family needs bandwidth >= 2, got {bandwidth}"
            )));
        }
        if offset % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "lacunary support offset must be even to preserve parity, got {offset}"
            )));
        }
        Ok(Potential {
            terms: vec![(
                Complex64::new(1.0, 0.0),
                Rule::Lacunary {
                    case,
                    eps1,
                    eps2,
                    offset,
                },
            )],
            bandwidth,
            smoothness: 0,
        })
    }

    /// Two-sided power-decay family `c_{-n} = n^{-s_plus}`,
    /// `c_n = n^{-s_minus}` over one parity class, so
    /// `|alpha_n / beta_n| = n^{s_minus - s_plus}` there.
    pub fn make_power_decay(
        s_plus: f64,
        s_minus: f64,
        parity: Parity,
        bandwidth: u32,
    ) -> Result<Self> {
        if s_plus <= 0.0 || s_minus <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "power-decay exponents must be positive, got s_plus = {s_plus}, s_minus = {s_minus}"
            )));
        }
        if bandwidth == 0 {
            return Err(Error::InvalidParameter(
                "power-decay family needs bandwidth >= 1".into(),
            ));
        }
        Ok(Potential {
            terms: vec![(
                Complex64::new(1.0, 0.0),
                Rule::PowerDecay {
                    s_plus,
                    s_minus,
                    parity,
                },
            )],
            bandwidth,
            smoothness: 0,
        })
    }

    /// Same data with a different claimed smoothness order.
    pub fn with_smoothness(mut self, m: u32) -> Self {
        self.smoothness = m;
        self
    }

    /// Same rule with a different evaluation bandwidth.
    pub fn with_bandwidth(mut self, bandwidth: u32) -> Self {
        self.bandwidth = bandwidth;
        self
    }

    /// Representation class: explicit coefficients only, or closed-form.
    pub fn kind(&self) -> PotentialKind {
        if self.terms.iter().all(|(_, r)| r.is_explicit()) {
            PotentialKind::TrigPolynomial
        } else {
            PotentialKind::ClosedFormSeries
        }
    }

    /// Truncation bandwidth `K` used for pointwise evaluation.
    pub fn bandwidth(&self) -> u32 {
        self.bandwidth
    }

    /// Claimed Sobolev smoothness order `m`.
    pub fn smoothness(&self) -> u32 {
        self.smoothness
    }

    /// Exact coefficient `c_k` from the rule view (no bandwidth truncation:
    /// closed-form families report their rule at every index).
    pub fn coefficient(&self, k: i64) -> Complex64 {
        self.terms.iter().map(|(w, r)| w * r.coefficient(k)).sum()
    }

    /// Coefficient `c_k` of the truncated series used for evaluation: zero
    /// beyond the bandwidth.
    pub fn truncated_coefficient(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() > u64::from(self.bandwidth) {
            Complex64::new(0.0, 0.0)
        } else {
            self.coefficient(k)
        }
    }

    /// The functionals `(alpha_n, beta_n) = (c_{-n}, c_n)`, exact from the
    /// coefficient rule.
    pub fn fourier_pair(&self, n: u32) -> CoeffPair {
        CoeffPair {
            n,
            alpha: self.coefficient(-i64::from(n)),
            beta: self.coefficient(i64::from(n)),
        }
    }

    /// `(alpha_n, beta_n)` recomputed by discrete quadrature of the
    /// truncated series on a uniform grid — an independent cross-check of
    /// [`Potential::fourier_pair`].  Exact (to rounding) when
    /// `grid_size > K + n`.
    pub fn fourier_pair_quadrature(&self, n: u32, grid_size: usize) -> Result<CoeffPair> {
        let needed =
            (self.bandwidth as usize + n as usize + 1).max(2 * self.bandwidth as usize + 1);
        if grid_size < needed {
            return Err(Error::GridTooSmall {
                bandwidth: self.bandwidth,
                needed,
                got: grid_size,
            });
        }
        let values = self.evaluate(grid_size)?;
        Ok(CoeffPair {
            n,
            alpha: fourier::dft_coefficient(&values, -i64::from(n)),
            beta: fourier::dft_coefficient(&values, i64::from(n)),
        })
    }

    /// Values of the truncated series `sum_{|k| <= K} c_k e^{2 pi i k x}` at
    /// the uniform grid `x_j = j / grid_size`.
    ///
    /// Requires `grid_size >= 2K + 1` so that the sampled exponentials stay
    /// linearly independent (no aliasing within the band).
    pub fn evaluate(&self, grid_size: usize) -> Result<Vec<Complex64>> {
        let needed = 2 * self.bandwidth as usize + 1;
        if grid_size < needed {
            return Err(Error::GridTooSmall {
                bandwidth: self.bandwidth,
                needed,
                got: grid_size,
            });
        }
        let coeffs = self.materialized_coeffs();
        let mut values = vec![Complex64::new(0.0, 0.0); grid_size];
        for (j, v) in values.iter_mut().enumerate() {
            let x = j as f64 / grid_size as f64;
            *v = coeffs
                .iter()
                .map(|(&k, &c)| c * Complex64::from_polar(1.0, TAU * k as f64 * x))
                .sum();
        }
        Ok(values)
    }

    /// All nonzero truncated coefficients `|k| <= K`, in ascending `k` order.
    pub fn materialized_coeffs(&self) -> BTreeMap<i64, Complex64> {
        let k_max = i64::from(self.bandwidth);
        let mut map = BTreeMap::new();
        for k in -k_max..=k_max {
            let c = self.coefficient(k);
            if c != Complex64::new(0.0, 0.0) {
                map.insert(k, c);
            }
        }
        map
    }

    /// The truncation of this potential as an explicit trigonometric
    /// polynomial (rule view and evaluation view coincide afterwards).
    pub fn materialized(&self) -> Potential {
        Potential {
            terms: vec![(
                Complex64::new(1.0, 0.0),
                Rule::Coeffs(self.materialized_coeffs()),
            )],
            bandwidth: self.bandwidth,
            smoothness: self.smoothness,
        }
    }

    /// Upper bound `sum_{|k| <= K} |c_k|` for the `L^1(0,1)` norm of the
    /// truncated series.
    pub fn l1_coefficient_bound(&self) -> f64 {
        self.materialized_coeffs().values().map(|c| c.norm()).sum()
    }

    /// Weighted sum `a q1 + b q2` (rules kept intact, bandwidth is the max,
    /// claimed smoothness the min).
    pub fn linear_combination(
        a: Complex64,
        q1: &Potential,
        b: Complex64,
        q2: &Potential,
    ) -> Potential {
        let mut terms = Vec::with_capacity(q1.terms.len() + q2.terms.len());
        terms.extend(q1.terms.iter().map(|(w, r)| (a * w, r.clone())));
        terms.extend(q2.terms.iter().map(|(w, r)| (b * w, r.clone())));
        Potential {
            terms,
            bandwidth: q1.bandwidth.max(q2.bandwidth),
            smoothness: q1.smoothness.min(q2.smoothness),
        }
    }

    /// Scalar multiple `s * q`.
    pub fn scaled(&self, s: Complex64) -> Potential {
        Potential {
            terms: self.terms.iter().map(|(w, r)| (s * w, r.clone())).collect(),
            bandwidth: self.bandwidth,
            smoothness: self.smoothness,
        }
    }

    /// `q + (delta / U) * direction`, where `U` is the coefficient-sum upper
    /// bound for the `L^1` norm of the *truncated* direction; consequently
    /// `‖result - q‖_{L^1} <= delta`.  The direction enters as its
    /// truncation (explicit coefficients), so the budget accounting is exact.
    pub fn perturb(&self, delta: f64, direction: &Potential) -> Result<Potential> {
        if delta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "perturbation size must be positive, got {delta}"
            )));
        }
        let dir_coeffs = direction.materialized_coeffs();
        let mass: f64 = dir_coeffs.values().map(|c| c.norm()).sum();
        if mass == 0.0 {
            return Err(Error::InvalidParameter(
                "perturbation direction has no nonzero coefficients".into(),
            ));
        }
        let mut terms = self.terms.clone();
        terms.push((Complex64::new(delta / mass, 0.0), Rule::Coeffs(dir_coeffs)));
        Ok(Potential {
            terms,
            bandwidth: self.bandwidth.max(direction.bandwidth),
            smoothness: self.smoothness.min(direction.smoothness),
        })
    }

    /// Whether `c_{-k} = conj(c_k)` for every `|k| <= K`, which forces the
    /// evaluated values to be real.
    pub fn is_conjugate_symmetric(&self) -> bool {
        let coeffs = self.materialized_coeffs();
        let scale: f64 = coeffs.values().map(|c| c.norm()).sum::<f64>().max(1.0);
        let tol = 8.0 * f64::EPSILON * scale;
        (0..=i64::from(self.bandwidth)).all(|k| {
            let diff = self.truncated_coefficient(-k) - self.truncated_coefficient(k).conj();
            diff.norm() <= tol
        })
    }

    /// Parse the JSON description (see [`PotentialFile`]).
    pub fn from_json_str(text: &str) -> Result<Potential> {
        let file: PotentialFile =
            serde_json::from_str(text).map_err(|e| Error::BadPotentialFile(e.to_string()))?;
        file.into_potential()
    }

    /// Serialize to the JSON description.  The rule families round-trip
    /// exactly; anything else is written as explicit truncated coefficients.
    pub fn to_file(&self) -> PotentialFile {
        if self.terms.len() == 1 && self.terms[0].0 == Complex64::new(1.0, 0.0) {
            match &self.terms[0].1 {
                Rule::Lacunary {
                    case,
                    eps1,
                    eps2,
                    offset: 0,
                } => {
                    return PotentialFile {
                        kind: "counterexample".into(),
                        case: Some(case.label()),
                        eps1: Some(*eps1),
                        eps2: Some(*eps2),
                        s_plus: None,
                        s_minus: None,
                        parity: None,
                        bandwidth: Some(self.bandwidth),
                        smoothness: Some(self.smoothness),
                        coeffs: None,
                    };
                }
                Rule::PowerDecay {
                    s_plus,
                    s_minus,
                    parity,
                } => {
                    return PotentialFile {
                        kind: "power".into(),
                        case: None,
                        eps1: None,
                        eps2: None,
                        s_plus: Some(*s_plus),
                        s_minus: Some(*s_minus),
                        parity: Some(
                            match parity {
                                Parity::Even => "even",
                                Parity::Odd => "odd",
                                Parity::All => "all",
                            }
                            .into(),
                        ),
                        bandwidth: Some(self.bandwidth),
                        smoothness: Some(self.smoothness),
                        coeffs: None,
                    };
                }
                _ => {}
            }
        }
        PotentialFile {
            kind: "trig".into(),
            case: None,
            eps1: None,
            eps2: None,
            s_plus: None,
            s_minus: None,
            parity: None,
            bandwidth: Some(self.bandwidth),
            smoothness: Some(self.smoothness),
            coeffs: Some(
                self.materialized_coeffs()
                    .iter()
                    .map(|(&k, c)| (k, c.re, c.im))
                    .collect(),
            ),
        }
    }
}

/// On-disk JSON schema for potentials.
///
/// `kind` selects the family; the other fields apply as follows (unknown or
/// inapplicable fields are rejected):
///
/// ```json
/// {"kind": "trig",           "K": 4, "m": 0, "coeffs": [[-2, 0.1, 0.0], [2, 0.1, 0.0]]}
/// {"kind": "counterexample", "case": 1, "eps1": 0.3, "eps2": 0.7, "K": 64}
/// {"kind": "power",          "s_plus": 1.5, "s_minus": 1.5, "parity": "even", "K": 64}
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_plus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_minus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<String>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<u32>,
    #[serde(rename = "m", default, skip_serializing_if = "Option::is_none")]
    pub smoothness: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<(i64, f64, f64)>>,
}

impl PotentialFile {
    /// Validate and build the in-memory potential.
    pub fn into_potential(self) -> Result<Potential> {
        let reject = |msg: String| Err(Error::BadPotentialFile(msg));
        let m = self.smoothness.unwrap_or(0);
        match self.kind.as_str() {
            "trig" => {
                if self.case.is_some()
                    || self.eps1.is_some()
                    || self.eps2.is_some()
                    || self.s_plus.is_some()
                    || self.s_minus.is_some()
                    || self.parity.is_some()
                {
                    return reject("kind \"trig\" admits only K, m, and coeffs".into());
                }
                let coeffs = self.coeffs.ok_or_else(|| {
                    Error::BadPotentialFile("kind \"trig\" requires coeffs".into())
                })?;
                let mut q = Potential::from_coeffs(
                    coeffs
                        .iter()
                        .map(|&(k, re, im)| (k, Complex64::new(re, im))),
                );
                if let Some(k) = self.bandwidth {
                    if u64::from(k)
                        < coeffs
                            .iter()
                            .map(|&(k, ..)| k.unsigned_abs())
                            .max()
                            .unwrap_or(0)
                    {
                        return reject(format!(
                            "declared bandwidth K = {k} smaller than a listed frequency"
                        ));
                    }
                    q = q.with_bandwidth(k);
                }
                Ok(q.with_smoothness(m))
            }
            "counterexample" => {
                if self.s_plus.is_some()
                    || self.s_minus.is_some()
                    || self.parity.is_some()
                    || self.coeffs.is_some()
                {
                    return reject(
                        "kind \"counterexample\" admits only case, eps1, eps2, K, m".into(),
                    );
                }
                let case_label = self.case.ok_or_else(|| {
                    Error::BadPotentialFile("kind \"counterexample\" requires case".into())
                })?;
                let case = BcCase::from_label(case_label).ok_or_else(|| {
                    Error::BadPotentialFile(format!("case must be 1 or 2, got {case_label}"))
                })?;
                let eps1 = self.eps1.ok_or_else(|| {
                    Error::BadPotentialFile("kind \"counterexample\" requires eps1".into())
                })?;
                let eps2 = self.eps2.ok_or_else(|| {
                    Error::BadPotentialFile("kind \"counterexample\" requires eps2".into())
                })?;
                let k = self.bandwidth.unwrap_or(64);
                Potential::make_counterexample(case, eps1, eps2, k)
                    .map(|q| q.with_smoothness(m))
                    .map_err(|e| Error::BadPotentialFile(e.to_string()))
            }
            "power" => {
                if self.case.is_some()
                    || self.eps1.is_some()
                    || self.eps2.is_some()
                    || self.coeffs.is_some()
                {
                    return reject(
                        "kind \"power\" admits only s_plus, s_minus, parity, K, m".into(),
                    );
                }
                let s_plus = self.s_plus.ok_or_else(|| {
                    Error::BadPotentialFile("kind \"power\" requires s_plus".into())
                })?;
                let s_minus = self.s_minus.ok_or_else(|| {
                    Error::BadPotentialFile("kind \"power\" requires s_minus".into())
                })?;
                let parity = match self.parity.as_deref() {
                    None | Some("all") => Parity::All,
                    Some("even") => Parity::Even,
                    Some("odd") => Parity::Odd,
                    Some(other) => {
                        return reject(format!(
                            "parity must be \"even\", \"odd\", or \"all\", got \"{other}\""
                        ))
                    }
                };
                let k = self.bandwidth.unwrap_or(64);
                Potential::make_power_decay(s_plus, s_minus, parity, k)
                    .map(|q| q.with_smoothness(m))
                    .map_err(|e| Error::BadPotentialFile(e.to_string()))
            }
            other => reject(format!(
                "kind must be \"trig\", \"counterexample\", or \"power\", got \"{other}\""
            )),
        }
    }
}
