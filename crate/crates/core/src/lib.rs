//! Numerical toolkit for the Hill operator `L u = u'' - q(x) u` on `[0, 1]`
//! with a complex-valued trigonometric-polynomial potential `q`.
//!
//! The eigenvalue problem studied throughout is `-u'' + q(x) u = lambda u`
//! under periodic (`u(0) = u(1)`, `u'(0) = u'(1)`) or antiperiodic
//! (`u(0) = -u(1)`, `u'(0) = -u'(1)`) boundary conditions.  For such `q` the
//! spectrum splits into pairs of eigenvalues near `(2 pi n)^2` (periodic) or
//! `(pi (2n + 1))^2` (antiperiodic), and the central question is whether the
//! root functions of those pairs form a Riesz basis of `L^2(0, 1)`.
//!
//! The crate is organised around that question:
//!
//! * [`potential`] — construction, evaluation, and Fourier analysis of
//!   potentials, including lacunary families whose eigenfunction pairs
//!   degenerate at a controlled polynomial rate.
//! * [`floquet`] — the fundamental-solution (shooting) machinery: monodromy
//!   matrices, discriminant root searches for eigenvalue pairs,
//!   eigenfunctions and associated functions, and an independent
//!   Fourier–Galerkin spectral solver used for cross-checking.
//! * [`diagnostics`] — quantitative basis diagnostics: Gram-matrix
//!   conditioning of normalized root systems, asymptotic coefficient-ratio
//!   checks for basisness and non-basisness, and a demonstration that both
//!   behaviours are reachable by arbitrarily small perturbations.
//!
//! All routines are deterministic: identical inputs produce bitwise
//! identical results.

pub mod bc;
pub mod diagnostics;
pub mod error;
pub mod floquet;
pub mod fourier;
pub mod linalg;
pub mod potential;

pub use bc::BcCase;
pub use error::{Error, Result};
pub use potential::{CoeffPair, Parity, Potential, PotentialKind};

pub use floquet::galerkin::GalerkinSpectrum;
pub use floquet::monodromy::Monodromy;
pub use floquet::pairs::{PairClass, PairSearchOptions, SpectralPair};
pub use floquet::rootfn::{RootFunction, RootKind};

pub use diagnostics::density::{DensityReport, DensitySide, DensityTarget};
pub use diagnostics::gram::{GramOptions, GramReport, PairAngle, RootSystemSource};
pub use diagnostics::theorem::{MarginRow, TheoremVerdict, TrendFit, Verdict};
