//! Floquet analysis of the Hill operator `-u'' + q u` on the unit period.
//!
//! Everything here revolves around the monodromy matrix `M(lambda)`: the
//! transfer matrix of `u'' = (q - lambda) u` across one period.  Its trace,
//! the discriminant, equals `+2` exactly at periodic eigenvalues and `-2`
//! at antiperiodic ones, and the structure of `M` at such a point decides
//! whether the eigenvalue is simple, double with a full eigenspace, or
//! double with a Jordan block.
//!
//! The submodules split the work:
//!
//! * [`ode`] — embedded Runge–Kutta integration, both adaptive and on
//!   frozen fixed-step meshes (the latter make every spectral quantity a
//!   deterministic, analytic function of `lambda`);
//! * [`monodromy`] — transfer matrices and the discriminant;
//! * [`pairs`] — locating the eigenvalue pair attached to each unperturbed
//!   double point and classifying its degeneracy;
//! * [`rootfn`] — eigenfunctions and, at defective double points, the
//!   associated function completing the two-dimensional root subspace;
//! * [`galerkin`] — an integration-free spectral cross-check via banded
//!   Fourier truncation matrices.

pub mod galerkin;
pub mod monodromy;
pub mod ode;
pub mod pairs;
pub mod rootfn;
