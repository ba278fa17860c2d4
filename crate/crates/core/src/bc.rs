//! Boundary-condition cases and the index bookkeeping attached to them.

use serde::{Deserialize, Serialize};

/// The two self-coupled boundary conditions on `[0, 1]`.
///
/// Case 1 (periodic) demands `u(0) = u(1)`, `u'(0) = u'(1)`; case 2
/// (antiperiodic) demands `u(0) = -u(1)`, `u'(0) = -u'(1)`.  Floquet theory
/// ties each case to a fixed value of the discriminant (`+2` and `-2`
/// respectively) and to its own ladder of unperturbed double eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BcCase {
    /// Periodic: eigenvalue pairs accumulate at `(2 pi n)^2`.
    Periodic,
    /// Antiperiodic: eigenvalue pairs accumulate at `(pi (2n + 1))^2`.
    Antiperiodic,
}

impl BcCase {
    /// Numeric label used in reports and on the command line: 1 or 2.
    pub fn label(self) -> u8 {
        match self {
            BcCase::Periodic => 1,
            BcCase::Antiperiodic => 2,
        }
    }

    /// Parse the numeric label.
    pub fn from_label(label: u8) -> Option<Self> {
        match label {
            1 => Some(BcCase::Periodic),
            2 => Some(BcCase::Antiperiodic),
            _ => None,
        }
    }

    /// Sign `s` in the eigenvector equation `M v = s v` for the monodromy
    /// matrix `M`: `+1` periodic, `-1` antiperiodic.
    pub fn monodromy_sign(self) -> f64 {
        match self {
            BcCase::Periodic => 1.0,
            BcCase::Antiperiodic => -1.0,
        }
    }

    /// Value the discriminant `tr M(lambda)` takes at eigenvalues of this
    /// case: `2 * monodromy_sign()`.
    pub fn discriminant_target(self) -> f64 {
        2.0 * self.monodromy_sign()
    }

    /// Fourier index coupled to pair `n`: `2n` (periodic) or `2n + 1`
    /// (antiperiodic).  Coefficients of `q` at `+/- coeff_index(n)` drive the
    /// splitting of pair `n` at first order.
    pub fn coeff_index(self, n: u32) -> u32 {
        match self {
            BcCase::Periodic => 2 * n,
            BcCase::Antiperiodic => 2 * n + 1,
        }
    }

    /// Unperturbed double eigenvalue `rho_n` for pair `n`: the square of
    /// `pi * coeff_index(n)`.
    pub fn rho(self, n: u32) -> f64 {
        let k = std::f64::consts::PI * f64::from(self.coeff_index(n));
        k * k
    }

    /// Fourier frequencies of the natural Galerkin basis: integers for the
    /// periodic case, half-integers for the antiperiodic case.  Pair `n`
    /// lives on the modes with `|j| = coeff_index(n) / 2`.
    pub fn galerkin_frequency(self, signed_mode: i64) -> f64 {
        match self {
            BcCase::Periodic => signed_mode as f64,
            BcCase::Antiperiodic => {
                // Modes ..., -3/2, -1/2, 1/2, 3/2, ... indexed by signed
                // integers ..., -2, -1, 1, 2, ... (zero unused).
                if signed_mode > 0 {
                    signed_mode as f64 - 0.5
                } else {
                    signed_mode as f64 + 0.5
                }
            }
        }
    }
}

impl std::fmt::Display for BcCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BcCase::Periodic => write!(f, "periodic"),
            BcCase::Antiperiodic => write!(f, "antiperiodic"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn coeff_index_follows_parity() {
        assert_eq!(BcCase::Periodic.coeff_index(3), 6);
        assert_eq!(BcCase::Antiperiodic.coeff_index(3), 7);
        assert_eq!(BcCase::Antiperiodic.coeff_index(0), 1);
    }

    #[test]
    fn rho_matches_squared_frequencies() {
        assert!((BcCase::Periodic.rho(2) - (4.0 * PI) * (4.0 * PI)).abs() < 1e-12);
        assert!((BcCase::Antiperiodic.rho(0) - PI * PI).abs() < 1e-12);
        assert!((BcCase::Antiperiodic.rho(1) - 9.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn discriminant_targets() {
        assert_eq!(BcCase::Periodic.discriminant_target(), 2.0);
        assert_eq!(BcCase::Antiperiodic.discriminant_target(), -2.0);
    }

    #[test]
    fn label_round_trip() {
        for case in [BcCase::Periodic, BcCase::Antiperiodic] {
            assert_eq!(BcCase::from_label(case.label()), Some(case));
        }
        assert_eq!(BcCase::from_label(3), None);
    }
}
