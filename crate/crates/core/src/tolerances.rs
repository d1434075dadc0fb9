//! Numerical tolerances and configurable limits, in one place.
//!
//! Everything a test or acceptance criterion compares against lives here.
//! Tolerances are absolute unless the name says otherwise.

use crate::algebra::EigenConfig;

/// Allowed deviation of an observable direction from unit length.
pub const UNIT_DIRECTION: f64 = 1e-9;

/// Pauli-algebra identities on exactly constructed 2x2 matrices.
pub const OBSERVABLE_IDENTITY: f64 = 1e-12;

/// Normalization of in-memory state vectors.
pub const STATE_NORM: f64 = 1e-10;

/// Normalization of state vectors read from files.
pub const STATE_FILE_NORM: f64 = 1e-8;

/// Hermiticity of dense operators, relative to the largest entry.
pub const HERMITIAN_RELATIVE: f64 = 1e-10;

/// Imaginary part allowed in a raw `<s|H|s>` before it is discarded.
pub const EXPECTATION_IMAG: f64 = 1e-9;

/// Eigenpair residual `|Hv - lv|` relative to the operator scale.
pub const EIGEN_RESIDUAL_RELATIVE: f64 = 1e-8;

/// Sum-to-one check for strategy distributions.
pub const DISTRIBUTION_SUM: f64 = 1e-12;

/// Largest `|(A, A')|` accepted by the Pauli-triple residual check.
pub const ANTICOMMUTING_LOOSE: f64 = 0.1;

/// Largest `|(A_j, A'_j)|` accepted when building a representation basis.
pub const REPRESENTATION_ANTICOMMUTING: f64 = 1e-6;

/// Representation-basis eigen-equation residuals.
pub const REPRESENTATION_RESIDUAL: f64 = 1e-9;

/// Allowed deviation of `|a|`, `|b|` from `1/sqrt(2)` in phase extraction.
pub const AMPLITUDE_BALANCE: f64 = 1e-6;

/// Unitarity `|U^dagger U - I|` of constructed local unitaries.
pub const UNITARITY: f64 = 1e-10;

/// Default value tolerance for certification.
pub const CERTIFY_DEFAULT: f64 = 1e-9;

/// Default cap on qubits for dense `2^n x 2^n` operators.
pub const DEFAULT_DENSE_QUBIT_CAP: usize = 12;

/// Largest `n` for exhaustive local-hidden-variable enumeration.
pub const LHV_ENUMERATION_CAP: usize = 12;

/// Environment variable overriding the dense operator cap.
pub const DENSE_CAP_ENV: &str = "ARDEHALI_DENSE_QUBITS";

/// Limits and iteration settings for dense operator work.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub dense_qubit_cap: usize,
    pub eigen: EigenConfig,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            dense_qubit_cap: DEFAULT_DENSE_QUBIT_CAP,
            eigen: EigenConfig::default(),
        }
    }
}

impl Config {
    /// Defaults, with the dense cap taken from `ARDEHALI_DENSE_QUBITS` when set
    /// to a valid integer.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(cap) = std::env::var(DENSE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            cfg.dense_qubit_cap = cap;
        }
        cfg
    }

    pub fn check_dense(&self, qubits: usize) -> crate::Result<()> {
        if qubits > self.dense_qubit_cap {
            return Err(crate::Error::DimensionOverflow {
                qubits,
                cap: self.dense_qubit_cap,
            });
        }
        Ok(())
    }
}
