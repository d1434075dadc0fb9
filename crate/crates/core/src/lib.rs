//! Bell-Ardehali inequalities for `n` qubits.
//!
//! The crate builds the Bell-Ardehali operator from per-qubit measurement
//! settings, checks its quantum and local-realistic bounds, optimizes
//! settings for a given state by see-saw alternation, and certifies states
//! that reach the quantum bound by constructing the local unitaries that map
//! the GHZ state onto them.
//!
//! Qubit ordering: qubit 1 (index 0 in every slice) is the most significant
//! bit of a state-vector index, matching the left-to-right order of tensor
//! products.

pub mod algebra;
pub mod bell;
pub mod characterization;
pub mod error;
pub mod io;
pub mod lhv;
pub mod optimizer;
pub mod tolerances;

pub use algebra::{
    expectation, max_eigenpair, operator_norm, EigenConfig, HermitianOperator, SpinObservable,
    SpinOperator, StateVector, Vec3,
};
pub use bell::{
    ardehali_expectation, ardehali_operator, canonical_settings, chsh_operator, classical_bound,
    ghz_state, mermin_operator, quantum_bound, re_im, w_state, BoundsReport, MeasurementSettings,
    OperatorPair,
};
pub use characterization::{certify_maximal_violation, CertificationReport, Verdict};
pub use error::{Error, Result};
pub use optimizer::{see_saw, OptimizationConfig, OptimizationResult};
pub use tolerances::Config;
