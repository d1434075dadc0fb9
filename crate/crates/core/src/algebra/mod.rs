//! Complex linear algebra on qubit spaces.
//!
//! Single-qubit operators are `nalgebra::Matrix2<Complex64>`; many-qubit
//! operators are dense `DMatrix` wrapped in [`HermitianOperator`]. Site `j`
//! of an `n`-qubit register is bit `n - 1 - j` of the amplitude index.

mod eigen;
pub mod jacobi;
mod observable;
mod operator;
pub(crate) mod state;
mod vec3;

use nalgebra::Matrix2;
use num_complex::Complex64;

pub use eigen::{max_eigenpair, operator_norm, EigenConfig};
pub use observable::{
    observable_cross, observable_inner, pauli, random_unitary, spin_observable, SpinObservable,
    SpinOperator,
};
pub use operator::{expectation, kron, HermitianOperator};
pub use state::StateVector;
pub use vec3::Vec3;

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff2(a: &Mat2, b: &Mat2) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `|U^dagger U - I|` measured entrywise.
pub fn unitarity_residual(u: &Mat2) -> f64 {
    max_abs_diff2(&(u.adjoint() * u), &Mat2::identity())
}
