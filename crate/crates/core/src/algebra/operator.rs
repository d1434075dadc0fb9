use nalgebra::{DMatrix, DVector};

use super::{Mat2, StateVector, C64};
use crate::tolerances::{Config, EXPECTATION_IMAG, HERMITIAN_RELATIVE};
use crate::{Error, Result};

/// Dense `2^n x 2^n` Hermitian operator on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    n: usize,
    matrix: DMatrix<C64>,
}

impl HermitianOperator {
    /// Checks shape and Hermiticity (relative to the largest entry).
    pub fn from_matrix(matrix: DMatrix<C64>) -> Result<Self> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::DimensionMismatch {
                expected: dim.next_power_of_two().max(2),
                actual: matrix.ncols(),
            });
        }
        let op = Self {
            n: dim.trailing_zeros() as usize,
            matrix,
        };
        let residual = op.hermiticity_residual();
        if residual > HERMITIAN_RELATIVE {
            return Err(Error::NotHermitian(residual));
        }
        Ok(op)
    }

    /// For matrices that are Hermitian by construction.
    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<C64>) -> Self {
        debug_assert!(matrix.nrows().is_power_of_two());
        Self {
            n: matrix.nrows().trailing_zeros() as usize,
            matrix,
        }
    }

    pub fn single(m: &Mat2) -> Self {
        Self::from_matrix_unchecked(DMatrix::from_iterator(2, 2, m.iter().copied()))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matrix_unchecked(DMatrix::identity(1 << n, 1 << n))
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_matrix_unchecked(DMatrix::zeros(1 << n, 1 << n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// `max |H - H^dagger|` divided by `max(1, max |H|)`.
    pub fn hermiticity_residual(&self) -> f64 {
        let scale = self.max_abs().max(1.0);
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst / scale
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute row sum; an upper bound on the operator norm.
    pub fn row_sum_bound(&self) -> f64 {
        self.matrix
            .row_iter()
            .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &HermitianOperator) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.matrix * v
    }

    pub fn square(&self) -> HermitianOperator {
        Self::from_matrix_unchecked(&self.matrix * &self.matrix)
    }

    pub fn scaled(&self, s: f64) -> HermitianOperator {
        Self::from_matrix_unchecked(&self.matrix * C64::from(s))
    }

    /// `self (x) other`, failing if the result exceeds the dense cap.
    pub fn kron(&self, other: &HermitianOperator, cfg: &Config) -> Result<HermitianOperator> {
        cfg.check_dense(self.n + other.n)?;
        Ok(Self::from_matrix_unchecked(
            self.matrix.kronecker(&other.matrix),
        ))
    }

    pub(crate) fn kron_single(&self, m: &Mat2, cfg: &Config) -> Result<HermitianOperator> {
        self.kron(&Self::single(m), cfg)
    }
}

pub fn kron(
    a: &HermitianOperator,
    b: &HermitianOperator,
    cfg: &Config,
) -> Result<HermitianOperator> {
    a.kron(b, cfg)
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl std::ops::$tr<&HermitianOperator> for &HermitianOperator {
            type Output = HermitianOperator;
            fn $f(self, rhs: &HermitianOperator) -> HermitianOperator {
                assert_eq!(self.n, rhs.n, "operator dimensions differ");
                HermitianOperator::from_matrix_unchecked(&self.matrix $op &rhs.matrix)
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);

impl std::ops::Neg for &HermitianOperator {
    type Output = HermitianOperator;
    fn neg(self) -> HermitianOperator {
        HermitianOperator::from_matrix_unchecked(-&self.matrix)
    }
}

/// `<s|H|s>`; the imaginary part must be below 1e-9 and is then dropped.
pub fn expectation(s: &StateVector, h: &HermitianOperator) -> Result<f64> {
    if s.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            actual: s.dim(),
        });
    }
    let raw = s.amplitudes().dotc(&h.apply(s.amplitudes()));
    if raw.im.abs() > EXPECTATION_IMAG {
        return Err(Error::NonHermitianResult(raw.im));
    }
    Ok(raw.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::pauli;

    fn single(m: Mat2) -> HermitianOperator {
        HermitianOperator::single(&m)
    }

    #[test]
    fn kron_of_identities() {
        let cfg = Config::default();
        let id = HermitianOperator::identity(1);
        assert_eq!(id.kron(&id, &cfg).unwrap(), HermitianOperator::identity(2));
    }

    #[test]
    fn kron_acts_on_the_right_qubit() {
        let cfg = Config::default();
        // sigma_z on qubit 1 of |10> (index 2) gives eigenvalue -1
        let zi = single(pauli::z())
            .kron(&HermitianOperator::identity(1), &cfg)
            .unwrap();
        let s = StateVector::basis(2, 2);
        assert_eq!(expectation(&s, &zi).unwrap(), -1.0);
        let xx = single(pauli::x()).kron(&single(pauli::x()), &cfg).unwrap();
        let out = xx.apply(StateVector::basis(2, 0).amplitudes());
        assert_eq!(out, StateVector::basis(2, 3).into_amplitudes());
    }

    #[test]
    fn kron_respects_dense_cap() {
        let cfg = Config {
            dense_qubit_cap: 3,
            ..Config::default()
        };
        let a = HermitianOperator::identity(2);
        assert!(a.kron(&HermitianOperator::identity(1), &cfg).is_ok());
        assert_eq!(
            a.kron(&a, &cfg).unwrap_err(),
            Error::DimensionOverflow { qubits: 4, cap: 3 }
        );
    }

    #[test]
    fn expectation_checks() {
        let s = StateVector::basis(2, 1);
        assert_eq!(
            expectation(&s, &HermitianOperator::identity(2)).unwrap(),
            1.0
        );
        assert!(matches!(
            expectation(&s, &HermitianOperator::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut m = DMatrix::zeros(4, 4);
        m[(1, 1)] = C64::new(0.0, 1.0);
        let bad = HermitianOperator::from_matrix_unchecked(m.clone());
        assert!(matches!(
            expectation(&s, &bad),
            Err(Error::NonHermitianResult(_))
        ));
        assert!(matches!(
            HermitianOperator::from_matrix(m),
            Err(Error::NotHermitian(_))
        ));
    }
}
