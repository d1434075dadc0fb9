use nalgebra::DVector;

use super::{Mat2, C64, ZERO};
use crate::tolerances::STATE_NORM;
use crate::{Error, Result};

/// A normalized pure state of `n` qubits.
///
/// Qubit 1 (site 0) is the most significant bit of the amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// Fails unless `amplitudes.len() == 2^n` and the norm is 1 within 1e-10.
    pub fn new(n: usize, amplitudes: Vec<C64>) -> Result<Self> {
        Self::with_tolerance(n, amplitudes, STATE_NORM)
    }

    pub fn with_tolerance(n: usize, amplitudes: Vec<C64>, tol: f64) -> Result<Self> {
        check_len(n, amplitudes.len())?;
        let amplitudes = DVector::from_vec(amplitudes);
        let norm2 = amplitudes.norm_squared();
        if !norm2.is_finite() || (norm2 - 1.0).abs() > tol {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(Self { n, amplitudes })
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(n: usize, amplitudes: Vec<C64>) -> Result<Self> {
        check_len(n, amplitudes.len())?;
        Self::from_dvector(n, DVector::from_vec(amplitudes))
    }

    pub(crate) fn from_dvector(n: usize, mut amplitudes: DVector<C64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm * norm));
        }
        amplitudes.unscale_mut(norm);
        Ok(Self { n, amplitudes })
    }

    /// Computational basis state `|index>`.
    pub fn basis(n: usize, index: usize) -> Self {
        let mut amplitudes = DVector::from_element(1 << n, ZERO);
        amplitudes[index] = C64::new(1.0, 0.0);
        Self { n, amplitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<C64> {
        self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `(U_1 (x) ... (x) U_n) |self>`, renormalized.
    pub fn transformed(&self, unitaries: &[Mat2]) -> Result<StateVector> {
        if unitaries.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: unitaries.len(),
            });
        }
        let mut amps = self.amplitudes.clone();
        apply_product(amps.as_mut_slice(), self.n, unitaries.iter().map(Some));
        Self::from_dvector(self.n, amps)
    }
}

fn check_len(n: usize, len: usize) -> Result<()> {
    if n == 0 || n >= usize::BITS as usize {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "a state needs at least one qubit",
        });
    }
    if len != 1 << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            actual: len,
        });
    }
    Ok(())
}

/// Applies `m` to qubit `site` (0-based) of an `n`-qubit amplitude array in place.
pub(crate) fn apply_site(amps: &mut [C64], n: usize, site: usize, m: &Mat2) {
    let stride = 1usize << (n - 1 - site);
    let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    for block in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x0, x1) = (*a0, *a1);
            *a0 = m00 * x0 + m01 * x1;
            *a1 = m10 * x0 + m11 * x1;
        }
    }
}

/// Applies a product operator site by site; `None` leaves a site untouched.
pub(crate) fn apply_product<'a>(
    amps: &mut [C64],
    n: usize,
    ops: impl IntoIterator<Item = Option<&'a Mat2>>,
) {
    for (site, op) in ops.into_iter().enumerate() {
        if let Some(m) = op {
            apply_site(amps, n, site, m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::pauli;

    #[test]
    fn rejects_unnormalized_and_wrong_length() {
        let v = vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        assert!(matches!(
            StateVector::new(1, v.clone()),
            Err(Error::NotNormalized(_))
        ));
        assert!(StateVector::normalized(1, v).is_ok());
        assert!(matches!(
            StateVector::new(2, vec![C64::new(1.0, 0.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(StateVector::normalized(1, vec![ZERO, ZERO]).is_err());
    }

    #[test]
    fn site_zero_is_most_significant_bit() {
        // X on qubit 1 of |00> gives |10> = index 2
        let s = StateVector::basis(2, 0);
        let t = s.transformed(&[pauli::x(), Mat2::identity()]).unwrap();
        assert_eq!(t.amplitudes()[2], C64::new(1.0, 0.0));
        let t = s.transformed(&[pauli::x(), pauli::x()]).unwrap();
        assert_eq!(t.amplitudes()[3], C64::new(1.0, 0.0));
    }
}
