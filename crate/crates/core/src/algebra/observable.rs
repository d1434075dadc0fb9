use rand::Rng;
use rand_distr::StandardNormal;

use super::{Mat2, Vec3, C64, I, ONE, ZERO};
use crate::tolerances::UNIT_DIRECTION;
use crate::{Error, Result};

/// The Pauli matrices.
pub mod pauli {
    use super::*;

    pub fn x() -> Mat2 {
        Mat2::new(ZERO, ONE, ONE, ZERO)
    }

    pub fn y() -> Mat2 {
        Mat2::new(ZERO, -I, I, ZERO)
    }

    pub fn z() -> Mat2 {
        Mat2::new(ONE, ZERO, ZERO, -ONE)
    }

    pub fn all() -> [Mat2; 3] {
        [x(), y(), z()]
    }
}

/// `v . sigma` for an arbitrary real vector `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOperator {
    direction: Vec3,
    matrix: Mat2,
}

impl SpinOperator {
    pub fn new(direction: Vec3) -> Self {
        let Vec3 { x, y, z } = direction;
        let matrix = Mat2::new(
            C64::new(z, 0.0),
            C64::new(x, -y),
            C64::new(x, y),
            C64::new(-z, 0.0),
        );
        Self { direction, matrix }
    }

    pub fn direction(&self) -> Vec3 {
        self.direction
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    /// Direction components recovered as `tr(sigma_k M) / 2`.
    pub fn direction_of(m: &Mat2) -> Vec3 {
        let [sx, sy, sz] = pauli::all();
        let half_trace = |p: Mat2| 0.5 * (p * m).trace().re;
        Vec3::new(half_trace(sx), half_trace(sy), half_trace(sz))
    }
}

/// A spin observable `a . sigma` with `|a| = 1`; eigenvalues are +1 and -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinObservable(SpinOperator);

impl SpinObservable {
    /// Fails with [`Error::NonUnitDirection`] unless `|v| = 1` within 1e-9.
    pub fn new(v: Vec3) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_DIRECTION {
            return Err(Error::NonUnitDirection(v.to_array(), norm));
        }
        Ok(Self(SpinOperator::new(v)))
    }

    /// Normalizes `v` first; `None` for the zero vector.
    pub fn along(v: Vec3) -> Option<Self> {
        v.normalized().map(|u| Self(SpinOperator::new(u)))
    }

    pub fn sigma_x() -> Self {
        Self(SpinOperator::new(Vec3::X))
    }

    pub fn sigma_y() -> Self {
        Self(SpinOperator::new(Vec3::Y))
    }

    pub fn sigma_z() -> Self {
        Self(SpinOperator::new(Vec3::Z))
    }

    /// Observable in the x-y plane at `degrees` from the x axis.
    pub fn in_xy_plane(degrees: f64) -> Self {
        Self(SpinOperator::new(Vec3::in_xy_plane(degrees)))
    }

    pub fn direction(&self) -> Vec3 {
        self.0.direction
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0.matrix
    }

    pub fn as_operator(&self) -> &SpinOperator {
        &self.0
    }

    pub fn negated(&self) -> Self {
        Self(SpinOperator::new(-self.direction()))
    }

    /// `U A U^dagger`, still a spin observable when `U` is unitary.
    pub fn conjugated_by(&self, u: &Mat2) -> Result<Self> {
        let m = u * self.matrix() * u.adjoint();
        Self::new(SpinOperator::direction_of(&m))
    }
}

pub fn spin_observable(v: Vec3) -> Result<SpinObservable> {
    SpinObservable::new(v)
}

/// `(A, A')`: the dot product of the two directions, equal to `tr(A A') / 2`.
pub fn observable_inner(a: &SpinObservable, b: &SpinObservable) -> f64 {
    a.direction().dot(&b.direction())
}

/// `A x A' = (a x a') . sigma`; zero for parallel directions.
pub fn observable_cross(a: &SpinObservable, b: &SpinObservable) -> SpinOperator {
    SpinOperator::new(a.direction().cross(&b.direction()))
}

/// Haar-random element of U(2).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let mut g = [0.0f64; 4];
    for v in g.iter_mut() {
        *v = rng.sample(StandardNormal);
    }
    let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
    let a = C64::new(g[0], g[1]) / norm;
    let b = C64::new(g[2], g[3]) / norm;
    let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    Mat2::new(a, -b.conj(), b, a.conj()) * phase
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{max_abs_diff2, unitarity_residual};
    use rand::SeedableRng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn random_observable(rng: &mut impl Rng) -> SpinObservable {
        let v = Vec3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        SpinObservable::along(v).unwrap()
    }

    #[test]
    fn basis_directions_give_pauli_matrices() {
        let z = spin_observable(Vec3::Z).unwrap();
        assert_eq!(*z.matrix(), pauli::z());
        let x = spin_observable(Vec3::X).unwrap();
        assert_eq!(*x.matrix(), pauli::x());
    }

    #[test]
    fn forty_five_degree_observable() {
        let h = FRAC_1_SQRT_2;
        let a = spin_observable(Vec3::new(h, h, 0.0)).unwrap();
        let expected = Mat2::new(ZERO, C64::new(h, -h), C64::new(h, h), ZERO);
        assert!(max_abs_diff2(a.matrix(), &expected) < 1e-15);
    }

    #[test]
    fn non_unit_direction_is_rejected() {
        let err = spin_observable(Vec3::new(1.0, 1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NonUnitDirection(_, _)));
        assert!(spin_observable(Vec3::new(1.0 + 1e-10, 0.0, 0.0)).is_ok());
    }

    #[test]
    fn inner_products() {
        let x = SpinObservable::sigma_x();
        let y = SpinObservable::sigma_y();
        assert_eq!(observable_inner(&x, &y), 0.0);
        assert_eq!(observable_inner(&x, &x), 1.0);
        let a45 = SpinObservable::in_xy_plane(45.0);
        assert!((observable_inner(&x, &a45) - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn cross_products() {
        let x = SpinObservable::sigma_x();
        let y = SpinObservable::sigma_y();
        assert_eq!(observable_cross(&x, &y).direction(), Vec3::Z);
        let c = observable_cross(
            &SpinObservable::in_xy_plane(135.0),
            &SpinObservable::in_xy_plane(45.0),
        );
        assert!((c.direction() - Vec3::new(0.0, 0.0, -1.0)).norm() < 1e-15);
        assert_eq!(*observable_cross(&x, &x).matrix(), Mat2::zeros());
    }

    #[test]
    fn spin_algebra_identities_hold_for_random_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let id = Mat2::identity();
        for _ in 0..200 {
            let a = random_observable(&mut rng);
            let b = random_observable(&mut rng);
            let x = observable_inner(&a, &b);
            let cross = observable_cross(&a, &b);

            assert!(max_abs_diff2(&(a.matrix() * a.matrix()), &id) < 1e-12);
            assert!(a.matrix().trace().norm() < 1e-12);
            assert!(max_abs_diff2(a.matrix(), &a.matrix().adjoint()) < 1e-12);

            let ab = a.matrix() * b.matrix();
            let ba = b.matrix() * a.matrix();
            assert!(max_abs_diff2(&ab, &(id * C64::from(x) + cross.matrix() * I)) < 1e-12);
            assert!(max_abs_diff2(&ba, &(id * C64::from(x) - cross.matrix() * I)) < 1e-12);
            assert!(max_abs_diff2(&(ab - ba), &(cross.matrix() * C64::new(0.0, 2.0))) < 1e-12);
            assert!(max_abs_diff2(&(ab + ba), &(id * C64::from(2.0 * x))) < 1e-12);

            let n2 = cross.direction().dot(&cross.direction());
            assert!((n2 - (1.0 - x * x)).abs() < 1e-12);
            assert!((0.5 * ab.trace().re - x).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugation_rotates_direction() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let u = random_unitary(&mut rng);
            assert!(unitarity_residual(&u) < 1e-12);
            let x = SpinObservable::sigma_x().conjugated_by(&u).unwrap();
            let y = SpinObservable::sigma_y().conjugated_by(&u).unwrap();
            let z = SpinObservable::sigma_z().conjugated_by(&u).unwrap();
            assert!(observable_inner(&x, &y).abs() < 1e-12);
            // rotations preserve handedness
            assert!((x.direction().cross(&y.direction()) - z.direction()).norm() < 1e-12);
        }
    }
}
