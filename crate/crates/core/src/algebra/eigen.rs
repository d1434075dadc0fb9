//! Largest eigenpair of a Hermitian operator.
//!
//! Explicitly restarted Lanczos with full reorthogonalization. Each cycle
//! builds a Krylov basis from the current vector, takes the top Ritz pair of
//! the projected tridiagonal matrix and restarts from it. For dimensions up
//! to `krylov_dim` the first cycle spans the whole space.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{HermitianOperator, StateVector, C64};
use crate::tolerances::EIGEN_RESIDUAL_RELATIVE;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenConfig {
    /// Cap on operator-vector products.
    pub max_iterations: usize,
    /// Krylov subspace size per restart cycle.
    pub krylov_dim: usize,
    /// Stop once `|Hv - lv| <= residual_tol * scale`.
    pub residual_tol: f64,
    /// Or once the Ritz value changes by less than this (relative) between
    /// cycles, provided the residual already meets the guaranteed bound.
    pub rel_change_tol: f64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        Self {
            max_iterations: 50_000,
            krylov_dim: 64,
            residual_tol: 1e-10,
            rel_change_tol: 1e-12,
        }
    }
}

/// Algebraically largest eigenvalue of `h` and a unit eigenvector.
///
/// The residual satisfies `|Hv - lv| <= 1e-8 * s`, where `s` is the row-sum
/// bound of `h`. With a degenerate top eigenvalue any vector of that
/// eigenspace may be returned.
pub fn max_eigenpair(h: &HermitianOperator, cfg: &EigenConfig) -> Result<(f64, StateVector)> {
    let dim = h.dim();
    let scale = h.row_sum_bound();
    if scale == 0.0 {
        return Ok((0.0, StateVector::basis(h.n(), 0)));
    }
    let m = cfg.krylov_dim.clamp(2, dim);
    let guaranteed = EIGEN_RESIDUAL_RELATIVE * scale;

    let mut start = start_vector(dim);
    let mut iterations = 0;
    let mut previous: Option<f64> = None;
    let mut best = (f64::NAN, start.clone(), f64::INFINITY);

    while iterations < cfg.max_iterations {
        let (theta, x) = lanczos_cycle(h, &start, m, scale, &mut iterations);
        let residual = (h.apply(&x) - &x * C64::from(theta)).norm();
        iterations += 1;
        if residual < best.2 {
            best = (theta, x.clone(), residual);
        }
        let settled = previous
            .map(|p| (theta - p).abs() <= cfg.rel_change_tol * theta.abs().max(1.0))
            .unwrap_or(false);
        if residual <= cfg.residual_tol * scale || (settled && residual <= guaranteed) {
            return Ok((theta, StateVector::from_dvector(h.n(), x)?));
        }
        previous = Some(theta);
        start = x;
    }
    let (theta, x, residual) = best;
    if residual <= guaranteed {
        return Ok((theta, StateVector::from_dvector(h.n(), x)?));
    }
    Err(Error::NoConvergence {
        iterations,
        residual,
    })
}

/// `max(|l_max|, |l_min|)`.
pub fn operator_norm(h: &HermitianOperator, cfg: &EigenConfig) -> Result<f64> {
    let (top, _) = max_eigenpair(h, cfg)?;
    let (neg_bottom, _) = max_eigenpair(&-h, cfg)?;
    Ok(top.abs().max(neg_bottom.abs()))
}

/// Fixed pseudo-random start so that results are reproducible.
fn start_vector(dim: usize) -> DVector<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1a2c);
    let v = DVector::from_fn(dim, |_, _| {
        C64::new(
            StandardNormal.sample(&mut rng),
            StandardNormal.sample(&mut rng),
        )
    });
    v.normalize()
}

/// One Lanczos cycle from `start`; returns the top Ritz pair.
fn lanczos_cycle(
    h: &HermitianOperator,
    start: &DVector<C64>,
    m: usize,
    scale: f64,
    iterations: &mut usize,
) -> (f64, DVector<C64>) {
    let mut basis: Vec<DVector<C64>> = Vec::with_capacity(m);
    let mut alpha: Vec<f64> = Vec::with_capacity(m);
    let mut beta: Vec<f64> = Vec::with_capacity(m);
    basis.push(start.normalize());

    loop {
        let k = basis.len() - 1;
        let mut w = h.apply(&basis[k]);
        *iterations += 1;
        let a = basis[k].dotc(&w).re;
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for q in &basis {
                let c = q.dotc(&w);
                w.axpy(-c, q, C64::from(1.0));
            }
        }
        alpha.push(a);
        let b = w.norm();
        if basis.len() == m || b <= 1e-13 * scale {
            break;
        }
        beta.push(b);
        basis.push(w.unscale(b));
    }

    let size = alpha.len();
    let t = DMatrix::from_fn(size, size, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    let eig = t.symmetric_eigen();
    let (top, theta) =
        eig.eigenvalues
            .iter()
            .copied()
            .enumerate()
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
            );
    let y = eig.eigenvectors.column(top);
    let mut x = DVector::from_element(h.dim(), C64::new(0.0, 0.0));
    for (q, &c) in basis.iter().zip(y.iter()) {
        x.axpy(C64::from(c), q, C64::from(1.0));
    }
    (theta, x.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{jacobi, pauli};

    #[test]
    fn sigma_z_top_pair() {
        let h = HermitianOperator::single(&pauli::z());
        let (l, v) = max_eigenpair(&h, &EigenConfig::default()).unwrap();
        assert!((l - 1.0).abs() < 1e-12);
        assert!((v.amplitudes()[0].norm() - 1.0).abs() < 1e-10);
        assert!(
            (operator_norm(
                &HermitianOperator::single(&pauli::x()),
                &EigenConfig::default()
            )
            .unwrap()
                - 1.0)
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn zero_operator() {
        let (l, _) = max_eigenpair(&HermitianOperator::zeros(2), &EigenConfig::default()).unwrap();
        assert_eq!(l, 0.0);
    }

    #[test]
    fn agrees_with_jacobi_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in 1..=6 {
            let d = 1 << n;
            let g = DMatrix::from_fn(d, d, |_, _| {
                C64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            });
            let h = HermitianOperator::from_matrix((&g + g.adjoint()) * C64::from(0.5)).unwrap();
            let (l, v) = max_eigenpair(&h, &EigenConfig::default()).unwrap();
            let oracle = jacobi::eigh(h.matrix());
            let top = oracle.eigenvalues[oracle.eigenvalues.len() - 1];
            assert!((l - top).abs() < 1e-8, "n={n}: {l} vs {top}");
            let r = (h.apply(v.amplitudes()) - v.amplitudes() * C64::from(l)).norm();
            assert!(r <= 1e-8 * h.row_sum_bound());
        }
    }

    #[test]
    fn reports_non_convergence() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = 256;
        let g = DMatrix::from_fn(d, d, |_, _| C64::new(StandardNormal.sample(&mut rng), 0.0));
        let h = HermitianOperator::from_matrix((&g + g.adjoint()) * C64::from(0.5)).unwrap();
        let cfg = EigenConfig {
            max_iterations: 3,
            krylov_dim: 2,
            ..EigenConfig::default()
        };
        assert!(matches!(
            max_eigenpair(&h, &cfg),
            Err(Error::NoConvergence { .. })
        ));
    }
}
