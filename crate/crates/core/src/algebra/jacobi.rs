//! Cyclic Jacobi diagonalization of dense Hermitian matrices.
//!
//! Slow (`O(d^3)` per sweep) but simple and unconditionally convergent; used
//! as a reference for the iterative eigensolver on dimensions up to 64.

use nalgebra::{DMatrix, DVector};

use super::C64;

pub struct Eigh {
    /// Ascending.
    pub eigenvalues: DVector<f64>,
    /// Column `k` belongs to `eigenvalues[k]`.
    pub eigenvectors: DMatrix<C64>,
}

pub fn eigh(h: &DMatrix<C64>) -> Eigh {
    let d = h.nrows();
    let mut a = h.clone();
    let mut v = DMatrix::<C64>::identity(d, d);
    let total: f64 = a
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let off: f64 = (0..d)
            .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= 1e-30 * total {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // J = diag(1, e^{-i phi}) * real rotation zeroes a[p][q]
                let phase = apq / mag;
                let theta = 0.5 * (2.0 * mag).atan2(a[(p, p)].re - a[(q, q)].re);
                let (s, c) = theta.sin_cos();
                let j_pp = C64::from(c);
                let j_pq = C64::from(-s);
                let j_qp = phase.conj() * s;
                let j_qq = phase.conj() * c;
                for k in 0..d {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * j_pp + akq * j_qp;
                    a[(k, q)] = akp * j_pq + akq * j_qq;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * j_pp + vkq * j_qp;
                    v[(k, q)] = vkp * j_pq + vkq * j_qq;
                }
                for k in 0..d {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
                    a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    Eigh {
        eigenvalues: DVector::from_iterator(d, order.iter().map(|&i| a[(i, i)].re)),
        eigenvectors: DMatrix::from_fn(d, d, |r, c| v[(r, order[c])]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn reconstructs_random_hermitian() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for d in [2usize, 3, 8, 17, 32] {
            let g = DMatrix::from_fn(d, d, |_, _| {
                C64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            });
            let h = (&g + g.adjoint()) * C64::from(0.5);
            let e = eigh(&h);
            let lam = DMatrix::from_diagonal(&e.eigenvalues.map(C64::from));
            let back = &e.eigenvectors * lam * e.eigenvectors.adjoint();
            assert!((back - &h).norm() < 1e-10 * h.norm());
            let gram = e.eigenvectors.adjoint() * &e.eigenvectors;
            assert!((gram - DMatrix::identity(d, d)).norm() < 1e-10);
            assert!(e.eigenvalues.as_slice().windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
