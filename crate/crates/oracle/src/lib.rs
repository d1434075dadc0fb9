//! Reference constructions for tests.
//!
//! Everything here works on raw direction vectors and dense matrices, and
//! builds each operator the long way (explicit sums over subsets) rather
//! than through the recursions used by the library.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type C = Complex64;
pub type M = DMatrix<C>;
pub type Dir = [f64; 3];
pub type Pair = (Dir, Dir);

/// Best `<A_3>` on the three-qubit W state over all settings, from 4000
/// multi-start quasi-Newton runs over the twelve spherical angles (scipy).
pub const W3_OPTIMUM: f64 = 4.354648431614541;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn identity(n: usize) -> M {
    M::identity(1 << n, 1 << n)
}

pub fn spin(v: Dir) -> M {
    M::from_row_slice(
        2,
        2,
        &[c(v[2], 0.0), c(v[0], -v[1]), c(v[0], v[1]), c(-v[2], 0.0)],
    )
}

pub fn dot(a: Dir, b: Dir) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Dir, b: Dir) -> Dir {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn kron_all(ms: &[M]) -> M {
    ms.iter().fold(M::identity(1, 1), |acc, m| acc.kronecker(m))
}

/// `ops[j]` on qubit `j` where given, identity elsewhere.
pub fn embed(ops: &[Option<M>]) -> M {
    kron_all(
        &ops.iter()
            .map(|o| o.clone().unwrap_or_else(|| M::identity(2, 2)))
            .collect::<Vec<_>>(),
    )
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|j| m >> j & 1 == 1).collect())
        .collect()
}

/// `Re_k + i Im_k = (A_1 + i A'_1) ... (A_k + i A'_k)` expanded term by term:
/// choosing `A'` on `m` qubits contributes `i^m`.
pub fn re_im_expansion(pairs: &[Pair]) -> (M, M) {
    let n = pairs.len();
    let d = 1 << n;
    let (mut re, mut im) = (M::zeros(d, d), M::zeros(d, d));
    for mask in 0u32..1 << n {
        let term = kron_all(
            &pairs
                .iter()
                .enumerate()
                .map(|(j, (a, b))| spin(if mask >> j & 1 == 1 { *b } else { *a }))
                .collect::<Vec<_>>(),
        );
        match mask.count_ones() % 4 {
            0 => re += term,
            1 => im += term,
            2 => re -= term,
            _ => im -= term,
        }
    }
    (re, im)
}

/// `Re_{n-1} (A_n - A'_n) + Im_{n-1} (A_n + A'_n)`.
pub fn ardehali(pairs: &[Pair]) -> M {
    let (head, last) = pairs.split_at(pairs.len() - 1);
    let (re, im) = re_im_expansion(head);
    let (a, b) = (spin(last[0].0), spin(last[0].1));
    re.kronecker(&(&a - &b)) + im.kronecker(&(&a + &b))
}

pub fn chsh(a: Dir, a_prime: Dir, b: Dir, b_prime: Dir) -> M {
    let (b, bp) = (spin(b), spin(b_prime));
    spin(a).kronecker(&(&b + &bp)) + spin(a_prime).kronecker(&(&b - &bp))
}

/// Sum over `|S| = size` of the product of `A''_j = A_j x A'_j` (unnormalized)
/// on `S`, for the qubits of `pairs`.
fn cross_products(pairs: &[Pair], size: usize) -> M {
    let n = pairs.len();
    let mut sum = M::zeros(1 << n, 1 << n);
    for s in subsets(n, size) {
        let ops: Vec<Option<M>> = (0..n)
            .map(|j| s.contains(&j).then(|| spin(cross(pairs[j].0, pairs[j].1))))
            .collect();
        sum += embed(&ops);
    }
    sum
}

/// `Re_n^2` written through cross products: for even `n`
/// `2^{n-1}(1 + (-1)^{n/2} prod x_j) + 2^{n-1} sum_{k>=1} sum_{|S|=2k} A''_S`,
/// for odd `n` `2^{n-1} sum_{k>=0} sum_{|S|=2k} A''_S`.
pub fn re_square_rhs(pairs: &[Pair]) -> M {
    let n = pairs.len();
    let scale = 2f64.powi(n as i32 - 1);
    let mut out = identity(n);
    if n.is_multiple_of(2) {
        let prod: f64 = pairs.iter().map(|(a, b)| dot(*a, *b)).product();
        let sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        out *= c(1.0 + sign * prod, 0.0);
    }
    for size in (2..=n).step_by(2) {
        out += cross_products(pairs, size);
    }
    out * c(scale, 0.0)
}

/// `2 (Re_{n-1}^2 + Im_{n-1}^2) (x) I - 2^n (sum_{|S| odd} A''_S) (x) A''_n`,
/// odd subsets of the first `n - 1` qubits.
///
/// Holds for arbitrary settings at even `n`; at odd `n` the pairs must
/// anticommute.
pub fn ardehali_square_cross_form(pairs: &[Pair]) -> M {
    let n = pairs.len();
    let (head, last) = pairs.split_at(n - 1);
    let (re, im) = re_im_expansion(head);
    let mut odd = M::zeros(1 << (n - 1), 1 << (n - 1));
    for size in (1..n).step_by(2) {
        odd += cross_products(head, size);
    }
    let last_cross = spin(cross(last[0].0, last[0].1));
    (&re * &re + &im * &im).kronecker(&M::identity(2, 2)) * c(2.0, 0.0)
        - odd.kronecker(&last_cross) * c(2f64.powi(n as i32), 0.0)
}

/// `2(1 - x_n) Re^2 (x) I + 2(1 + x_n) Im^2 (x) I - [Im, Re] (x) [A_n, A'_n]`
/// with `Re, Im` over the first `n - 1` qubits.
pub fn ardehali_square_commutator_form(pairs: &[Pair]) -> M {
    let n = pairs.len();
    let (head, last) = pairs.split_at(n - 1);
    let (re, im) = re_im_expansion(head);
    let (a, b) = (spin(last[0].0), spin(last[0].1));
    let x = dot(last[0].0, last[0].1);
    let id = M::identity(2, 2);
    (&re * &re).kronecker(&id) * c(2.0 * (1.0 - x), 0.0)
        + (&im * &im).kronecker(&id) * c(2.0 * (1.0 + x), 0.0)
        - (&im * &re - &re * &im).kronecker(&(&a * &b - &b * &a))
}

/// Eigenvalues of a Hermitian matrix, ascending, through the real symmetric
/// embedding `[[Re, -Im], [Im, Re]]` (each eigenvalue appears twice there).
pub fn eigenvalues(h: &M) -> Vec<f64> {
    let d = h.nrows();
    let real = DMatrix::from_fn(2 * d, 2 * d, |i, j| {
        let z = h[(i % d, j % d)];
        match (i < d, j < d) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(real)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}

pub fn max_eigenvalue(h: &M) -> f64 {
    *eigenvalues(h).last().unwrap()
}

pub fn spectral_norm(h: &M) -> f64 {
    let ev = eigenvalues(h);
    ev[0].abs().max(*ev.last().unwrap())
}

pub fn max_abs(m: &M) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `(|0...0> - |1...1>)/sqrt 2`.
pub fn ghz(n: usize) -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[(1 << n) - 1] = c(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v
}

pub fn expectation(h: &M, psi: &[C]) -> C {
    let v = nalgebra::DVector::from_column_slice(psi);
    v.dotc(&(h * &v))
}

/// x, y on every qubit but the last, which gets the x-y plane directions at
/// 135 and 45 degrees.
pub fn canonical(n: usize) -> Vec<Pair> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut p = vec![([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]); n - 1];
    p.push(([-h, h, 0.0], [h, h, 0.0]));
    p
}

/// Brute-force maximum over deterministic `+-1` assignments. With every
/// observable set to `+-sigma_z` the operator is diagonal and its `(0, 0)`
/// entry is the value of that assignment.
pub fn lhv_max_brute(n: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for mask in 0u64..1 << (2 * n) {
        let sign = |bit: usize| if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
        let pairs: Vec<Pair> = (0..n)
            .map(|j| ([0.0, 0.0, sign(2 * j)], [0.0, 0.0, sign(2 * j + 1)]))
            .collect();
        let h = ardehali(&pairs);
        best = best.max(h[(0, 0)].re);
    }
    best
}
