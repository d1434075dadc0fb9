//! Bell-Ardehali, Bell-CHSH and Bell-Mermin operators, reference settings and
//! states, and the bound formulas.
//!
//! `Re_k` and `Im_k` are the real and imaginary parts of
//! `(A_1 + i A'_1) (x) ... (x) (A_k + i A'_k)`, built by the recursion
//!
//! ```text
//! Re_j = Re_{j-1} (x) A_j - Im_{j-1} (x) A'_j
//! Im_j = Im_{j-1} (x) A_j + Re_{j-1} (x) A'_j
//! ```
//!
//! and the Bell-Ardehali operator is
//! `Re_{n-1} (x) (A_n - A'_n) + Im_{n-1} (x) (A_n + A'_n)`.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{HermitianOperator, Mat2, SpinObservable, StateVector, Vec3, C64};
use crate::tolerances::Config;
use crate::{Error, Result};

/// One pair `(A_j, A'_j)` of spin observables per qubit, `n >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSettings {
    pairs: Vec<(SpinObservable, SpinObservable)>,
}

impl MeasurementSettings {
    pub fn new(pairs: Vec<(SpinObservable, SpinObservable)>) -> Result<Self> {
        if pairs.len() < 2 {
            return Err(Error::InvalidQubitCount {
                n: pairs.len(),
                reason: "measurement settings need at least two qubits",
            });
        }
        Ok(Self { pairs })
    }

    /// Validates every direction as a unit vector.
    pub fn from_directions(directions: &[(Vec3, Vec3)]) -> Result<Self> {
        let pairs = directions
            .iter()
            .map(|&(a, b)| Ok((SpinObservable::new(a)?, SpinObservable::new(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(SpinObservable, SpinObservable)] {
        &self.pairs
    }

    /// Pair at 0-based `site`.
    pub fn pair(&self, site: usize) -> &(SpinObservable, SpinObservable) {
        &self.pairs[site]
    }

    pub fn directions(&self) -> Vec<(Vec3, Vec3)> {
        self.pairs
            .iter()
            .map(|(a, b)| (a.direction(), b.direction()))
            .collect()
    }

    pub fn set_first(&mut self, site: usize, a: SpinObservable) {
        self.pairs[site].0 = a;
    }

    pub fn set_second(&mut self, site: usize, b: SpinObservable) {
        self.pairs[site].1 = b;
    }

    /// `A_j -> U_j A_j U_j^dagger`, `A'_j -> U_j A'_j U_j^dagger` on every site.
    pub fn conjugated_by(&self, unitaries: &[Mat2]) -> Result<Self> {
        if unitaries.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: unitaries.len(),
            });
        }
        let pairs = self
            .pairs
            .iter()
            .zip(unitaries)
            .map(|((a, b), u)| Ok((a.conjugated_by(u)?, b.conjugated_by(u)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    /// Negates both observables of the last qubit, which negates the
    /// Bell-Ardehali operator.
    pub fn with_last_pair_negated(&self) -> Self {
        let mut out = self.clone();
        let (a, b) = self.pairs[self.n() - 1];
        out.pairs[self.n() - 1] = (a.negated(), b.negated());
        out
    }

    fn check_fits(&self, state: &StateVector) -> Result<()> {
        if state.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: state.n(),
            });
        }
        Ok(())
    }
}

/// `(Re_k, Im_k)` over the first `k` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPair {
    pub re: HermitianOperator,
    pub im: HermitianOperator,
    pub k: usize,
}

pub fn re_im(settings: &MeasurementSettings, k: usize, cfg: &Config) -> Result<OperatorPair> {
    if k == 0 || k > settings.n() {
        return Err(Error::InvalidQubitCount {
            n: k,
            reason: "k must lie in 1..=n",
        });
    }
    cfg.check_dense(k)?;
    let (a1, b1) = settings.pair(0);
    let mut re = HermitianOperator::single(a1.matrix());
    let mut im = HermitianOperator::single(b1.matrix());
    for (a, b) in &settings.pairs()[1..k] {
        let next_re = &re.kron_single(a.matrix(), cfg)? - &im.kron_single(b.matrix(), cfg)?;
        let next_im = &im.kron_single(a.matrix(), cfg)? + &re.kron_single(b.matrix(), cfg)?;
        re = next_re;
        im = next_im;
    }
    Ok(OperatorPair { re, im, k })
}

/// `Re_{n-1} (x) (A_n - A'_n) + Im_{n-1} (x) (A_n + A'_n)`.
pub fn ardehali_operator(
    settings: &MeasurementSettings,
    cfg: &Config,
) -> Result<HermitianOperator> {
    let n = settings.n();
    cfg.check_dense(n)?;
    let OperatorPair { re, im, .. } = re_im(settings, n - 1, cfg)?;
    let (a, b) = settings.pair(n - 1);
    let diff = a.matrix() - b.matrix();
    let sum = a.matrix() + b.matrix();
    Ok(&re.kron_single(&diff, cfg)? + &im.kron_single(&sum, cfg)?)
}

/// `A (x) (B + B') + A' (x) (B - B')`.
pub fn chsh_operator(
    a: &SpinObservable,
    a_prime: &SpinObservable,
    b: &SpinObservable,
    b_prime: &SpinObservable,
) -> HermitianOperator {
    let cfg = Config::default();
    let plus = HermitianOperator::single(&(b.matrix() + b_prime.matrix()));
    let minus = HermitianOperator::single(&(b.matrix() - b_prime.matrix()));
    let first = HermitianOperator::single(a.matrix())
        .kron(&plus, &cfg)
        .expect("two qubits fit any cap");
    let second = HermitianOperator::single(a_prime.matrix())
        .kron(&minus, &cfg)
        .expect("two qubits fit any cap");
    &first + &second
}

/// The Bell-Mermin operator `Im_n`.
pub fn mermin_operator(settings: &MeasurementSettings, cfg: &Config) -> Result<HermitianOperator> {
    Ok(re_im(settings, settings.n(), cfg)?.im)
}

/// `sigma_x, sigma_y` on qubits `1..n-1`; on qubit `n` the x-y plane
/// directions at 135 and 45 degrees from the x axis.
pub fn canonical_settings(n: usize) -> Result<MeasurementSettings> {
    if n < 2 {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "the Bell-Ardehali operator needs at least two qubits",
        });
    }
    let mut pairs = vec![(SpinObservable::sigma_x(), SpinObservable::sigma_y()); n - 1];
    let h = FRAC_1_SQRT_2;
    pairs.push((
        SpinObservable::new(Vec3::new(-h, h, 0.0))?,
        SpinObservable::new(Vec3::new(h, h, 0.0))?,
    ));
    MeasurementSettings::new(pairs)
}

/// Per-qubit factors `M_j` with `<A_n> = Re <psi| M_1 (x) ... (x) M_n |psi>`.
///
/// `M_j = A_j + i A'_j` for `j < n` and `M_n = (1 - i) A_n - (1 + i) A'_n`.
/// This follows from `Re_{n-1} + i Im_{n-1} = (x)_j (A_j + i A'_j)` and the
/// Hermiticity of `A_n`, `A'_n`.
pub(crate) fn product_factors(settings: &MeasurementSettings) -> Vec<Mat2> {
    let i = C64::new(0.0, 1.0);
    let n = settings.n();
    settings
        .pairs()
        .iter()
        .enumerate()
        .map(|(j, (a, b))| {
            if j + 1 < n {
                a.matrix() + b.matrix() * i
            } else {
                a.matrix() * C64::new(1.0, -1.0) - b.matrix() * C64::new(1.0, 1.0)
            }
        })
        .collect()
}

/// `<psi|A_n|psi>` in `O(n 2^n)` without forming the dense operator.
pub fn ardehali_expectation(state: &StateVector, settings: &MeasurementSettings) -> Result<f64> {
    settings.check_fits(state)?;
    let factors = product_factors(settings);
    let mut phi = state.amplitudes().clone();
    crate::algebra::state::apply_product(phi.as_mut_slice(), state.n(), factors.iter().map(Some));
    Ok(state.amplitudes().dotc(&phi).re)
}

/// `2^{k/2}` with an exact textual form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPower(pub u32);

impl HalfPower {
    pub fn value(self) -> f64 {
        let whole = 2f64.powi((self.0 / 2) as i32);
        if self.0.is_multiple_of(2) {
            whole
        } else {
            whole * SQRT_2
        }
    }
}

impl fmt::Display for HalfPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{{{}/2}}", self.0)
    }
}

fn check_bound_n(n: usize) {
    assert!(n >= 2, "bounds are defined for n >= 2, got {n}");
}

/// Exponent `k` of the quantum bound `2^{n - 1/2} = 2^{k/2}`.
pub fn quantum_bound_exponent(n: usize) -> HalfPower {
    check_bound_n(n);
    HalfPower(2 * n as u32 - 1)
}

/// Exponent `k` of the local-realistic bound: `2^{n/2}` (even) or `2^{(n+1)/2}` (odd).
pub fn classical_bound_exponent(n: usize) -> HalfPower {
    check_bound_n(n);
    HalfPower(if n.is_multiple_of(2) {
        n as u32
    } else {
        n as u32 + 1
    })
}

/// `2^{(n-1)/2}` for even `n`, `2^{(n-2)/2}` for odd `n`.
pub fn violation_factor_exponent(n: usize) -> HalfPower {
    HalfPower(quantum_bound_exponent(n).0 - classical_bound_exponent(n).0)
}

pub fn quantum_bound(n: usize) -> f64 {
    quantum_bound_exponent(n).value()
}

pub fn classical_bound(n: usize) -> f64 {
    classical_bound_exponent(n).value()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub classical_bound: f64,
    pub quantum_bound: f64,
    pub violation_factor: f64,
}

impl BoundsReport {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            classical_bound: classical_bound(n),
            quantum_bound: quantum_bound(n),
            violation_factor: violation_factor_exponent(n).value(),
        }
    }
}

/// `(|0...0> - |1...1>) / sqrt(2)`.
pub fn ghz_state(n: usize) -> Result<StateVector> {
    let mut amps = vec![C64::new(0.0, 0.0); checked_dim(n, 1)?];
    amps[0] = C64::new(FRAC_1_SQRT_2, 0.0);
    *amps.last_mut().unwrap() = C64::new(-FRAC_1_SQRT_2, 0.0);
    StateVector::new(n, amps)
}

/// Equal superposition of the `n` single-excitation basis states.
pub fn w_state(n: usize) -> Result<StateVector> {
    let mut amps = vec![C64::new(0.0, 0.0); checked_dim(n, 2)?];
    let a = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    for j in 0..n {
        amps[1 << j] = a;
    }
    StateVector::new(n, amps)
}

fn checked_dim(n: usize, min: usize) -> Result<usize> {
    if n < min || n >= 31 {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "qubit count out of range",
        });
    }
    Ok(1 << n)
}

/// Scalar upper bound on `||Re_n^2||` as a function of `x_j = (A_j, A'_j)`.
///
/// Even `n`: `2^{n-1} (1 + (-1)^{n/2} prod x_j + sum_{k>=1} e_{2k}(s))`;
/// odd `n`: `2^{n-1} sum_{k>=0} e_{2k}(s)`, where `s_j = sqrt(1 - x_j^2)` and
/// `e_m` is the elementary symmetric polynomial of degree `m`. The maximum
/// over `[-1, 1]^n` is `2^{2(n-1)}`. For `n >= 3` it is reached only at
/// `x = 0`; for `n = 2` the function is `2(1 + cos(a + b))` with
/// `x = (sin a, sin b)`, so every point with `x_1 = -x_2` attains it.
pub fn re_square_upper_bound(x: &[f64]) -> Result<f64> {
    if let Some(&bad) = x.iter().find(|v| v.is_nan() || v.abs() > 1.0) {
        return Err(Error::OutOfRange(bad));
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "the bound needs at least two qubits",
        });
    }
    // e[m] = elementary symmetric polynomial of degree m in s_j
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for s in x.iter().map(|v| (1.0 - v * v).sqrt()) {
        for m in (1..=n).rev() {
            e[m] += e[m - 1] * s;
        }
    }
    let even_sum: f64 = e.iter().step_by(2).sum();
    let scale = 2f64.powi(n as i32 - 1);
    Ok(if n.is_multiple_of(2) {
        let sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        scale * (even_sum + sign * x.iter().product::<f64>())
    } else {
        scale * even_sum
    })
}
