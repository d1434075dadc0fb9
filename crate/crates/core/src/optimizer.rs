//! See-saw search over measurement settings for a fixed state.
//!
//! `<A_n>` is linear in each direction vector when all others are held
//! fixed, so `<A_n> = c . a_j + c' . a'_j` for coefficient vectors `c`, `c'`
//! that do not depend on qubit `j`'s own directions. Each update sets
//! `a_j = c / |c|` (then `a'_j = c' / |c'|`), which can only raise the value.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::algebra::{max_eigenpair, pauli, SpinObservable, StateVector, Vec3, C64};
use crate::bell::{ardehali_expectation, ardehali_operator, product_factors, MeasurementSettings};
use crate::tolerances::Config;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationConfig {
    pub restarts: usize,
    pub max_sweeps: usize,
    pub value_tol: f64,
    pub seed: u64,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_sweeps: 500,
            value_tol: 1e-10,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub best_value: f64,
    pub best_settings: MeasurementSettings,
    pub sweeps_used: usize,
    pub converged: bool,
}

// directions this short are treated as zero and leave the observable alone
const ZERO_COEFFICIENT: f64 = 1e-14;

/// `(c, c')` with `<A_n> = c . a_j + c' . a'_j` for qubit `site` (0-based).
pub fn coefficient_vectors(
    state: &StateVector,
    settings: &MeasurementSettings,
    site: usize,
) -> Result<(Vec3, Vec3)> {
    let n = settings.n();
    if state.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: state.n(),
        });
    }
    if site >= n {
        return Err(Error::InvalidQubitCount {
            n: site,
            reason: "site index out of range",
        });
    }
    let factors = product_factors(settings);
    let mut rest = state.amplitudes().clone();
    crate::algebra::state::apply_product(
        rest.as_mut_slice(),
        n,
        factors
            .iter()
            .enumerate()
            .map(|(j, m)| (j != site).then_some(m)),
    );
    // z_k = <psi| sigma_k on `site`, M_j elsewhere |psi>
    let z: Vec<C64> = pauli::all()
        .iter()
        .map(|p| {
            let mut v = rest.clone();
            crate::algebra::state::apply_site(v.as_mut_slice(), n, site, p);
            state.amplitudes().dotc(&v)
        })
        .collect();
    let (c, c_prime): (Vec<f64>, Vec<f64>) = if site + 1 < n {
        // M_j = sum_k (a_k + i a'_k) sigma_k
        z.iter().map(|z| (z.re, -z.im)).unzip()
    } else {
        // M_n = sum_k ((1 - i) a_k - (1 + i) a'_k) sigma_k
        z.iter().map(|z| (z.re + z.im, z.im - z.re)).unzip()
    };
    Ok((
        Vec3::new(c[0], c[1], c[2]),
        Vec3::new(c_prime[0], c_prime[1], c_prime[2]),
    ))
}

fn update_site(
    state: &StateVector,
    settings: &mut MeasurementSettings,
    site: usize,
    mut after_update: impl FnMut(&MeasurementSettings) -> Result<()>,
) -> Result<f64> {
    let (c, c_prime) = coefficient_vectors(state, settings, site)?;
    if c.norm() > ZERO_COEFFICIENT {
        settings.set_first(site, SpinObservable::along(c).expect("nonzero"));
    }
    after_update(settings)?;
    if c_prime.norm() > ZERO_COEFFICIENT {
        settings.set_second(site, SpinObservable::along(c_prime).expect("nonzero"));
    }
    after_update(settings)?;
    let (a, b) = settings.pair(site);
    Ok(c.dot(&a.direction()) + c_prime.dot(&b.direction()))
}

/// One pass over qubits `1..n`; returns `<A_n>` after the pass.
pub fn sweep(state: &StateVector, settings: &mut MeasurementSettings) -> Result<f64> {
    let mut value = 0.0;
    for site in 0..settings.n() {
        value = update_site(state, settings, site, |_| Ok(()))?;
    }
    Ok(value)
}

/// Like [`sweep`], but returns `<A_n>` recomputed from scratch after each of
/// the `2n` single-observable updates.
pub fn sweep_traced(state: &StateVector, settings: &mut MeasurementSettings) -> Result<Vec<f64>> {
    let mut trace = Vec::with_capacity(2 * settings.n());
    for site in 0..settings.n() {
        update_site(state, settings, site, |s| {
            trace.push(ardehali_expectation(state, s)?);
            Ok(())
        })?;
    }
    Ok(trace)
}

/// A single see-saw run from `initial`.
pub fn see_saw_from(
    state: &StateVector,
    initial: MeasurementSettings,
    cfg: &OptimizationConfig,
) -> Result<OptimizationResult> {
    let mut settings = initial;
    let mut value = ardehali_expectation(state, &settings)?;
    let mut sweeps_used = 0;
    let mut converged = false;
    while sweeps_used < cfg.max_sweeps {
        let next = sweep(state, &mut settings)?;
        sweeps_used += 1;
        let improvement = next - value;
        value = next;
        if improvement < cfg.value_tol {
            converged = true;
            break;
        }
    }
    Ok(OptimizationResult {
        best_value: value,
        best_settings: settings,
        sweeps_used,
        converged,
    })
}

/// Uniformly random directions on the sphere.
pub fn random_settings<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<MeasurementSettings> {
    let mut unit = || loop {
        let v = Vec3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if let Some(a) = SpinObservable::along(v) {
            return a;
        }
    };
    MeasurementSettings::new((0..n).map(|_| (unit(), unit())).collect())
}

/// Best of `cfg.restarts` see-saw runs from seeded random settings.
///
/// Restarts run in parallel; ties keep the lowest restart index.
pub fn see_saw(state: &StateVector, cfg: &OptimizationConfig) -> Result<OptimizationResult> {
    let n = state.n();
    if n < 2 {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "the Bell-Ardehali operator needs at least two qubits",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let starts = (0..cfg.restarts.max(1))
        .map(|_| random_settings(n, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let runs = starts
        .into_par_iter()
        .map(|s| see_saw_from(state, s, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(runs
        .into_iter()
        .reduce(|best, r| {
            if r.best_value > best.best_value {
                r
            } else {
                best
            }
        })
        .expect("at least one restart"))
}

/// Top eigenpair of the Bell-Ardehali operator for fixed settings.
pub fn optimal_state(settings: &MeasurementSettings, cfg: &Config) -> Result<(f64, StateVector)> {
    max_eigenpair(&ardehali_operator(settings, cfg)?, &cfg.eigen)
}
