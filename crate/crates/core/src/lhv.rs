//! Exhaustive local-hidden-variable bounds.
//!
//! A deterministic strategy fixes `a_j, a'_j` in `{-1, +1}` for every qubit.
//! Its value is the Bell-Ardehali polynomial with observables replaced by
//! those numbers: with `R + iM = prod_{j<n} (a_j + i a'_j)` the value is
//! `R (a_n - a'_n) + M (a_n + a'_n)`. Everything here is integer arithmetic.

use rayon::prelude::*;

use crate::tolerances::{DISTRIBUTION_SUM, LHV_ENUMERATION_CAP};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    values: Vec<(i8, i8)>,
}

impl DeterministicStrategy {
    pub fn new(values: Vec<(i8, i8)>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidQubitCount {
                n: values.len(),
                reason: "strategies need at least two qubits",
            });
        }
        if let Some(&(a, b)) = values.iter().find(|(a, b)| a.abs() != 1 || b.abs() != 1) {
            return Err(Error::OutOfRange(if a.abs() != 1 { a } else { b } as f64));
        }
        Ok(Self { values })
    }

    /// Bit `2j` of `index` set means `a_j = -1`, bit `2j + 1` means `a'_j = -1`.
    pub fn from_index(n: usize, index: u64) -> Self {
        let sign = |bit: usize| if index >> bit & 1 == 1 { -1 } else { 1 };
        Self {
            values: (0..n).map(|j| (sign(2 * j), sign(2 * j + 1))).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[(i8, i8)] {
        &self.values
    }
}

pub fn strategy_value(s: &DeterministicStrategy) -> i64 {
    value_of(s.values.iter().map(|&(a, b)| (a as i64, b as i64)), s.n())
}

fn value_of(values: impl Iterator<Item = (i64, i64)>, n: usize) -> i64 {
    let (mut re, mut im) = (1i64, 0i64);
    for (j, (a, b)) in values.enumerate() {
        if j + 1 < n {
            (re, im) = (re * a - im * b, im * a + re * b);
        } else {
            return re * (a - b) + im * (a + b);
        }
    }
    unreachable!("strategy shorter than n")
}

#[inline]
fn value_of_index(n: usize, index: u64) -> i64 {
    let sign = |bit: usize| 1 - 2 * ((index >> bit) & 1) as i64;
    value_of((0..n).map(|j| (sign(2 * j), sign(2 * j + 1))), n)
}

/// `max |value|` over all `4^n` deterministic strategies.
pub fn lhv_max(n: usize) -> Result<i64> {
    lhv_max_with(n, true)
}

/// With `symmetry_reduced`, only strategies with `a_1 = +1` are visited:
/// negating both numbers of one qubit negates the value, so `max |value|`
/// is unchanged.
pub fn lhv_max_with(n: usize, symmetry_reduced: bool) -> Result<i64> {
    if n > LHV_ENUMERATION_CAP {
        return Err(Error::EnumerationTooLarge {
            n,
            cap: LHV_ENUMERATION_CAP,
        });
    }
    if n < 2 {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "strategies need at least two qubits",
        });
    }
    let total = 1u64 << (2 * n);
    let step = if symmetry_reduced { 2 } else { 1 };
    // chunk on the high bits; bit 0 (a_1) is skipped when reducing
    let chunk = 1u64 << (2 * n).min(12);
    let best = (0..total / chunk)
        .into_par_iter()
        .map(|c| {
            (c * chunk..(c + 1) * chunk)
                .step_by(step)
                .map(|idx| value_of_index(n, idx).abs())
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}

/// Convex combination of strategy values.
pub fn mixed_strategy_value(weights: &[(DeterministicStrategy, f64)]) -> Result<f64> {
    let Some((first, _)) = weights.first() else {
        return Err(Error::InvalidDistribution("empty distribution".into()));
    };
    if let Some((_, w)) = weights.iter().find(|(_, w)| w.is_nan() || *w < 0.0) {
        return Err(Error::InvalidDistribution(format!("negative weight {w}")));
    }
    if weights.iter().any(|(s, _)| s.n() != first.n()) {
        return Err(Error::InvalidDistribution(
            "strategies over different n".into(),
        ));
    }
    let sum: f64 = weights.iter().map(|(_, w)| w).sum();
    if (sum - 1.0).abs() > DISTRIBUTION_SUM {
        return Err(Error::InvalidDistribution(format!("weights sum to {sum}")));
    }
    Ok(weights
        .iter()
        .map(|(s, w)| w * strategy_value(s) as f64)
        .sum())
}
