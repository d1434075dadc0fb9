//! Serde mirrors of the on-disk formats.
//!
//! Complex numbers are `[re, im]` pairs and 2x2 matrices are row-major
//! `[[z00, z01], [z10, z11]]`. Parsing text is left to the caller.

use serde::{Deserialize, Serialize};

use crate::algebra::{Mat2, SpinObservable, StateVector, Vec3, C64};
use crate::bell::{
    ardehali_expectation, canonical_settings, classical_bound_exponent, ghz_state,
    quantum_bound_exponent, violation_factor_exponent, MeasurementSettings,
};
use crate::characterization::{CertificationReport, Verdict};
use crate::lhv::lhv_max;
use crate::optimizer::OptimizationResult;
use crate::tolerances::STATE_FILE_NORM;
use crate::{Error, Result};

pub type ComplexJson = [f64; 2];
pub type MatrixJson = [[ComplexJson; 2]; 2];

fn complex_json(z: C64) -> ComplexJson {
    [z.re, z.im]
}

pub fn matrix_json(m: &Mat2) -> MatrixJson {
    [
        [complex_json(m[(0, 0)]), complex_json(m[(0, 1)])],
        [complex_json(m[(1, 0)]), complex_json(m[(1, 1)])],
    ]
}

pub fn matrix_from_json(m: &MatrixJson) -> Mat2 {
    let z = |c: ComplexJson| C64::new(c[0], c[1]);
    Mat2::new(z(m[0][0]), z(m[0][1]), z(m[1][0]), z(m[1][1]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub n: usize,
    pub amplitudes: Vec<ComplexJson>,
}

impl StateFile {
    pub fn from_state(state: &StateVector) -> Self {
        Self {
            n: state.n(),
            amplitudes: state
                .amplitudes()
                .iter()
                .copied()
                .map(complex_json)
                .collect(),
        }
    }

    /// Checks length and norm (within 1e-8), then renormalizes.
    pub fn to_state(&self) -> Result<StateVector> {
        let amps: Vec<C64> = self
            .amplitudes
            .iter()
            .map(|c| C64::new(c[0], c[1]))
            .collect();
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq.sqrt() - 1.0).abs() > STATE_FILE_NORM {
            return Err(Error::NotNormalized(norm_sq));
        }
        StateVector::normalized(self.n, amps)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettingsFile {
    pub n: usize,
    pub pairs: Vec<[[f64; 3]; 2]>,
}

impl SettingsFile {
    pub fn from_settings(s: &MeasurementSettings) -> Self {
        Self {
            n: s.n(),
            pairs: s
                .directions()
                .into_iter()
                .map(|(a, b)| [a.to_array(), b.to_array()])
                .collect(),
        }
    }

    pub fn to_settings(&self) -> Result<MeasurementSettings> {
        if self.pairs.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: self.pairs.len(),
            });
        }
        self.pairs
            .iter()
            .map(|[a, b]| {
                Ok((
                    SpinObservable::new(Vec3::from(*a))?,
                    SpinObservable::new(Vec3::from(*b))?,
                ))
            })
            .collect::<Result<Vec<_>>>()
            .and_then(MeasurementSettings::new)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitariesFile {
    pub n: usize,
    pub unitaries: Vec<MatrixJson>,
}

impl UnitariesFile {
    pub fn from_unitaries(unitaries: &[Mat2]) -> Self {
        Self {
            n: unitaries.len(),
            unitaries: unitaries.iter().map(matrix_json).collect(),
        }
    }

    pub fn to_unitaries(&self) -> Vec<Mat2> {
        self.unitaries.iter().map(matrix_from_json).collect()
    }
}

/// Fields that were not reached by the pipeline serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub achieved: f64,
    pub bound: f64,
    pub anticommutation: Vec<f64>,
    pub leakage: Option<f64>,
    pub phases: Option<[f64; 2]>,
    pub unitaries: Option<Vec<MatrixJson>>,
    pub settings_flipped: bool,
    pub fidelity: Option<f64>,
}

impl From<&CertificationReport> for Certificate {
    fn from(r: &CertificationReport) -> Self {
        Self {
            verdict: r.verdict,
            achieved: r.achieved_value,
            bound: r.quantum_bound,
            anticommutation: r.anticommutation_residuals.clone(),
            leakage: r.ghz_form_leakage,
            phases: r.phases.map(|(phi, theta)| [phi, theta]),
            unitaries: r
                .factorization
                .as_ref()
                .map(|f| f.unitaries.iter().map(matrix_json).collect()),
            settings_flipped: r.settings_flipped,
            fidelity: r.fidelity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeOutput {
    pub value: f64,
    pub settings: SettingsFile,
    pub sweeps_used: usize,
    pub converged: bool,
    pub restarts: usize,
    pub seed: u64,
}

impl OptimizeOutput {
    pub fn new(r: &OptimizationResult, restarts: usize, seed: u64) -> Self {
        Self {
            value: r.best_value,
            settings: SettingsFile::from_settings(&r.best_settings),
            sweeps_used: r.sweeps_used,
            converged: r.converged,
            restarts,
            seed,
        }
    }
}

/// One line of the bounds table. `*_exact` fields hold `2^{k/2}` strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub classical_bound: f64,
    pub classical_bound_exact: String,
    /// Exhaustive deterministic-strategy maximum equals `classical_bound`.
    pub lhv_confirmed: bool,
    pub quantum_bound: f64,
    pub quantum_bound_exact: String,
    pub ghz_value: f64,
    pub violation_factor: f64,
    pub violation_factor_exact: String,
}

impl ReportRow {
    pub fn compute(n: usize) -> Result<Self> {
        let classical = classical_bound_exponent(n);
        let quantum = quantum_bound_exponent(n);
        let factor = violation_factor_exponent(n);
        let lhv = lhv_max(n)?;
        Ok(Self {
            n,
            classical_bound: classical.value(),
            classical_bound_exact: classical.to_string(),
            lhv_confirmed: lhv as f64 == classical.value(),
            quantum_bound: quantum.value(),
            quantum_bound_exact: quantum.to_string(),
            ghz_value: ardehali_expectation(&ghz_state(n)?, &canonical_settings(n)?)?,
            violation_factor: factor.value(),
            violation_factor_exact: factor.to_string(),
        })
    }
}
