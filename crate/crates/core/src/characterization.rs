//! Certification of states that reach the quantum bound `2^{n - 1/2}`.
//!
//! A state reaches the bound only if every pair `(A_j, A'_j)` anticommutes.
//! Then `A_j, A'_j, A''_j = A_j x A'_j` obey the Pauli algebra and each qubit
//! gets a basis of eigenvectors of its `A''_j`. In the product of those
//! bases the state has the two-amplitude form `a|0...0> + b|1...1>` with
//! `|a| = |b| = 1/sqrt(2)`, and the phases of `a`, `b` together with the
//! basis changes give local unitaries `U_j` with
//! `|state> = U_1 (x) ... (x) U_n |GHZ>`.
//!
//! Orientation: maximal states satisfy `A''_j A''_n |psi> = -|psi>` for every
//! `j < n`, so the last qubit is labeled by the eigenvalues of
//! `A'_n x A_n = -A''_n`. With that labeling the extreme indices `0...0` and
//! `1...1` carry the whole state.

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::algebra::random_unitary;
use crate::algebra::{
    observable_cross, observable_inner, unitarity_residual, Mat2, SpinObservable, StateVector,
    Vec3, C64,
};
use crate::bell::{
    ardehali_expectation, canonical_settings, ghz_state, quantum_bound, MeasurementSettings,
};
use crate::tolerances::{AMPLITUDE_BALANCE, ANTICOMMUTING_LOOSE, REPRESENTATION_ANTICOMMUTING};
use crate::{Error, Result};

const TAU: f64 = std::f64::consts::TAU;

/// `(A_j, A'_j)` for every qubit.
pub fn check_anticommutation(settings: &MeasurementSettings) -> Vec<f64> {
    settings
        .pairs()
        .iter()
        .map(|(a, b)| observable_inner(a, b))
        .collect()
}

/// Worst entrywise residual of `AA' = iA''`, `A'A'' = iA`, `A''A = iA'` and
/// `A^2 = A'^2 = A''^2 = I`, with `A'' = A x A'`.
pub fn pauli_triple_residual(a: &SpinObservable, a_prime: &SpinObservable) -> Result<f64> {
    let x = observable_inner(a, a_prime);
    if x.abs() > ANTICOMMUTING_LOOSE {
        return Err(Error::NotAnticommuting(x));
    }
    let i = C64::new(0.0, 1.0);
    let (p, q) = (a.matrix(), a_prime.matrix());
    let r = *observable_cross(a, a_prime).matrix();
    let id = Mat2::identity();
    let checks = [
        (p * q, r * i),
        (q * r, p * i),
        (r * p, q * i),
        (p * p, id),
        (q * q, id),
        (r * r, id),
    ];
    Ok(checks
        .iter()
        .map(|(lhs, rhs)| crate::algebra::max_abs_diff2(lhs, rhs))
        .fold(0.0, f64::max))
}

/// Eigenbasis of one qubit's `A''_j` (times its orientation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteBasis {
    /// Eigenvalue `+orientation` of `A''_j`.
    pub zero: Vector2<C64>,
    /// Eigenvalue `-orientation` of `A''_j`.
    pub one: Vector2<C64>,
    /// `A_j |0>_j = e^{-i alpha} |1>_j`, `alpha` in `[0, 2 pi)`.
    pub alpha: f64,
    /// `+1`, or `-1` on the last qubit.
    pub orientation: f64,
}

impl SiteBasis {
    /// `V` with `V|0> = |0>_j`, `V|1> = |1>_j`.
    pub fn change_of_basis(&self) -> Mat2 {
        Mat2::from_columns(&[self.zero, self.one])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationBasis {
    sites: Vec<SiteBasis>,
}

impl RepresentationBasis {
    /// The computational basis on every qubit, `alpha = 0`, orientation `+1`.
    pub fn computational(n: usize) -> Self {
        let site = SiteBasis {
            zero: Vector2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
            one: Vector2::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
            alpha: 0.0,
            orientation: 1.0,
        };
        Self {
            sites: vec![site; n],
        }
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[SiteBasis] {
        &self.sites
    }

    pub fn change_of_basis(&self) -> Vec<Mat2> {
        self.sites.iter().map(SiteBasis::change_of_basis).collect()
    }

    /// Worst residual of the defining equations against `settings`:
    /// `A''|0> = s|0>`, `A''|1> = -s|1>`, `A|0> = e^{-i alpha}|1>`,
    /// `A|1> = e^{i alpha}|0>`, `A'|0> = s i e^{-i alpha}|1>` and
    /// `A'|1> = -s i e^{i alpha}|0>`, where `s` is the site orientation and
    /// `A''` the normalized cross product.
    pub fn eigen_residual(&self, settings: &MeasurementSettings) -> f64 {
        let i = C64::new(0.0, 1.0);
        self.sites
            .iter()
            .zip(settings.pairs())
            .map(|(site, (a, b))| {
                let cross = unit_cross(a, b).unwrap_or(Vec3::ZERO);
                let r = *crate::algebra::SpinOperator::new(cross).matrix();
                let s = C64::from(site.orientation);
                let e = C64::from_polar(1.0, -site.alpha);
                let (z, o) = (site.zero, site.one);
                [
                    (r * z - z * s).norm(),
                    (r * o + o * s).norm(),
                    (a.matrix() * z - o * e).norm(),
                    (a.matrix() * o - z * e.conj()).norm(),
                    (b.matrix() * z - o * (s * i * e)).norm(),
                    (b.matrix() * o + z * (s * i * e.conj())).norm(),
                ]
                .into_iter()
                .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

fn unit_cross(a: &SpinObservable, b: &SpinObservable) -> Option<Vec3> {
    a.direction().cross(&b.direction()).normalized()
}

/// Unit eigenvector of `u . sigma` for eigenvalue `+1`, gauge-fixed so that
/// its largest-modulus component (lower index on ties) is real and positive.
fn plus_eigenvector(u: Vec3) -> Vector2<C64> {
    let v1 = Vector2::new(C64::new(1.0 + u.z, 0.0), C64::new(u.x, u.y));
    let v2 = Vector2::new(C64::new(u.x, -u.y), C64::new(1.0 - u.z, 0.0));
    let v = if v1.norm() >= v2.norm() { v1 } else { v2 };
    let v = v.unscale(v.norm());
    let lead = if v[1].norm() > v[0].norm() * (1.0 + 1e-12) {
        1
    } else {
        0
    };
    let phase = v[lead] / v[lead].norm();
    v * phase.conj()
}

/// Per-qubit `A''`-representation.
///
/// Fails with [`Error::DegenerateCross`] if `|A_j x A'_j| < 1 - 1e-6` on any
/// qubit; pairs are expected to anticommute within 1e-6.
pub fn build_representation(settings: &MeasurementSettings) -> Result<RepresentationBasis> {
    build_representation_within(settings, REPRESENTATION_ANTICOMMUTING)
}

fn build_representation_within(
    settings: &MeasurementSettings,
    cross_slack: f64,
) -> Result<RepresentationBasis> {
    let n = settings.n();
    let sites = settings
        .pairs()
        .iter()
        .enumerate()
        .map(|(j, (a, b))| {
            let cross = a.direction().cross(&b.direction());
            let norm = cross.norm();
            if norm < 1.0 - cross_slack {
                return Err(Error::DegenerateCross { site: j, norm });
            }
            let orientation = if j + 1 == n { -1.0 } else { 1.0 };
            let u = cross.scale(orientation / norm);
            let zero = plus_eigenvector(u);
            let one = plus_eigenvector(-u);
            let alpha = (-(one.dotc(&(a.matrix() * zero))).arg()).rem_euclid(TAU);
            Ok(SiteBasis {
                zero,
                one,
                alpha,
                orientation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RepresentationBasis { sites })
}

/// Amplitudes of a state in a product representation basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzForm {
    /// Amplitude of `|0...0>`.
    pub a: C64,
    /// Amplitude of `|1...1>`.
    pub b: C64,
    /// Total probability on every other basis index.
    pub leakage: f64,
}

pub fn ghz_form_check(state: &StateVector, basis: &RepresentationBasis) -> Result<GhzForm> {
    if state.n() != basis.n() {
        return Err(Error::DimensionMismatch {
            expected: basis.n(),
            actual: state.n(),
        });
    }
    let inverse: Vec<Mat2> = basis
        .change_of_basis()
        .iter()
        .map(|v| v.adjoint())
        .collect();
    let mut amps = state.amplitudes().clone();
    crate::algebra::state::apply_product(amps.as_mut_slice(), state.n(), inverse.iter().map(Some));
    let last = amps.len() - 1;
    let leakage = amps.as_slice()[1..last].iter().map(|z| z.norm_sqr()).sum();
    Ok(GhzForm {
        a: amps[0],
        b: amps[last],
        leakage,
    })
}

/// `phi = arg(sqrt2 a)`, `theta = arg(-sqrt2 b)`, both in `[0, 2 pi)`.
///
/// Requires `| |a| - 1/sqrt2 | <= 1e-6` and the same for `b`.
pub fn extract_phases(a: C64, b: C64) -> Result<(f64, f64)> {
    extract_phases_within(a, b, AMPLITUDE_BALANCE)
}

fn extract_phases_within(a: C64, b: C64, tol: f64) -> Result<(f64, f64)> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    if (a.norm() - h).abs() > tol || (b.norm() - h).abs() > tol {
        return Err(Error::NotBalanced(a.norm(), b.norm()));
    }
    Ok((a.arg().rem_euclid(TAU), (-b).arg().rem_euclid(TAU)))
}

/// `|psi> = U_1 (x) ... (x) U_n |GHZ>` together with the phases used.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitaryFactorization {
    pub unitaries: Vec<Mat2>,
    pub phi: f64,
    pub theta: f64,
}

impl LocalUnitaryFactorization {
    pub fn n(&self) -> usize {
        self.unitaries.len()
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.unitaries
            .iter()
            .map(unitarity_residual)
            .fold(0.0, f64::max)
    }
}

/// `U_1 = V_1 diag(e^{i phi}, 1)`, `U_2 = V_2 diag(1, e^{i theta})`,
/// `U_j = V_j` otherwise.
pub fn build_local_unitaries(
    basis: &RepresentationBasis,
    phi: f64,
    theta: f64,
) -> LocalUnitaryFactorization {
    let mut unitaries = basis.change_of_basis();
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    unitaries[0] *= Mat2::new(C64::from_polar(1.0, phi), zero, zero, one);
    unitaries[1] *= Mat2::new(one, zero, zero, C64::from_polar(1.0, theta));
    LocalUnitaryFactorization {
        unitaries,
        phi,
        theta,
    }
}

pub fn reconstruct(f: &LocalUnitaryFactorization) -> Result<StateVector> {
    ghz_state(f.n())?.transformed(&f.unitaries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Certified,
    NotMaximal,
    ConditionsViolated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub verdict: Verdict,
    /// `|<A_n>|` after any sign flip; equals `<A_n>` when not flipped.
    pub achieved_value: f64,
    pub quantum_bound: f64,
    pub anticommutation_residuals: Vec<f64>,
    pub ghz_form_leakage: Option<f64>,
    pub phases: Option<(f64, f64)>,
    pub fidelity: Option<f64>,
    pub factorization: Option<LocalUnitaryFactorization>,
    /// The state reached `-2^{n-1/2}`; certified against settings with the
    /// last pair negated.
    pub settings_flipped: bool,
}

/// Runs the full certification pipeline.
///
/// Tolerances: value `tol` (relative), anticommutation `sqrt(tol)`,
/// leakage `tol`, amplitude balance `max(1e-6, sqrt(tol))`, fidelity
/// `100 tol`.
pub fn certify_maximal_violation(
    state: &StateVector,
    settings: &MeasurementSettings,
    tol: f64,
) -> Result<CertificationReport> {
    if state.n() != settings.n() {
        return Err(Error::DimensionMismatch {
            expected: settings.n(),
            actual: state.n(),
        });
    }
    let n = settings.n();
    let bound = quantum_bound(n);
    let threshold = (1.0 - tol) * bound;

    let mut value = ardehali_expectation(state, settings)?;
    let settings_flipped = value <= -threshold;
    let flipped;
    let settings = if settings_flipped {
        value = -value;
        flipped = settings.with_last_pair_negated();
        &flipped
    } else {
        settings
    };

    let mut report = CertificationReport {
        verdict: Verdict::NotMaximal,
        achieved_value: value,
        quantum_bound: bound,
        anticommutation_residuals: check_anticommutation(settings),
        ghz_form_leakage: None,
        phases: None,
        fidelity: None,
        factorization: None,
        settings_flipped,
    };
    if value < threshold {
        return Ok(report);
    }
    report.verdict = Verdict::ConditionsViolated;
    if report
        .anticommutation_residuals
        .iter()
        .any(|x| x.abs() > tol.sqrt())
    {
        return Ok(report);
    }

    // |x| <= sqrt(tol) implies 1 - |A x A'| = 1 - sqrt(1 - x^2) <= tol
    let basis = build_representation_within(settings, REPRESENTATION_ANTICOMMUTING.max(tol))?;
    let form = ghz_form_check(state, &basis)?;
    report.ghz_form_leakage = Some(form.leakage);
    if form.leakage > tol {
        return Ok(report);
    }
    let (phi, theta) =
        match extract_phases_within(form.a, form.b, AMPLITUDE_BALANCE.max(tol.sqrt())) {
            Ok(p) => p,
            Err(Error::NotBalanced(..)) => return Ok(report),
            Err(e) => return Err(e),
        };
    report.phases = Some((phi, theta));
    let factorization = build_local_unitaries(&basis, phi, theta);
    let fidelity = reconstruct(&factorization)?.fidelity(state);
    report.fidelity = Some(fidelity);
    if fidelity >= 1.0 - 100.0 * tol {
        report.verdict = Verdict::Certified;
        report.factorization = Some(factorization);
    }
    Ok(report)
}

/// A GHZ state under random local unitaries, with the canonical settings
/// rotated along so that it still reaches the quantum bound.
#[derive(Debug, Clone, PartialEq)]
pub struct RotatedGhz {
    pub state: StateVector,
    pub unitaries: Vec<Mat2>,
    pub settings: MeasurementSettings,
}

pub fn random_rotated_ghz<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Result<RotatedGhz> {
    let unitaries: Vec<Mat2> = (0..n).map(|_| random_unitary(rng)).collect();
    Ok(RotatedGhz {
        state: ghz_state(n)?.transformed(&unitaries)?,
        settings: canonical_settings(n)?.conjugated_by(&unitaries)?,
        unitaries,
    })
}
