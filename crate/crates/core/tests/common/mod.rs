#![allow(dead_code)]

use ardehali::optimizer::random_settings;
use ardehali::{HermitianOperator, MeasurementSettings, SpinObservable, Vec3};
use ardehali_oracle::{Pair, M};
use rand::Rng;

pub fn pairs(s: &MeasurementSettings) -> Vec<Pair> {
    s.directions()
        .into_iter()
        .map(|(a, b)| (a.to_array(), b.to_array()))
        .collect()
}

pub fn random(n: usize, rng: &mut impl Rng) -> MeasurementSettings {
    random_settings(n, rng).unwrap()
}

/// Random settings with `A_j` orthogonal to `A'_j` on every qubit.
pub fn random_anticommuting(n: usize, rng: &mut impl Rng) -> MeasurementSettings {
    let s = random_settings(n, rng).unwrap();
    let pairs = s
        .directions()
        .into_iter()
        .map(|(a, w)| {
            let b = (w - a.scale(a.dot(&w))).normalized().unwrap();
            (
                SpinObservable::new(a).unwrap(),
                SpinObservable::new(b).unwrap(),
            )
        })
        .collect();
    MeasurementSettings::new(pairs).unwrap()
}

pub fn max_abs_diff(h: &HermitianOperator, m: &M) -> f64 {
    (h.matrix() - m)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn unit(v: [f64; 3]) -> Vec3 {
    Vec3::from(v).normalized().unwrap()
}
