//! Operator constructions against the expansion oracle.

mod common;

use ardehali::bell::{mermin_operator, re_im, re_square_upper_bound};
use ardehali::{
    ardehali_operator, chsh_operator, operator_norm, Config, EigenConfig, SpinObservable,
};
use ardehali_oracle as oracle;
use common::{max_abs_diff, pairs, random, random_anticommuting};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn recursion_matches_signed_expansion() {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 1..=4 {
        for _ in 0..20 {
            let s = random(k.max(2), &mut rng);
            let p = pairs(&s);
            let got = re_im(&s, k, &cfg).unwrap();
            let (re, im) = oracle::re_im_expansion(&p[..k]);
            assert!(max_abs_diff(&got.re, &re) <= 1e-12);
            assert!(max_abs_diff(&got.im, &im) <= 1e-12);
        }
    }
}

#[test]
fn full_operators_match_oracle() {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=5 {
        let s = random(n, &mut rng);
        let p = pairs(&s);
        assert!(
            max_abs_diff(&ardehali_operator(&s, &cfg).unwrap(), &oracle::ardehali(&p)) <= 1e-12
        );
        let (_, im) = oracle::re_im_expansion(&p);
        assert!(max_abs_diff(&mermin_operator(&s, &cfg).unwrap(), &im) <= 1e-12);
    }
    let s = random(2, &mut rng);
    let [(a, ap), (b, bp)] = s.pairs() else {
        unreachable!()
    };
    let p = pairs(&s);
    let want = oracle::chsh(p[0].0, p[0].1, p[1].0, p[1].1);
    assert!(max_abs_diff(&chsh_operator(a, ap, b, bp), &want) <= 1e-12);
}

#[test]
fn squared_operator_identities() {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 2..=5 {
        let scale = 2f64.powi(2 * (n as i32 - 1));
        for trial in 0..10 {
            // the cross-product form of A_n^2 needs anticommuting pairs at odd n
            let s = if n % 2 == 1 || trial % 2 == 0 {
                random_anticommuting(n, &mut rng)
            } else {
                random(n, &mut rng)
            };
            let p = pairs(&s);
            let re = re_im(&s, n, &cfg).unwrap().re;
            assert!(max_abs_diff(&re.square(), &oracle::re_square_rhs(&p)) <= 1e-10 * scale);

            let a2 = ardehali_operator(&s, &cfg).unwrap().square();
            assert!(max_abs_diff(&a2, &oracle::ardehali_square_cross_form(&p)) <= 1e-10 * scale);
            assert!(
                max_abs_diff(&a2, &oracle::ardehali_square_commutator_form(&p)) <= 1e-10 * scale
            );
        }
        // the first two forms hold for any settings
        let s = random(n, &mut rng);
        let p = pairs(&s);
        let re = re_im(&s, n, &cfg).unwrap().re;
        assert!(max_abs_diff(&re.square(), &oracle::re_square_rhs(&p)) <= 1e-10 * scale);
        let a2 = ardehali_operator(&s, &cfg).unwrap().square();
        assert!(max_abs_diff(&a2, &oracle::ardehali_square_commutator_form(&p)) <= 1e-10 * scale);
    }
}

#[test]
fn norm_bounds_on_random_settings() {
    let cfg = Config::default();
    let eig = EigenConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 2..=6 {
        let half = 2f64.powi(n as i32 - 1);
        for _ in 0..50 {
            let s = random(n, &mut rng);
            let pair = re_im(&s, n, &cfg).unwrap();
            assert!(operator_norm(&pair.re, &eig).unwrap() <= half + 1e-8);
            assert!(operator_norm(&pair.im, &eig).unwrap() <= half + 1e-8);
            let a = ardehali_operator(&s, &cfg).unwrap();
            assert!(operator_norm(&a, &eig).unwrap() <= 2f64.powf(n as f64 - 0.5) + 1e-8);
        }
    }
}

#[test]
fn bound_function_dominates_and_is_tight() {
    // with every A''_j along z the bound is attained
    let cfg = Config::default();
    for x in [[0.3f64, -0.7, 0.1], [0.0, 0.5, 0.9], [-0.2, -0.2, 0.6]] {
        for n in 2..=3 {
            let pairs = (0..n)
                .map(|j| {
                    let t = x[j].acos();
                    (
                        SpinObservable::sigma_x(),
                        SpinObservable::new([t.cos(), t.sin(), 0.0].into()).unwrap(),
                    )
                })
                .collect();
            let s = ardehali::MeasurementSettings::new(pairs).unwrap();
            let re = re_im(&s, n, &cfg).unwrap().re;
            let norm = oracle::spectral_norm(&re.square().matrix().clone());
            let bound = re_square_upper_bound(&x[..n]).unwrap();
            assert!(
                (norm - bound).abs() <= 1e-10 * bound,
                "n={n} x={x:?}: {norm} vs {bound}"
            );
        }
    }
}
