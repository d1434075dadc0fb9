use ardehali::lhv::{lhv_max, lhv_max_with};
use ardehali_oracle::lhv_max_brute;

#[test]
fn enumeration_matches_diagonal_brute_force() {
    for n in 2..=5 {
        let brute = lhv_max_brute(n);
        assert_eq!(lhv_max(n).unwrap() as f64, brute);
        assert_eq!(lhv_max_with(n, false).unwrap() as f64, brute);
    }
}
