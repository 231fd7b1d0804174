use proptest::prelude::*;

use ramanujan::algebra::{int, rat};
use ramanujan::walk::max_root_leq_sqrt;
use ramanujan::{Rational, UniPoly};

// Roots are rationals with small denominators; cases within 1e-9 of sqrt(q)
// are only possible when the root is exactly sqrt(q), which the float
// comparison then decides correctly too.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn agrees_with_float_bound(
        roots in prop::collection::vec((-40i64..=40, 1i64..=6), 1..6),
        q in 1u64..60,
    ) {
        let mut p = UniPoly::<Rational>::one();
        let mut max = f64::NEG_INFINITY;
        for &(a, b) in &roots {
            p = &p * &UniPoly::linear_root(&rat(a, b));
            max = max.max(a as f64 / b as f64);
        }
        let bound = (q as f64).sqrt();
        prop_assume!((max - bound).abs() > 1e-9 || (max * max - q as f64).abs() < 1e-9);
        prop_assert_eq!(max_root_leq_sqrt(&p, q), max <= bound + 1e-9);
    }

    #[test]
    fn symmetric_pairs(s in prop::collection::vec(0i64..80, 1..4), q in 1u64..80) {
        // prod (x^2 - s_i), max root sqrt(max s)
        let mut p = UniPoly::<Rational>::one();
        for &si in &s {
            p = &p * &UniPoly::new(vec![int(-si), int(0), int(1)]);
        }
        let max = *s.iter().max().unwrap();
        prop_assert_eq!(max_root_leq_sqrt(&p, q), max as u64 <= q);
    }
}
