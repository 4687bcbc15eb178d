use proptest::prelude::*;

use vp_space::{
    abs_window_mean, luxemburg_norm, modular_rho, paranorm_h, vp_mean, ExponentSequence,
    FiniteSequence, WeightSequence,
};

fn weights() -> impl Strategy<Value = WeightSequence> {
    prop_oneof![
        Just(WeightSequence::Identity),
        (1.0f64..20.0).prop_map(|r| WeightSequence::rate(r).unwrap()),
        (prop::collection::vec(0.0f64..1.0, 0..8), 0.05f64..=1.0).prop_map(|(steps, s)| {
            let mut v = vec![1.0];
            for d in steps {
                let last = *v.last().unwrap();
                v.push(last + d);
            }
            WeightSequence::table(v, s).unwrap()
        }),
    ]
}

fn exponents() -> impl Strategy<Value = ExponentSequence> {
    prop_oneof![
        (1.05f64..5.0).prop_map(|p| ExponentSequence::constant(p).unwrap()),
        (prop::collection::vec(1.05f64..5.0, 1..6), 1.05f64..5.0)
            .prop_map(|(v, t)| ExponentSequence::table(v, t).unwrap()),
    ]
}

fn sequence() -> impl Strategy<Value = FiniteSequence> {
    prop::collection::vec(-10.0f64..10.0, 1..24)
        .prop_filter("nonzero", |v| v.iter().any(|&t| t != 0.0))
        .prop_map(|v| FiniteSequence::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn windows_stay_inside_one_to_k(w in weights(), k in 1usize..5000) {
        let win = w.window(k);
        prop_assert!(1 <= win.lo && win.lo <= win.hi && win.hi == k);
        let step = w.weight_at(k + 1) - w.weight_at(k);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&step));
    }

    #[test]
    fn means_are_homogeneous(w in weights(), x in sequence(), alpha in -5.0f64..5.0, k in 1usize..40) {
        let m = vp_mean(&x, &w, k);
        let scaled = vp_mean(&x.scaled(alpha), &w, k);
        prop_assert!((scaled - alpha * m).abs() <= 1e-12 * (alpha * m).abs().max(1e-300) + 1e-13);
        let a = abs_window_mean(&x, &w, k);
        let sa = abs_window_mean(&x.scaled(alpha), &w, k);
        prop_assert!((sa - alpha.abs() * a).abs() <= 1e-12 * (alpha.abs() * a) + 1e-13);
    }

    #[test]
    fn modular_is_even_and_certified(w in weights(), e in exponents(), x in sequence()) {
        let a = modular_rho(&x, &w, &e, 1e-10).unwrap();
        let b = modular_rho(&x.neg(), &w, &e, 1e-10).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.estimate > 0.0);
        let tight = modular_rho(&x, &w, &e, 1e-12).unwrap();
        prop_assert!((a.estimate - tight.estimate).abs() <= a.error_bound + tight.error_bound);
    }

    #[test]
    fn luxemburg_is_homogeneous(w in weights(), e in exponents(), x in sequence(), c in 0.01f64..100.0) {
        let l = luxemburg_norm(&x, &w, &e, 1e-9).unwrap().value;
        let lc = luxemburg_norm(&x.scaled(c), &w, &e, 1e-9).unwrap().value;
        prop_assert!((lc - c * l).abs() <= 1e-8 * c * l, "{} vs {}", lc, c * l);
    }

    #[test]
    fn paranorm_triangle(w in weights(), e in exponents(), x in sequence(), y in sequence()) {
        let hx = paranorm_h(&x, &w, &e, 1e-10).unwrap();
        let hy = paranorm_h(&y, &w, &e, 1e-10).unwrap();
        let hxy = paranorm_h(&x.add(&y), &w, &e, 1e-10).unwrap();
        prop_assert!(hxy.lower() <= hx.upper() + hy.upper() + 1e-12);
    }
}
