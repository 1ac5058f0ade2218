use adegree_core::catalog::catalog_map;
use adegree_core::heights::{
    alpha_estimate, canonical_plus, default_window, orbit_profile, weak_lower_canonical,
};
use adegree_core::{Budget, ProjPoint};
use proptest::prelude::*;

/// Stable morphisms of the plane in the catalog.
const MORPHISMS: [&str; 3] = ["squaring", "fixed-point", "3.5"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rescaling_the_start_changes_nothing(x in -50i64..=50, y in -50i64..=50, z in 1i64..=50,
                                           k in prop::sample::select(vec![-7i64, -1, 2, 3, 10])) {
        let f = catalog_map("fibonacci").unwrap();
        let p = ProjPoint::from_ints(&[x, y, z]).unwrap();
        let pk = ProjPoint::from_ints(&[k * x, k * y, k * z]).unwrap();
        let a = orbit_profile(&f, &p, 10, Budget::default()).unwrap();
        let b = orbit_profile(&f, &pk, 10, Budget::default()).unwrap();
        prop_assert_eq!(&a, &b);
        if a.truncated.is_none() {
            let ea = alpha_estimate(&a, default_window(a.steps())).unwrap();
            let eb = alpha_estimate(&b, default_window(b.steps())).unwrap();
            prop_assert!((ea.upper - eb.upper).abs() <= 1e-6);
        }
    }

    #[test]
    fn canonical_samples_converge_geometrically(idx in 0usize..MORPHISMS.len(),
                                                x in -20i64..=20, y in -20i64..=20, z in 1i64..=20) {
        let f = catalog_map(MORPHISMS[idx]).unwrap();
        let d = f.degree();
        let p = ProjPoint::from_ints(&[x, y, z]).unwrap();
        let prof = orbit_profile(&f, &p, 10, Budget::default()).unwrap();
        prop_assert!(prof.truncated.is_none());
        let plus = canonical_plus(&prof, d).unwrap();
        let c = plus.cauchy_constant.unwrap();
        prop_assert!(c.is_finite());
        let cf = f.height_constant_log();
        for (n, w) in plus.samples.windows(2).enumerate() {
            let step = w[1] - w[0];
            prop_assert!(step.abs() <= c / (d as f64).powi(n as i32) * (1.0 + 1e-12));
            // one-sided height machine bound h(f Q) <= d h(Q) + C_f
            prop_assert!(step <= cf / (d as f64).powi(n as i32 + 1) + 1e-9);
        }
        let weak = weak_lower_canonical(&prof, d as f64).unwrap();
        prop_assert!(weak.value <= plus.value + 1e-12);
    }
}
