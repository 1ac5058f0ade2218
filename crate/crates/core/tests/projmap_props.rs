use adegree_core::catalog::{catalog_list, catalog_map, example, guedj, CASE_IDS};
use adegree_core::poly::rational::rat_reduce;
use adegree_core::projmap::{
    degree_sequence, delta_estimate, map_iterate, parse_map, stability_analysis, StabilityVerdict,
};
use adegree_core::{Budget, Error, ProjPoint, RationalMap};
use proptest::prelude::*;

/// Catalog maps cheap enough to iterate many times.
const QUICK: [&str; 8] = ["ybar-square", "shift-product", "fibonacci", "squaring", "fixed-point", "1.1", "3.1", "3.2"];

/// The iteration depth the catalog itself uses for the entry.
fn depth(id: &str) -> usize {
    if CASE_IDS.contains(&id) {
        guedj(id, &[]).unwrap().max_n
    } else {
        example(id).unwrap().max_n
    }
}

#[test]
fn degrees_are_submultiplicative() {
    for e in catalog_list().unwrap() {
        let f = catalog_map(&e.id).unwrap();
        let n = depth(&e.id);
        let degs = degree_sequence(&f, n, Budget::default()).degs;
        for a in 1..=degs.len() {
            for b in 1..=degs.len() - a {
                assert!(
                    degs[a + b - 1] <= degs[a - 1] * degs[b - 1],
                    "{}: deg f^{} = {} > {} * {}",
                    e.id,
                    a + b,
                    degs[a + b - 1],
                    degs[a - 1],
                    degs[b - 1]
                );
            }
        }
    }
}

#[test]
fn stable_verdict_matches_multiplicative_degrees() {
    for e in catalog_list().unwrap() {
        let f = catalog_map(&e.id).unwrap();
        let orbit = stability_analysis(&f).unwrap();
        let seq = degree_sequence(&f, depth(&e.id), Budget::default());
        let stable = !matches!(orbit.verdict, StabilityVerdict::Unstable { .. });
        assert_eq!(
            stable,
            seq.is_multiplicative(),
            "{}: verdict {:?}, degrees {:?}",
            e.id,
            orbit.verdict,
            seq.degs
        );
    }
}

#[test]
fn delta_of_second_iterate_is_delta_squared() {
    for e in catalog_list().unwrap() {
        let f = catalog_map(&e.id).unwrap();
        let k = depth(&e.id).div_ceil(2);
        let f2 = map_iterate(&f, 2, Budget::default()).unwrap();
        let d2 = delta_estimate(&degree_sequence(&f2, k, Budget::default()), None).best;
        let d1 = delta_estimate(&degree_sequence(&f, 2 * k, Budget::default()), None).best;
        let rel = (d2 - d1 * d1).abs() / (d1 * d1);
        assert!(rel <= 1e-2, "{}: delta(f^2) = {d2}, delta(f)^2 = {}", e.id, d1 * d1);
    }
}

/// `f^n(P)` by repeated application, or `None` if an intermediate point is
/// indeterminate.
fn chain(f: &RationalMap, p: &ProjPoint, n: usize) -> Option<ProjPoint> {
    let mut q = p.clone();
    for _ in 0..n {
        q = match f.apply(&q) {
            Ok(next) => next,
            Err(Error::Indeterminate(_)) => return None,
            Err(e) => panic!("{e}"),
        };
    }
    Some(q)
}

#[test]
fn intermediate_indeterminacy_can_resolve_in_the_iterate() {
    // [1,0,0] is indeterminate for (y^2, x) but f^2 is a morphism
    let f = parse_map("A2: (y^2, x)").unwrap();
    let f2 = map_iterate(&f, 2, Budget::default()).unwrap();
    let p = ProjPoint::from_ints(&[1, 0, 0]).unwrap();
    assert!(chain(&f, &p, 2).is_none());
    assert_eq!(f2.apply(&p).unwrap(), p);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn iterate_agrees_with_repeated_application(idx in 0usize..QUICK.len(), n in 1usize..=4,
                                                x in -30i64..=30, y in -30i64..=30, z in 0i64..=30) {
        prop_assume!(x != 0 || y != 0 || z != 0);
        let f = catalog_map(QUICK[idx]).unwrap();
        let fn_ = map_iterate(&f, n, Budget::default()).unwrap();
        let p = ProjPoint::from_ints(&[x, y, z]).unwrap();
        if let (Some(a), Ok(b)) = (chain(&f, &p, n), fn_.apply(&p)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn rational_and_integer_forms_of_a_point_agree(xn in -40i64..=40, xd in 1i64..=40,
                                                   yn in -40i64..=40, yd in 1i64..=40, k in 1i64..=20) {
        let p = ProjPoint::affine(&[rat_reduce(xn, xd).unwrap(), rat_reduce(yn, yd).unwrap()]).unwrap();
        let c = p.coords();
        let scaled: Vec<_> = c.iter().map(|v| v * k).collect();
        prop_assert_eq!(ProjPoint::new(scaled).unwrap(), p);
    }
}
