use adegree_core::padiccert::{
    certify, in_neighborhood, soundness_check, NeighborhoodKind, NeighborhoodSpec,
};
use adegree_core::poly::rational::rat_reduce;
use adegree_core::projmap::parse_map;
use adegree_core::{ProjPoint, Rational};
use proptest::prelude::*;

fn pow2(k: u32) -> i64 {
    1i64 << k
}

fn odd() -> impl Strategy<Value = i64> {
    (-40i64..=40).prop_map(|k| 2 * k + 1)
}

/// `u / 2^k` with `u` odd.
fn dyadic(u: i64, k: u32) -> Rational {
    rat_reduce(u, pow2(k)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fixed_point_neighborhood_is_invariant(x in odd(), y in -20i64..=20, z in 1i64..=20) {
        let f = parse_map("A2: (x^2 + y, y^2)").unwrap();
        let spec = NeighborhoodSpec::new(NeighborhoodKind::FixedPointU, 2, 2).unwrap();
        let p = ProjPoint::from_ints(&[x, 2 * y, 2 * z]).unwrap();
        prop_assert!(in_neighborhood(&p, &spec));
        let cert = certify(&f, &p, &spec, 6).unwrap();
        prop_assert!(cert.pass);
        for q in &cert.orbit {
            prop_assert!(in_neighborhood(q, &spec), "{} left U", q);
        }
        let (est, slack, holds) = soundness_check(&f, &cert, 2.0).unwrap();
        prop_assert!(holds, "bound {} vs estimate {} (slack {})", cert.lower_bound, est, slack);
    }

    #[test]
    fn case3_neighborhood_is_invariant(u in odd(), w in odd(), kx in 3u32..=6, dk in 1u32..=2) {
        // v(x) = -kx < v(y) = -ky < 0 with 2 v(y) < v(x)
        let ky = kx - dk;
        prop_assume!(2 * ky > kx && ky > 0);
        let f = parse_map("A2: (x^2 + y, x*y)").unwrap();
        let spec = NeighborhoodSpec::new(NeighborhoodKind::Case3U, 2, 2).unwrap();
        let p = ProjPoint::affine(&[dyadic(u, kx), dyadic(w, ky)]).unwrap();
        prop_assert!(in_neighborhood(&p, &spec));
        let cert = certify(&f, &p, &spec, 5).unwrap();
        prop_assert!(cert.pass, "{:?}", cert.failed_at);
        for q in &cert.orbit {
            prop_assert!(in_neighborhood(q, &spec));
        }
    }

    #[test]
    fn fibonacci_certificates_are_sound(u in odd(), w in odd(), k in 1u32..=3, extra in 1u32..=2) {
        let c11 = parse_map("A2: (y, x*y)").unwrap();
        let spec = NeighborhoodSpec::new(NeighborhoodKind::Case11Set, 2, 2).unwrap();
        let p = ProjPoint::affine(&[dyadic(u, k), dyadic(w, k)]).unwrap();
        let cert = certify(&c11, &p, &spec, 10).unwrap();
        prop_assert!(cert.pass);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let (est, slack, holds) = soundness_check(&c11, &cert, golden).unwrap();
        prop_assert!(holds, "case 1.1 bound {} vs estimate {} (slack {})", cert.lower_bound, est, slack);

        let c32 = parse_map("A2: (y, x*(x - y))").unwrap();
        let spec = NeighborhoodSpec::new(NeighborhoodKind::Case32Set, 2, 2).unwrap();
        let p = ProjPoint::affine(&[dyadic(u, k), dyadic(w, k + extra)]).unwrap();
        let cert = certify(&c32, &p, &spec, 10).unwrap();
        prop_assert!(cert.pass);
        let (est, slack, holds) = soundness_check(&c32, &cert, golden).unwrap();
        prop_assert!(holds, "case 3.2 bound {} vs estimate {} (slack {})", cert.lower_bound, est, slack);
    }
}
