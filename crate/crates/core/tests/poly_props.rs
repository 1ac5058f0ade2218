use adegree_core::poly::rational::{padic_valuation, rat_reduce};
use adegree_core::poly::{HomPoly, Monomial, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for e in (0..=degree).rev() {
        for mut rest in monomials(nvars - 1, degree - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

fn hom_strategy(nvars: usize, degree: u32) -> impl Strategy<Value = HomPoly> {
    let mons = monomials(nvars, degree);
    let n = mons.len();
    prop::collection::vec(-3i64..=3, n).prop_map(move |cs| {
        let terms = mons
            .iter()
            .zip(cs)
            .map(|(m, c)| (Monomial::from_slice(m), Rational::from_integer(BigInt::from(c))));
        HomPoly::from_terms(nvars, degree, terms).unwrap()
    })
}

fn nonzero_hom(nvars: usize, degree: u32) -> impl Strategy<Value = HomPoly> {
    hom_strategy(nvars, degree).prop_filter("nonzero", |p| !p.is_zero())
}

fn pair_with_common_factor() -> impl Strategy<Value = (HomPoly, HomPoly)> {
    (0u32..=2, 1u32..=2, 1u32..=2).prop_flat_map(|(dc, da, db)| {
        (nonzero_hom(3, dc), nonzero_hom(3, da), nonzero_hom(3, db)).prop_map(|(c, a, b)| {
            (c.mul(&a).unwrap(), c.mul(&b).unwrap())
        })
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=50).prop_map(|(n, d)| rat_reduce(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn gcd_divides_and_cofactors_are_coprime((a, b) in pair_with_common_factor(),
                                             q in prop::collection::vec(small_rational(), 3)) {
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.is_integral_primitive());
        let qa = a.div_exact(&g).unwrap();
        let qb = b.div_exact(&g).unwrap();
        let unit = qa.gcd(&qb).unwrap();
        prop_assert_eq!(unit.degree(), 0);
        prop_assert_eq!(qa.eval(&q).unwrap() * g.eval(&q).unwrap(), a.eval(&q).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn valuation_is_additive(xn in -10_000i64..10_000, xd in 1i64..10_000,
                             yn in -10_000i64..10_000, yd in 1i64..10_000,
                             pi in 0usize..6) {
        prop_assume!(xn != 0 && yn != 0);
        let p = [2u64, 3, 5, 7, 11, 13][pi];
        let x = rat_reduce(xn, xd).unwrap();
        let y = rat_reduce(yn, yd).unwrap();
        let vx = padic_valuation(&x, p).unwrap().valuation.unwrap();
        let vy = padic_valuation(&y, p).unwrap().valuation.unwrap();
        let vxy = padic_valuation(&(x * y), p).unwrap().valuation.unwrap();
        prop_assert_eq!(vxy, vx + vy);
    }
}

fn identity(nvars: usize) -> Vec<HomPoly> {
    (0..nvars).map(|i| HomPoly::var(nvars, i)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn compose_with_identity_and_degrees(f in (1u32..=3).prop_flat_map(|d| nonzero_hom(3, d)),
                                         g in prop::collection::vec(nonzero_hom(3, 2), 3)) {
        prop_assert_eq!(f.compose(&identity(3)).unwrap(), f.clone());
        let h = f.compose(&g).unwrap();
        prop_assert!(h.is_zero() || h.degree() == f.degree() * 2);
    }
}
