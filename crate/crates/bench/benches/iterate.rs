//! Timings for the exact-arithmetic hot paths: map composition, orbit
//! heights, degree sequences, monomial orbits and p-adic certificates.

use adegree_core::heights::orbit_profile;
use adegree_core::monomial::{monomial_orbit, parse_matrix};
use adegree_core::padiccert::{certify, NeighborhoodKind, NeighborhoodSpec};
use adegree_core::projmap::degree::degree_sequence;
use adegree_core::projmap::{map_iterate, parse_map};
use adegree_core::{Budget, ProjPoint, Rational};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn iterate(c: &mut Criterion) {
    let mut group = c.benchmark_group("map_iterate");
    for (name, src) in [
        ("fibonacci", "A2: (y, x*y)"),
        ("ybar-square", "A2: (y^2, x)"),
        ("fixed-point", "A2: (x^2+y, y^2)"),
    ] {
        let f = parse_map(src).unwrap();
        for n in [4usize, 8] {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| map_iterate(black_box(&f), n, Budget::default()).unwrap())
            });
        }
    }
    group.finish();
}

fn degrees(c: &mut Criterion) {
    let f = parse_map("A2: (y, x^2 - x*y)").unwrap();
    c.bench_function("degree_sequence/3.2/9", |b| {
        b.iter(|| degree_sequence(black_box(&f), 9, Budget::default()))
    });
}

fn orbits(c: &mut Criterion) {
    let f = parse_map("A2: (y, x*y)").unwrap();
    let p = ProjPoint::from_ints(&[2, 3, 1]).unwrap();
    c.bench_function("orbit_profile/fibonacci/15", |b| {
        b.iter(|| orbit_profile(black_box(&f), &p, 15, Budget::default()).unwrap())
    });
    let a = parse_matrix("[[0,2],[1,0]]").unwrap();
    let start = [Rational::from_integer(2.into()), Rational::from_integer(3.into())];
    c.bench_function("monomial_orbit/ybar-square/40", |b| {
        b.iter(|| monomial_orbit(black_box(&a), &start, 40).unwrap())
    });
}

fn certificates(c: &mut Criterion) {
    let f = parse_map("A2: (x^2+y, y^2)").unwrap();
    let p = ProjPoint::parse("1/2,1", 3).unwrap();
    let spec = NeighborhoodSpec::new(NeighborhoodKind::FixedPointU, 2, 2).unwrap();
    c.bench_function("certify/fixed-point/10", |b| {
        b.iter(|| certify(black_box(&f), &p, &spec, 10).unwrap())
    });
}

criterion_group!(benches, iterate, degrees, orbits, certificates);
criterion_main!(benches);
