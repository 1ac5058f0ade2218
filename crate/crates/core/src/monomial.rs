//! Monomial maps `t_i -> prod_j t_j^(a_ij)` on the torus: characteristic
//! polynomial and spectral radius of the exponent matrix, and orbits tracked
//! through prime valuations.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::{geometric_rate_fit, growth_rate_fit, h_plus};
use crate::poly::gcd::gcd_z;
use crate::poly::rational::int_valuation;
use crate::poly::{Monomial, Rational, ZPoly};
use crate::projmap::ProjPoint;

pub type IntMatrix = Vec<Vec<i64>>;

/// Parses row-major integer lists such as `[[0,2],[1,0]]`.
pub fn parse_matrix(src: &str) -> Result<IntMatrix> {
    let bad = |msg: &str| Error::InvalidArgument(format!("bad matrix {src:?}: {msg}"));
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix("[[")
        .and_then(|r| r.strip_suffix("]]"))
        .ok_or_else(|| bad("expected [[...],...]"))?;
    let rows: Vec<Vec<i64>> = inner
        .split("],[")
        .map(|row| {
            row.split(',')
                .map(|x| x.parse::<i64>().map_err(|_| bad("entries must be integers")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    check_square(&rows)?;
    Ok(rows)
}

fn check_square(a: &IntMatrix) -> Result<usize> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::ArityMismatch(n, row.len()));
    }
    Ok(n)
}

/// Exact integer characteristic polynomial, coefficients in ascending order
/// (`coeffs[k]` multiplies `lambda^k`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    #[serde(serialize_with = "ser_bigints")]
    pub coeffs: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize as _;
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn to_zpoly(&self) -> ZPoly {
        ZPoly::from_terms(
            1,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::from_slice(&[k as u32]), c.clone())),
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => "l".to_string(),
                _ => format!("l^{k}"),
            };
            if k == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

fn zpoly_to_coeffs(p: &ZPoly) -> Vec<BigInt> {
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut v = vec![BigInt::zero(); deg + 1];
    for (m, c) in p.terms() {
        v[m.0[0] as usize] = c.clone();
    }
    v
}

/// `det(lambda I - A)` by fraction-free Bareiss elimination over `Z[lambda]`.
/// The leading principal minors of `lambda I - A` are monic, so no pivoting
/// is needed and every division is exact.
pub fn monomial_char_poly(a: &IntMatrix) -> Result<CharPoly> {
    let n = check_square(a)?;
    let lambda = ZPoly::var(1, 0);
    let mut m: Vec<Vec<ZPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = ZPoly::constant(1, BigInt::from(-a[i][j]));
                    if i == j {
                        c.add(&lambda)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = ZPoly::one(1);
    for k in 0..n.saturating_sub(1) {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let cp = CharPoly {
        coeffs: zpoly_to_coeffs(&m[n - 1][n - 1]),
    };
    if cp.coeffs[0].is_zero() {
        return Err(Error::SingularMatrix);
    }
    debug_assert!(newton_identities_hold(a, &cp));
    Ok(cp)
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigInt::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn to_big(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Checks `k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) tr(A^i)` where the
/// characteristic polynomial is `sum_k (-1)^k e_k lambda^(n-k)`.
pub fn newton_identities_hold(a: &IntMatrix, cp: &CharPoly) -> bool {
    let n = a.len();
    if cp.coeffs.len() != n + 1 || !cp.coeffs[n].is_one() {
        return false;
    }
    let big = to_big(a);
    let mut power = big.clone();
    let mut traces = Vec::with_capacity(n);
    for _ in 0..n {
        traces.push((0..n).fold(BigInt::zero(), |acc, i| acc + &power[i][i]));
        power = mat_mul(&power, &big);
    }
    let e: Vec<BigInt> = (0..=n)
        .map(|k| {
            let c = &cp.coeffs[n - k];
            if k % 2 == 0 {
                c.clone()
            } else {
                -c
            }
        })
        .collect();
    (1..=n).all(|k| {
        let mut rhs = BigInt::zero();
        for i in 1..=k {
            let t = &e[k - i] * &traces[i - 1];
            if i % 2 == 1 {
                rhs += t;
            } else {
                rhs -= t;
            }
        }
        BigInt::from(k) * &e[k] == rhs
    })
}

/// Enclosure `[lo, hi]` of the spectral radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralEnclosure {
    pub lo: f64,
    pub hi: f64,
    /// Approximate distinct eigenvalues as `(re, im)` pairs.
    pub eigenvalues: Vec<(f64, f64)>,
    /// Inclusion radius around each eigenvalue.
    pub radii: Vec<f64>,
    #[serde(rename = "cauchyBound")]
    pub cauchy_bound: f64,
}

impl SpectralEnclosure {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .map(|&(re, im)| Complex64::new(re, im).norm())
            .collect()
    }
}

const MAX_ABERTH_ITERS: usize = 1000;

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a squarefree polynomial by Aberth iteration.
fn aberth_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    if n == 1 {
        return Ok(vec![Complex64::new(-coeffs[0] / lc, 0.0)]);
    }
    let radius = coeffs[..n]
        .iter()
        .map(|c| (c / lc).abs())
        .fold(0.0, f64::max)
        .max(1.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ABERTH_ITERS {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[k] -= w;
            moved = moved.max(w.norm() / z[k].norm().max(1.0));
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence(MAX_ABERTH_ITERS))
}

/// Inclusion radii: each connected component of the disks
/// `|z - z_i| <= n |p(z_i)| / |lc prod_(j != i)(z_i - z_j)|` holds as many
/// roots as it has disks. `|p(z_i)|` is inflated by a bound on the rounding
/// error of Horner evaluation.
fn inclusion_radii(coeffs: &[f64], z: &[Complex64]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n].abs();
    let gamma = 4.0 * (n as f64 + 1.0) * f64::EPSILON;
    z.iter()
        .enumerate()
        .map(|(i, &zi)| {
            let (p, _) = horner(coeffs, zi);
            let abs_eval: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.abs() * zi.norm().powi(k as i32))
                .sum();
            let num = p.norm() + gamma * abs_eval;
            let den: f64 = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &zj)| (zi - zj).norm())
                .product();
            (n as f64 * num / (lc * den)) * (1.0 + 1e-12)
        })
        .collect()
}

fn squarefree_part(cp: &CharPoly) -> Vec<BigInt> {
    let p = cp.to_zpoly();
    let deriv = ZPoly::from_terms(
        1,
        p.terms().iter().filter(|(m, _)| m.0[0] > 0).map(|(m, c)| {
            (Monomial::from_slice(&[m.0[0] - 1]), c * BigInt::from(m.0[0]))
        }),
    );
    let g = gcd_z(&p, &deriv);
    zpoly_to_coeffs(&p.div_exact(&g).expect("gcd divides").primitive())
}

/// Spectral radius of `A` enclosed from the roots of the squarefree part of
/// its characteristic polynomial, clipped by the Cauchy bound.
pub fn monomial_delta(a: &IntMatrix) -> Result<SpectralEnclosure> {
    let cp = monomial_char_poly(a)?;
    spectral_enclosure(&cp)
}

pub fn spectral_enclosure(cp: &CharPoly) -> Result<SpectralEnclosure> {
    let sq = squarefree_part(cp);
    let coeffs: Vec<f64> = sq.iter().map(|c| c.to_f64().unwrap()).collect();
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let cauchy_bound = coeffs[..n].iter().map(|c| (c / lc).abs()).sum::<f64>().max(1.0);
    let roots = aberth_roots(&coeffs)?;
    let radii = inclusion_radii(&coeffs, &roots);
    // connected components of the inclusion disks
    let k = roots.len();
    let mut comp: Vec<usize> = (0..k).collect();
    fn find(c: &mut Vec<usize>, i: usize) -> usize {
        if c[i] != i {
            let r = find(c, c[i]);
            c[i] = r;
        }
        c[i]
    }
    for i in 0..k {
        for j in i + 1..k {
            if (roots[i] - roots[j]).norm() <= radii[i] + radii[j] {
                let (ri, rj) = (find(&mut comp, i), find(&mut comp, j));
                comp[ri] = rj;
            }
        }
    }
    let hi = (0..k)
        .map(|i| roots[i].norm() + radii[i])
        .fold(0.0, f64::max)
        .min(cauchy_bound);
    let mut lo = 0.0f64;
    for i in 0..k {
        let root = find(&mut comp, i);
        let comp_lo = (0..k)
            .filter(|&j| find(&mut comp, j) == root)
            .map(|j| roots[j].norm() - radii[j])
            .fold(f64::MAX, f64::min);
        lo = lo.max(comp_lo.max(0.0));
    }
    Ok(SpectralEnclosure {
        lo,
        hi,
        eigenvalues: roots.iter().map(|z| (z.re, z.im)).collect(),
        radii,
        cauchy_bound,
    })
}

fn factor_small(n: &BigInt) -> Result<Vec<u64>> {
    let mut r = n.abs();
    let mut primes = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= r {
        if p > 1 << 20 {
            return Err(Error::InvalidArgument(format!(
                "cannot factor start coordinate {n}"
            )));
        }
        let bp = BigInt::from(p);
        if (&r % &bp).is_zero() {
            primes.push(p);
            while (&r % &bp).is_zero() {
                r /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if r > BigInt::one() {
        primes.push(r.to_u64().ok_or_else(|| {
            Error::InvalidArgument(format!("cannot factor start coordinate {n}"))
        })?);
    }
    Ok(primes)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentOrbit {
    #[serde(rename = "basePrimes")]
    pub base_primes: Vec<u64>,
    /// `valuations[n][i][k]` is `v_p(t_i^(n))` for `p = base_primes[k]`.
    #[serde(rename = "valuationMatrix")]
    pub valuations: Vec<Vec<Vec<i128>>>,
    /// Sign of each coordinate per step (`true` for negative).
    #[serde(skip)]
    pub negative: Vec<Vec<bool>>,
    pub heights: Vec<f64>,
}

impl ExponentOrbit {
    /// Exponents of the coprime integer representative of
    /// `[t_1 : ... : t_N : 1]` at step `n`; the last row is the affine `1`.
    fn exponents(&self, n: usize) -> Vec<Vec<i128>> {
        let v = &self.valuations[n];
        let np = self.base_primes.len();
        let mins: Vec<i128> = (0..np)
            .map(|k| v.iter().map(|row| row[k]).min().unwrap_or(0).min(0))
            .collect();
        let mut rows: Vec<Vec<i128>> = v
            .iter()
            .map(|row| (0..np).map(|k| row[k] - mins[k]).collect())
            .collect();
        rows.push(mins.iter().map(|m| -m).collect());
        rows
    }

    /// The orbit point at step `n` as an exact projective point. Coordinates
    /// are materialized, so this is only practical for moderate `n`.
    pub fn point(&self, n: usize) -> Result<ProjPoint> {
        let rows = self.exponents(n);
        let mut coords = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut c = BigInt::one();
            for (k, &e) in row.iter().enumerate() {
                c *= num_traits::pow(BigInt::from(self.base_primes[k]), e as usize);
            }
            if i < self.negative[n].len() && self.negative[n][i] {
                c = -c;
            }
            coords.push(c);
        }
        ProjPoint::new(coords)
    }
}

fn height_from_exponents(rows: &[Vec<i128>], primes: &[u64]) -> f64 {
    let logs: Vec<f64> = primes.iter().map(|&p| (p as f64).ln()).collect();
    rows.iter()
        .map(|row| row.iter().zip(&logs).map(|(&e, l)| e as f64 * l).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Orbit of `start` under the monomial map of `a`, carried as valuation
/// vectors over the primes dividing the start coordinates.
pub fn monomial_orbit(a: &IntMatrix, start: &[Rational], max_n: usize) -> Result<ExponentOrbit> {
    let n = check_square(a)?;
    if start.len() != n {
        return Err(Error::ArityMismatch(n, start.len()));
    }
    if start.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidPoint("torus points need nonzero coordinates".into()));
    }
    let mut primes: Vec<u64> = Vec::new();
    for x in start {
        primes.extend(factor_small(x.numer())?);
        primes.extend(factor_small(x.denom())?);
    }
    primes.sort_unstable();
    primes.dedup();
    let v0: Vec<Vec<i128>> = start
        .iter()
        .map(|x| {
            primes
                .iter()
                .map(|&p| i128::from(int_valuation(x.numer(), p) - int_valuation(x.denom(), p)))
                .collect()
        })
        .collect();
    let s0: Vec<bool> = start.iter().map(|x| x.is_negative()).collect();
    let mut valuations = vec![v0];
    let mut negative = vec![s0];
    for step in 1..=max_n {
        let v = valuations.last().unwrap();
        let s = negative.last().unwrap();
        let mut next = vec![vec![0i128; primes.len()]; n];
        let mut sign = vec![false; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..primes.len() {
                    next[i][k] = i128::from(a[i][j])
                        .checked_mul(v[j][k])
                        .and_then(|t| next[i][k].checked_add(t))
                        .ok_or_else(|| {
                            Error::InvalidArgument(format!("valuation overflow at step {step}"))
                        })?;
                }
                if s[j] && a[i][j] % 2 != 0 {
                    sign[i] = !sign[i];
                }
            }
        }
        // exponents() subtracts valuations, so keep them in half the i128 range
        if next.iter().flatten().any(|v| v.unsigned_abs() > (i128::MAX / 2) as u128) {
            return Err(Error::InvalidArgument(format!("valuation overflow at step {step}")));
        }
        valuations.push(next);
        negative.push(sign);
    }
    let mut orbit = ExponentOrbit {
        base_primes: primes,
        valuations,
        negative,
        heights: Vec::new(),
    };
    orbit.heights = (0..=max_n)
        .map(|k| height_from_exponents(&orbit.exponents(k), &orbit.base_primes))
        .collect();
    Ok(orbit)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaEigenCheck {
    pub alpha: f64,
    #[serde(rename = "nearestEigenModulus")]
    pub nearest_eigen_modulus: f64,
    pub distance: f64,
    pub delta: f64,
    pub tol: f64,
    pub pass: bool,
}

pub const ALPHA_EIGEN_TOL: f64 = 0.05;

/// Compares the orbit's growth rate with the eigenvalue moduli of `A`.
pub fn monomial_alpha_check(orbit: &ExponentOrbit, a: &IntMatrix, tol: f64) -> Result<AlphaEigenCheck> {
    let len = orbit.heights.len();
    if len < 9 {
        return Err(Error::ProfileTooShort {
            required: 9,
            actual: len,
        });
    }
    let cp = monomial_char_poly(a)?;
    let enc = spectral_enclosure(&cp)?;
    // distinct eigenvalues make A diagonalizable, so the height, a norm of
    // the exponent vectors, grows like |lambda|^n with no polynomial factor
    let diagonalizable = squarefree_part(&cp).len() - 1 == cp.degree();
    let alpha = if orbit.heights.iter().all(|&h| h == 0.0) {
        1.0
    } else {
        // complex eigenvalues make the heights oscillate with the rotation
        // angle, so one fit spans the orbit after a short transient
        let hp: Vec<f64> = orbit.heights.iter().map(|&h| h_plus(h)).collect();
        let start = (len - 1) / 5;
        if diagonalizable {
            geometric_rate_fit(&hp, start, len - 1)
        } else {
            growth_rate_fit(&hp, start, len - 1)
        }
    };
    let nearest = enc
        .moduli()
        .into_iter()
        .min_by(|x, y| (x - alpha).abs().total_cmp(&(y - alpha).abs()))
        .unwrap();
    let distance = (nearest - alpha).abs();
    Ok(AlphaEigenCheck {
        alpha,
        nearest_eigen_modulus: nearest,
        distance,
        delta: enc.mid(),
        tol,
        pass: distance <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::rat_int;

    fn cp(a: IntMatrix) -> Vec<i64> {
        monomial_char_poly(&a)
            .unwrap()
            .coeffs
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(cp(vec![vec![0, 2], vec![1, 0]]), vec![-2, 0, 1]);
        assert_eq!(cp(vec![vec![1, 0], vec![0, 1]]), vec![1, -2, 1]);
        assert_eq!(cp(vec![vec![2, 1], vec![1, 1]]), vec![1, -3, 1]);
        assert_eq!(
            monomial_char_poly(&vec![vec![1, 2], vec![2, 4]]),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn char_poly_needs_zero_free_pivots_only() {
        // zero diagonal entries are fine because pivots live in Z[lambda]
        let a = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]];
        assert_eq!(cp(a), vec![-1, -1, 0, 1]);
    }

    #[test]
    fn spectral_examples() {
        let e = monomial_delta(&vec![vec![0, 2], vec![1, 0]]).unwrap();
        assert!(e.contains(2f64.sqrt()) && e.width() <= 1e-9, "{e:?}");
        let id = monomial_delta(&vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(id.contains(1.0) && id.width() <= 1e-9);
        let g = monomial_delta(&vec![vec![2, 1], vec![1, 1]]).unwrap();
        assert!(g.contains((3.0 + 5f64.sqrt()) / 2.0) && g.width() <= 1e-9);
        // complex dominant pair: rotation-like matrix with rho = sqrt(2)
        let c = monomial_delta(&vec![vec![1, -1], vec![1, 1]]).unwrap();
        assert!(c.contains(2f64.sqrt()), "{c:?}");
    }

    #[test]
    fn orbit_examples() {
        let q = |n: i64| rat_int(n);
        let o = monomial_orbit(&vec![vec![3, 0], vec![0, 2]], &[q(1), q(2)], 6).unwrap();
        for (n, h) in o.heights.iter().enumerate() {
            assert!((h - (1u64 << n) as f64 * std::f64::consts::LN_2).abs() < 1e-9);
        }
        let fixed = monomial_orbit(&vec![vec![0, 2], vec![1, 0]], &[q(1), q(1)], 5).unwrap();
        assert!(fixed.heights.iter().all(|&h| h == 0.0));
        let neg = monomial_orbit(&vec![vec![0, 2], vec![1, 0]], &[q(-2), q(3)], 2).unwrap();
        assert_eq!(neg.point(1).unwrap(), ProjPoint::from_ints(&[9, -2, 1]).unwrap());
    }

    #[test]
    fn alpha_checks() {
        let q = |n: i64| rat_int(n);
        let diag = vec![vec![3, 0], vec![0, 2]];
        let o = monomial_orbit(&diag, &[q(1), q(2)], 20).unwrap();
        let c = monomial_alpha_check(&o, &diag, ALPHA_EIGEN_TOL).unwrap();
        assert!(c.pass && (c.alpha - 2.0).abs() < 1e-6 && (c.delta - 3.0).abs() < 1e-9);
        let a = vec![vec![0, 2], vec![1, 0]];
        let o = monomial_orbit(&a, &[q(2), q(3)], 20).unwrap();
        let c = monomial_alpha_check(&o, &a, ALPHA_EIGEN_TOL).unwrap();
        assert!(c.pass && (c.alpha - 2f64.sqrt()).abs() < 0.05);
        let o = monomial_orbit(&a, &[q(1), q(1)], 10).unwrap();
        assert_eq!(monomial_alpha_check(&o, &a, ALPHA_EIGEN_TOL).unwrap().alpha, 1.0);
    }

    #[test]
    fn matrix_parsing() {
        assert_eq!(parse_matrix("[[0,2],[1,0]]").unwrap(), vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(parse_matrix(" [[ -1 ]] ").unwrap(), vec![vec![-1]]);
        assert!(parse_matrix("[[1,2],[3]]").is_err());
        assert!(parse_matrix("[1,2]").is_err());
    }
}
