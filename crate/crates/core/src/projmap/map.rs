use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::point::ProjPoint;
use crate::error::{Error, Result};
use crate::poly::gcd::gcd_homogeneous;
use crate::poly::text::SparsePoly;
use crate::poly::{Budget, HomPoly, Monomial, Rational, ZPoly};

/// A rational self-map of projective space, normalized so that the
/// coordinates are coprime with jointly primitive integer coefficients and
/// the first nonzero coordinate has a positive leading coefficient.
static HEIGHT_CHECKS: AtomicU64 = AtomicU64::new(0);
static HEIGHT_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// Process-wide `(checks, violations)` of the height bound
/// `h(f(P)) <= d h(P) + log C`. Orbit profiles check every step, and debug
/// builds also check inside [`RationalMap::apply`].
pub fn height_bound_stats() -> (u64, u64) {
    (
        HEIGHT_CHECKS.load(Ordering::Relaxed),
        HEIGHT_VIOLATIONS.load(Ordering::Relaxed),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMap {
    coords: Vec<HomPoly>,
    degree: u32,
}

impl RationalMap {
    /// Normalizes raw coordinates: removes the common polynomial factor and
    /// the common rational content.
    pub fn new(coords: Vec<HomPoly>) -> Result<Self> {
        let n = coords.first().map(|c| c.nvars()).unwrap_or(0);
        if coords.len() != n || n < 2 {
            return Err(Error::ArityMismatch(n, coords.len()));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::DegenerateComposition);
        }
        let degree = coords.iter().find(|c| !c.is_zero()).unwrap().degree();
        for c in &coords {
            if c.nvars() != n {
                return Err(Error::ArityMismatch(n, c.nvars()));
            }
            if !c.is_zero() && c.degree() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "coordinates have degrees {} and {}",
                    degree,
                    c.degree()
                )));
            }
        }
        let den = coords
            .iter()
            .flat_map(|c| c.terms().values())
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let zs: Vec<ZPoly> = coords
            .iter()
            .map(|c| {
                ZPoly::from_terms(
                    n,
                    c.terms()
                        .iter()
                        .map(|(m, q)| (m.clone(), q.numer() * (&den / q.denom()))),
                )
            })
            .collect();
        let nonzero: Vec<&ZPoly> = zs.iter().filter(|z| !z.is_zero()).collect();
        let g = gcd_homogeneous(&nonzero);
        let gdeg = g.total_degree().unwrap_or(0);
        let mut zs: Vec<ZPoly> = if gdeg == 0 {
            zs
        } else {
            zs.iter()
                .map(|z| z.div_exact(&g))
                .collect::<Result<_>>()?
        };
        let content = zs.iter().fold(BigInt::zero(), |acc, z| acc.gcd(&z.content()));
        let first = zs.iter().find(|z| !z.is_zero()).unwrap();
        let sign_neg = first.leading_coeff().unwrap().is_negative();
        let divisor = if sign_neg { -content } else { content };
        if !divisor.is_one() {
            zs = zs
                .iter()
                .map(|z| z.div_scalar(&divisor))
                .collect::<Result<_>>()?;
        }
        let degree = degree - gdeg;
        if degree == 0 {
            return Err(Error::ConstantMap);
        }
        Ok(RationalMap {
            coords: zs.iter().map(|z| HomPoly::from_zpoly(z, degree)).collect(),
            degree,
        })
    }

    pub fn identity(nvars: usize) -> Self {
        RationalMap {
            coords: (0..nvars).map(|i| HomPoly::var(nvars, i)).collect(),
            degree: 1,
        }
    }

    /// The linear map `X -> M X` for an invertible rational matrix.
    pub fn linear(matrix: &[Vec<Rational>]) -> Result<Self> {
        let n = matrix.len();
        let coords = matrix
            .iter()
            .map(|row| {
                if row.len() != n {
                    return Err(Error::ArityMismatch(n, row.len()));
                }
                HomPoly::from_terms(
                    n,
                    1,
                    row.iter()
                        .enumerate()
                        .map(|(j, c)| (Monomial::var(n, j), c.clone())),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn coords(&self) -> &[HomPoly] {
        &self.coords
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    /// Integer coordinate polynomials (coefficients are integral by
    /// construction).
    pub fn zcoords(&self) -> Vec<ZPoly> {
        self.coords.iter().map(|c| c.to_zpoly().0).collect()
    }

    pub fn coefficient_bits(&self) -> u64 {
        self.coords.iter().map(|c| c.coefficient_bits()).sum()
    }

    /// Whether the last coordinate is a nonzero multiple of `W^d`.
    pub fn is_affine_extension(&self) -> bool {
        let last = self.coords.last().unwrap();
        let n = self.nvars();
        let mut wd = vec![0u32; n];
        wd[n - 1] = self.degree;
        last.terms().len() == 1 && last.terms().contains_key(&Monomial::from_slice(&wd))
    }

    /// The constant `(max number of terms) * (max |coefficient|)` of the
    /// height bound `h(f(P)) <= d h(P) + log C`.
    pub fn height_constant(&self) -> BigInt {
        let terms = self.coords.iter().map(|c| c.terms().len()).max().unwrap_or(0);
        let coeff = self
            .coords
            .iter()
            .flat_map(|c| c.terms().values())
            .map(|c| c.numer().abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        BigInt::from(terms) * coeff
    }

    pub fn height_constant_log(&self) -> f64 {
        crate::poly::rational::ln_bigint(&self.height_constant())
    }

    /// Exact check of `max|f(P)| <= C * max|P|^d`. Every call is counted in
    /// [`height_bound_stats`].
    pub fn height_bound_holds(&self, p: &ProjPoint, image: &ProjPoint) -> bool {
        let ok = image.max_abs() <= self.height_constant() * num_traits::pow(p.max_abs(), self.degree as usize);
        HEIGHT_CHECKS.fetch_add(1, Ordering::Relaxed);
        if !ok {
            HEIGHT_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
        }
        ok
    }

    fn eval_raw(&self, p: &ProjPoint) -> Result<Vec<BigInt>> {
        if p.len() != self.nvars() {
            return Err(Error::ArityMismatch(self.nvars(), p.len()));
        }
        Ok(self.zcoords().iter().map(|z| z.eval(p.coords())).collect())
    }

    pub fn is_indeterminate(&self, p: &ProjPoint) -> Result<bool> {
        Ok(self.eval_raw(p)?.iter().all(|v| v.is_zero()))
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let vals = self.eval_raw(p)?;
        if vals.iter().all(|v| v.is_zero()) {
            return Err(Error::Indeterminate(0));
        }
        let image = ProjPoint::new(vals)?;
        debug_assert!(self.height_bound_holds(p, &image), "height bound violated");
        Ok(image)
    }

    /// `self o g`, normalized.
    pub fn compose(&self, g: &RationalMap) -> Result<RationalMap> {
        if self.nvars() != g.nvars() {
            return Err(Error::ArityMismatch(self.nvars(), g.nvars()));
        }
        let raw: Vec<HomPoly> = self
            .coords
            .iter()
            .map(|c| c.compose(&g.coords))
            .collect::<Result<_>>()?;
        debug_assert!(raw.iter().all(|c| c.is_zero() || c.degree() == self.degree * g.degree));
        Self::new(raw)
    }

    /// Affine components `x_i -> F_i(x, 1) / F_N(x, 1)` when this map is the
    /// extension of a polynomial map.
    pub fn affine_components(&self) -> Option<Vec<SparsePoly>> {
        if !self.is_affine_extension() {
            return None;
        }
        let n = self.nvars();
        let lead = self.coords[n - 1].terms().values().next().unwrap().clone();
        Some(
            self.coords[..n - 1]
                .iter()
                .map(|c| {
                    let mut sp = SparsePoly::zero(n - 1);
                    for (m, q) in c.terms() {
                        let key = Monomial::from_slice(&m.0[..n - 1]);
                        let e = sp.terms.entry(key).or_insert_with(Rational::zero);
                        *e += q / &lead;
                    }
                    sp.terms.retain(|_, c| !c.is_zero());
                    sp
                })
                .collect(),
        )
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::dsl::format_projective(self))
    }
}

/// Homogenizes affine components into a map of `P^N` with last coordinate
/// `W^d`, where `d` is the largest component degree.
pub fn map_from_affine(components: &[SparsePoly]) -> Result<RationalMap> {
    let n = components.len();
    if n == 0 {
        return Err(Error::ConstantMap);
    }
    let d = components
        .iter()
        .filter_map(|c| c.total_degree())
        .max()
        .unwrap_or(0);
    if d == 0 {
        return Err(Error::ConstantMap);
    }
    let homogenize = |c: &SparsePoly| -> Result<HomPoly> {
        if c.nvars != n {
            return Err(Error::ArityMismatch(n, c.nvars));
        }
        HomPoly::from_terms(
            n + 1,
            d,
            c.terms.iter().map(|(m, q)| {
                let mut e: Vec<u32> = m.0.to_vec();
                e.push(d - m.degree());
                (Monomial::from_slice(&e), q.clone())
            }),
        )
    };
    let mut coords = components
        .iter()
        .map(homogenize)
        .collect::<Result<Vec<_>>>()?;
    coords.push(HomPoly::var(n + 1, n).pow(d));
    RationalMap::new(coords)
}

pub fn map_compose(f: &RationalMap, g: &RationalMap) -> Result<RationalMap> {
    f.compose(g)
}

/// Iterates `f^k = f o f^{k-1}` for `k = 1..=n`, calling `visit` on each
/// normalized iterate. Stops with a budget error naming the step whose
/// iterate exceeds the coefficient budget.
pub fn for_each_iterate(
    f: &RationalMap,
    n: usize,
    budget: Budget,
    mut visit: impl FnMut(usize, &RationalMap),
) -> Result<RationalMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("iteration count must be at least 1".into()));
    }
    let mut cur = f.clone();
    check_budget(&cur, budget, 1)?;
    visit(1, &cur);
    for k in 2..=n {
        cur = f.compose(&cur)?;
        check_budget(&cur, budget, k)?;
        visit(k, &cur);
    }
    Ok(cur)
}

fn check_budget(f: &RationalMap, budget: Budget, step: usize) -> Result<()> {
    f.coords.iter().try_for_each(|c| budget.check(c, step))
}

pub fn map_iterate(f: &RationalMap, n: usize, budget: Budget) -> Result<RationalMap> {
    for_each_iterate(f, n, budget, |_, _| {})
}

/// Conjugates by the linear change of variables `psi(X) = M X`, returning
/// `psi^{-1} o f o psi`.
pub fn conjugate_linear(f: &RationalMap, matrix: &[Vec<Rational>]) -> Result<RationalMap> {
    let psi = RationalMap::linear(matrix)?;
    let inv = RationalMap::linear(&invert_matrix(matrix)?)?;
    inv.compose(&f.compose(&psi)?)
}

fn invert_matrix(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, piv);
        let inv = Rational::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let k = a[r][col].clone();
                for j in 0..2 * n {
                    let t = &a[col][j] * &k;
                    a[r][j] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
