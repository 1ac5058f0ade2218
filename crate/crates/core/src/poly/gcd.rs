//! Multivariate gcd over the integers.
//!
//! Recursive subresultant polynomial remainder sequences on one variable at a
//! time with content / primitive-part splitting. A cheap modular test proves
//! coprimality in the common case before any remainder sequence is run, and
//! every nontrivial result is confirmed by exact trial division.

use num_bigint::BigInt;
use num_traits::One;

use super::zpoly::ZPoly;

/// 2^61 - 1
const MODULUS: u64 = 2_305_843_009_213_693_951;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, MODULUS - 2)
}

/// Dense univariate polynomial modulo `MODULUS`, lowest degree first, trimmed.
fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn univariate_gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let inv = invmod(*b.last().unwrap());
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let factor = mulmod(*a.last().unwrap(), inv);
            for (i, &bc) in b.iter().enumerate() {
                let t = mulmod(factor, bc);
                a[i + shift] = (a[i + shift] + MODULUS - t) % MODULUS;
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Deterministic pseudo-random evaluation values.
fn sample_values(nvars: usize, round: u64) -> Vec<u64> {
    let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ round.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    (0..nvars)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % (MODULUS - 3) + 2
        })
        .collect()
}

/// Restriction of `p` to the line where every variable except `var` is fixed.
/// Returns the dense coefficient list in `var`.
fn specialize(p: &ZPoly, var: usize, values: &[u64]) -> Vec<u64> {
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut out = vec![0u64; deg + 1];
    for (m, c) in p.coeffs_mod(MODULUS) {
        let mut t = c;
        for (i, &e) in m.0.iter().enumerate() {
            if i != var && e > 0 {
                t = mulmod(t, powmod(values[i], e as u64));
            }
        }
        let k = m.0[var] as usize;
        out[k] = (out[k] + t) % MODULUS;
    }
    out
}

/// Proves that the nonzero polynomials in `polys` have no common factor of
/// positive degree. A `false` answer is inconclusive.
pub fn certify_coprime(polys: &[&ZPoly]) -> bool {
    let nonzero: Vec<&ZPoly> = polys.iter().copied().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return false;
    }
    if nonzero.iter().any(|p| p.is_constant()) {
        return true;
    }
    let nvars = nonzero[0].nvars();
    'vars: for var in 0..nvars {
        // a common factor involving `var` forces every polynomial to involve it
        if nonzero.iter().any(|p| p.degree_in(var) == Some(0)) {
            continue;
        }
        for round in 0..3u64 {
            let values = sample_values(nvars, round * 31 + var as u64);
            let specs: Vec<Vec<u64>> = nonzero.iter().map(|p| specialize(p, var, &values)).collect();
            let full_degree = specs
                .iter()
                .zip(&nonzero)
                .any(|(s, p)| s.len() == p.degree_in(var).unwrap() as usize + 1 && *s.last().unwrap() != 0);
            if !full_degree {
                continue;
            }
            let mut g = specs[0].clone();
            for s in &specs[1..] {
                g = univariate_gcd_mod(g, s.clone());
                if g.len() <= 1 {
                    break;
                }
            }
            if g.len() <= 1 {
                continue 'vars;
            }
        }
        return false;
    }
    true
}

/// Content of `p` viewed as a polynomial in `var`.
fn content_in(p: &ZPoly, var: usize) -> ZPoly {
    let coeffs = p.coeffs_in(var);
    gcd_list(coeffs.iter().filter(|c| !c.is_zero()).collect::<Vec<_>>().as_slice())
}

fn gcd_list(polys: &[&ZPoly]) -> ZPoly {
    let mut it = polys.iter();
    let mut g = match it.next() {
        None => unreachable!("gcd of empty list"),
        Some(p) => (*p).clone(),
    };
    for p in it {
        if g.is_one() {
            break;
        }
        g = gcd_z(&g, p);
    }
    g.primitive_or_one()
}

trait PrimitiveOrOne {
    fn primitive_or_one(self) -> ZPoly;
}

impl PrimitiveOrOne for ZPoly {
    fn primitive_or_one(self) -> ZPoly {
        if self.is_zero() {
            self
        } else {
            self.primitive()
        }
    }
}

/// Leading coefficient in `var` of a dense coefficient list.
fn lc(v: &[ZPoly]) -> &ZPoly {
    v.last().unwrap()
}

fn trim_z(mut v: Vec<ZPoly>) -> Vec<ZPoly> {
    while v.last().map(|c| c.is_zero()) == Some(true) {
        v.pop();
    }
    v
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`, in `var`.
fn prem(a: &[ZPoly], b: &[ZPoly]) -> Vec<ZPoly> {
    let db = b.len() - 1;
    let mut r: Vec<ZPoly> = a.to_vec();
    let lb = lc(b).clone();
    let mut steps = 0usize;
    let total = a.len() - b.len() + 1;
    while r.len() > db && !r.is_empty() {
        let lr = lc(&r).clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        r = trim_z(r);
        steps += 1;
    }
    if steps < total {
        let f = lb.pow((total - steps) as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

/// Subresultant PRS on primitive inputs; returns the last nonzero remainder.
fn subresultant_last(a: Vec<ZPoly>, b: Vec<ZPoly>, nvars: usize) -> Vec<ZPoly> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut g = ZPoly::one(nvars);
    let mut h = ZPoly::one(nvars);
    loop {
        let delta = a.len() - b.len();
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return r;
        }
        let divisor = g.mul(&h.pow(delta as u32));
        let next: Vec<ZPoly> = r
            .iter()
            .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        a = b;
        b = next;
        g = lc(&a).clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32)
                .div_exact(&h.pow(delta as u32 - 1))
                .expect("subresultant h update is exact")
        };
    }
}

/// Gcd of two integer polynomials, primitive with positive leading coefficient.
pub fn gcd_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let nvars = a.nvars();
    if a.is_zero() {
        return b.clone().primitive_or_one();
    }
    if b.is_zero() {
        return a.clone().primitive_or_one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let mut a = a.div_exact(&ZPoly::monomial(nvars, ma, BigInt::one())).unwrap();
    let mut b = b.div_exact(&ZPoly::monomial(nvars, mb, BigInt::one())).unwrap();
    let core = gcd_monomial_free(&mut a, &mut b, nvars);
    core.mul_monomial(&mono)
}

fn gcd_monomial_free(a: &mut ZPoly, b: &mut ZPoly, nvars: usize) -> ZPoly {
    *a = a.primitive();
    *b = b.primitive();
    if a.is_constant() || b.is_constant() {
        return ZPoly::one(nvars);
    }
    if certify_coprime(&[a, b]) {
        return ZPoly::one(nvars);
    }
    // a variable present in only one input cannot occur in the gcd
    loop {
        let mut changed = false;
        for var in 0..nvars {
            let da = a.degree_in(var).unwrap();
            let db = b.degree_in(var).unwrap();
            if da > 0 && db == 0 {
                *a = content_in(a, var);
                changed = true;
            } else if db > 0 && da == 0 {
                *b = content_in(b, var);
                changed = true;
            }
        }
        if a.is_constant() || b.is_constant() {
            return ZPoly::one(nvars);
        }
        if !changed {
            break;
        }
    }
    let main = (0..nvars)
        .filter(|&v| a.degree_in(v).unwrap() > 0)
        .min_by_key(|&v| a.degree_in(v).unwrap().max(b.degree_in(v).unwrap()));
    let var = match main {
        None => return ZPoly::one(nvars),
        Some(v) => v,
    };
    let cont_a = content_in(a, var);
    let cont_b = content_in(b, var);
    let cont = gcd_z(&cont_a, &cont_b);
    let ppa = a.div_exact(&cont_a).unwrap();
    let ppb = b.div_exact(&cont_b).unwrap();
    let last = subresultant_last(ppa.coeffs_in(var), ppb.coeffs_in(var), nvars);
    let g = if last.len() <= 1 {
        ZPoly::one(nvars)
    } else {
        let lp = ZPoly::from_coeffs_in(nvars, var, &last);
        let lc = content_in(&lp, var);
        lp.div_exact(&lc).unwrap().primitive()
    };
    cont.mul(&g).primitive()
}

/// Gcd of homogeneous polynomials, using dehomogenization to drop one variable.
pub fn gcd_homogeneous(polys: &[&ZPoly]) -> ZPoly {
    let nonzero: Vec<&ZPoly> = polys.iter().copied().filter(|p| !p.is_zero()).collect();
    assert!(!nonzero.is_empty(), "gcd of zero polynomials");
    let nvars = nonzero[0].nvars();
    let mono = nonzero
        .iter()
        .map(|p| p.monomial_content())
        .reduce(|a, b| a.gcd(&b))
        .unwrap();
    let stripped: Vec<ZPoly> = nonzero
        .iter()
        .map(|p| {
            let m = p.monomial_content();
            p.div_exact(&ZPoly::monomial(nvars, m, BigInt::one())).unwrap()
        })
        .collect();
    let refs: Vec<&ZPoly> = stripped.iter().collect();
    let core = if refs.iter().any(|p| p.is_constant()) || certify_coprime(&refs) {
        ZPoly::one(nvars)
    } else {
        let last = nvars - 1;
        let mut g = stripped[0].dehomogenize(last);
        for p in &stripped[1..] {
            if g.is_constant() {
                break;
            }
            g = gcd_z(&g, &p.dehomogenize(last));
        }
        if g.is_constant() {
            ZPoly::one(nvars)
        } else {
            g.homogenize(last).primitive()
        }
    };
    let g = core.mul_monomial(&mono);
    debug_assert!(nonzero.iter().all(|p| p.div_exact(&g).is_ok()));
    g
}
