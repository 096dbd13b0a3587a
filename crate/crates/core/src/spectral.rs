//! Spectral radii of nonnegative integer matrices.
//!
//! Matrices whose strongly connected components are all single vertices are
//! permutation-similar to triangular ones and their radius is read off the
//! diagonal. Otherwise each irreducible block is handled by power iteration
//! on `B + I`, which is primitive, with the Collatz-Wielandt bounds
//! `min (Bx)_i / x_i <= ρ(B) <= max (Bx)_i / x_i` as a stopping certificate.
//! Small matrices are cross-checked against Sturm bisection on the exact
//! characteristic polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Square matrix with nonnegative integer entries, such as an adjacency
/// matrix of `Ext¹` dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonnegIntMatrix {
    n: usize,
    data: Vec<u64>,
}

impl NonnegIntMatrix {
    pub fn new(n: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Dimension(format!("{} entries for a {n}x{n} matrix", data.len())));
        }
        Ok(NonnegIntMatrix { n, data })
    }

    /// From signed rows; rejects negative entries and ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::Dimension("matrix is not square".into()));
            }
            for &x in r {
                if x < 0 {
                    return Err(Error::Matrix(format!("negative entry {x}")));
                }
                data.push(x as u64);
            }
        }
        Ok(NonnegIntMatrix { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        NonnegIntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[u64]>::to_vec).collect()
    }

    /// Principal submatrix on the given indices, in that order.
    pub fn principal(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).sum()).collect()
    }

    pub fn max_diagonal(&self) -> u64 {
        (0..self.n).map(|i| self.get(i, i)).max().unwrap_or(0)
    }

    /// Strongly connected components of the graph with an edge `i -> j`
    /// whenever the entry `(i, j)` is positive, ordered by smallest member.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut reach = vec![false; n * n];
        for i in 0..n {
            reach[i * n + i] = true;
            for j in 0..n {
                if self.get(i, j) > 0 {
                    reach[i * n + j] = true;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i * n + k] {
                    for j in 0..n {
                        if reach[k * n + j] {
                            reach[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let mut assigned = vec![false; n];
        let mut comps = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let comp: Vec<usize> = (i..n)
                .filter(|&j| reach[i * n + j] && reach[j * n + i])
                .collect();
            for &j in &comp {
                assigned[j] = true;
            }
            comps.push(comp);
        }
        comps
    }

    /// Whether a simultaneous permutation of rows and columns makes the
    /// matrix upper triangular.
    pub fn is_permutation_triangular(&self) -> bool {
        self.strong_components().iter().all(|c| c.len() == 1)
    }
}

impl fmt::Display for NonnegIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Read off the diagonal of a triangularizable matrix.
    Exact,
    /// Power iteration with a Collatz-Wielandt bracket.
    Iterative,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Iterative => "iterative",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRadius<T> {
    pub value: T,
    pub method: Method,
}

pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest size for which the characteristic-polynomial cross-check runs.
pub const CROSS_CHECK_MAX: usize = 8;

fn cast<T: Float>(x: f64) -> T {
    T::from(x).expect("float conversion")
}

/// Spectral radius within `tol`. The tolerance is raised to what the float
/// type can resolve (a small multiple of its epsilon times the largest row
/// sum).
pub fn spectral_radius<T: Float>(c: &NonnegIntMatrix, tol: T) -> Result<SpectralRadius<T>> {
    spectral_radius_with(c, tol, true)
}

/// As [`spectral_radius`], optionally skipping the exact cross-check.
pub fn spectral_radius_with<T: Float>(
    c: &NonnegIntMatrix,
    tol: T,
    cross_check: bool,
) -> Result<SpectralRadius<T>> {
    if !(tol > T::zero()) {
        return Err(Error::Parameter("tolerance must be positive".into()));
    }
    let comps = c.strong_components();
    if comps.iter().all(|comp| comp.len() == 1) {
        return Ok(SpectralRadius {
            value: cast(c.max_diagonal() as f64),
            method: Method::Exact,
        });
    }
    let scale = c.row_sums().into_iter().max().unwrap_or(0) as f64 + 1.0;
    let tol = tol.max(T::epsilon() * cast(64.0 * scale));
    let mut best = T::zero();
    for comp in &comps {
        let v = if comp.len() == 1 {
            cast(c.get(comp[0], comp[0]) as f64)
        } else {
            perron_root(&c.principal(comp), tol)?
        };
        best = best.max(v);
    }
    if cross_check && c.size() <= CROSS_CHECK_MAX {
        let exact = largest_real_root(&characteristic_polynomial(c), tol.to_f64().unwrap_or(1e-9) / 4.0);
        let got = best.to_f64().unwrap_or(f64::NAN);
        if (exact - got).abs() > 2.0 * tol.to_f64().unwrap_or(1e-9) {
            return Err(Error::Inconsistent(format!(
                "power iteration gave {got}, characteristic polynomial gives {exact}"
            )));
        }
    }
    Ok(SpectralRadius {
        value: best,
        method: Method::Iterative,
    })
}

const MAX_ITERATIONS: usize = 1_000_000;

/// Perron root of an irreducible block.
fn perron_root<T: Float>(b: &NonnegIntMatrix, tol: T) -> Result<T> {
    let n = b.size();
    let entries: Vec<T> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            cast::<T>(b.get(i, j) as f64 + if i == j { 1.0 } else { 0.0 })
        })
        .collect();
    let mut x = vec![T::one(); n];
    let mut y = vec![T::zero(); n];
    for _ in 0..MAX_ITERATIONS {
        for i in 0..n {
            y[i] = (0..n).fold(T::zero(), |acc, j| acc + entries[i * n + j] * x[j]);
        }
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        if hi - lo < tol {
            return Ok((lo + hi) / cast(2.0) - T::one());
        }
        let norm = y.iter().fold(T::zero(), |a, &v| a.max(v));
        for i in 0..n {
            x[i] = y[i] / norm;
        }
    }
    Err(Error::NoConvergence(format!(
        "power iteration on a {n}x{n} block did not reach the tolerance"
    )))
}

/// Coefficients of `det(xI - C)`, constant term first (Faddeev-LeVerrier,
/// exact over the integers).
pub fn characteristic_polynomial(c: &NonnegIntMatrix) -> Vec<BigInt> {
    let n = c.size();
    let a: Vec<BigInt> = c.data.iter().map(|&v| BigInt::from(v)).collect();
    let mul = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                if x[i * n + k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += &x[i * n + k] * &y[k * n + j];
                }
            }
        }
        out
    };
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mul(&a, &m);
        for i in 0..n {
            next[i * n + i] += &coeffs[n - k + 1];
        }
        let am = mul(&a, &next);
        let trace: BigInt = (0..n).map(|i| am[i * n + i].clone()).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
        m = next;
    }
    coeffs
}

/// Integer polynomial, constant term first, without trailing zeros (the
/// zero polynomial is empty).
type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Divide out the (positive) content.
fn primitive(p: Poly) -> Poly {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

fn derivative(p: &[BigInt]) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
}

/// Remainder of `a` modulo `b`, up to a positive factor.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Poly {
    let lb = b.last().expect("nonzero divisor");
    let (scale, sign) = (lb.abs(), lb.signum());
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lr = r.last().expect("nonempty") * &sign;
        for c in r.iter_mut() {
            *c *= &scale;
        }
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &lr * c;
        }
        r = primitive(trim(r));
    }
    r
}

fn gcd_poly(a: &[BigInt], b: &[BigInt]) -> Poly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = pseudo_remainder(&x, &y);
        x = y;
        y = r;
    }
    primitive(x)
}

/// `p / g` for primitive `p` and a primitive divisor `g`; the quotient has
/// integer coefficients by Gauss's lemma.
fn exact_quotient(p: &[BigInt], g: &[BigInt]) -> Poly {
    let lg = g.last().expect("nonzero divisor");
    let mut r = p.to_vec();
    let mut q = vec![BigInt::zero(); p.len() - g.len() + 1];
    while r.len() >= g.len() {
        let shift = r.len() - g.len();
        let c = r.last().expect("nonempty") / lg;
        for (i, x) in g.iter().enumerate() {
            r[shift + i] -= &c * x;
        }
        q[shift] = c;
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

fn sturm_chain(p: &[BigInt]) -> Vec<Poly> {
    let mut chain = vec![p.to_vec()];
    let d = derivative(p);
    if d.is_empty() {
        return chain;
    }
    chain.push(primitive(d));
    loop {
        let n = chain.len();
        let r = pseudo_remainder(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            return chain;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
}

/// Sign of `p(num / 2^k)`, computed as the sign of `2^(k deg p) p(num / 2^k)`.
fn sign_at(p: &[BigInt], num: &BigInt, k: usize) -> i8 {
    let Some(d) = p.len().checked_sub(1) else {
        return 0;
    };
    let mut acc = BigInt::zero();
    for (i, c) in p.iter().enumerate().rev() {
        acc = acc * num + (c << (k * (d - i)));
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn sign_changes(chain: &[Poly], num: &BigInt, k: usize) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let s = sign_at(p, num, k);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn dyadic_to_f64(num: &BigInt, k: usize) -> f64 {
    num.to_f64().unwrap_or(f64::NAN) * 0.5f64.powi(k as i32)
}

/// Largest real root of an integer polynomial (constant term first) by
/// Sturm bisection on its square-free part, to interval width `width`.
/// NaN when there is no real root.
pub fn largest_real_root(poly: &[BigInt], width: f64) -> f64 {
    let p = primitive(trim(poly.to_vec()));
    if p.len() < 2 {
        return f64::NAN;
    }
    let g = gcd_poly(&p, &derivative(&p));
    let p = if g.len() > 1 { exact_quotient(&p, &g) } else { p };
    // at a root of a square-free polynomial the sign changes agree with
    // those just to its right, so every count below is over (x, hi]
    let chain = sturm_chain(&p);
    let lead = p.last().expect("nonzero").abs();
    let bound: BigInt = p[..p.len() - 1]
        .iter()
        .map(|c| (c.abs() + &lead - 1) / &lead)
        .max()
        .unwrap_or_default()
        + 1;
    let mut k = 0;
    let mut lo = -bound.clone();
    let mut hi = bound;
    let v_hi = sign_changes(&chain, &hi, k);
    if sign_changes(&chain, &lo, k) == v_hi {
        return f64::NAN;
    }
    let width = width.max(1e-15);
    while dyadic_to_f64(&(&hi - &lo), k) > width {
        let mid = &lo + &hi;
        k += 1;
        lo <<= 1;
        hi <<= 1;
        if sign_changes(&chain, &mid, k) == v_hi {
            if sign_at(&p, &mid, k) == 0 {
                return dyadic_to_f64(&mid, k);
            }
            hi = mid;
        } else {
            lo = mid;
        }
    }
    dyadic_to_f64(&(lo + hi), k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn m(rows: &[&[i64]]) -> NonnegIntMatrix {
        NonnegIntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn swap_matrix_has_radius_one() {
        let r = spectral_radius(&m(&[&[0, 1], &[1, 0]]), 1e-9).unwrap();
        assert_eq!(r.method, Method::Iterative);
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn silver_ratio() {
        let r = spectral_radius(&m(&[&[2, 1], &[1, 0]]), 1e-9).unwrap();
        assert_abs_diff_eq!(r.value, 1.0 + 2f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn triangular_is_exact() {
        let r = spectral_radius(&m(&[&[3, 1, 5], &[0, 1, 2], &[0, 0, 0]]), 1e-9).unwrap();
        assert_eq!(r.method, Method::Exact);
        assert_eq!(r.value, 3.0);
        // same matrix after a simultaneous permutation
        let p = m(&[&[0, 0, 0], &[2, 1, 0], &[5, 1, 3]]);
        assert!(p.is_permutation_triangular());
        assert_eq!(spectral_radius(&p, 1e-9).unwrap().value, 3.0);
    }

    #[test]
    fn root_at_a_bisection_midpoint() {
        // x^3 - x: the first two midpoints 0 and 1 are both roots
        let p: Vec<BigInt> = [0, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_abs_diff_eq!(largest_real_root(&p, 1e-12), 1.0, epsilon = 1e-12);
        let r = spectral_radius(&m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]), 1e-9).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-12);
        // x^2 (x - 2): midpoint 0 is a root below the largest one
        let p: Vec<BigInt> = [0, 0, -2, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_abs_diff_eq!(largest_real_root(&p, 1e-12), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn single_precision() {
        let r = spectral_radius(&m(&[&[2, 1], &[1, 0]]), 1e-9f32).unwrap();
        assert!((r.value - (1.0 + 2f32.sqrt())).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(NonnegIntMatrix::from_rows(&[vec![1, -1], vec![0, 0]]).is_err());
        assert!(NonnegIntMatrix::from_rows(&[vec![1, 1]]).is_err());
        assert!(spectral_radius(&m(&[&[1]]), 0.0).is_err());
    }

    #[test]
    fn charpoly_and_sturm() {
        // x² - 2x - 1
        let c = characteristic_polynomial(&m(&[&[2, 1], &[1, 0]]));
        assert_eq!(c, vec![BigInt::from(-1), BigInt::from(-2), BigInt::from(1)]);
        let root = largest_real_root(&c, 1e-12);
        assert_abs_diff_eq!(root, 1.0 + 2f64.sqrt(), epsilon = 1e-11);
        // x³ - 1 has a single real root, 1, hit exactly by bisection midpoints
        let cyc = characteristic_polynomial(&m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]));
        assert_abs_diff_eq!(largest_real_root(&cyc, 1e-12), 1.0, epsilon = 1e-11);
        // repeated root: (x - 2)²
        let rep = vec![BigInt::from(4), BigInt::from(-4), BigInt::from(1)];
        assert_abs_diff_eq!(largest_real_root(&rep, 1e-12), 2.0, epsilon = 1e-11);
    }

    #[test]
    fn components() {
        let c = m(&[&[0, 1, 0], &[1, 0, 0], &[1, 0, 2]]);
        assert_eq!(c.strong_components(), vec![vec![0, 1], vec![2]]);
        assert_abs_diff_eq!(spectral_radius(&c, 1e-9).unwrap().value, 2.0, epsilon = 1e-9);
    }
}
