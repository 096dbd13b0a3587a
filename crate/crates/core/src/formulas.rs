//! Closed forms and root isolation for spectral radii of `f(x) - 1` with
//! `f` a product of linear factors, and `Ext¹` between one-dimensional
//! modules over polynomial rings.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::spectral::NonnegIntMatrix;

/// `f(x) = Π (x - n_i)^{r_i}` with `0 <= n_1 < ... < n_{s-1} <= n_s - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredPoly<T> {
    factors: Vec<(T, u32)>,
}

impl<T: Float> FactoredPoly<T> {
    /// `(root, multiplicity)` pairs in increasing root order.
    pub fn new(factors: Vec<(T, u32)>) -> Result<Self> {
        let Some(&(last, _)) = factors.last() else {
            return Err(Error::Parameter("empty factorization".into()));
        };
        for (i, &(n, r)) in factors.iter().enumerate() {
            if r == 0 {
                return Err(Error::Parameter("multiplicities must be positive".into()));
            }
            if !n.is_finite() || n < T::zero() {
                return Err(Error::Parameter("roots must be nonnegative reals".into()));
            }
            if i + 1 < factors.len() {
                if i > 0 && n <= factors[i - 1].0 {
                    return Err(Error::Parameter("roots must be strictly increasing".into()));
                }
                if n > last - T::one() {
                    return Err(Error::Parameter(
                        "every smaller root must be at most the largest root minus one".into(),
                    ));
                }
            }
        }
        Ok(FactoredPoly { factors })
    }

    pub fn factors(&self) -> &[(T, u32)] {
        &self.factors
    }

    pub fn largest_root(&self) -> T {
        self.factors.last().expect("nonempty").0
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn eval(&self, x: T) -> T {
        self.factors
            .iter()
            .fold(T::one(), |acc, &(n, r)| acc * (x - n).powi(r as i32))
    }

    /// `(x - m) f(x)`, merging with an existing factor.
    pub fn times_linear(&self, m: T) -> Result<Self> {
        let mut factors = self.factors.clone();
        match factors.iter_mut().find(|f| f.0 == m) {
            Some(f) => f.1 += 1,
            None => {
                factors.push((m, 1));
                factors.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
            }
        }
        Self::new(factors)
    }
}

/// Interval width at which [`level_one_root`] stops.
pub const ROOT_WIDTH: f64 = 1e-12;

/// The unique root of `f(x) - 1` in `(n_s, n_s + 1]`, which is also the
/// largest modulus of any complex root.
pub fn level_one_root<T: Float>(f: &FactoredPoly<T>) -> T {
    let width = T::from(ROOT_WIDTH).expect("float");
    let mut lo = f.largest_root();
    let mut hi = lo + T::one();
    // f is increasing on the interval, f(lo) = 0 < 1 <= f(hi)
    while hi - lo > width {
        let mid = (lo + hi) / T::from(2.0).expect("float");
        if mid <= lo || mid >= hi {
            break;
        }
        if f.eval(mid) < T::one() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// `(n + √(4 + n²)) / 2`, the radius of `[[0, 1], [1, n]]`.
pub fn two_cycle_radius<T: Float>(n_max: u32) -> Result<T> {
    if n_max < 1 {
        return Err(Error::Parameter("n_max must be at least 1".into()));
    }
    let n = T::from(n_max).expect("float");
    let four = T::from(4.0).expect("float");
    Ok((n + (four + n * n).sqrt()) / T::from(2.0).expect("float"))
}

/// Root of `x (x - n)^s - 1`, the radius of the `(s+1)`-cycle adjacency
/// matrix with diagonal `(0, n, ..., n)`.
pub fn long_cycle_radius<T: Float>(n_max: u32, s: u32) -> Result<T> {
    if n_max < 1 || s < 1 {
        return Err(Error::Parameter("n_max and s must be at least 1".into()));
    }
    let f = FactoredPoly::new(vec![
        (T::zero(), 1),
        (T::from(n_max).expect("float"), s),
    ])?;
    Ok(level_one_root(&f))
}

/// The cycle matrix with ones on the superdiagonal and in the bottom-left
/// corner and the given diagonal; its characteristic polynomial is
/// `Π (x - d_i) - 1`.
pub fn cycle_matrix(diagonal: &[u64]) -> NonnegIntMatrix {
    let n = diagonal.len();
    let mut m = NonnegIntMatrix::zeros(n);
    for (i, &d) in diagonal.iter().enumerate() {
        m.set(i, i, d);
        if n > 1 {
            m.set(i, (i + 1) % n, m.get(i, (i + 1) % n) + 1);
        }
    }
    if n == 1 {
        m.set(0, 0, diagonal[0] + 1);
    }
    m
}

/// `dim Ext¹` between the one-dimensional modules of `k[x_1..x_r]` on which
/// `x_i` acts by `λ_i` and `μ_i`: extensions are `E_i = [[μ_i, a_i], [0, λ_i]]`
/// with the `E_i` commuting, modulo the change of basis `a_i -> a_i + c(λ_i - μ_i)`.
pub fn poly_ext1<F: Field>(lambda: &[F], mu: &[F]) -> Result<usize> {
    let r = lambda.len();
    if mu.len() != r {
        return Err(Error::Dimension(format!(
            "parameter vectors of lengths {} and {}",
            r,
            mu.len()
        )));
    }
    if r == 0 {
        return Err(Error::Parameter("need at least one variable".into()));
    }
    let diff: Vec<F> = (0..r).map(|i| mu[i].clone() - lambda[i].clone()).collect();
    // a_j (μ_i - λ_i) - a_i (μ_j - λ_j) = 0 for i < j
    let mut rows = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let mut row = vec![F::zero(); r];
            row[j] = diff[i].clone();
            row[i] = -diff[j].clone();
            rows.push(row);
        }
    }
    let cocycles = if rows.is_empty() {
        r
    } else {
        Matrix::from_rows(&rows)?.nullity()
    };
    let coboundaries = usize::from(diff.iter().any(|d| !d.is_zero()));
    Ok(cocycles - coboundaries)
}

/// `dim Hom` between one-dimensional modules: a scalar `d` with
/// `d λ_i = μ_i d` for every `i`.
pub fn poly_hom_dim<F: Field>(lambda: &[F], mu: &[F]) -> Result<usize> {
    if lambda.len() != mu.len() {
        return Err(Error::Dimension("parameter vectors of different lengths".into()));
    }
    let rows: Vec<Vec<F>> = lambda
        .iter()
        .zip(mu)
        .map(|(l, m)| vec![l.clone() - m.clone()])
        .collect();
    Ok(if rows.is_empty() { 1 } else { Matrix::from_rows(&rows)?.nullity() })
}

/// Brick test for a module over `k[x_1..x_r]` given by commuting matrices:
/// the dimension of the joint commutant `{D : D C_i = C_i D}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyBrickCheck {
    pub space_dim: usize,
    pub endomorphism_dim: usize,
    pub is_brick: bool,
}

pub fn poly_brick_check<F: Field>(matrices: &[Matrix<F>]) -> Result<PolyBrickCheck> {
    let Some(first) = matrices.first() else {
        return Err(Error::Parameter("need at least one matrix".into()));
    };
    let d = first.rows();
    if matrices.iter().any(|m| m.shape() != (d, d)) {
        return Err(Error::Dimension("matrices must be square of one size".into()));
    }
    for (i, a) in matrices.iter().enumerate() {
        for b in &matrices[i + 1..] {
            if a.mul(b) != b.mul(a) {
                return Err(Error::NonCommuting);
            }
        }
    }
    // vec(D C) - vec(C D) = (Cᵗ ⊗ I - I ⊗ C) vec(D)
    let id = Matrix::identity(d);
    let blocks: Vec<Matrix<F>> = matrices
        .iter()
        .map(|c| c.transpose().kron(&id).sub(&id.kron(c)))
        .collect();
    let endomorphism_dim = if d == 0 { 0 } else { Matrix::vstack(&blocks)?.nullity() };
    let is_brick = endomorphism_dim == 1;
    if is_brick != (d == 1) {
        return Err(Error::Inconsistent(format!(
            "commutant of dimension {endomorphism_dim} on a space of dimension {d}"
        )));
    }
    Ok(PolyBrickCheck {
        space_dim: d,
        endomorphism_dim,
        is_brick,
    })
}

/// Summary for `k[x_1..x_r]` over a finite field: its bricks are the
/// one-dimensional modules, distinct ones have no morphisms between them,
/// so every brick set is either a singleton (adjacency `(r)`) or a set of
/// modules with zero mutual extensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyReport {
    pub r: usize,
    pub field: String,
    pub bricks: usize,
    /// Largest `dim Ext¹(X, Y)` over distinct bricks.
    pub max_cross_ext: usize,
    /// Smallest and largest `dim Ext¹(X, X)`.
    pub self_ext: (usize, usize),
    pub hom_between_distinct: usize,
    pub fpdim: f64,
}

/// Enumerates every one-dimensional module over the finite field `F` and
/// derives the Frobenius-Perron dimension of the brick sets among them.
pub fn poly_report<F: Field>(r: usize) -> Result<PolyReport> {
    let elements = F::elements().ok_or(Error::InfiniteField)?;
    let q = elements.len();
    let count = q.checked_pow(r as u32).filter(|&c| c <= 1 << 12).ok_or_else(|| {
        Error::Parameter(format!("{q}^{r} one-dimensional modules is too many to list"))
    })?;
    let points: Vec<Vec<F>> = (0..count)
        .map(|mut k| {
            (0..r)
                .map(|_| {
                    let e = elements[k % q].clone();
                    k /= q;
                    e
                })
                .collect()
        })
        .collect();
    let mut max_cross = 0;
    let mut self_ext = (usize::MAX, 0);
    let mut hom_distinct = 0;
    for (i, a) in points.iter().enumerate() {
        let one = |v: &F| Matrix::from_rows(&[vec![v.clone()]]).expect("1x1");
        let check = poly_brick_check(&a.iter().map(one).collect::<Vec<_>>())?;
        if !check.is_brick {
            return Err(Error::Inconsistent("one-dimensional module is not a brick".into()));
        }
        for (j, b) in points.iter().enumerate() {
            let e = poly_ext1(a, b)?;
            if i == j {
                self_ext = (self_ext.0.min(e), self_ext.1.max(e));
            } else {
                max_cross = max_cross.max(e);
                hom_distinct += poly_hom_dim(a, b)?;
            }
        }
    }
    // Brick sets are diagonal matrices diag(r, ..., r) when cross terms vanish.
    let fpdim = if max_cross == 0 { self_ext.1 as f64 } else { f64::NAN };
    Ok(PolyReport {
        r,
        field: F::name(),
        bricks: points.len(),
        max_cross_ext: max_cross,
        self_ext,
        hom_between_distinct: hom_distinct,
        fpdim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use crate::spectral::spectral_radius;
    use approx::assert_abs_diff_eq;

    fn fp(roots: &[(f64, u32)]) -> FactoredPoly<f64> {
        FactoredPoly::new(roots.to_vec()).unwrap()
    }

    #[test]
    fn roots() {
        assert_abs_diff_eq!(level_one_root(&fp(&[(0.0, 1), (2.0, 1)])), 1.0 + 2f64.sqrt(), epsilon = 1e-11);
        assert_abs_diff_eq!(level_one_root(&fp(&[(0.0, 1)])), 1.0, epsilon = 1e-11);
        let x = level_one_root(&fp(&[(0.0, 1), (1.0, 1), (2.0, 1)]));
        assert!(x > 2.0 && x <= 3.0);
        assert!((x * (x - 1.0) * (x - 2.0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invariants() {
        assert!(FactoredPoly::new(vec![(0.0, 1), (0.5, 1)]).is_err());
        assert!(FactoredPoly::new(vec![(1.0, 1), (0.0, 1), (3.0, 1)]).is_err());
        assert!(FactoredPoly::<f64>::new(vec![]).is_err());
        assert!(FactoredPoly::new(vec![(0.0, 0)]).is_err());
        assert!(FactoredPoly::new(vec![(-1.0, 1)]).is_err());
        let f = fp(&[(0.0, 1), (2.0, 1)]).times_linear(2.0).unwrap();
        assert_eq!(f.factors(), &[(0.0, 1), (2.0, 2)]);
    }

    #[test]
    fn closed_forms() {
        assert_abs_diff_eq!(two_cycle_radius::<f64>(2).unwrap(), 1.0 + 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(two_cycle_radius::<f64>(4).unwrap(), 2.0 + 5f64.sqrt(), epsilon = 1e-12);
        assert!(long_cycle_radius::<f64>(2, 2).unwrap() > two_cycle_radius::<f64>(2).unwrap());
        assert!(two_cycle_radius::<f64>(0).is_err());
        assert!(long_cycle_radius::<f64>(1, 0).is_err());
    }

    #[test]
    fn cycle_matrices_match_roots() {
        let m = cycle_matrix(&[0, 2, 2]);
        let rho = spectral_radius(&m, 1e-10).unwrap().value;
        assert_abs_diff_eq!(rho, long_cycle_radius::<f64>(2, 2).unwrap(), epsilon = 1e-9);
    }

    #[test]
    fn poly_ext() {
        let q = |v: i64| Rational::from_i64(v);
        assert_eq!(poly_ext1(&[q(0), q(0)], &[q(0), q(0)]).unwrap(), 2);
        assert_eq!(poly_ext1(&[q(1), q(2)], &[q(1), q(3)]).unwrap(), 0);
        assert_eq!(poly_ext1(&[q(5), q(-1), q(7)], &[q(5), q(-1), q(7)]).unwrap(), 3);
        assert!(poly_ext1(&[q(1)], &[q(1), q(2)]).is_err());
    }

    #[test]
    fn brick_checks() {
        type F2 = Fp<2>;
        let c = Matrix::<F2>::from_i64(&[&[1]]);
        assert!(poly_brick_check(&[c.clone(), c]).unwrap().is_brick);
        let z = Matrix::<F2>::zeros(2, 2);
        let r = poly_brick_check(&[z.clone(), z.clone()]).unwrap();
        assert_eq!(r.endomorphism_dim, 4);
        let n = Matrix::<F2>::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(poly_brick_check(&[n.clone(), z]).unwrap().endomorphism_dim, 2);
        let t = Matrix::<F2>::from_i64(&[&[0, 0], &[1, 0]]);
        assert_eq!(poly_brick_check(&[n, t]), Err(Error::NonCommuting));
    }

    #[test]
    fn polynomial_ring_report() {
        let rep = poly_report::<Fp<3>>(2).unwrap();
        assert_eq!(rep.bricks, 9);
        assert_eq!(rep.self_ext, (2, 2));
        assert_eq!(rep.max_cross_ext, 0);
        assert_eq!(rep.hom_between_distinct, 0);
        assert_eq!(rep.fpdim, 2.0);
    }
}
