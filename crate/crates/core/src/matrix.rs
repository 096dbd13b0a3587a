//! Dense matrices over an exact field.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major dense matrix. Zero rows or zero columns are allowed and are
/// used freely for zero-dimensional vertex spaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let owned: Vec<Vec<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
            .collect();
        Self::from_rows(&owned).expect("ragged integer rows")
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    /// Product; panics on shape mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        self.mul_unchecked(rhs)
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        let t = out.data[i * rhs.cols + j].clone() + a.clone() * b.clone();
                        out.data[i * rhs.cols + j] = t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// `self += c * rhs`
    pub fn add_scaled(&mut self, c: &F, rhs: &Self) {
        assert_eq!(self.shape(), rhs.shape());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a = a.clone() + c.clone() * b.clone();
            }
        }
    }

    /// Kronecker product; `vec(A X B) = (Bᵗ ⊗ A) vec(X)` with column-stacking.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a.clone() * rhs[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    /// Place `blocks` along the diagonal.
    pub fn block_diag(blocks: &[&Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    /// Stack vertically; all parts must have the same column count.
    pub fn vstack(parts: &[Self]) -> Result<Self> {
        let cols = parts.first().map_or(0, |p| p.cols);
        if parts.iter().any(|p| p.cols != cols) {
            return Err(Error::Dimension("vstack with differing column counts".into()));
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let data = parts.iter().flat_map(|p| p.data.iter().cloned()).collect();
        Ok(Matrix { rows, cols, data })
    }

    pub fn hstack(parts: &[Self]) -> Result<Self> {
        let rows = parts.first().map_or(0, |p| p.rows);
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::Dimension("hstack with differing row counts".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        Ok(out)
    }

    /// Column-stacked vectorisation.
    pub fn vec_columns(&self) -> Vec<F> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self[(i, j)].clone());
            }
        }
        v
    }

    pub fn from_vec_columns(rows: usize, cols: usize, v: &[F]) -> Self {
        assert_eq!(v.len(), rows * cols);
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m[(i, j)] = v[j * rows + i].clone();
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        // Eliminate on the thinner orientation.
        if self.rows > self.cols {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Basis of the null space `{x : A x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Some solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, v) in b.iter().enumerate() {
            aug[(i, self.cols)] = v.clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    /// Solve `A X = B` column by column.
    pub fn solve_matrix(&self, b: &Self) -> Result<Option<Self>> {
        let mut cols = Vec::with_capacity(b.cols);
        for j in 0..b.cols {
            match self.solve(&b.column(j))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Self::from_columns(self.cols, &cols)))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

/// Rank of a family of vectors of equal length.
pub fn rank_of_vectors<F: Field>(vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(vectors).expect("vectors of equal length");
    m.rank()
}

/// Enumerate every `rows x cols` matrix over a finite field in a fixed order
/// (entries read as base-q digits, first entry least significant).
pub fn all_matrices<F: Field>(rows: usize, cols: usize) -> Result<Vec<Matrix<F>>> {
    let elements = F::elements().ok_or(Error::InfiniteField)?;
    let q = elements.len();
    let n = rows * cols;
    let count = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > 1 << 24 {
        return Err(Error::SearchCeiling(count));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; n];
    loop {
        let data = digits.iter().map(|&d| elements[d].clone()).collect();
        out.push(Matrix { rows, cols, data });
        let mut k = 0;
        loop {
            if k == n {
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] < q {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use num_traits::{One, Zero};

    type F5 = Fp<5>;

    #[test]
    fn identity_has_full_rank() {
        assert_eq!(Matrix::<F5>::identity(3).rank(), 3);
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
    }

    #[test]
    fn kernel_of_row_vector_over_f5() {
        let a = Matrix::<F5>::from_i64(&[&[1, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![F5::new(4), F5::new(1)]);
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_over_rationals() {
        let a = Matrix::<Rational>::from_i64(&[&[2]]);
        let x = a.solve(&[Rational::one()]).unwrap().unwrap();
        assert_eq!(x[0], Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn inconsistent_system() {
        let a = Matrix::<Rational>::from_i64(&[&[1, 1], &[1, 1]]);
        let b = vec![Rational::one(), Rational::zero()];
        assert_eq!(a.solve(&b).unwrap(), None);
        assert!(a.solve(&[Rational::one()]).is_err());
    }

    #[test]
    fn shape_errors_are_reported() {
        let a = Matrix::<F5>::zeros(2, 3);
        assert!(a.checked_mul(&a).is_err());
        assert!(Matrix::<F5>::new(2, 2, vec![F5::one()]).is_err());
    }

    #[test]
    fn kron_matches_vectorisation_identity() {
        let a = Matrix::<F5>::from_i64(&[&[1, 2], &[3, 4]]);
        let x = Matrix::<F5>::from_i64(&[&[0, 1, 2], &[4, 3, 1]]);
        let b = Matrix::<F5>::from_i64(&[&[1, 0], &[2, 1], &[0, 3]]);
        let lhs = a.mul(&x).mul(&b).vec_columns();
        let rhs = b.transpose().kron(&a).mul_vec(&x.vec_columns());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn enumerates_all_small_matrices() {
        let all = all_matrices::<Fp<2>>(2, 2).unwrap();
        assert_eq!(all.len(), 16);
        assert!(all[0].is_zero());
        let invertible = all.iter().filter(|m| m.is_invertible()).count();
        assert_eq!(invertible, 6);
        assert!(all_matrices::<Rational>(1, 1).is_err());
    }
}
