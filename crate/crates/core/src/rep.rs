//! Finite-dimensional representations of a bound quiver, Hom spaces,
//! bricks and isomorphism testing.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{BoundQuiver, Path, Relation};

/// A vector space per vertex and a matrix per arrow; the matrix of an arrow
/// `a -> b` has shape `dims[b] x dims[a]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation<F> {
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

/// A morphism as one matrix per vertex.
pub type Morphism<F> = Vec<Matrix<F>>;

impl<F: Field> Representation<F> {
    /// Checks shapes only; use [`check_representation`] for the relations.
    pub fn new(bq: &BoundQuiver, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let q = bq.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::Dimension(format!(
                "representation with {} spaces and {} maps on a quiver with {} vertices and {} arrows",
                dims.len(),
                maps.len(),
                q.vertex_count(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::Dimension(format!(
                    "map of {} is {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(Representation { dims, maps })
    }

    pub(crate) fn from_parts(dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        Representation { dims, maps }
    }

    pub fn zero_maps(bq: &BoundQuiver, dims: Vec<usize>) -> Result<Self> {
        let maps = bq
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(*dims.get(a.target).unwrap_or(&0), *dims.get(a.source).unwrap_or(&0)))
            .collect();
        Self::new(bq, dims, maps)
    }

    pub fn simple(bq: &BoundQuiver, v: usize) -> Result<Self> {
        if v >= bq.vertex_count() {
            return Err(Error::UnknownVertex(v));
        }
        let mut dims = vec![0; bq.vertex_count()];
        dims[v] = 1;
        Self::zero_maps(bq, dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F> {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of a path: product of arrow matrices in written order.
    pub fn path_matrix(&self, path: &Path) -> Matrix<F> {
        let mut acc = Matrix::identity(self.dims[path.target()]);
        for &a in path.arrows() {
            acc = acc.mul(&self.maps[a]);
        }
        acc
    }

    pub fn relation_matrix(&self, rel: &Relation) -> Matrix<F> {
        let mut acc = Matrix::zeros(self.dims[rel.target()], self.dims[rel.source()]);
        for (c, p) in rel.terms() {
            acc.add_scaled(&F::from_i64(*c), &self.path_matrix(p));
        }
        acc
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.dims.len() != other.dims.len() || self.maps.len() != other.maps.len() {
            return Err(Error::Dimension("direct sum of representations of different quivers".into()));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        Ok(Representation { dims, maps })
    }

    /// Restriction to a subset of arrows (e.g. forgetting loop matrices).
    pub fn restrict_arrows(&self, keep: &[usize]) -> Self {
        Representation {
            dims: self.dims.clone(),
            maps: keep.iter().map(|&a| self.maps[a].clone()).collect(),
        }
    }
}

/// `Ok(None)` when every relation vanishes, `Ok(Some(i))` for the first
/// violated relation; shape problems are reported as errors.
pub fn check_representation<F: Field>(
    bq: &BoundQuiver,
    m: &Representation<F>,
) -> Result<Option<usize>> {
    Representation::new(bq, m.dims.clone(), m.maps.clone())?;
    for (i, rel) in bq.relations().iter().enumerate() {
        if !m.relation_matrix(rel).is_zero() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn is_valid<F: Field>(bq: &BoundQuiver, m: &Representation<F>) -> bool {
    matches!(check_representation(bq, m), Ok(None))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace<F> {
    pub dim: usize,
    pub basis: Vec<Morphism<F>>,
}

fn same_quiver<F: Field>(bq: &BoundQuiver, m: &Representation<F>, n: &Representation<F>) -> Result<()> {
    let q = bq.quiver();
    for r in [m, n] {
        if r.dims.len() != q.vertex_count() || r.maps.len() != q.arrows().len() {
            return Err(Error::Dimension("representation does not match the bound quiver".into()));
        }
    }
    Ok(())
}

/// Coefficient matrix of the intertwining equations `f_b M_α = N_α f_a`
/// in the unknowns `vec(f_v)`, with the column offset of each vertex.
fn hom_system<F: Field>(
    bq: &BoundQuiver,
    m: &Representation<F>,
    n: &Representation<F>,
) -> (Matrix<F>, Vec<usize>) {
    let q = bq.quiver();
    let mut offsets = Vec::with_capacity(q.vertex_count() + 1);
    let mut total = 0;
    for v in 0..q.vertex_count() {
        offsets.push(total);
        total += m.dims[v] * n.dims[v];
    }
    offsets.push(total);
    let rows: usize = q
        .arrows()
        .iter()
        .map(|a| n.dims[a.target] * m.dims[a.source])
        .sum();
    let mut sys = Matrix::<F>::zeros(rows, total);
    let mut r0 = 0;
    for (id, a) in q.arrows().iter().enumerate() {
        let (sa, sb) = (a.source, a.target);
        let h = n.dims[sb] * m.dims[sa];
        if h == 0 {
            continue;
        }
        // vec(f_b M) = (Mᵗ ⊗ I) vec(f_b);  vec(N f_a) = (I ⊗ N) vec(f_a)
        let left = m.maps[id].transpose().kron(&Matrix::identity(n.dims[sb]));
        let right = Matrix::identity(m.dims[sa]).kron(&n.maps[id]);
        for i in 0..h {
            for j in 0..left.cols() {
                let x = left[(i, j)].clone();
                if !x.is_zero() {
                    let c = offsets[sb] + j;
                    sys[(r0 + i, c)] = sys[(r0 + i, c)].clone() + x;
                }
            }
            for j in 0..right.cols() {
                let x = right[(i, j)].clone();
                if !x.is_zero() {
                    let c = offsets[sa] + j;
                    sys[(r0 + i, c)] = sys[(r0 + i, c)].clone() - x;
                }
            }
        }
        r0 += h;
    }
    (sys, offsets)
}

fn unpack<F: Field>(
    v: &[F],
    offsets: &[usize],
    m: &Representation<F>,
    n: &Representation<F>,
) -> Morphism<F> {
    (0..m.dims.len())
        .map(|x| Matrix::from_vec_columns(n.dims[x], m.dims[x], &v[offsets[x]..offsets[x + 1]]))
        .collect()
}

pub fn hom_space<F: Field>(
    bq: &BoundQuiver,
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<HomSpace<F>> {
    same_quiver(bq, m, n)?;
    let (sys, offsets) = hom_system(bq, m, n);
    let basis: Vec<_> = sys
        .kernel_basis()
        .iter()
        .map(|v| unpack(v, &offsets, m, n))
        .collect();
    Ok(HomSpace {
        dim: basis.len(),
        basis,
    })
}

pub fn hom_dim<F: Field>(bq: &BoundQuiver, m: &Representation<F>, n: &Representation<F>) -> Result<usize> {
    same_quiver(bq, m, n)?;
    let (sys, _) = hom_system(bq, m, n);
    Ok(sys.nullity())
}

/// `End(M)` is one-dimensional.
pub fn is_brick<F: Field>(bq: &BoundQuiver, m: &Representation<F>) -> Result<bool> {
    Ok(!m.is_zero() && hom_dim(bq, m, m)? == 1)
}

/// Whether `f` is a morphism `M -> N` (each component intertwines).
pub fn is_morphism<F: Field>(
    bq: &BoundQuiver,
    f: &Morphism<F>,
    m: &Representation<F>,
    n: &Representation<F>,
) -> bool {
    bq.quiver().arrows().iter().enumerate().all(|(id, a)| {
        f[a.target].mul(&m.maps[id]) == n.maps[id].mul(&f[a.source])
    })
}

fn is_iso_morphism<F: Field>(f: &Morphism<F>) -> bool {
    f.iter().all(Matrix::is_invertible)
}

fn combine<F: Field>(basis: &[Morphism<F>], coeffs: &[F]) -> Morphism<F> {
    let mut acc: Morphism<F> = basis[0].iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
    for (b, c) in basis.iter().zip(coeffs) {
        for (x, y) in acc.iter_mut().zip(b) {
            x.add_scaled(c, y);
        }
    }
    acc
}

/// Search parameters for [`are_isomorphic`].
#[derive(Debug, Clone, Copy)]
pub struct IsoConfig {
    pub seed: u64,
    /// Random combinations tried before any exhaustive pass.
    pub samples: usize,
    /// Hom dimensions up to this are searched exhaustively at once.
    pub exhaustive_dim: usize,
    /// Largest number of combinations an exhaustive pass may visit.
    pub ceiling: u128,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig {
            seed: 0,
            samples: 64,
            exhaustive_dim: 6,
            ceiling: 1 << 22,
        }
    }
}

/// Decide `M ≅ N` by looking for an invertible element of `Hom(M, N)`.
///
/// Over a finite field of order `q` with `h = dim Hom(M,N)`: exhaustive when
/// `h <= exhaustive_dim` and `q^h <= ceiling`, otherwise `samples` seeded
/// random combinations followed by an exhaustive fallback (error above the
/// ceiling). Over the rationals the answer `false` after sampling has
/// probability at most `(n / (2B+1))^samples` of being wrong, where `n` is
/// the total dimension and `B = 64 n` bounds the sampled coefficients
/// (Schwartz-Zippel on the determinant).
pub fn are_isomorphic<F: Field>(
    bq: &BoundQuiver,
    m: &Representation<F>,
    n: &Representation<F>,
    cfg: &IsoConfig,
) -> Result<bool> {
    same_quiver(bq, m, n)?;
    if m.dims != n.dims {
        return Ok(false);
    }
    if m == n || m.is_zero() {
        return Ok(true);
    }
    let hom = hom_space(bq, m, n)?;
    let h = hom.dim;
    if h == 0
        || h != hom_dim(bq, n, m)?
        || h != hom_dim(bq, m, m)?
        || h != hom_dim(bq, n, n)?
    {
        return Ok(false);
    }
    let exhaustive = |ceiling: u128| -> Result<Option<bool>> {
        let Some(elements) = F::elements() else {
            return Ok(None);
        };
        let q = elements.len() as u128;
        let count = q.checked_pow(h as u32).unwrap_or(u128::MAX);
        if count > ceiling {
            return Ok(None);
        }
        let mut digits = vec![0usize; h];
        loop {
            let mut k = 0;
            loop {
                if k == h {
                    return Ok(Some(false));
                }
                digits[k] += 1;
                if digits[k] < elements.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            let coeffs: Vec<F> = digits.iter().map(|&d| elements[d].clone()).collect();
            if is_iso_morphism(&combine(&hom.basis, &coeffs)) {
                return Ok(Some(true));
            }
        }
    };
    if h <= cfg.exhaustive_dim {
        if let Some(answer) = exhaustive(cfg.ceiling)? {
            return Ok(answer);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bound = 64 * m.total_dim() as u64;
    for _ in 0..cfg.samples {
        let coeffs: Vec<F> = (0..h).map(|_| F::sample(&mut rng, bound)).collect();
        if is_iso_morphism(&combine(&hom.basis, &coeffs)) {
            return Ok(true);
        }
    }
    match F::order() {
        None => Ok(false),
        Some(q) => match exhaustive(cfg.ceiling)? {
            Some(answer) => Ok(answer),
            None => Err(Error::SearchCeiling(
                (q as u128).checked_pow(h as u32).unwrap_or(u128::MAX),
            )),
        },
    }
}
