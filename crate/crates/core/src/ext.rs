//! Indecomposable projectives, syzygies and `Ext¹`.
//!
//! `Ext¹(M, N)` is computed from a projective presentation
//! `0 -> Ω -> P0 -> M -> 0` as `dim Hom(Ω, N)` minus the dimension of the
//! restrictions of `Hom(P0, N)`. An independent computation through
//! extension cocycles is provided as [`ext1_cocycle_dim`].

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{rank_of_vectors, Matrix};
use crate::quiver::{BoundQuiver, Path, PathBasis};
use crate::rep::{hom_space, Representation};

/// The projective `P(v) = A e_v`: at vertex `w` it is spanned by the residue
/// paths from `v` to `w`, and arrows act by left multiplication.
#[derive(Debug, Clone)]
pub struct Projective<F> {
    pub vertex: usize,
    pub rep: Representation<F>,
    /// Basis paths at each vertex, in the order of the coordinates.
    pub labels: Vec<Vec<Path>>,
}

pub(crate) fn build_projective<F: Field>(
    bq: &BoundQuiver,
    basis: &PathBasis<F>,
    v: usize,
) -> Projective<F> {
    let q = bq.quiver();
    let labels: Vec<Vec<Path>> = (0..q.vertex_count())
        .map(|w| basis.basis(v, w).to_vec())
        .collect();
    let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(id, a)| {
            let step = Path::new(q, vec![id]).expect("arrow");
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            for (j, p) in labels[a.source].iter().enumerate() {
                for (i, x) in basis.multiply(&step, p).expect("composable") {
                    m[(i, j)] = x;
                }
            }
            m
        })
        .collect();
    Projective {
        vertex: v,
        rep: Representation::from_parts(dims, maps),
        labels,
    }
}

/// Per vertex, a basis of the radical `Σ im M_α` (over arrows into the
/// vertex) and of a complement, the top.
pub fn top_radical<F: Field>(bq: &BoundQuiver, m: &Representation<F>) -> Vec<(Matrix<F>, Matrix<F>)> {
    let q = bq.quiver();
    (0..q.vertex_count())
        .map(|v| {
            let d = m.dims()[v];
            let incoming: Vec<Matrix<F>> = q
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.target == v)
                .map(|(id, _)| m.map(id).clone())
                .collect();
            let span = if incoming.is_empty() {
                Matrix::zeros(d, 0)
            } else {
                Matrix::hstack(&incoming).expect("same row count")
            };
            let (r, pivots) = span.transpose().rref();
            let rad: Vec<Vec<F>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
            // extend by unit vectors outside the pivot columns
            let top: Vec<Vec<F>> = (0..d)
                .filter(|c| !pivots.contains(c))
                .map(|c| {
                    let mut e = vec![F::zero(); d];
                    e[c] = F::one();
                    e
                })
                .collect();
            (Matrix::from_columns(d, &rad), Matrix::from_columns(d, &top))
        })
        .collect()
}

/// A projective presentation `0 -> Ω -> P0 -> M -> 0` with `P0` a direct
/// sum of `P(v)` over chosen top generators.
#[derive(Debug, Clone)]
pub struct Presentation<F> {
    /// `(vertex, vector of M_vertex)` for every summand of `P0`.
    pub generators: Vec<(usize, Vec<F>)>,
    pub p0: Representation<F>,
    /// For each vertex, the offset of each generator's block inside `P0`.
    offsets: Vec<Vec<usize>>,
    pub pi: Vec<Matrix<F>>,
    pub omega: Representation<F>,
    /// Inclusion `Ω -> P0`, one matrix per vertex.
    pub iota: Vec<Matrix<F>>,
}

impl<F: Field> Presentation<F> {
    pub fn new(alg: &Algebra<F>, m: &Representation<F>) -> Result<Self> {
        let bq = alg.bound_quiver();
        let q = bq.quiver();
        let n = q.vertex_count();
        if m.dims().len() != n || m.maps().len() != q.arrows().len() {
            return Err(Error::Dimension("module does not match the algebra".into()));
        }
        let mut generators = Vec::new();
        for (v, (_, top)) in top_radical(bq, m).into_iter().enumerate() {
            for j in 0..top.cols() {
                generators.push((v, top.column(j)));
            }
        }
        let projs: Vec<&Projective<F>> = generators
            .iter()
            .map(|(v, _)| alg.projective(*v))
            .collect::<Result<_>>()?;
        let mut offsets = vec![Vec::with_capacity(generators.len()); n];
        let mut dims = vec![0; n];
        for p in &projs {
            for w in 0..n {
                offsets[w].push(dims[w]);
                dims[w] += p.rep.dims()[w];
            }
        }
        let maps = (0..q.arrows().len())
            .map(|a| {
                let blocks: Vec<&Matrix<F>> = projs.iter().map(|p| p.rep.map(a)).collect();
                let (s, t) = (q.arrow(a).source, q.arrow(a).target);
                if blocks.is_empty() {
                    Matrix::zeros(dims[t], dims[s])
                } else {
                    Matrix::block_diag(&blocks)
                }
            })
            .collect();
        let p0 = Representation::from_parts(dims.clone(), maps);

        let pi: Vec<Matrix<F>> = (0..n)
            .map(|w| {
                let mut cols = Vec::with_capacity(dims[w]);
                for (p, (_, g)) in projs.iter().zip(&generators) {
                    for path in &p.labels[w] {
                        cols.push(m.path_matrix(path).mul_vec(g));
                    }
                }
                Matrix::from_columns(m.dims()[w], &cols)
            })
            .collect();

        let iota: Vec<Matrix<F>> = (0..n)
            .map(|w| Matrix::from_columns(dims[w], &pi[w].kernel_basis()))
            .collect();
        let omega_dims: Vec<usize> = iota.iter().map(Matrix::cols).collect();
        let omega_maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(id, a)| {
                let image = p0.map(id).mul(&iota[a.source]);
                iota[a.target]
                    .solve_matrix(&image)?
                    .ok_or_else(|| Error::Inconsistent("syzygy is not a submodule".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let omega = Representation::from_parts(omega_dims, omega_maps);
        Ok(Presentation {
            generators,
            p0,
            offsets,
            pi,
            omega,
            iota,
        })
    }

    /// `Ext¹(M, N)` for the module `M` this presents.
    pub fn ext1_dim(&self, alg: &Algebra<F>, n: &Representation<F>) -> Result<usize> {
        let bq = alg.bound_quiver();
        let hom = hom_space(bq, &self.omega, n)?;
        if hom.dim == 0 {
            return Ok(0);
        }
        // Hom(P(v), N) ≅ N_v: the generator with value e_k sends a path p to N_p e_k
        let vertices = bq.vertex_count();
        let mut restricted = Vec::new();
        for (g, (v, _)) in self.generators.iter().enumerate() {
            let proj = alg.projective(*v)?;
            for k in 0..n.dims()[*v] {
                let mut vec = Vec::new();
                for w in 0..vertices {
                    let mut phi = Matrix::zeros(n.dims()[w], self.p0.dims()[w]);
                    for (j, path) in proj.labels[w].iter().enumerate() {
                        let col = n.path_matrix(path).column(k);
                        for (i, x) in col.into_iter().enumerate() {
                            phi[(i, self.offsets[w][g] + j)] = x;
                        }
                    }
                    vec.extend(phi.mul(&self.iota[w]).vec_columns());
                }
                restricted.push(vec);
            }
        }
        Ok(hom.dim - rank_of_vectors(&restricted))
    }
}

/// `dim Ext¹(M, N)` via a projective presentation of `M`.
pub fn ext1_dim<F: Field>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> Result<usize> {
    Presentation::new(alg, m)?.ext1_dim(alg, n)
}

/// `dim Ext¹(M, N)` as cocycles modulo coboundaries: an extension is given
/// by maps `X_α : M_a -> N_b` making `[[N_α, X_α], [0, M_α]]` satisfy the
/// relations; coboundaries are `X_α = N_α h_a - h_b M_α`.
pub fn ext1_cocycle_dim<F: Field>(
    bq: &BoundQuiver,
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<usize> {
    let q = bq.quiver();
    for r in [m, n] {
        if r.dims().len() != q.vertex_count() || r.maps().len() != q.arrows().len() {
            return Err(Error::Dimension("representation does not match the bound quiver".into()));
        }
    }
    let (md, nd) = (m.dims(), n.dims());
    let mut x_off = Vec::with_capacity(q.arrows().len());
    let mut unknowns = 0;
    for a in q.arrows() {
        x_off.push(unknowns);
        unknowns += nd[a.target] * md[a.source];
    }

    let rows: usize = bq
        .relations()
        .iter()
        .map(|r| nd[r.target()] * md[r.source()])
        .sum();
    let mut cocycle = Matrix::<F>::zeros(rows, unknowns);
    let mut r0 = 0;
    for rel in bq.relations() {
        let h = nd[rel.target()] * md[rel.source()];
        for (c, path) in rel.terms() {
            let c = F::from_i64(*c);
            let ids = path.arrows();
            for k in 0..ids.len() {
                // N(prefix) X_{ids[k]} M(suffix)
                let a = q.arrow(ids[k]);
                let mut left = Matrix::identity(nd[rel.target()]);
                for &x in &ids[..k] {
                    left = left.mul(n.map(x));
                }
                let mut right = Matrix::identity(md[a.source]);
                for &x in &ids[k + 1..] {
                    right = right.mul(m.map(x));
                }
                let block = right.transpose().kron(&left).scale(&c);
                for i in 0..h {
                    for j in 0..block.cols() {
                        let v = block[(i, j)].clone();
                        if !v.is_zero() {
                            let col = x_off[ids[k]] + j;
                            cocycle[(r0 + i, col)] = cocycle[(r0 + i, col)].clone() + v;
                        }
                    }
                }
            }
        }
        r0 += h;
    }
    let cocycles = cocycle.nullity();

    let mut h_off = Vec::with_capacity(q.vertex_count());
    let mut h_count = 0;
    for v in 0..q.vertex_count() {
        h_off.push(h_count);
        h_count += nd[v] * md[v];
    }
    let mut delta = Matrix::<F>::zeros(unknowns, h_count);
    for (id, a) in q.arrows().iter().enumerate() {
        // vec(N_α h_a) = (I ⊗ N_α) vec h_a;  vec(h_b M_α) = (M_αᵗ ⊗ I) vec h_b
        let plus = Matrix::identity(md[a.source]).kron(n.map(id));
        let minus = m.map(id).transpose().kron(&Matrix::identity(nd[a.target]));
        for i in 0..plus.rows() {
            for j in 0..plus.cols() {
                let v = plus[(i, j)].clone();
                if !v.is_zero() {
                    let (r, c) = (x_off[id] + i, h_off[a.source] + j);
                    delta[(r, c)] = delta[(r, c)].clone() + v;
                }
            }
            for j in 0..minus.cols() {
                let v = minus[(i, j)].clone();
                if !v.is_zero() {
                    let (r, c) = (x_off[id] + i, h_off[a.target] + j);
                    delta[(r, c)] = delta[(r, c)].clone() - v;
                }
            }
        }
    }
    Ok(cocycles - delta.rank())
}

/// Euler form `Σ d(v) e(v) - Σ_{α: a -> b} d(a) e(b)` of a quiver without
/// relations.
pub fn euler_form(bq: &BoundQuiver, d: &[usize], e: &[usize]) -> Result<i64> {
    let q = bq.quiver();
    if !bq.relations().is_empty() {
        return Err(Error::Parameter("Euler form formula needs a quiver without relations".into()));
    }
    if d.len() != q.vertex_count() || e.len() != q.vertex_count() {
        return Err(Error::Dimension("dimension vector length".into()));
    }
    let diag: i64 = d.iter().zip(e).map(|(x, y)| (x * y) as i64).sum();
    let off: i64 = q.arrows().iter().map(|a| (d[a.source] * e[a.target]) as i64).sum();
    Ok(diag - off)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use crate::quiver::builders::{cyclic_tube, dynkin};
    use crate::quiver::{loop_extend, DynkinType, Quiver};
    use crate::rep::hom_dim;

    type F2 = Fp<2>;
    type F3 = Fp<3>;

    #[test]
    fn projectives_of_a2() {
        let bq = dynkin(DynkinType::A(2)).unwrap();
        let alg = Algebra::<F2>::new(&bq).unwrap();
        // arrow 2 -> 1: P(2) = (1, 1), P(1) = S1
        let p2 = alg.projective(1).unwrap();
        assert_eq!(p2.rep.dims(), &[1, 1]);
        assert!(!p2.rep.map(0).is_zero());
        assert_eq!(alg.projective(0).unwrap().rep.dims(), &[1, 0]);
        assert!(alg.projective(2).is_err());
    }

    #[test]
    fn a2_ext_between_simples() {
        let bq = dynkin(DynkinType::A(2)).unwrap();
        let alg = Algebra::<F3>::new(&bq).unwrap();
        let s1 = Representation::simple(&bq, 0).unwrap();
        let s2 = Representation::simple(&bq, 1).unwrap();
        assert_eq!(ext1_dim(&alg, &s2, &s1).unwrap(), 1);
        assert_eq!(ext1_dim(&alg, &s1, &s2).unwrap(), 0);
        assert_eq!(ext1_cocycle_dim(&bq, &s2, &s1).unwrap(), 1);
        assert_eq!(ext1_cocycle_dim(&bq, &s1, &s2).unwrap(), 0);
    }

    #[test]
    fn projectives_have_no_extensions() {
        let bq = cyclic_tube(2, 2).unwrap();
        let alg = Algebra::<F2>::new(&bq).unwrap();
        let s = Representation::simple(&bq, 0).unwrap();
        for v in 0..2 {
            let p = &alg.projective(v).unwrap().rep;
            assert_eq!(ext1_dim(&alg, p, &s).unwrap(), 0);
            assert_eq!(ext1_cocycle_dim(&bq, p, &s).unwrap(), 0);
        }
    }

    #[test]
    fn loops_give_self_extensions() {
        let point = BoundQuiver::hereditary(Quiver::from_edges(1, &[]).unwrap());
        let bq = loop_extend(&point, &[3], 2).unwrap();
        let alg = Algebra::<Rational>::new(&bq).unwrap();
        let s = Representation::simple(&bq, 0).unwrap();
        assert_eq!(ext1_dim(&alg, &s, &s).unwrap(), 3);
        assert_eq!(ext1_cocycle_dim(&bq, &s, &s).unwrap(), 3);
    }

    #[test]
    fn syzygy_is_a_submodule() {
        let bq = cyclic_tube(3, 2).unwrap();
        let alg = Algebra::<F2>::new(&bq).unwrap();
        let s = Representation::simple(&bq, 1).unwrap();
        let pres = Presentation::new(&alg, &s).unwrap();
        assert_eq!(pres.generators.len(), 1);
        // Ω(S2) = S3 along 2 -> 3
        assert_eq!(pres.omega.dims(), &[0, 0, 1]);
        let s3 = Representation::simple(&bq, 2).unwrap();
        assert_eq!(hom_dim(&bq, &pres.omega, &s3).unwrap(), 1);
        assert_eq!(ext1_dim(&alg, &s, &s3).unwrap(), 1);
    }

    #[test]
    fn euler_form_of_kronecker() {
        let q = Quiver::from_edges(2, &[("a", 1, 0), ("b", 1, 0)]).unwrap();
        let bq = BoundQuiver::hereditary(q);
        assert_eq!(euler_form(&bq, &[1, 1], &[1, 1]).unwrap(), 0);
        assert_eq!(euler_form(&bq, &[0, 1], &[1, 0]).unwrap(), -2);
        assert!(euler_form(&cyclic_tube(2, 2).unwrap(), &[1, 0], &[1, 0]).is_err());
    }
}
