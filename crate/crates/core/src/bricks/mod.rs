//! Exhaustive enumeration of bricks and of isomorphism classes of modules
//! below a dimension cap.
//!
//! For each dimension vector the arrow matrices are chosen one arrow at a
//! time (non-loop arrows first, then loops). A relation is evaluated as soon
//! as all of its arrows carry matrices. The first non-loop arrow with
//! nonzero source and target is only given rank normal forms, which every
//! module can be brought to by a change of basis. The endomorphism algebra
//! is refined along the way, so its dimension is known at every leaf.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{all_matrices, Matrix};
use crate::quiver::BoundQuiver;
use crate::rep::{are_isomorphic, IsoConfig, Representation};

mod checks;
mod sets;

pub use checks::{
    check_directed_shape, check_tube_blocks, loop_extension_report, tube_witness,
    LoopExtensionReport, SelfExtRow,
};
pub use sets::{
    brick_tables, fpdim_search, predict, BrickSet, BrickSets, BrickTables, FpEstimate, Prediction,
};

/// Limits for [`enumerate_bricks`] and [`enumerate_modules`].
#[derive(Debug, Clone)]
pub struct EnumConfig {
    /// Per-vertex dimension cap.
    pub cap: Vec<usize>,
    /// Search-tree nodes allowed per dimension vector.
    pub budget: u64,
    pub iso: IsoConfig,
}

impl EnumConfig {
    pub fn new(cap: Vec<usize>) -> Self {
        EnumConfig {
            cap,
            budget: 1 << 22,
            iso: IsoConfig::default(),
        }
    }
}

/// Pairwise non-isomorphic bricks, ordered by dimension vector (total
/// dimension, then lexicographic) and then by discovery order.
#[derive(Debug, Clone)]
pub struct BrickList<F> {
    pub cap: Vec<usize>,
    pub field: String,
    pub bricks: Vec<Representation<F>>,
    /// False when some dimension vector ran out of budget.
    pub exhaustive: bool,
    pub nodes_visited: u64,
}

/// Isomorphism classes of all (not necessarily indecomposable) modules.
#[derive(Debug, Clone)]
pub struct ModuleList<F> {
    pub cap: Vec<usize>,
    pub modules: Vec<Representation<F>>,
    pub exhaustive: bool,
}

/// Nonzero dimension vectors below `cap`, by total dimension then
/// lexicographically.
pub fn dimension_vectors(cap: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &c in cap {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=c).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0));
    out.sort_by(|a, b| (a.iter().sum::<usize>(), a).cmp(&(b.iter().sum::<usize>(), b)));
    out
}

/// Matrices `[[I_r, 0], [0, 0]]` for every rank `r`.
fn rank_normal_forms<F: Field>(rows: usize, cols: usize) -> Vec<Matrix<F>> {
    (0..=rows.min(cols))
        .map(|r| {
            let mut m = Matrix::zeros(rows, cols);
            for i in 0..r {
                m[(i, i)] = F::one();
            }
            m
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Bricks,
    Modules,
}

/// Invariants compared before attempting an isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Fingerprint {
    end_dim: usize,
    radical: Vec<usize>,
    socle: Vec<usize>,
    ranks: Vec<usize>,
}

fn fingerprint<F: Field>(bq: &BoundQuiver, m: &Representation<F>, end_dim: usize) -> Fingerprint {
    let q = bq.quiver();
    let n = q.vertex_count();
    let mut radical = Vec::with_capacity(n);
    let mut socle = Vec::with_capacity(n);
    for v in 0..n {
        let d = m.dims()[v];
        let incoming: Vec<Matrix<F>> = (0..q.arrows().len())
            .filter(|&a| q.arrow(a).target == v)
            .map(|a| m.map(a).clone())
            .collect();
        let outgoing: Vec<Matrix<F>> = (0..q.arrows().len())
            .filter(|&a| q.arrow(a).source == v)
            .map(|a| m.map(a).clone())
            .collect();
        radical.push(if incoming.is_empty() {
            0
        } else {
            Matrix::hstack(&incoming).expect("rows agree").rank()
        });
        socle.push(if outgoing.is_empty() {
            d
        } else {
            Matrix::vstack(&outgoing).expect("cols agree").nullity()
        });
    }
    let ranks = m.maps().iter().map(Matrix::rank).collect();
    Fingerprint {
        end_dim,
        radical,
        socle,
        ranks,
    }
}

struct Search<'a, F> {
    bq: &'a BoundQuiver,
    dims: Vec<usize>,
    order: Vec<usize>,
    candidates: Vec<Vec<Matrix<F>>>,
    /// Relations whose last arrow (in search order) is assigned at each depth.
    checks: Vec<Vec<usize>>,
    /// Vertices whose loops are all assigned at each depth.
    loop_checks: Vec<Vec<usize>>,
    maps: Vec<Matrix<F>>,
    offsets: Vec<usize>,
    mode: Mode,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    leaves: Vec<(Representation<F>, usize)>,
}

impl<'a, F: Field> Search<'a, F> {
    fn new(
        bq: &'a BoundQuiver,
        dims: Vec<usize>,
        mode: Mode,
        budget: u64,
        cache: &mut HashMap<(usize, usize), Vec<Matrix<F>>>,
    ) -> Result<Self> {
        let q = bq.quiver();
        let mut order: Vec<usize> = (0..q.arrows().len()).filter(|&a| !q.arrow(a).is_loop()).collect();
        order.extend((0..q.arrows().len()).filter(|&a| q.arrow(a).is_loop()));
        let mut normal_form_used = false;
        let mut candidates = Vec::with_capacity(order.len());
        for &a in &order {
            let arrow = q.arrow(a);
            let shape = (dims[arrow.target], dims[arrow.source]);
            if !normal_form_used && !arrow.is_loop() && shape.0 > 0 && shape.1 > 0 {
                normal_form_used = true;
                candidates.push(rank_normal_forms(shape.0, shape.1));
                continue;
            }
            if !cache.contains_key(&shape) {
                cache.insert(shape, all_matrices(shape.0, shape.1)?);
            }
            candidates.push(cache[&shape].clone());
        }
        let depth_of: HashMap<usize, usize> = order.iter().enumerate().map(|(d, &a)| (a, d)).collect();
        let mut checks = vec![Vec::new(); order.len()];
        for (i, rel) in bq.relations().iter().enumerate() {
            let deepest = rel
                .terms()
                .iter()
                .flat_map(|(_, p)| p.arrows().iter().map(|a| depth_of[a]))
                .max()
                .expect("relations have arrows");
            checks[deepest].push(i);
        }
        let mut loop_checks = vec![Vec::new(); order.len()];
        for v in 0..q.vertex_count() {
            if let Some(d) = q.loops_at(v).iter().map(|a| depth_of[a]).max() {
                loop_checks[d].push(v);
            }
        }
        let maps = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        let mut offsets = Vec::with_capacity(dims.len() + 1);
        let mut total = 0;
        for &d in &dims {
            offsets.push(total);
            total += d * d;
        }
        offsets.push(total);
        Ok(Search {
            bq,
            dims,
            order,
            candidates,
            checks,
            loop_checks,
            maps,
            offsets,
            mode,
            nodes: 0,
            budget,
            exhausted: false,
            leaves: Vec::new(),
        })
    }

    fn relation_holds(&self, i: usize) -> bool {
        let rel = &self.bq.relations()[i];
        let (s, t) = (rel.source(), rel.target());
        let mut acc = Matrix::<F>::zeros(self.dims[t], self.dims[s]);
        for (c, p) in rel.terms() {
            let mut m = Matrix::identity(self.dims[t]);
            for &a in p.arrows() {
                m = m.mul(&self.maps[a]);
            }
            acc.add_scaled(&F::from_i64(*c), &m);
        }
        acc.is_zero()
    }

    /// A nonzero loop matrix at `v` that is zero against every arrow at `v`
    /// and commutes with the other loops is a nonscalar endomorphism
    /// (itself at `v`, zero elsewhere), so no completion is a brick.
    fn loop_gives_endomorphism(&self, v: usize) -> bool {
        let q = self.bq.quiver();
        let loops = q.loops_at(v);
        loops.iter().any(|&g| {
            let gm = &self.maps[g];
            if gm.is_zero() {
                return false;
            }
            q.arrows().iter().enumerate().all(|(id, a)| {
                if a.is_loop() {
                    a.source != v || gm.mul(&self.maps[id]) == self.maps[id].mul(gm)
                } else if a.target == v {
                    gm.mul(&self.maps[id]).is_zero()
                } else if a.source == v {
                    self.maps[id].mul(gm).is_zero()
                } else {
                    true
                }
            })
        })
    }

    fn unpack(&self, v: &[F]) -> Vec<Matrix<F>> {
        (0..self.dims.len())
            .map(|x| {
                Matrix::from_vec_columns(self.dims[x], self.dims[x], &v[self.offsets[x]..self.offsets[x + 1]])
            })
            .collect()
    }

    /// Endomorphisms in `basis` that also intertwine arrow `a`.
    fn refine(&self, basis: &[Vec<F>], a: usize) -> Vec<Vec<F>> {
        let arrow = self.bq.quiver().arrow(a);
        let x = &self.maps[a];
        if x.rows() == 0 || x.cols() == 0 || basis.is_empty() {
            return basis.to_vec();
        }
        let columns: Vec<Vec<F>> = basis
            .iter()
            .map(|e| {
                let f = self.unpack(e);
                f[arrow.target].mul(x).sub(&x.mul(&f[arrow.source])).vec_columns()
            })
            .collect();
        let system = Matrix::from_columns(x.rows() * x.cols(), &columns);
        system
            .kernel_basis()
            .into_iter()
            .map(|c| {
                let mut v = vec![F::zero(); basis[0].len()];
                for (k, ck) in c.iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    for (x, b) in v.iter_mut().zip(&basis[k]) {
                        *x = x.clone() + ck.clone() * b.clone();
                    }
                }
                v
            })
            .collect()
    }

    fn run(&mut self) {
        let total = *self.offsets.last().expect("offsets");
        let basis: Vec<Vec<F>> = (0..total)
            .map(|i| {
                let mut e = vec![F::zero(); total];
                e[i] = F::one();
                e
            })
            .collect();
        self.dfs(0, basis);
    }

    fn dfs(&mut self, depth: usize, basis: Vec<Vec<F>>) {
        if self.exhausted {
            return;
        }
        if depth == self.order.len() {
            let end_dim = basis.len();
            if self.mode == Mode::Modules || end_dim == 1 {
                self.leaves.push((Representation::from_parts(self.dims.clone(), self.maps.clone()), end_dim));
            }
            return;
        }
        let a = self.order[depth];
        for k in 0..self.candidates[depth].len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            self.maps[a] = self.candidates[depth][k].clone();
            if !self.checks[depth].iter().all(|&i| self.relation_holds(i)) {
                continue;
            }
            if self.mode == Mode::Bricks
                && self.loop_checks[depth].iter().any(|&v| self.loop_gives_endomorphism(v))
            {
                continue;
            }
            let next = self.refine(&basis, a);
            self.dfs(depth + 1, next);
            if self.exhausted {
                return;
            }
        }
    }
}

fn enumerate<F: Field>(
    bq: &BoundQuiver,
    cfg: &EnumConfig,
    mode: Mode,
) -> Result<(Vec<Representation<F>>, bool, u64)> {
    let q = bq.quiver();
    if cfg.cap.len() != q.vertex_count() {
        return Err(Error::Dimension(format!(
            "cap has {} entries for {} vertices",
            cfg.cap.len(),
            q.vertex_count()
        )));
    }
    if F::order().is_none() {
        return Err(Error::InfiniteField);
    }
    let mut cache = HashMap::new();
    let mut out = Vec::new();
    let mut exhaustive = true;
    let mut nodes = 0;
    for dims in dimension_vectors(&cfg.cap) {
        let support: Vec<usize> = (0..dims.len()).filter(|&v| dims[v] > 0).collect();
        if mode == Mode::Bricks && !q.is_connected_on(&support) {
            continue;
        }
        let mut search = Search::<F>::new(bq, dims, mode, cfg.budget, &mut cache)?;
        search.run();
        nodes += search.nodes;
        exhaustive &= !search.exhausted;
        let mut kept: Vec<(Fingerprint, Representation<F>)> = Vec::new();
        for (m, end_dim) in search.leaves {
            let fp = fingerprint(bq, &m, end_dim);
            let mut duplicate = false;
            for (g, n) in &kept {
                if *g == fp && are_isomorphic(bq, &m, n, &cfg.iso)? {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                kept.push((fp, m));
            }
        }
        out.extend(kept.into_iter().map(|(_, m)| m));
    }
    Ok((out, exhaustive, nodes))
}

/// All bricks with dimension vector below the cap, one per isomorphism class.
pub fn enumerate_bricks<F: Field>(bq: &BoundQuiver, cfg: &EnumConfig) -> Result<BrickList<F>> {
    let (bricks, exhaustive, nodes_visited) = enumerate(bq, cfg, Mode::Bricks)?;
    Ok(BrickList {
        cap: cfg.cap.clone(),
        field: F::name(),
        bricks,
        exhaustive,
        nodes_visited,
    })
}

/// All modules with dimension vector below the cap, one per isomorphism
/// class.
pub fn enumerate_modules<F: Field>(bq: &BoundQuiver, cfg: &EnumConfig) -> Result<ModuleList<F>> {
    let (modules, exhaustive, _) = enumerate(bq, cfg, Mode::Modules)?;
    Ok(ModuleList {
        cap: cfg.cap.clone(),
        modules,
        exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::quiver::builders::{cyclic_tube, dynkin};
    use crate::quiver::{loop_extend, DynkinType};
    use crate::rep::{check_representation, is_brick};

    type F2 = Fp<2>;

    #[test]
    fn dimension_vector_order() {
        let v = dimension_vectors(&[1, 2]);
        assert_eq!(v, vec![vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn a2_bricks() {
        let bq = dynkin(DynkinType::A(2)).unwrap();
        let list = enumerate_bricks::<F2>(&bq, &EnumConfig::new(vec![1, 1])).unwrap();
        assert!(list.exhaustive);
        let dims: Vec<&[usize]> = list.bricks.iter().map(|b| b.dims()).collect();
        assert_eq!(dims, vec![&[0, 1][..], &[1, 0], &[1, 1]]);
        for b in &list.bricks {
            assert!(is_brick(&bq, b).unwrap());
        }
    }

    #[test]
    fn looped_a2_has_the_same_bricks() {
        let a2 = dynkin(DynkinType::A(2)).unwrap();
        let bq = loop_extend(&a2, &[0, 2], 2).unwrap();
        let list = enumerate_bricks::<F2>(&bq, &EnumConfig::new(vec![1, 1])).unwrap();
        assert_eq!(list.bricks.len(), 3);
        for b in &list.bricks {
            assert!(b.map(1).is_zero() && b.map(2).is_zero());
            assert_eq!(check_representation(&bq, b).unwrap(), None);
        }
    }

    #[test]
    fn cyclic_bricks() {
        let bq = cyclic_tube(2, 2).unwrap();
        let list = enumerate_bricks::<F2>(&bq, &EnumConfig::new(vec![1, 1])).unwrap();
        assert_eq!(list.bricks.len(), 4);
    }

    #[test]
    fn a2_modules() {
        let bq = dynkin(DynkinType::A(2)).unwrap();
        let list = enumerate_modules::<F2>(&bq, &EnumConfig::new(vec![2, 2])).unwrap();
        // a S1 + b S2 + c P2 with a + c <= 2, b + c <= 2, not all zero
        assert_eq!(list.modules.len(), 13);
    }

    #[test]
    fn budget_marks_partial() {
        let bq = dynkin(DynkinType::A(3)).unwrap();
        let mut cfg = EnumConfig::new(vec![2, 2, 2]);
        cfg.budget = 10;
        let list = enumerate_bricks::<F2>(&bq, &cfg).unwrap();
        assert!(!list.exhaustive);
    }

    #[test]
    fn rejects_bad_cap_and_infinite_field() {
        let bq = dynkin(DynkinType::A(2)).unwrap();
        assert!(enumerate_bricks::<F2>(&bq, &EnumConfig::new(vec![1])).is_err());
        let r = enumerate_bricks::<crate::field::Rational>(&bq, &EnumConfig::new(vec![1, 1]));
        assert_eq!(r.unwrap_err(), Error::InfiniteField);
    }
}
