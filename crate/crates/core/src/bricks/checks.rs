//! Structural checks on brick sets: witnesses inside nilpotent cyclic
//! quivers, the shape of adjacency matrices, and the comparison between a
//! loop-extended algebra and its loop-free quotient.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::ext::{ext1_dim, Presentation};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{loop_reduce, BoundQuiver, Family};
use crate::rep::{are_isomorphic, hom_dim, is_brick, IsoConfig, Representation};
use crate::spectral::NonnegIntMatrix;

use super::{enumerate_bricks, enumerate_modules, BrickList, EnumConfig};

/// A brick `M` with `Ext¹(S1, M)` and `Ext¹(M, S2)` one-dimensional and
/// `{S1, S2, M}` a brick set, for simples `S1`, `S2` (given by vertex) of a
/// nilpotent cyclic quiver with `Ext¹(S1, S2) = 0`. Candidates are all bricks
/// in order of total dimension.
pub fn tube_witness<F: Field>(bq: &BoundQuiver, s1: usize, s2: usize) -> Result<Representation<F>> {
    let Family::CyclicTube { rank, nilpotency } = *bq.family() else {
        return Err(Error::Parameter("tube witnesses need a nilpotent cyclic quiver".into()));
    };
    if s1 >= rank || s2 >= rank {
        return Err(Error::UnknownVertex(s1.max(s2)));
    }
    if s1 == s2 {
        return Err(Error::Parameter("the two simples must differ".into()));
    }
    let alg = Algebra::<F>::new(bq)?;
    let a = Representation::simple(bq, s1)?;
    let b = Representation::simple(bq, s2)?;
    if ext1_dim(&alg, &a, &b)? != 0 {
        return Err(Error::Parameter(format!(
            "Ext¹(S{}, S{}) is nonzero",
            s1 + 1,
            s2 + 1
        )));
    }
    // every indecomposable is uniserial of length < nilpotency + 1
    let cap = vec![nilpotency.div_ceil(rank); rank];
    let list = enumerate_bricks::<F>(bq, &EnumConfig::new(cap))?;
    let pres_a = Presentation::new(&alg, &a)?;
    for m in &list.bricks {
        if m.dims() == a.dims() || m.dims() == b.dims() {
            continue;
        }
        let orthogonal = [&a, &b]
            .iter()
            .map(|s| Ok(hom_dim(bq, s, m)? + hom_dim(bq, m, s)?))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|&h| h == 0);
        if orthogonal && pres_a.ext1_dim(&alg, m)? == 1 && ext1_dim(&alg, m, &b)? == 1 {
            return Ok(m.clone());
        }
    }
    Err(Error::NotFound(format!(
        "no witness for (S{}, S{}) within nilpotency {nilpotency}",
        s1 + 1,
        s2 + 1
    )))
}

/// Every irreducible diagonal block of `adj` with at least two rows is the
/// matrix of a single cycle (a permutation matrix with zero diagonal), and
/// every one-by-one block is `(0)` or `(1)`.
pub fn check_tube_blocks(adj: &NonnegIntMatrix) -> std::result::Result<(), String> {
    for comp in adj.strong_components() {
        let block = adj.principal(&comp);
        let k = comp.len();
        if k == 1 {
            if block.get(0, 0) > 1 {
                return Err(format!("diagonal entry {} at {}", block.get(0, 0), comp[0]));
            }
            continue;
        }
        let rows_ok = (0..k).all(|i| (0..k).map(|j| block.get(i, j)).sum::<u64>() == 1);
        let cols_ok = (0..k).all(|j| (0..k).map(|i| block.get(i, j)).sum::<u64>() == 1);
        let diag_ok = (0..k).all(|i| block.get(i, i) == 0);
        if !(rows_ok && cols_ok && diag_ok) {
            return Err(format!("block on {comp:?} is not a cycle: {block}"));
        }
    }
    Ok(())
}

/// The adjacency matrix of a brick set is triangular after reordering, and
/// a diagonal entry is nonzero only for a simple module at a vertex with
/// loops, where it equals the number of loops.
pub fn check_directed_shape<F: Field>(
    bq: &BoundQuiver,
    bricks: &[Representation<F>],
    members: &[usize],
    adj: &NonnegIntMatrix,
) -> std::result::Result<(), String> {
    if !adj.is_permutation_triangular() {
        return Err(format!("adjacency {adj} is not triangular after reordering"));
    }
    let counts = bq.loop_counts();
    for (a, &i) in members.iter().enumerate() {
        let d = adj.get(a, a);
        if d == 0 {
            continue;
        }
        let m = &bricks[i];
        let vertex = (m.total_dim() == 1).then(|| m.dims().iter().position(|&x| x == 1)).flatten();
        match vertex {
            Some(v) if counts[v] as u64 == d => {}
            _ => return Err(format!("diagonal entry {d} at brick {i} with dimensions {:?}", m.dims())),
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfExtRow {
    pub vertex: String,
    pub loops: usize,
    pub ext: usize,
}

/// Comparison of a loop-extended algebra `A` with its loop-free quotient `B`.
#[derive(Debug, Clone, Default)]
pub struct LoopExtensionReport {
    pub bricks_a: usize,
    pub bricks_b: usize,
    pub bricks_exhaustive: bool,
    pub hom_pairs: usize,
    pub ext_pairs: usize,
    pub nonsimple_bricks: usize,
    pub modules_b: usize,
    pub self_ext: Vec<SelfExtRow>,
    pub violations: Vec<String>,
}

impl LoopExtensionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Extend a `B`-module to `A` by zero loop matrices.
fn lift<F: Field>(a: &BoundQuiver, m: &Representation<F>) -> Representation<F> {
    let q = a.quiver();
    let mut from_b = m.maps().iter();
    let maps = q
        .arrows()
        .iter()
        .map(|arrow| {
            if arrow.is_loop() {
                Matrix::zeros(m.dims()[arrow.source], m.dims()[arrow.source])
            } else {
                from_b.next().expect("arrow of the quotient").clone()
            }
        })
        .collect();
    Representation::from_parts(m.dims().to_vec(), maps)
}

/// Checks, over bricks below `brick_cap` and modules below `module_cap`:
/// bricks of `A` have zero loop action and correspond to bricks of `B`;
/// `Hom` agrees on brick pairs; `Ext¹` agrees on module pairs with
/// `Hom_B(M, N) = 0` and on non-simple bricks; and `Ext¹(S_v, S_v)` equals
/// the number of loops at `v`.
pub fn loop_extension_report<F: Field>(
    a: &BoundQuiver,
    brick_cap: &[usize],
    module_cap: &[usize],
) -> Result<LoopExtensionReport> {
    let b = loop_reduce(a)?;
    let alg_a = Algebra::<F>::new(a)?;
    let alg_b = Algebra::<F>::new(&b)?;
    let non_loops: Vec<usize> = (0..a.quiver().arrows().len())
        .filter(|&x| !a.quiver().arrow(x).is_loop())
        .collect();
    let iso = IsoConfig::default();
    let list_a: BrickList<F> = enumerate_bricks(a, &EnumConfig::new(brick_cap.to_vec()))?;
    let list_b: BrickList<F> = enumerate_bricks(&b, &EnumConfig::new(brick_cap.to_vec()))?;
    let mut report = LoopExtensionReport {
        bricks_a: list_a.bricks.len(),
        bricks_b: list_b.bricks.len(),
        bricks_exhaustive: list_a.exhaustive && list_b.exhaustive,
        ..Default::default()
    };
    let v = &mut report.violations;

    // bricks correspond, loops act by zero
    let mut matched = vec![false; list_b.bricks.len()];
    for (i, m) in list_a.bricks.iter().enumerate() {
        let loops_zero = a
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(id, arrow)| !arrow.is_loop() || m.map(id).is_zero());
        if !loops_zero {
            v.push(format!("brick {i} of the extension has a nonzero loop"));
            continue;
        }
        let restricted = m.restrict_arrows(&non_loops);
        if !is_brick(&b, &restricted)? {
            v.push(format!("brick {i} of the extension is not a brick of the quotient"));
            continue;
        }
        let mut found = None;
        for (j, n) in list_b.bricks.iter().enumerate() {
            if n.dims() == restricted.dims() && are_isomorphic(&b, &restricted, n, &iso)? {
                found = Some(j);
                break;
            }
        }
        match found {
            Some(j) if !matched[j] => matched[j] = true,
            Some(j) => v.push(format!("quotient brick {j} matched twice")),
            None => v.push(format!("brick {i} of the extension has no partner")),
        }
    }
    for (j, n) in list_b.bricks.iter().enumerate() {
        if !is_brick(a, &lift(a, n))? {
            v.push(format!("quotient brick {j} is not a brick of the extension"));
        }
        if !matched[j] {
            v.push(format!("quotient brick {j} has no partner"));
        }
    }

    // Hom on brick pairs
    let lifted: Vec<Representation<F>> = list_b.bricks.iter().map(|n| lift(a, n)).collect();
    for (i, x) in list_b.bricks.iter().enumerate() {
        for (j, y) in list_b.bricks.iter().enumerate() {
            report.hom_pairs += 1;
            let hb = hom_dim(&b, x, y)?;
            let ha = hom_dim(a, &lifted[i], &lifted[j])?;
            if ha != hb {
                v.push(format!("Hom between bricks {i} and {j}: {ha} over the extension, {hb} over the quotient"));
            }
        }
    }

    // Ext on non-simple bricks
    for (i, x) in list_b.bricks.iter().enumerate() {
        if x.total_dim() == 1 {
            continue;
        }
        report.nonsimple_bricks += 1;
        let eb = ext1_dim(&alg_b, x, x)?;
        let ea = ext1_dim(&alg_a, &lifted[i], &lifted[i])?;
        if ea != eb {
            v.push(format!("self-extensions of brick {i}: {ea} over the extension, {eb} over the quotient"));
        }
    }

    // Ext on module pairs without morphisms
    let modules = enumerate_modules::<F>(&b, &EnumConfig::new(module_cap.to_vec()))?.modules;
    report.modules_b = modules.len();
    let lifted_modules: Vec<Representation<F>> = modules.iter().map(|m| lift(a, m)).collect();
    for (i, x) in modules.iter().enumerate() {
        let pres_b = Presentation::new(&alg_b, x)?;
        let pres_a = Presentation::new(&alg_a, &lifted_modules[i])?;
        for (j, y) in modules.iter().enumerate() {
            if hom_dim(&b, x, y)? != 0 {
                continue;
            }
            report.ext_pairs += 1;
            let eb = pres_b.ext1_dim(&alg_b, y)?;
            let ea = pres_a.ext1_dim(&alg_a, &lifted_modules[j])?;
            if ea != eb {
                v.push(format!(
                    "Ext from module {:?} to {:?}: {ea} over the extension, {eb} over the quotient",
                    x.dims(),
                    y.dims()
                ));
            }
        }
    }

    // simples
    for vertex in 0..a.vertex_count() {
        let s = Representation::simple(a, vertex)?;
        let ext = ext1_dim(&alg_a, &s, &s)?;
        let loops = a.quiver().loop_count(vertex);
        if ext != loops {
            v.push(format!("Ext¹(S, S) = {ext} at a vertex with {loops} loops"));
        }
        report.self_ext.push(SelfExtRow {
            vertex: a.quiver().vertex_name(vertex).to_string(),
            loops,
            ext,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::quiver::builders::{cyclic_tube, dynkin};
    use crate::quiver::{loop_extend, DynkinType};

    type F2 = Fp<2>;

    #[test]
    fn witness_in_rank_three() {
        let bq = cyclic_tube(3, 4).unwrap();
        // x1: 1 -> 2 gives Ext¹(S1, S2) = 1; S1 and S3 have none
        let m = tube_witness::<F2>(&bq, 0, 2).unwrap();
        let alg = Algebra::<F2>::new(&bq).unwrap();
        let s1 = Representation::simple(&bq, 0).unwrap();
        let s3 = Representation::simple(&bq, 2).unwrap();
        assert_eq!(ext1_dim(&alg, &s1, &m).unwrap(), 1);
        assert_eq!(ext1_dim(&alg, &m, &s3).unwrap(), 1);
        assert!(tube_witness::<F2>(&bq, 0, 1).is_err());
    }

    #[test]
    fn witness_not_found_for_short_nilpotency() {
        let bq = cyclic_tube(4, 2).unwrap();
        assert!(matches!(tube_witness::<F2>(&bq, 0, 3), Err(Error::NotFound(_))));
        let longer = cyclic_tube(4, 3).unwrap();
        assert_eq!(tube_witness::<F2>(&longer, 0, 3).unwrap().total_dim(), 2);
    }

    #[test]
    fn block_shapes() {
        let cyc = NonnegIntMatrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        assert!(check_tube_blocks(&cyc).is_ok());
        let bad = NonnegIntMatrix::from_rows(&[vec![0, 2], vec![1, 0]]).unwrap();
        assert!(check_tube_blocks(&bad).is_err());
        let diag = NonnegIntMatrix::from_rows(&[vec![1, 1], vec![0, 0]]).unwrap();
        assert!(check_tube_blocks(&diag).is_ok());
        let two = NonnegIntMatrix::from_rows(&[vec![2]]).unwrap();
        assert!(check_tube_blocks(&two).is_err());
    }

    #[test]
    fn report_on_looped_a2() {
        let a2 = dynkin(DynkinType::A(2)).unwrap();
        let bq = loop_extend(&a2, &[1, 2], 2).unwrap();
        let r = loop_extension_report::<F2>(&bq, &[1, 1], &[2, 2]).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!((r.bricks_a, r.bricks_b), (3, 3));
        let exts: Vec<usize> = r.self_ext.iter().map(|row| row.ext).collect();
        assert_eq!(exts, vec![1, 2]);
    }

    #[test]
    fn report_without_loops_is_tautological() {
        let a2 = dynkin(DynkinType::A(2)).unwrap();
        let r = loop_extension_report::<F2>(&a2, &[1, 1], &[1, 1]).unwrap();
        assert!(r.passed());
        assert!(r.self_ext.iter().all(|row| row.ext == 0));
    }
}
