//! Brick sets, their adjacency matrices, and the search for the largest
//! spectral radius.

use std::collections::HashMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::ext::Presentation;
use crate::field::Field;
use crate::formulas::{level_one_root, two_cycle_radius, FactoredPoly};
use crate::quiver::builders::canonical_arm_vertices;
use crate::quiver::loops::reduce_unchecked;
use crate::quiver::{check_loop_commutativity, BoundQuiver, CanonicalType, DynkinType, Family};
use crate::rep::hom_dim;
use crate::spectral::{
    characteristic_polynomial, largest_real_root, spectral_radius, Method, NonnegIntMatrix,
    SpectralRadius,
};

use super::BrickList;

/// `dim Hom` and `dim Ext¹` between every ordered pair of listed bricks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrickTables {
    pub hom: Vec<Vec<usize>>,
    pub ext: Vec<Vec<usize>>,
}

impl BrickTables {
    pub fn len(&self) -> usize {
        self.hom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hom.is_empty()
    }

    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        i != j && self.hom[i][j] == 0 && self.hom[j][i] == 0
    }

    pub fn adjacency(&self, members: &[usize]) -> NonnegIntMatrix {
        let mut m = NonnegIntMatrix::zeros(members.len());
        for (a, &i) in members.iter().enumerate() {
            for (b, &j) in members.iter().enumerate() {
                m.set(a, b, self.ext[i][j] as u64);
            }
        }
        m
    }
}

pub fn brick_tables<F: Field>(alg: &Algebra<F>, list: &BrickList<F>) -> Result<BrickTables> {
    let bq = alg.bound_quiver();
    let n = list.bricks.len();
    let mut hom = vec![vec![0; n]; n];
    let mut ext = vec![vec![0; n]; n];
    for (i, m) in list.bricks.iter().enumerate() {
        let pres = Presentation::new(alg, m)?;
        for (j, x) in list.bricks.iter().enumerate() {
            hom[i][j] = hom_dim(bq, m, x)?;
            ext[i][j] = pres.ext1_dim(alg, x)?;
        }
    }
    Ok(BrickTables { hom, ext })
}

/// Indices into a brick list together with the adjacency matrix
/// `a_ij = dim Ext¹(X_i, X_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrickSet {
    pub members: Vec<usize>,
    pub adjacency: NonnegIntMatrix,
}

/// All pairwise Hom-orthogonal subsets, by size and then lexicographically.
pub struct BrickSets<'a> {
    tables: &'a BrickTables,
    max_size: usize,
    size: usize,
    chosen: Vec<usize>,
    found_at_size: bool,
}

impl<'a> BrickSets<'a> {
    pub fn new(tables: &'a BrickTables, max_size: usize) -> Self {
        BrickSets {
            tables,
            max_size: max_size.min(tables.len()),
            size: 1,
            chosen: Vec::new(),
            found_at_size: false,
        }
    }

    fn compatible(&self, c: usize) -> bool {
        self.chosen.iter().all(|&i| self.tables.orthogonal(i, c))
    }

    /// Smallest admissible index at least `start` for the next slot.
    fn first_from(&self, start: usize) -> Option<usize> {
        let room = self.size - self.chosen.len() - 1;
        (start..self.tables.len().saturating_sub(room)).find(|&c| self.compatible(c))
    }

    /// Advance to the next complete combination of the current size.
    fn advance(&mut self) -> bool {
        let mut bump = self.chosen.len() == self.size;
        loop {
            if bump {
                let Some(last) = self.chosen.pop() else {
                    return false;
                };
                match self.first_from(last + 1) {
                    Some(c) => self.chosen.push(c),
                    None => continue,
                }
            } else {
                let start = self.chosen.last().map_or(0, |l| l + 1);
                match self.first_from(start) {
                    Some(c) => self.chosen.push(c),
                    None if self.chosen.is_empty() => return false,
                    None => {
                        bump = true;
                        continue;
                    }
                }
            }
            if self.chosen.len() == self.size {
                return true;
            }
            bump = false;
        }
    }
}

impl Iterator for BrickSets<'_> {
    type Item = BrickSet;

    fn next(&mut self) -> Option<BrickSet> {
        while self.size <= self.max_size {
            if self.advance() {
                self.found_at_size = true;
                return Some(BrickSet {
                    members: self.chosen.clone(),
                    adjacency: self.tables.adjacency(&self.chosen),
                });
            }
            // no set of this size means none larger either
            if !self.found_at_size {
                return None;
            }
            self.size += 1;
            self.chosen.clear();
            self.found_at_size = false;
        }
        None
    }
}

/// A value (or range) the input's family determines in advance.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub value: Option<f64>,
    /// Half-open range `[lo, hi)` when no exact value is known.
    pub interval: Option<(f64, f64)>,
    pub rule: String,
}

#[derive(Debug, Clone)]
pub struct FpEstimate {
    /// Largest spectral radius over the examined brick sets (0 if none).
    pub best: f64,
    pub method: Method,
    pub witness: Option<BrickSet>,
    /// The witness radius recomputed from its characteristic polynomial.
    pub witness_check: Option<f64>,
    pub sets_examined: u64,
    pub max_size: usize,
    pub tol: f64,
    pub bricks_exhaustive: bool,
    pub prediction: Option<Prediction>,
}

/// Maximise `ρ` over brick sets of at most `max_size` listed bricks. Ties
/// keep the first set found, so witnesses are as small as possible.
pub fn fpdim_search<F: Field>(
    alg: &Algebra<F>,
    list: &BrickList<F>,
    max_size: usize,
    tol: f64,
) -> Result<(FpEstimate, BrickTables)> {
    let tables = brick_tables(alg, list)?;
    let mut cache: HashMap<NonnegIntMatrix, SpectralRadius<f64>> = HashMap::new();
    let mut best: Option<(SpectralRadius<f64>, BrickSet)> = None;
    let mut examined = 0;
    for set in BrickSets::new(&tables, max_size) {
        examined += 1;
        let rho = match cache.get(&set.adjacency) {
            Some(r) => *r,
            None => {
                let r = spectral_radius(&set.adjacency, tol)?;
                cache.insert(set.adjacency.clone(), r);
                r
            }
        };
        if best.as_ref().map_or(true, |(b, _)| rho.value > b.value + 1e-12) {
            best = Some((rho, set));
        }
    }
    let (best_value, method, witness, witness_check) = match best {
        None => (0.0, Method::Exact, None, None),
        Some((r, set)) => {
            let check = largest_real_root(&characteristic_polynomial(&set.adjacency), tol / 4.0);
            if (check - r.value).abs() > 2.0 * tol.max(1e-12) {
                return Err(Error::Inconsistent(format!(
                    "witness radius {} but characteristic polynomial root {}",
                    r.value, check
                )));
            }
            (r.value, r.method, Some(set), Some(check))
        }
    };
    let estimate = FpEstimate {
        best: best_value,
        method,
        witness,
        witness_check,
        sets_examined: examined,
        max_size,
        tol,
        bricks_exhaustive: list.exhaustive,
        prediction: predict(alg),
    };
    Ok((estimate, tables))
}

/// Dynkin type of a connected relation-free loop-free quiver, if any.
fn dynkin_shape(bq: &BoundQuiver) -> Option<DynkinType> {
    let q = bq.quiver();
    let n = q.vertex_count();
    if !bq.relations().is_empty() || q.has_loops() || n == 0 || q.arrows().len() + 1 != n || !q.is_connected() {
        return None;
    }
    let mut neighbours = vec![Vec::new(); n];
    for a in q.arrows() {
        neighbours[a.source].push(a.target);
        neighbours[a.target].push(a.source);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| neighbours[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(n)),
        [c] if neighbours[*c].len() == 3 => {
            let mut arms: Vec<usize> = neighbours[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while let Some(&next) = neighbours[cur].iter().find(|&&x| x != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => Some(DynkinType::D(k + 3)),
                [1, 2, 2] => Some(DynkinType::E(6)),
                [1, 2, 3] => Some(DynkinType::E(7)),
                [1, 2, 4] => Some(DynkinType::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// The vertices `(sink, left, right, source)` and whether the killed path
/// runs through `left`, for a square with one zero relation of length two.
fn zero_square_shape(bq: &BoundQuiver) -> Option<[usize; 4]> {
    let q = bq.quiver();
    if q.vertex_count() != 4 || q.arrows().len() != 4 || q.has_loops() || bq.relations().len() != 1 {
        return None;
    }
    let rel = &bq.relations()[0];
    let [(_, path)] = rel.terms() else {
        return None;
    };
    if path.len() != 2 {
        return None;
    }
    let indeg = |v: usize| q.arrows().iter().filter(|a| a.target == v).count();
    let outdeg = |v: usize| q.arrows().iter().filter(|a| a.source == v).count();
    let sink = (0..4).find(|&v| indeg(v) == 2 && outdeg(v) == 0)?;
    let source = (0..4).find(|&v| outdeg(v) == 2 && indeg(v) == 0)?;
    if path.source() != source || path.target() != sink {
        return None;
    }
    let middle = q.arrow(path.arrows()[1]).target;
    let other = (0..4).find(|&v| v != sink && v != source && v != middle)?;
    Some([sink, middle, other, source])
}

fn loop_free_family<F: Field>(alg: &Algebra<F>) -> Option<(Family, BoundQuiver, Vec<usize>)> {
    let bq = alg.bound_quiver();
    let counts = bq.loop_counts();
    if bq.quiver().has_loops() && !check_loop_commutativity(alg).holds {
        return None;
    }
    let base = reduce_unchecked(bq).ok()?;
    let family = match bq.family() {
        Family::LoopExtended { base, .. } => (**base).clone(),
        other if !bq.quiver().has_loops() => other.clone(),
        _ => Family::Custom,
    };
    Some((family, base, counts))
}

/// The value the structure of the input determines, when it falls under a
/// known rule: loop extensions of Dynkin quivers give the largest loop
/// count; the square with a zero relation gives
/// `max{(N + √(N² + 4))/2, other loop counts}` with `N` the loops at the
/// vertex the killed path passes through; nilpotent cyclic quivers give 1;
/// loop extensions of canonical algebras give the closed forms when the
/// largest loop count sits at the sink or source alone, or on one run of
/// consecutive vertices of an arm.
pub fn predict<F: Field>(alg: &Algebra<F>) -> Option<Prediction> {
    let (family, base, counts) = loop_free_family(alg)?;
    let max = counts.iter().copied().max().unwrap_or(0);
    let exact = |value: f64, rule: &str| {
        Some(Prediction {
            value: Some(value),
            interval: None,
            rule: rule.to_string(),
        })
    };
    if let Family::CyclicTube { .. } = family {
        if max == 0 {
            return exact(1.0, "nilpotent cyclic quiver");
        }
        return None;
    }
    if matches!(family, Family::Dynkin(_)) || dynkin_shape(&base).is_some() {
        return exact(max as f64, "largest loop count (representation-directed base)");
    }
    if let Some([_, middle, ..]) = zero_square_shape(&base) {
        let n = counts[middle] as f64;
        let others = (0..4).filter(|&v| v != middle).map(|v| counts[v]).max().unwrap_or(0) as f64;
        let value = ((n + (n * n + 4.0).sqrt()) / 2.0).max(others);
        return exact(value, "square with a zero relation");
    }
    if let Family::Canonical(ty) = family {
        return canonical_prediction(&base, ty, &counts);
    }
    None
}

fn canonical_prediction(base: &BoundQuiver, ty: CanonicalType, counts: &[usize]) -> Option<Prediction> {
    let n_max = counts.iter().copied().max().unwrap_or(0);
    if n_max == 0 {
        return None;
    }
    let arms = match ty {
        CanonicalType::A { .. } => 2,
        _ => 3,
    };
    let interior_max = counts[2..].iter().copied().max().unwrap_or(0);
    let interval = Some(Prediction {
        value: None,
        interval: Some((n_max as f64, n_max as f64 + 1.0)),
        rule: "canonical loop extension: between the largest loop count and one more".into(),
    });
    if counts[0].max(counts[1]) == n_max && interior_max < n_max {
        return Some(Prediction {
            value: Some(n_max as f64),
            interval: None,
            rule: "canonical loop extension, maximum at sink or source only".into(),
        });
    }
    // all interior maxima on one arm, consecutive
    let mut hits = Vec::new();
    for arm in 1..=arms {
        let vs = canonical_arm_vertices(base, arm);
        let pos: Vec<usize> = (0..vs.len()).filter(|&j| counts[vs[j]] == n_max).collect();
        if !pos.is_empty() {
            hits.push(pos);
        }
    }
    match hits.as_slice() {
        [pos] if pos.windows(2).all(|w| w[1] == w[0] + 1) => {
            let s = pos.len() as u32;
            let value = if s == 1 {
                two_cycle_radius::<f64>(n_max as u32).ok()?
            } else {
                let f = FactoredPoly::new(vec![(0.0, 1), (n_max as f64, s)]).ok()?;
                level_one_root(&f)
            };
            Some(Prediction {
                value: Some(value),
                interval: None,
                rule: format!("canonical loop extension, maximum on {s} consecutive arm vertices"),
            })
        }
        _ => interval,
    }
}
