//! Ideal closure inside the truncated path space, admissibility, and residue
//! bases of `kQ/I`.
//!
//! The ideal is computed as the span of `u · r · v` for every generator `r`
//! and paths `u`, `v`, inside the space of paths shorter than a truncation
//! length `n` (longer terms are dropped). Once every path of length `L`
//! lies in that span, all longer paths vanish as well and the quotient is
//! spanned by the non-pivot ("standard") paths of the reduced echelon form.

use std::collections::{BTreeMap, HashMap};

use super::{BoundQuiver, Path, Quiver};
use crate::field::Field;

/// Outcome of the admissibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Smallest `L` with every path of length `L` in the ideal.
    pub nilpotency: Option<usize>,
    pub algebra_dim: Option<usize>,
    /// A surviving path of length `max_len` when not admissible.
    pub witness: Option<Path>,
}

/// All paths of length `< n`, grouped by length, each layer sorted.
pub(crate) fn paths_below(quiver: &Quiver, n: usize) -> Vec<Vec<Path>> {
    let mut layers: Vec<Vec<Path>> = Vec::new();
    if n == 0 {
        return layers;
    }
    layers.push((0..quiver.vertex_count()).map(Path::trivial).collect());
    for len in 1..n {
        let mut next = Vec::new();
        for p in &layers[len - 1] {
            for (id, a) in quiver.arrows().iter().enumerate() {
                if a.source == p.target() {
                    let step = Path::new(quiver, vec![id]).expect("single arrow");
                    next.push(step.after(p).expect("composable"));
                }
            }
        }
        next.sort();
        layers.push(next);
    }
    layers
}

/// One `(source, target)` component of the truncated ideal as sparse rows in
/// echelon form, keyed by leading column. Columns are ordered longest path
/// first so that pivots land on long paths and short paths survive as the
/// basis.
#[derive(Debug, Clone)]
struct Block<F> {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    rows: HashMap<usize, Vec<(usize, F)>>,
}

impl<F: Field> Block<F> {
    fn new(mut paths: Vec<Path>) -> Self {
        paths.sort_by(|a, b| b.graded_key().cmp(&a.graded_key()));
        let index = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Block {
            paths,
            index,
            rows: HashMap::new(),
        }
    }

    fn is_full(&self) -> bool {
        self.rows.len() == self.paths.len()
    }

    /// Remainder of `v` modulo the rows: supported on non-pivot columns.
    fn reduce(&self, mut v: BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        let mut cursor = 0;
        while let Some((&c, x)) = v.range(cursor..).next() {
            cursor = c + 1;
            let Some(row) = self.rows.get(&c) else {
                continue;
            };
            let f = x.clone();
            for (j, r) in row {
                let e = v.entry(*j).or_insert_with(F::zero);
                *e = e.clone() - f.clone() * r.clone();
                if e.is_zero() {
                    v.remove(j);
                }
            }
        }
        v
    }

    fn insert(&mut self, v: BTreeMap<usize, F>) {
        let v = self.reduce(v);
        let Some((&pivot, lead)) = v.iter().next() else {
            return;
        };
        let inv = lead.inv().expect("nonzero");
        let row = v.into_iter().map(|(j, x)| (j, x * inv.clone())).collect();
        self.rows.insert(pivot, row);
    }

    fn unit(&self, p: &Path) -> BTreeMap<usize, F> {
        BTreeMap::from([(self.index[p], F::one())])
    }

    fn contains_path(&self, p: &Path) -> bool {
        self.reduce(self.unit(p)).is_empty()
    }
}

/// Ideal closure restricted to paths of length `< n`.
#[derive(Debug, Clone)]
pub(crate) struct TruncatedIdeal<F> {
    n: usize,
    layers: Vec<Vec<Path>>,
    blocks: HashMap<(usize, usize), Block<F>>,
}

impl<F: Field> TruncatedIdeal<F> {
    pub(crate) fn build(bq: &BoundQuiver, n: usize) -> Self {
        let quiver = bq.quiver();
        let layers = paths_below(quiver, n);
        let mut grouped: HashMap<(usize, usize), Vec<Path>> = HashMap::new();
        for p in layers.iter().flatten() {
            grouped.entry((p.source(), p.target())).or_default().push(p.clone());
        }
        let mut blocks: HashMap<(usize, usize), Block<F>> =
            grouped.into_iter().map(|(k, v)| (k, Block::new(v))).collect();

        let all: Vec<&Path> = layers.iter().flatten().collect();
        for rel in bq.relations() {
            let m = rel.min_len();
            if m >= n {
                continue;
            }
            let lefts: Vec<&Path> = all
                .iter()
                .copied()
                .filter(|u| u.source() == rel.target() && u.len() + m < n)
                .collect();
            let rights: Vec<&Path> = all
                .iter()
                .copied()
                .filter(|v| v.target() == rel.source() && v.len() + m < n)
                .collect();
            for u in &lefts {
                for v in &rights {
                    if u.len() + v.len() + m >= n {
                        continue;
                    }
                    let key = (v.source(), u.target());
                    let block = blocks.get_mut(&key).expect("block of a path");
                    if block.is_full() {
                        continue;
                    }
                    let mut vec: BTreeMap<usize, F> = BTreeMap::new();
                    for (c, p) in rel.terms() {
                        if u.len() + p.len() + v.len() >= n {
                            continue;
                        }
                        let w = u.after(&p.after(v).expect("composable")).expect("composable");
                        let e = vec.entry(block.index[&w]).or_insert_with(F::zero);
                        *e = e.clone() + F::from_i64(*c);
                    }
                    vec.retain(|_, x| !x.is_zero());
                    if !vec.is_empty() {
                        block.insert(vec);
                    }
                }
            }
        }
        TruncatedIdeal { n, layers, blocks }
    }

    /// First path of length `len` (< n) outside the ideal, if any.
    pub(crate) fn surviving_path(&self, len: usize) -> Option<Path> {
        self.layers.get(len)?.iter().find(|p| {
            let block = &self.blocks[&(p.source(), p.target())];
            !block.contains_path(p)
        }).cloned()
    }
}

/// Residue basis of `kQ/I` per `(source, target)` pair, with normal forms of
/// every path.
#[derive(Debug, Clone)]
pub struct PathBasis<F> {
    nilpotency: usize,
    blocks: HashMap<(usize, usize), Vec<Path>>,
    normal_forms: HashMap<Path, Vec<(usize, F)>>,
    dim: usize,
}

impl<F: Field> PathBasis<F> {
    /// Build from an ideal truncated at `n = L + 1` in which every path of
    /// length `L` already vanishes.
    pub(crate) fn from_ideal(ideal: &TruncatedIdeal<F>, nilpotency: usize) -> Self {
        let mut blocks = HashMap::new();
        let mut normal_forms = HashMap::new();
        let mut dim = 0;
        for (&key, block) in &ideal.blocks {
            let mut basis: Vec<Path> = (0..block.paths.len())
                .filter(|c| !block.rows.contains_key(c))
                .map(|c| block.paths[c].clone())
                .collect();
            basis.sort_by(|a, b| a.graded_key().cmp(&b.graded_key()));
            let position: HashMap<&Path, usize> =
                basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
            for path in &block.paths {
                let nf = block
                    .reduce(block.unit(path))
                    .into_iter()
                    .map(|(j, x)| (position[&block.paths[j]], x))
                    .collect();
                normal_forms.insert(path.clone(), nf);
            }
            dim += basis.len();
            if !basis.is_empty() {
                blocks.insert(key, basis);
            }
        }
        debug_assert!(ideal.n == nilpotency + 1);
        PathBasis {
            nilpotency,
            blocks,
            normal_forms,
            dim,
        }
    }

    /// `L`: every path of length `L` is zero.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis of `e_target · A · e_source`: residue paths from `source` to `target`.
    pub fn basis(&self, source: usize, target: usize) -> &[Path] {
        self.blocks.get(&(source, target)).map_or(&[], Vec::as_slice)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Path>)> {
        self.blocks.iter()
    }

    /// Coordinates of a path in the basis of its block; empty when zero.
    pub fn reduce(&self, path: &Path) -> Vec<(usize, F)> {
        if path.len() >= self.nilpotency {
            return Vec::new();
        }
        self.normal_forms.get(path).cloned().unwrap_or_default()
    }

    /// Normal form of `p · q` (apply `q` first); `None` if not composable.
    pub fn multiply(&self, p: &Path, q: &Path) -> Option<Vec<(usize, F)>> {
        p.after(q).map(|w| self.reduce(&w))
    }

    /// Whether a linear combination of parallel paths lies in the ideal.
    pub fn is_zero_combination(&self, terms: &[(F, Path)]) -> bool {
        let mut acc: HashMap<usize, F> = HashMap::new();
        for (c, p) in terms {
            for (i, x) in self.reduce(p) {
                let e = acc.entry(i).or_insert_with(F::zero);
                *e = e.clone() + c.clone() * x;
            }
        }
        acc.values().all(F::is_zero)
    }
}

/// Outcome of [`check_admissible`] plus the truncated ideal that proved it.
pub(crate) fn find_nilpotency<F: Field>(
    bq: &BoundQuiver,
    max_len: usize,
) -> (AdmissibilityReport, Option<TruncatedIdeal<F>>) {
    let mut last = None;
    for n in 2..=max_len + 1 {
        let ideal = TruncatedIdeal::<F>::build(bq, n);
        let len = n - 1;
        match ideal.surviving_path(len) {
            None => {
                let basis = PathBasis::from_ideal(&ideal, len);
                let report = AdmissibilityReport {
                    admissible: true,
                    nilpotency: Some(len),
                    algebra_dim: Some(basis.dim()),
                    witness: None,
                };
                return (report, Some(ideal));
            }
            Some(p) => last = Some(p),
        }
    }
    let report = AdmissibilityReport {
        admissible: false,
        nilpotency: None,
        algebra_dim: None,
        witness: last,
    };
    (report, None)
}

/// Check `R^L ⊆ I ⊆ R²` for some `L ≤ max_len` (closure computed among paths
/// of length at most `max_len`). `I ⊆ R²` is guaranteed by [`super::Relation`].
pub fn check_admissible<F: Field>(bq: &BoundQuiver, max_len: usize) -> AdmissibilityReport {
    find_nilpotency::<F>(bq, max_len.max(1)).0
}
