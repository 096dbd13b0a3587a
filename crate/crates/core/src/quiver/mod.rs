//! Quivers, paths, relations and bound quivers.
//!
//! Paths are written in function order: the product `p q` means "apply `q`
//! first, then `p`". A [`Path`] stores its arrows in that written order, so
//! the matrix of a path in a representation is the left-to-right product of
//! the arrow matrices.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

pub mod builders;
pub mod ideal;
pub mod loops;

pub use ideal::{check_admissible, AdmissibilityReport, PathBasis};
pub use loops::{check_loop_commutativity, loop_extend, loop_reduce, LoopCommutativity};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite quiver. Vertices and arrows are addressed by their index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {}", a.name)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} has an undeclared endpoint",
                    a.name
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Quiver on vertices named `0..n` from `(name, source, target)` triples.
    pub fn from_edges(n: usize, edges: &[(&str, usize, usize)]) -> Result<Self> {
        let vertices = (0..n).map(|v| v.to_string()).collect();
        let arrows = edges
            .iter()
            .map(|&(name, source, target)| Arrow {
                name: name.to_string(),
                source,
                target,
            })
            .collect();
        Self::new(vertices, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn loops_at(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].is_loop() && self.arrows[a].source == v)
            .collect()
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.loops_at(v).len()
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(Arrow::is_loop)
    }

    /// Connectivity of the underlying undirected graph restricted to `support`.
    pub fn is_connected_on(&self, support: &[usize]) -> bool {
        let Some(&start) = support.first() else {
            return true;
        };
        let inside: HashSet<usize> = support.iter().copied().collect();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                let next = if a.source == v {
                    a.target
                } else if a.target == v {
                    a.source
                } else {
                    continue;
                };
                if inside.contains(&next) && seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        seen.len() == inside.len()
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        self.is_connected_on(&all)
    }
}

/// A path, either trivial (`e_v`) or a composable arrow sequence in written
/// (function) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Path from arrows in written order; `[a, b]` means `b` then `a`.
    pub fn new(quiver: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&last) = arrows.last() else {
            return Err(Error::InvalidRelation("empty path".into()));
        };
        for &a in &arrows {
            if a >= quiver.arrows.len() {
                return Err(Error::InvalidRelation(format!("unknown arrow id {a}")));
            }
        }
        for w in arrows.windows(2) {
            let (later, earlier) = (quiver.arrow(w[0]), quiver.arrow(w[1]));
            if earlier.target != later.source {
                return Err(Error::InvalidRelation(format!(
                    "{} cannot follow {}",
                    later.name, earlier.name
                )));
            }
        }
        Ok(Path {
            source: quiver.arrow(last).source,
            target: quiver.arrow(arrows[0]).target,
            arrows,
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self · other`: apply `other` first. `None` when not composable.
    pub fn after(&self, other: &Path) -> Option<Path> {
        if other.target != self.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: other.source,
            target: self.target,
            arrows,
        })
    }

    pub fn contains_any(&self, ids: &HashSet<usize>) -> bool {
        self.arrows.iter().any(|a| ids.contains(a))
    }

    /// Graded order used for bases: by length, then lexicographic on arrow
    /// ids, trivial paths by vertex.
    pub fn graded_key(&self) -> (usize, &[usize], usize) {
        (self.arrows.len(), &self.arrows, self.source)
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e_{}", self.quiver.vertex_name(self.path.source));
        }
        for (i, &a) in self.path.arrows.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.quiver.arrow(a).name)?;
        }
        Ok(())
    }
}

/// A linear combination of parallel paths with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    terms: Vec<(i64, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(i64, Path)>) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| *c != 0).collect();
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidRelation("all coefficients are zero".into()));
        };
        let (s, t) = (first.source, first.target);
        for (_, p) in &terms {
            if p.len() < 2 {
                return Err(Error::InvalidRelation(format!(
                    "path of length {} in a relation (need length >= 2)",
                    p.len()
                )));
            }
            if p.source != s || p.target != t {
                return Err(Error::InvalidRelation("paths are not parallel".into()));
            }
        }
        Ok(Relation { terms })
    }

    /// Single-path (zero) relation.
    pub fn monomial(path: Path) -> Result<Self> {
        Self::new(vec![(1, path)])
    }

    /// `p - q`.
    pub fn commutator(p: Path, q: Path) -> Result<Self> {
        Self::new(vec![(1, p), (-1, q)])
    }

    pub fn terms(&self) -> &[(i64, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> RelationDisplay<'a> {
        RelationDisplay { rel: self, quiver }
    }
}

pub struct RelationDisplay<'a> {
    rel: &'a Relation,
    quiver: &'a Quiver,
}

impl fmt::Display for RelationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, p)) in self.rel.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            match (i, *c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}", p.display(self.quiver))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalType {
    A { n: usize, m: usize },
    D(usize),
    E(usize),
}

/// Where a bound quiver came from. Used to attach theorem predictions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Custom,
    Dynkin(DynkinType),
    Canonical(CanonicalType),
    CyclicTube { rank: usize, nilpotency: usize },
    /// Four vertices, two length-two paths from 4 to 1, one of them killed.
    ZeroRelationSquare,
    LoopExtended {
        base: Box<Family>,
        counts: Vec<usize>,
        nilpotency: usize,
    },
}

/// A quiver together with generators of its ideal of relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundQuiver {
    quiver: Quiver,
    relations: Vec<Relation>,
    family: Family,
}

impl BoundQuiver {
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        for r in &relations {
            for (_, p) in r.terms() {
                if p.arrows.iter().any(|&a| a >= quiver.arrows.len()) {
                    return Err(Error::InvalidRelation("relation uses unknown arrow".into()));
                }
                // re-validate composability against this quiver
                Path::new(&quiver, p.arrows.clone())?;
            }
        }
        Ok(BoundQuiver {
            quiver,
            relations,
            family: Family::Custom,
        })
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    /// Path algebra of a quiver without relations.
    pub fn hereditary(quiver: Quiver) -> Self {
        BoundQuiver {
            quiver,
            relations: Vec::new(),
            family: Family::Custom,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn loop_counts(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.quiver.loop_count(v)).collect()
    }

    pub fn path(&self, names: &[&str]) -> Result<Path> {
        let ids = names
            .iter()
            .map(|n| {
                self.quiver
                    .arrow_by_name(n)
                    .ok_or_else(|| Error::InvalidRelation(format!("unknown arrow {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Path::new(&self.quiver, ids)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::from_edges(2, &[("a", 1, 0)]).unwrap()
    }

    #[test]
    fn composition_follows_function_order() {
        let q = Quiver::from_edges(3, &[("a", 1, 0), ("b", 2, 1)]).unwrap();
        let ab = Path::new(&q, vec![0, 1]).unwrap();
        assert_eq!((ab.source(), ab.target()), (2, 0));
        assert!(Path::new(&q, vec![1, 0]).is_err());
        let a = Path::new(&q, vec![0]).unwrap();
        let b = Path::new(&q, vec![1]).unwrap();
        assert_eq!(a.after(&b), Some(ab));
        assert_eq!(b.after(&a), None);
    }

    #[test]
    fn relation_validation() {
        let q = Quiver::from_edges(1, &[("g", 0, 0)]).unwrap();
        let g = Path::new(&q, vec![0]).unwrap();
        let gg = Path::new(&q, vec![0, 0]).unwrap();
        assert!(Relation::monomial(g).is_err());
        assert!(Relation::monomial(gg.clone()).is_ok());
        assert!(Relation::new(vec![(0, gg)]).is_err());
    }

    #[test]
    fn quiver_validation() {
        assert!(Quiver::from_edges(2, &[("a", 0, 2)]).is_err());
        assert!(Quiver::from_edges(2, &[("a", 0, 1), ("a", 1, 0)]).is_err());
        assert!(a2().is_connected());
        assert!(!Quiver::from_edges(2, &[]).unwrap().is_connected());
    }

    #[test]
    fn relation_display() {
        let q = Quiver::from_edges(2, &[("g", 0, 0), ("h", 0, 0)]).unwrap();
        let gh = Path::new(&q, vec![0, 1]).unwrap();
        let hg = Path::new(&q, vec![1, 0]).unwrap();
        let r = Relation::new(vec![(1, gh), (-2, hg)]).unwrap();
        assert_eq!(r.display(&q).to_string(), "g*h - 2*h*g");
    }
}
