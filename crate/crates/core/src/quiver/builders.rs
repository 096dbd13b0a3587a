//! Built-in families of bound quivers.
//!
//! Vertex naming: Dynkin quivers and cyclic quivers use `"1"..="n"`.
//! Canonical algebras use the labels `"0"` (sink), `"0'"` (source) and
//! `"(i,j)"` for the `j`-th interior vertex of arm `i`, counted from the
//! sink; the integer index is 0 for `0`, 1 for `0'`, then the arms in order.
//! Arm arrows are named `a1.., b1.., c1..` with `x1` ending at `0`.

use super::{Arrow, BoundQuiver, CanonicalType, DynkinType, Family, Path, Quiver, Relation};
use crate::error::{Error, Result};

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|v| v.to_string()).collect()
}

fn edges_to_arrows(edges: &[(usize, usize)]) -> Vec<Arrow> {
    edges
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| Arrow {
            name: format!("x{}", i + 1),
            source: s,
            target: t,
        })
        .collect()
}

fn dynkin_edges(ty: DynkinType) -> Result<(usize, Vec<(usize, usize)>)> {
    match ty {
        DynkinType::A(n) if n >= 1 => Ok((n, (0..n - 1).map(|i| (i + 1, i)).collect())),
        DynkinType::D(n) if n >= 4 => {
            let branch = n - 3;
            let mut e: Vec<_> = (0..branch).map(|i| (i, i + 1)).collect();
            e.push((n - 2, branch));
            e.push((n - 1, branch));
            Ok((n, e))
        }
        DynkinType::E(n) if (6..=8).contains(&n) => {
            let branch = 2;
            let mut e = Vec::new();
            for i in 0..n - 1 {
                if i < branch {
                    e.push((i, i + 1));
                } else if i > branch {
                    e.push((i, i - 1));
                }
            }
            e.push((n - 1, branch));
            Ok((n, e))
        }
        other => Err(Error::Parameter(format!("no Dynkin diagram {other:?}"))),
    }
}

/// Dynkin quiver with every arrow pointing towards the branch vertex
/// (towards vertex 1 for type A). For D4 this is the subspace orientation.
pub fn dynkin(ty: DynkinType) -> Result<BoundQuiver> {
    dynkin_oriented(ty, &[])
}

/// Dynkin quiver with the arrows listed in `reversed` turned around.
pub fn dynkin_oriented(ty: DynkinType, reversed: &[usize]) -> Result<BoundQuiver> {
    let (n, mut edges) = dynkin_edges(ty)?;
    for &i in reversed {
        let e = edges
            .get_mut(i)
            .ok_or_else(|| Error::Parameter(format!("no arrow {i} to reverse")))?;
        *e = (e.1, e.0);
    }
    let q = Quiver::new(numbered(n), edges_to_arrows(&edges))?;
    Ok(BoundQuiver::hereditary(q).with_family(Family::Dynkin(ty)))
}

/// Canonical algebra with arms of the given lengths (arrows per arm) from
/// `0'` to `0`; one relation summing the arm paths when there are 3 arms.
fn canonical_arms(arm_lengths: &[usize]) -> Result<BoundQuiver> {
    let mut vertices = vec!["0".to_string(), "0'".to_string()];
    let mut arrows = Vec::new();
    let mut arm_arrows = Vec::new();
    for (i, &len) in arm_lengths.iter().enumerate() {
        let letter = (b'a' + i as u8) as char;
        let first_inner = vertices.len();
        for j in 1..len {
            vertices.push(format!("({},{})", i + 1, j));
        }
        let mut ids = Vec::new();
        for k in 1..=len {
            let target = if k == 1 { 0 } else { first_inner + k - 2 };
            let source = if k == len { 1 } else { first_inner + k - 1 };
            ids.push(arrows.len());
            arrows.push(Arrow {
                name: format!("{letter}{k}"),
                source,
                target,
            });
        }
        arm_arrows.push(ids);
    }
    let q = Quiver::new(vertices, arrows)?;
    let mut relations = Vec::new();
    if arm_lengths.len() == 3 {
        let terms = arm_arrows
            .iter()
            .map(|ids| Ok((1, Path::new(&q, ids.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        relations.push(Relation::new(terms)?);
    }
    BoundQuiver::new(q, relations)
}

pub fn canonical(ty: CanonicalType) -> Result<BoundQuiver> {
    let bq = match ty {
        CanonicalType::A { n, m } if n >= 1 && m >= 1 => canonical_arms(&[n, m])?,
        CanonicalType::D(n) if n >= 4 => canonical_arms(&[n - 2, 2, 2])?,
        CanonicalType::E(n) if (6..=8).contains(&n) => canonical_arms(&[n - 3, 2, 3])?,
        other => return Err(Error::Parameter(format!("no canonical algebra {other:?}"))),
    };
    Ok(bq.with_family(Family::Canonical(ty)))
}

/// Vertices of canonical arm `i` (1-based), ordered from the sink side.
pub fn canonical_arm_vertices(bq: &BoundQuiver, arm: usize) -> Vec<usize> {
    let prefix = format!("({arm},");
    bq.quiver()
        .vertex_names()
        .iter()
        .enumerate()
        .filter(|(_, name)| name.starts_with(&prefix))
        .map(|(v, _)| v)
        .collect()
}

/// Cyclic quiver `1 -> 2 -> ... -> n -> 1` modulo all paths of length
/// `nilpotency`; its modules are the nilpotent representations of Loewy
/// length at most `nilpotency`. Rank 1 is a single loop.
pub fn cyclic_tube(rank: usize, nilpotency: usize) -> Result<BoundQuiver> {
    if rank < 1 || nilpotency < 2 {
        return Err(Error::Parameter(format!(
            "cyclic_tube needs rank >= 1 and nilpotency >= 2, got ({rank}, {nilpotency})"
        )));
    }
    let arrows = (0..rank)
        .map(|i| Arrow {
            name: format!("x{}", i + 1),
            source: i,
            target: (i + 1) % rank,
        })
        .collect();
    let q = Quiver::new(numbered(rank), arrows)?;
    let mut relations = Vec::new();
    for start in 0..rank {
        // written order: the last arrow applies first
        let ids: Vec<usize> = (0..nilpotency).map(|k| (start + k) % rank).rev().collect();
        relations.push(Relation::monomial(Path::new(&q, ids)?)?);
    }
    Ok(BoundQuiver::new(q, relations)?.with_family(Family::CyclicTube { rank, nilpotency }))
}

/// Vertices 1..4, arrows `a: 2->1`, `c: 3->1`, `b: 4->2`, `d: 4->3`, and the
/// single zero relation `a*b`.
pub fn zero_relation_square() -> Result<BoundQuiver> {
    let q = Quiver::new(
        numbered(4),
        vec![
            Arrow { name: "a".into(), source: 1, target: 0 },
            Arrow { name: "c".into(), source: 2, target: 0 },
            Arrow { name: "b".into(), source: 3, target: 1 },
            Arrow { name: "d".into(), source: 3, target: 2 },
        ],
    )?;
    let ab = Path::new(&q, vec![0, 2])?;
    Ok(BoundQuiver::new(q, vec![Relation::monomial(ab)?])?.with_family(Family::ZeroRelationSquare))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::quiver::check_admissible;

    #[test]
    fn canonical_kronecker() {
        let bq = canonical(CanonicalType::A { n: 1, m: 1 }).unwrap();
        assert_eq!(bq.vertex_count(), 2);
        assert_eq!(bq.quiver().arrows().len(), 2);
        assert!(bq.quiver().arrows().iter().all(|a| a.source == 1 && a.target == 0));
        assert!(bq.relations().is_empty());
        let r = check_admissible::<Fp<2>>(&bq, 4);
        assert_eq!(r.algebra_dim, Some(4));
    }

    #[test]
    fn canonical_d4_relation() {
        let bq = canonical(CanonicalType::D(4)).unwrap();
        assert_eq!(bq.vertex_count(), 5);
        assert_eq!(bq.relations().len(), 1);
        let rel = bq.relations()[0].display(bq.quiver()).to_string();
        assert_eq!(rel, "a1*a2 + b1*b2 + c1*c2");
        assert!(canonical(CanonicalType::D(3)).is_err());
    }

    #[test]
    fn canonical_e6_shape() {
        let bq = canonical(CanonicalType::E(6)).unwrap();
        assert_eq!(bq.vertex_count(), 7);
        let rel = bq.relations()[0].display(bq.quiver()).to_string();
        assert_eq!(rel, "a1*a2*a3 + b1*b2 + c1*c2*c3");
        assert_eq!(canonical_arm_vertices(&bq, 3).len(), 2);
        assert!(canonical(CanonicalType::E(9)).is_err());
    }

    #[test]
    fn cyclic_tube_relations() {
        let bq = cyclic_tube(3, 2).unwrap();
        assert_eq!(bq.quiver().arrows().len(), 3);
        assert_eq!(bq.relations().len(), 3);
        assert!(cyclic_tube(3, 1).is_err());
        assert!(cyclic_tube(0, 2).is_err());
        let r = check_admissible::<Fp<2>>(&bq, 4);
        assert_eq!((r.nilpotency, r.algebra_dim), (Some(2), Some(6)));
    }

    #[test]
    fn dynkin_orientations() {
        let d4 = dynkin(DynkinType::D(4)).unwrap();
        assert!(d4.quiver().arrows().iter().all(|a| a.target == 1));
        let e6 = dynkin(DynkinType::E(6)).unwrap();
        assert_eq!(e6.quiver().arrows().len(), 5);
        assert!(e6.quiver().is_connected());
        let a3 = dynkin_oriented(DynkinType::A(3), &[1]).unwrap();
        assert_eq!(a3.quiver().arrow(1).source, 1);
        assert!(dynkin(DynkinType::D(3)).is_err());
    }
}
