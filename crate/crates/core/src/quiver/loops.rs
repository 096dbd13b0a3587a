//! Loop extension and loop reduction of bound quivers.

use std::collections::HashSet;

use super::{Arrow, BoundQuiver, Family, Path, Quiver, Relation};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};

/// Result of checking that loops annihilate non-loop arrows on both sides
/// and commute pairwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopCommutativity {
    pub holds: bool,
    /// Offending products, rendered in the quiver's arrow names.
    pub violations: Vec<String>,
}

pub fn check_loop_commutativity<F: Field>(alg: &Algebra<F>) -> LoopCommutativity {
    let bq = alg.bound_quiver();
    let q = bq.quiver();
    let basis = alg.path_basis();
    let mut violations = Vec::new();
    let single = |a: usize| Path::new(q, vec![a]).expect("arrow");
    for v in 0..q.vertex_count() {
        let loops = q.loops_at(v);
        if loops.is_empty() {
            continue;
        }
        for &g in &loops {
            for (id, a) in q.arrows().iter().enumerate() {
                if a.is_loop() {
                    continue;
                }
                if a.target == v {
                    let p = single(g).after(&single(id)).expect("composable");
                    if !basis.reduce(&p).is_empty() {
                        violations.push(p.display(q).to_string());
                    }
                }
                if a.source == v {
                    let p = single(id).after(&single(g)).expect("composable");
                    if !basis.reduce(&p).is_empty() {
                        violations.push(p.display(q).to_string());
                    }
                }
            }
        }
        for (i, &g1) in loops.iter().enumerate() {
            for &g2 in &loops[i + 1..] {
                let p = single(g1).after(&single(g2)).expect("composable");
                let r = single(g2).after(&single(g1)).expect("composable");
                if !basis.is_zero_combination(&[(F::one(), p.clone()), (-F::one(), r.clone())]) {
                    violations.push(format!("{} - {}", p.display(q), r.display(q)));
                }
            }
        }
    }
    LoopCommutativity {
        holds: violations.is_empty(),
        violations,
    }
}

fn fresh_name(taken: &HashSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Add `counts[v]` loops at every vertex `v`, together with the relations
/// loop·arrow, arrow·loop, loop commutators, and `g^nilpotency` for each
/// loop. The input must be loop-free.
pub fn loop_extend(bq: &BoundQuiver, counts: &[usize], nilpotency: usize) -> Result<BoundQuiver> {
    let q = bq.quiver();
    if q.has_loops() {
        return Err(Error::HasLoops);
    }
    if counts.len() != q.vertex_count() {
        return Err(Error::Parameter(format!(
            "{} loop counts for {} vertices",
            counts.len(),
            q.vertex_count()
        )));
    }
    if nilpotency < 2 {
        return Err(Error::Parameter("loop nilpotency order must be >= 2".into()));
    }
    if counts.iter().all(|&c| c == 0) {
        return Ok(bq.clone());
    }

    let mut taken: HashSet<String> = q.arrows().iter().map(|a| a.name.clone()).collect();
    let mut arrows = q.arrows().to_vec();
    let mut loops_at: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
    for (v, &c) in counts.iter().enumerate() {
        for k in 1..=c {
            let name = fresh_name(&taken, format!("g{}_{}", q.vertex_name(v), k));
            taken.insert(name.clone());
            loops_at[v].push(arrows.len());
            arrows.push(Arrow {
                name,
                source: v,
                target: v,
            });
        }
    }
    let extended = Quiver::new(q.vertex_names().to_vec(), arrows)?;
    let mut relations = bq.relations().to_vec();
    let path = |ids: Vec<usize>| Path::new(&extended, ids);
    for (v, loops) in loops_at.iter().enumerate() {
        for &g in loops {
            for (id, a) in q.arrows().iter().enumerate() {
                if a.target == v {
                    relations.push(Relation::monomial(path(vec![g, id])?)?);
                }
            }
            for (id, a) in q.arrows().iter().enumerate() {
                if a.source == v {
                    relations.push(Relation::monomial(path(vec![id, g])?)?);
                }
            }
        }
        for (i, &g1) in loops.iter().enumerate() {
            for &g2 in &loops[i + 1..] {
                relations.push(Relation::commutator(path(vec![g1, g2])?, path(vec![g2, g1])?)?);
            }
        }
        for &g in loops {
            relations.push(Relation::monomial(path(vec![g; nilpotency])?)?);
        }
    }
    Ok(BoundQuiver::new(extended, relations)?.with_family(Family::LoopExtended {
        base: Box::new(bq.family().clone()),
        counts: counts.to_vec(),
        nilpotency,
    }))
}

/// Remove every loop and every relation term through a loop. Fails unless
/// the commutativity condition of loops holds (checked over the rationals).
pub fn loop_reduce(bq: &BoundQuiver) -> Result<BoundQuiver> {
    let q = bq.quiver();
    if !q.has_loops() {
        return Ok(bq.clone());
    }
    let alg = Algebra::<Rational>::new(bq)?;
    let check = check_loop_commutativity(&alg);
    if !check.holds {
        return Err(Error::LoopCommutativity(check.violations.join(", ")));
    }
    reduce_unchecked(bq)
}

pub(crate) fn reduce_unchecked(bq: &BoundQuiver) -> Result<BoundQuiver> {
    let q = bq.quiver();
    let loop_ids: HashSet<usize> = (0..q.arrows().len()).filter(|&a| q.arrow(a).is_loop()).collect();
    let mut new_id = vec![usize::MAX; q.arrows().len()];
    let mut arrows = Vec::new();
    for (id, a) in q.arrows().iter().enumerate() {
        if !a.is_loop() {
            new_id[id] = arrows.len();
            arrows.push(a.clone());
        }
    }
    let reduced = Quiver::new(q.vertex_names().to_vec(), arrows)?;
    let mut relations = Vec::new();
    for r in bq.relations() {
        let terms = r
            .terms()
            .iter()
            .filter(|(_, p)| !p.contains_any(&loop_ids))
            .map(|(c, p)| {
                let ids = p.arrows().iter().map(|&a| new_id[a]).collect();
                Ok((*c, Path::new(&reduced, ids)?))
            })
            .collect::<Result<Vec<_>>>()?;
        if !terms.is_empty() {
            relations.push(Relation::new(terms)?);
        }
    }
    let family = match bq.family() {
        Family::LoopExtended { base, .. } => (**base).clone(),
        _ => Family::Custom,
    };
    Ok(BoundQuiver::new(reduced, relations)?.with_family(family))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::quiver::builders;

    type F2 = Fp<2>;

    #[test]
    fn extend_a2_at_vertex_two() {
        let a2 = builders::dynkin(crate::quiver::DynkinType::A(2)).unwrap();
        let ext = loop_extend(&a2, &[0, 2], 2).unwrap();
        assert_eq!(ext.quiver().arrows().len(), 3);
        assert_eq!(ext.loop_counts(), vec![0, 2]);
        // α g1, α g2, commutator, g1², g2²
        assert_eq!(ext.relations().len(), 5);
        let alg = Algebra::<F2>::new(&ext).unwrap();
        assert!(check_loop_commutativity(&alg).holds);
        assert_eq!(loop_reduce(&ext).unwrap(), a2);
    }

    #[test]
    fn zero_counts_are_identity() {
        let a2 = builders::dynkin(crate::quiver::DynkinType::A(2)).unwrap();
        assert_eq!(loop_extend(&a2, &[0, 0], 2).unwrap(), a2);
        assert_eq!(loop_reduce(&a2).unwrap(), a2);
    }

    #[test]
    fn rejects_looped_input() {
        let a2 = builders::dynkin(crate::quiver::DynkinType::A(2)).unwrap();
        let ext = loop_extend(&a2, &[1, 0], 2).unwrap();
        assert_eq!(loop_extend(&ext, &[1, 0], 2), Err(Error::HasLoops));
        assert!(loop_extend(&a2, &[1], 2).is_err());
    }

    #[test]
    fn missing_annihilation_is_reported() {
        // loop g at 0, arrow a: 1 -> 0; g² and all length-3 paths, but not g·a
        let q = Quiver::from_edges(2, &[("g", 0, 0), ("a", 1, 0)]).unwrap();
        let p = |ids: Vec<usize>| Path::new(&q, ids).unwrap();
        let rels = vec![
            Relation::monomial(p(vec![0, 0])).unwrap(),
            Relation::monomial(p(vec![0, 0, 1])).unwrap(),
        ];
        let bq = BoundQuiver::new(q.clone(), rels).unwrap();
        let alg = Algebra::<F2>::new(&bq).unwrap();
        let check = check_loop_commutativity(&alg);
        assert!(!check.holds);
        assert_eq!(check.violations, vec!["g*a".to_string()]);
        assert!(matches!(loop_reduce(&bq), Err(Error::LoopCommutativity(_))));
    }

    #[test]
    fn loop_free_is_vacuous() {
        let d4 = builders::dynkin(crate::quiver::DynkinType::D(4)).unwrap();
        let alg = Algebra::<F2>::new(&d4).unwrap();
        assert!(check_loop_commutativity(&alg).holds);
    }
}
