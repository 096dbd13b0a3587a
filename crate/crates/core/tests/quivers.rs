use fpdim_core::quiver::builders::{canonical, cyclic_tube, dynkin, dynkin_oriented, zero_relation_square};
use fpdim_core::quiver::ideal::check_admissible;
use fpdim_core::quiver::{check_loop_commutativity, loop_extend, loop_reduce, CanonicalType, DynkinType};
use fpdim_core::{Algebra, BoundQuiver, Path, Quiver, Rational, Relation, F2, F3};
use proptest::prelude::*;

fn loop_free_corpus() -> Vec<BoundQuiver> {
    vec![
        dynkin(DynkinType::A(2)).unwrap(),
        dynkin(DynkinType::A(3)).unwrap(),
        dynkin_oriented(DynkinType::A(3), &[1]).unwrap(),
        dynkin(DynkinType::D(4)).unwrap(),
        dynkin(DynkinType::E(6)).unwrap(),
        canonical(CanonicalType::A { n: 2, m: 3 }).unwrap(),
        canonical(CanonicalType::D(5)).unwrap(),
        cyclic_tube(3, 2).unwrap(),
        cyclic_tube(2, 4).unwrap(),
        zero_relation_square().unwrap(),
    ]
}

fn corpus() -> Vec<BoundQuiver> {
    let mut all = loop_free_corpus();
    all.push(loop_extend(&dynkin(DynkinType::A(2)).unwrap(), &[1, 2], 2).unwrap());
    all.push(loop_extend(&zero_relation_square().unwrap(), &[0, 2, 1, 0], 3).unwrap());
    all.push(loop_extend(&cyclic_tube(2, 2).unwrap(), &[1, 0], 2).unwrap());
    all
}

/// Number of paths in an acyclic quiver, counted by depth-first walks.
fn count_paths(q: &Quiver) -> usize {
    fn walk(q: &Quiver, v: usize) -> usize {
        1 + q
            .arrows()
            .iter()
            .filter(|a| a.source == v)
            .map(|a| walk(q, a.target))
            .sum::<usize>()
    }
    (0..q.vertex_count()).map(|v| walk(q, v)).sum()
}

#[test]
fn products_of_basis_elements_reduce_into_the_basis() {
    for bq in corpus() {
        let alg = Algebra::<F3>::new(&bq).unwrap();
        let pb = alg.path_basis();
        let blocks: Vec<_> = pb.blocks().map(|(k, v)| (*k, v.clone())).collect();
        let total: usize = blocks.iter().map(|(_, v)| v.len()).sum();
        assert_eq!(total, pb.dim());
        for ((s, t), paths) in &blocks {
            for (i, p) in paths.iter().enumerate() {
                // a basis path is its own normal form
                let nf = pb.reduce(p);
                assert_eq!(nf.len(), 1);
                assert_eq!(nf[0].0, i);
                assert_eq!(pb.reduce(p), nf);
                for ((s2, t2), others) in &blocks {
                    if t2 != s {
                        continue;
                    }
                    for q in others {
                        let prod = pb.multiply(p, q).expect("composable");
                        let block = pb.basis(*s2, *t);
                        assert!(prod.iter().all(|(k, c)| *k < block.len() && *c != F3::new(0)));
                    }
                }
            }
        }
    }
}

#[test]
fn hereditary_dimension_counts_paths() {
    for bq in loop_free_corpus().into_iter().filter(|b| b.relations().is_empty()) {
        let alg = Algebra::<F2>::new(&bq).unwrap();
        assert_eq!(alg.dim(), count_paths(bq.quiver()));
    }
}

fn round_trip(which: usize, counts: &[usize], d: usize) -> Result<(), TestCaseError> {
    let bq = loop_free_corpus().swap_remove(which);
    let counts: Vec<usize> = counts.iter().copied().cycle().take(bq.vertex_count()).collect();
    let ext = loop_extend(&bq, &counts, d).unwrap();
    let back = loop_reduce(&ext).unwrap();
    prop_assert_eq!(back.quiver(), bq.quiver());
    prop_assert_eq!(back.relations(), bq.relations());
    let alg = Algebra::<Rational>::new(&ext).unwrap();
    prop_assert!(check_loop_commutativity(&alg).holds);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reduce_inverts_extend(which in 0usize..10, counts in prop::collection::vec(0usize..4, 1..5)) {
        round_trip(which, &counts, 2)?;
    }

    #[test]
    fn reduce_inverts_extend_higher_nilpotency(which in 0usize..10, counts in prop::collection::vec(0usize..3, 1..5), d in 3usize..5) {
        round_trip(which, &counts, d)?;
    }
}

#[test]
fn admissibility_examples() {
    let a2 = dynkin(DynkinType::A(2)).unwrap();
    let r = check_admissible::<F2>(&a2, 4);
    assert!(r.admissible);
    assert_eq!((r.nilpotency, r.algebra_dim), (Some(2), Some(3)));

    let q = Quiver::from_edges(1, &[("g", 0, 0)]).unwrap();
    let g2 = Path::new(&q, vec![0, 0]).unwrap();
    let dual = BoundQuiver::new(q.clone(), vec![Relation::monomial(g2).unwrap()]).unwrap();
    let r = check_admissible::<F2>(&dual, 10);
    assert_eq!((r.nilpotency, r.algebra_dim), (Some(2), Some(2)));

    let free = BoundQuiver::hereditary(q);
    let r = check_admissible::<F2>(&free, 10);
    assert!(!r.admissible);
    assert_eq!(r.witness.unwrap().len(), 10);
}

#[test]
fn commutativity_failure_is_reported() {
    // loop g at 0, arrow a: 1 -> 0; g·a survives
    let q = Quiver::from_edges(2, &[("g", 0, 0), ("a", 1, 0)]).unwrap();
    let gg = Path::new(&q, vec![0, 0]).unwrap();
    let gga = Path::new(&q, vec![0, 0, 1]).unwrap();
    let bq = BoundQuiver::new(q, vec![Relation::monomial(gg).unwrap(), Relation::monomial(gga).unwrap()]).unwrap();
    let alg = Algebra::<Rational>::new(&bq).unwrap();
    let c = check_loop_commutativity(&alg);
    assert!(!c.holds);
    assert!(c.violations.iter().any(|v| v.contains("g") && v.contains("a")));
    assert!(loop_reduce(&bq).is_err());
}

#[test]
fn builder_shapes() {
    let kr = canonical(CanonicalType::A { n: 1, m: 1 }).unwrap();
    assert_eq!(kr.vertex_count(), 2);
    assert_eq!(kr.quiver().arrows().len(), 2);
    assert!(kr.relations().is_empty());
    assert_eq!(Algebra::<F2>::new(&kr).unwrap().dim(), 4);

    let d4 = canonical(CanonicalType::D(4)).unwrap();
    assert_eq!(d4.relations().len(), 1);
    assert_eq!(d4.relations()[0].terms().len(), 3);

    let t = cyclic_tube(3, 2).unwrap();
    assert_eq!(t.vertex_count(), 3);
    assert_eq!(Algebra::<F2>::new(&t).unwrap().dim(), 6);

    // zero loop counts change nothing but the family tag
    let sq = zero_relation_square().unwrap();
    let same = loop_extend(&sq, &[0; 4], 2).unwrap();
    assert_eq!(same.quiver(), sq.quiver());
    assert_eq!(same.relations(), sq.relations());
}
