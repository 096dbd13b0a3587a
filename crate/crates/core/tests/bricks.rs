use fpdim_core::bricks::{
    brick_tables, check_directed_shape, check_tube_blocks, enumerate_bricks, fpdim_search, loop_extension_report,
    tube_witness, BrickList, BrickSets, EnumConfig,
};
use fpdim_core::ext::ext1_dim;
use fpdim_core::quiver::builders::{cyclic_tube, dynkin, dynkin_oriented, zero_relation_square};
use fpdim_core::quiver::{loop_extend, DynkinType};
use fpdim_core::rep::hom_dim;
use fpdim_core::spectral::{spectral_radius, NonnegIntMatrix};
use fpdim_core::{Algebra, BoundQuiver, Error, Representation, F2, F3};

fn bricks(bq: &BoundQuiver, cap: &[usize]) -> (Algebra<F2>, BrickList<F2>) {
    let alg = Algebra::new(bq).unwrap();
    let list = enumerate_bricks(bq, &EnumConfig::new(cap.to_vec())).unwrap();
    assert!(list.exhaustive);
    (alg, list)
}

fn directed_cases() -> Vec<(BoundQuiver, Vec<usize>)> {
    let a2 = dynkin(DynkinType::A(2)).unwrap();
    let a3 = dynkin(DynkinType::A(3)).unwrap();
    let a3r = dynkin_oriented(DynkinType::A(3), &[1]).unwrap();
    let d4 = dynkin(DynkinType::D(4)).unwrap();
    vec![
        (loop_extend(&a2, &[2, 1], 2).unwrap(), vec![1, 1]),
        (loop_extend(&a3, &[0, 3, 1], 2).unwrap(), vec![1, 1, 1]),
        (loop_extend(&a3r, &[1, 0, 2], 2).unwrap(), vec![1, 1, 1]),
        (loop_extend(&d4, &[0, 2, 1, 0], 2).unwrap(), vec![1, 2, 1, 1]),
    ]
}

#[test]
fn square_with_a_zero_relation_is_not_directed() {
    let bq = loop_extend(&zero_relation_square().unwrap(), &[0, 1, 0, 0], 2).unwrap();
    let (alg, list) = bricks(&bq, &[1, 1, 1, 1]);
    let (est, _) = fpdim_search(&alg, &list, 4, 1e-9).unwrap();
    assert!((est.best - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
    let w = est.witness.unwrap();
    assert!(check_directed_shape(&bq, &list.bricks, &w.members, &w.adjacency).is_err());
}

#[test]
fn every_brick_set_is_hom_orthogonal() {
    for (bq, cap) in directed_cases() {
        let (alg, list) = bricks(&bq, &cap);
        let tables = brick_tables(&alg, &list).unwrap();
        for set in BrickSets::new(&tables, 6) {
            for &i in &set.members {
                for &j in &set.members {
                    let h = hom_dim(&bq, &list.bricks[i], &list.bricks[j]).unwrap();
                    assert_eq!(h, usize::from(i == j));
                }
            }
        }
    }
}

#[test]
fn directed_adjacency_is_triangular() {
    for (bq, cap) in directed_cases() {
        let (alg, list) = bricks(&bq, &cap);
        let tables = brick_tables(&alg, &list).unwrap();
        let mut seen = 0;
        for set in BrickSets::new(&tables, 6) {
            check_directed_shape(&bq, &list.bricks, &set.members, &set.adjacency).unwrap();
            seen += 1;
        }
        assert!(seen > 0);
        let (est, _) = fpdim_search(&alg, &list, 6, 1e-9).unwrap();
        assert_eq!(est.best, *bq.loop_counts().iter().max().unwrap() as f64);
    }
}

#[test]
fn directed_shape_rejects_cycles_and_wrong_diagonals() {
    let bq = loop_extend(&dynkin(DynkinType::A(2)).unwrap(), &[0, 2], 2).unwrap();
    let (_, list) = bricks(&bq, &[1, 1]);
    let cyc = NonnegIntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert!(check_directed_shape(&bq, &list.bricks, &[0, 1], &cyc).is_err());
    // S1 sits at a vertex without loops
    let s1 = list.bricks.iter().position(|b| b.dims() == [1, 0]).unwrap();
    let diag = NonnegIntMatrix::from_rows(&[vec![1]]).unwrap();
    assert!(check_directed_shape(&bq, &list.bricks, &[s1], &diag).is_err());
}

#[test]
fn tubes_have_cyclic_blocks_and_dimension_one() {
    for n in 2..=4 {
        for l in 2..=4 {
            let bq = cyclic_tube(n, l).unwrap();
            let (alg, list) = bricks(&bq, &vec![1; n]);
            let tables = brick_tables(&alg, &list).unwrap();
            for set in BrickSets::new(&tables, n + 1) {
                check_tube_blocks(&set.adjacency).unwrap();
            }
            let (est, _) = fpdim_search(&alg, &list, n + 1, 1e-12).unwrap();
            assert!((est.best - 1.0).abs() < 1e-12, "tube({n}, {l}): {}", est.best);
            let simples: Vec<usize> = (0..list.bricks.len()).filter(|&i| list.bricks[i].total_dim() == 1).collect();
            assert_eq!(simples.len(), n);
            let rho = spectral_radius::<f64>(&tables.adjacency(&simples), 1e-12).unwrap().value;
            assert!((rho - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn witnesses_in_a_rank_three_tube() {
    let bq = cyclic_tube(3, 4).unwrap();
    let alg = Algebra::<F2>::new(&bq).unwrap();
    let simples: Vec<Representation<F2>> = (0..3).map(|v| Representation::simple(&bq, v).unwrap()).collect();
    let mut found = 0;
    for a in 0..3 {
        for b in 0..3 {
            if a == b || ext1_dim(&alg, &simples[a], &simples[b]).unwrap() != 0 {
                continue;
            }
            let m = tube_witness::<F2>(&bq, a, b).unwrap();
            assert_eq!(ext1_dim(&alg, &simples[a], &m).unwrap(), 1);
            assert_eq!(ext1_dim(&alg, &m, &simples[b]).unwrap(), 1);
            for s in [&simples[a], &simples[b]] {
                assert_eq!(hom_dim(&bq, s, &m).unwrap(), 0);
                assert_eq!(hom_dim(&bq, &m, s).unwrap(), 0);
            }
            found += 1;
        }
    }
    assert_eq!(found, 3);
    assert!(matches!(tube_witness::<F2>(&cyclic_tube(4, 2).unwrap(), 0, 3), Err(Error::NotFound(_))));
    assert!(tube_witness::<F2>(&dynkin(DynkinType::A(2)).unwrap(), 0, 1).is_err());
}

#[test]
fn loop_extension_reports_pass() {
    let a2 = dynkin(DynkinType::A(2)).unwrap();
    let r = loop_extension_report::<F2>(&loop_extend(&a2, &[1, 2], 2).unwrap(), &[2, 2], &[2, 2]).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    assert_eq!(r.self_ext.iter().map(|x| x.ext).collect::<Vec<_>>(), vec![1, 2]);
    let r = loop_extension_report::<F3>(&loop_extend(&a2, &[2, 0], 3).unwrap(), &[1, 1], &[2, 1]).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
}

#[test]
fn small_searches() {
    let a2 = dynkin(DynkinType::A(2)).unwrap();
    let (alg, list) = bricks(&a2, &[1, 1]);
    let dims: Vec<&[usize]> = list.bricks.iter().map(|b| b.dims()).collect();
    assert_eq!(dims, vec![&[0, 1][..], &[1, 0], &[1, 1]]);
    let tables = brick_tables(&alg, &list).unwrap();
    // {S1, P(2)} is not a brick set, {S1, S2} is
    assert!(!tables.orthogonal(1, 2));
    assert!(tables.orthogonal(0, 1));
    assert_eq!(fpdim_search(&alg, &list, 3, 1e-9).unwrap().0.best, 0.0);

    let looped = loop_extend(&a2, &[0, 2], 2).unwrap();
    let (alg, list) = bricks(&looped, &[1, 1]);
    assert_eq!(list.bricks.len(), 3);
    assert_eq!(fpdim_search(&alg, &list, 3, 1e-9).unwrap().0.best, 2.0);

    let t = cyclic_tube(3, 4).unwrap();
    let (alg, list) = bricks(&t, &[1, 1, 1]);
    let tables = brick_tables(&alg, &list).unwrap();
    let simples: Vec<usize> = (0..list.bricks.len()).filter(|&i| list.bricks[i].total_dim() == 1).collect();
    let adj = tables.adjacency(&simples);
    check_tube_blocks(&adj).unwrap();
    assert_eq!(adj.strong_components().len(), 1);
}

#[test]
fn searches_are_deterministic() {
    let bq = loop_extend(&dynkin(DynkinType::D(4)).unwrap(), &[0, 1, 0, 0], 2).unwrap();
    let run = || {
        let (alg, list) = bricks(&bq, &[1, 2, 1, 1]);
        let (est, _) = fpdim_search(&alg, &list, 4, 1e-9).unwrap();
        (format!("{:?}", list.bricks), format!("{est:?}"))
    };
    assert_eq!(run(), run());
}
