use fpdim_cli::dsl::{parse, print, ArrowDecl, FieldChoice, QuiverFile, RelationDecl};
use fpdim_core::quiver::builders::{canonical, cyclic_tube, dynkin, zero_relation_square};
use fpdim_core::quiver::{loop_extend, CanonicalType, DynkinType};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Arrow-name paths of length 2 or 3, grouped by endpoints.
fn paths(file: &QuiverFile) -> Vec<((String, String), Vec<Vec<String>>)> {
    let mut groups: Vec<((String, String), Vec<Vec<String>>)> = Vec::new();
    let mut walks: Vec<Vec<&ArrowDecl>> = file.arrows.iter().map(|a| vec![a]).collect();
    for _ in 0..2 {
        let mut next = Vec::new();
        for w in &walks {
            // w[0] is applied last
            for a in file.arrows.iter().filter(|a| a.source == w[0].target) {
                let mut longer = vec![a];
                longer.extend(w.iter().copied());
                next.push(longer);
            }
        }
        for w in &next {
            let key = (w[w.len() - 1].source.clone(), w[0].target.clone());
            let names = w.iter().map(|a| a.name.clone()).collect();
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(names),
                None => groups.push((key, vec![names])),
            }
        }
        walks = next;
    }
    groups
}

fn random_file(seed: u64) -> QuiverFile {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..5);
    let mut file = QuiverFile {
        vertices: (0..n).map(|i| format!("{}", i + 1)).collect(),
        ..QuiverFile::default()
    };
    for i in 0..rng.gen_range(0..6) {
        file.arrows.push(ArrowDecl {
            name: format!("x{i}"),
            source: file.vertices[rng.gen_range(0..n)].clone(),
            target: file.vertices[rng.gen_range(0..n)].clone(),
        });
    }
    let groups = paths(&file);
    if !groups.is_empty() {
        for _ in 0..rng.gen_range(0..3) {
            let (_, options) = &groups[rng.gen_range(0..groups.len())];
            let terms = (0..rng.gen_range(1..=options.len().min(3)))
                .map(|_| {
                    let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
                    (c, options[rng.gen_range(0..options.len())].clone())
                })
                .collect();
            file.relations.push(RelationDecl { terms });
        }
    }
    if rng.gen_bool(0.3) {
        file.loops.push((file.vertices[0].clone(), rng.gen_range(0..3)));
    }
    file.field = [None, Some(FieldChoice::Prime(5)), Some(FieldChoice::Rationals)][rng.gen_range(0..3)];
    if rng.gen_bool(0.3) {
        file.nilpotency = Some(rng.gen_range(2..5));
    }
    file
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let file = random_file(seed);
        let text = print(&file);
        prop_assert_eq!(parse(&text).unwrap(), file.clone());
        // and printing is stable
        prop_assert_eq!(print(&parse(&text).unwrap()), text);
    }
}

#[test]
fn builtin_quivers_survive_the_text_format() {
    let d4 = dynkin(DynkinType::D(4)).unwrap();
    let all = vec![
        d4.clone(),
        canonical(CanonicalType::D(5)).unwrap(),
        cyclic_tube(3, 2).unwrap(),
        zero_relation_square().unwrap(),
        loop_extend(&d4, &[1, 0, 2, 0], 3).unwrap(),
    ];
    for bq in all {
        let text = print(&QuiverFile::from_bound_quiver(&bq).unwrap());
        let back = parse(&text).unwrap().bound_quiver().unwrap();
        assert_eq!(back.quiver(), bq.quiver(), "{text}");
        assert_eq!(back.relations(), bq.relations(), "{text}");
    }
}

#[test]
fn loops_directive_uses_the_nilpotency() {
    let text = "vertices 1 2\narrow a 2 1\nloops 1 2\nnilpotency 3\n";
    let bq = parse(text).unwrap().bound_quiver().unwrap();
    let expected = loop_extend(&dynkin(DynkinType::A(2)).unwrap(), &[2, 0], 3).unwrap();
    assert_eq!(bq.relations().len(), expected.relations().len());
    assert_eq!(bq.loop_counts(), vec![2, 0]);
    // loops cannot be added on top of declared loops
    assert!(parse("vertices 1\narrow g 1 1\nrel g*g\nloops 1 1\n").unwrap().bound_quiver().is_err());
}
