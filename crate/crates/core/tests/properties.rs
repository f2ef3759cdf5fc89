use labelalg::algebra::extract_algebra;
use labelalg::structure::FiniteStructure;
use labelalg::Relation;
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

const N: usize = 6;

fn arb_relation() -> impl Strategy<Value = Relation> {
    proptest::collection::btree_set((0..N, 0..N), 0..=N * N)
        .prop_map(|pairs| Relation::new(N, pairs).unwrap())
}

/// Random graph on up to 6 points with up to two colors.
fn arb_structure() -> impl Strategy<Value = FiniteStructure> {
    (2..=6usize)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::btree_set((0..n, 0..n), 0..=n * n),
                1..n,
            )
        })
        .prop_map(|(n, pairs, cut)| {
            let mut colors: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
            colors.insert("p".into(), (0..cut).collect());
            if cut < n {
                colors.insert("q".into(), (cut..n).collect());
            }
            let mut relations = BTreeMap::new();
            relations.insert("R".into(), Relation::new(n, pairs).unwrap());
            FiniteStructure::new(n, colors, relations).unwrap()
        })
}

proptest! {
    #[test]
    fn compose_associative(r in arb_relation(), s in arb_relation(), t in arb_relation()) {
        let left = r.compose(&s).unwrap().compose(&t).unwrap();
        let right = r.compose(&s.compose(&t).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn compose_distributes_over_union(r in arb_relation(), s in arb_relation(), t in arb_relation()) {
        let lhs = r.union(&s).unwrap().compose(&t).unwrap();
        let rhs = r.compose(&t).unwrap().union(&s.compose(&t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = t.compose(&r.union(&s).unwrap()).unwrap();
        let rhs = t.compose(&r).unwrap().union(&t.compose(&s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn converse_antihomomorphism(r in arb_relation(), s in arb_relation()) {
        let lhs = r.compose(&s).unwrap().converse();
        let rhs = s.converse().compose(&r.converse()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn converse_involution(r in arb_relation()) {
        prop_assert_eq!(r.converse().converse(), r);
    }

    #[test]
    fn diagonal_two_sided_identity(r in arb_relation()) {
        let d = Relation::diagonal(N);
        prop_assert_eq!(d.compose(&r).unwrap(), r.clone());
        prop_assert_eq!(r.compose(&d).unwrap(), r);
    }

    #[test]
    fn structure_document_roundtrip(m in arb_structure()) {
        let again = FiniteStructure::parse(&m.to_json()).unwrap();
        prop_assert_eq!(m, again);
    }

    // atoms of any extracted algebra: generator-invariant, covering n^2
    // pairs, with composites closed over whole atoms
    #[test]
    fn extraction_invariants(m in arb_structure()) {
        let ex = extract_algebra(&m).unwrap();
        let n = m.universe_size();
        let mut covered = 0usize;
        for atom in &ex.table.atoms {
            prop_assert!(ex.group.is_invariant(&atom.pairs));
            covered += atom.pairs.len();
        }
        prop_assert_eq!(covered, n * n);
        for s in &ex.table.atoms {
            for t in &ex.table.atoms {
                if s.dst != t.src {
                    continue;
                }
                let composed = s.pairs.compose(&t.pairs).unwrap();
                for u in ex.table.atoms_of(s.src, t.dst) {
                    let upairs = &ex.table.atoms[*u].pairs;
                    if upairs.intersects(&composed) {
                        prop_assert!(upairs.is_subset(&composed));
                    }
                }
            }
        }
    }

    // label composition is monotone and distributes over join
    #[test]
    fn label_composition_laws(m in arb_structure(), umask in 0u32..256, wmask in 0u32..256, vmask in 0u32..256) {
        let ex = extract_algebra(&m).unwrap();
        let alg = &ex.algebra;
        let atoms: Vec<usize> = alg.atoms_of(0, 0).to_vec();
        let pick = |mask: u32| {
            alg.label(0, 0, atoms.iter().enumerate()
                .filter(|&(i, _)| mask >> (i % 8) & 1 == 1 && i < 8)
                .map(|(_, &a)| a))
        };
        let u = pick(umask);
        let w = pick(wmask);
        let v = pick(vmask);
        let join_then = alg.compose(&alg.join(&u, &w), &v).unwrap();
        let then_join = alg.join(&alg.compose(&u, &v).unwrap(), &alg.compose(&w, &v).unwrap());
        prop_assert_eq!(join_then, then_join);
        if u.atoms.is_subset(&w.atoms) {
            let cu = alg.compose(&u, &v).unwrap();
            let cw = alg.compose(&w, &v).unwrap();
            prop_assert!(cu.atoms.is_subset(&cw.atoms));
        }
    }
}
