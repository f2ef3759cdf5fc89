//! Round-trip: extract an algebra, synthesize a fresh model from it at the
//! original sizes, verify, re-extract, and compare algebras. The directed
//! 3-cycle comes back isomorphic; small random-graph approximations are
//! rigid and come back verified but finer.

use labelalg::doc::parse_algebra;
use labelalg::structure::fixtures;
use labelalg::synth::{roundtrip, synthesize, SynthOutcome};
use labelalg::{extract_algebra, FiniteStructure};
use std::collections::BTreeMap;

fn show(name: &str, m: &FiniteStructure) {
    let report = roundtrip(m, 1, 7, 10_000_000).unwrap();
    println!(
        "{name}: outcome {:?}, verified {:?}, isomorphic {:?}",
        report.outcome, report.verified, report.isomorphic
    );
}

fn main() {
    show("directed 3-cycle", &fixtures::directed_3cycle());
    show("C5", &fixtures::c5());

    // the rigid case: synthesize a random-graph approximation and compare
    // its extracted algebra with the 3-atom spec
    let spec = parse_algebra(include_str!("../fixtures/random_graph_spec.json")).unwrap();
    let sizes = BTreeMap::from([("p".to_string(), 8)]);
    let result = synthesize(&spec, &sizes, 1, 11, 10_000_000).unwrap();
    assert_eq!(result.outcome, SynthOutcome::Model);
    let structure = result.model.unwrap().to_structure(&spec).unwrap();
    let ex = extract_algebra(&structure).unwrap();
    println!(
        "random graph at size 8: spec has {} atoms, re-extraction has {} (|Aut| = {})",
        spec.atoms().len(),
        ex.algebra.atoms().len(),
        ex.group.order()
    );
}
