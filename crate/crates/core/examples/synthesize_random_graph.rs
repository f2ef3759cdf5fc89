//! Synthesize a finite approximation of the random graph from its label
//! specification: atoms {equality, edge, non-edge}, all non-trivial
//! compositions allowed, level-1 extension axioms as hard constraints.

use labelalg::doc::parse_algebra;
use labelalg::synth::{synthesize, verify_model, SynthOutcome};
use std::collections::BTreeMap;

const SPEC: &str = include_str!("../fixtures/random_graph_spec.json");

fn main() {
    let spec = parse_algebra(SPEC).unwrap();
    let sizes = BTreeMap::from([("p".to_string(), 8)]);
    let result = synthesize(&spec, &sizes, 1, 11, 10_000_000).unwrap();
    assert_eq!(result.outcome, SynthOutcome::Model);
    let model = result.model.unwrap();
    println!("model found after {} search nodes", result.nodes);

    let report = verify_model(&model, &spec, 2);
    println!("level-1 coverage: {:?}", report.coverage_level1);
    println!("level-2 coverage: {:?}", report.coverage_level2);
    println!("realized compositions: {:?}", report.comp_realized);

    let structure = model.to_structure(&spec).unwrap();
    println!("{}", structure.to_json());
}
