//! Write the algebra document and a DOT rendering for a fixture.

use labelalg::doc::{algebra_to_json, extraction_to_dot};
use labelalg::extract_algebra;
use labelalg::structure::fixtures;

fn main() {
    let ex = extract_algebra(&fixtures::directed_3cycle()).unwrap();
    println!("--- algebra document ---");
    println!("{}", algebra_to_json(&ex.algebra));
    println!("--- DOT ---");
    println!("{}", extraction_to_dot(&ex));
}
