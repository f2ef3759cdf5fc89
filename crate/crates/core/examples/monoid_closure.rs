//! Close the Boolean algebra of (p,p)-labels under composition and show
//! that the closure never leaves the powerset of atoms.

use labelalg::extract_algebra;
use labelalg::structure::fixtures;

fn main() {
    for (name, m) in [
        ("single point", fixtures::single_point()),
        ("C5", fixtures::c5()),
        ("directed 3-cycle", fixtures::directed_3cycle()),
    ] {
        let ex = extract_algebra(&m).unwrap();
        let closure = ex.algebra.monoid_closure(0).unwrap();
        let atoms = ex.algebra.atoms_of(0, 0).len();
        println!(
            "{name}: {} atoms, closure has {} elements (powerset: {})",
            atoms,
            closure.len(),
            1u64 << atoms
        );
        for label in &closure {
            let class = ex.algebra.classify(label);
            println!("  {:?} -> {:?}", label.atoms, class);
        }
    }
}
