//! Compute automorphism groups with the backtracking search and compare
//! against the brute-force enumeration oracle where feasible.

use labelalg::perm::{enumerate_automorphisms, find_automorphisms};
use labelalg::structure::fixtures;

fn main() {
    let corpus = [
        ("single point", fixtures::single_point()),
        ("path P3", fixtures::path3()),
        ("C5", fixtures::c5()),
        ("directed 3-cycle", fixtures::directed_3cycle()),
        ("Petersen", fixtures::petersen()),
    ];
    for (name, m) in corpus {
        let g = find_automorphisms(&m);
        print!("{name}: |Aut| = {}, {} generators", g.order(), g.generators().len());
        if m.universe_size() <= 8 {
            let oracle = enumerate_automorphisms(&m);
            print!(
                ", oracle agrees: {}",
                g.elements() == &oracle[..]
            );
        }
        println!();
        let orbits = g.point_orbits();
        println!("  point orbits: {orbits:?}");
    }
}
