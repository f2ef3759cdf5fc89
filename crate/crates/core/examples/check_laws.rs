//! Run the complement/classification/finiteness checks over the whole
//! fixture corpus and print each family's census.

use labelalg::extract_algebra;
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
        let ex = extract_algebra(&m).unwrap();
        let report = ex.algebra.check_proposition(Some((&ex.table, &ex.orbits)));
        println!("{name}: {}", if report.is_ok() { "all laws hold" } else { "FAILED" });
        for finding in &report.findings {
            println!("  {finding}");
        }
        for p in &report.pairs {
            println!(
                "  ({},{}): {} atoms, {} labels ({} zero, {} positive, 1 bottom)",
                p.src, p.dst, p.atom_count, p.label_count, p.zero_labels, p.positive_labels
            );
        }
    }
}
