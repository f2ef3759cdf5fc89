//! Extract the label algebra of the 5-cycle and print its atoms and
//! composition table.

use labelalg::extract_algebra;
use labelalg::structure::fixtures;

fn main() {
    let m = fixtures::c5();
    let ex = extract_algebra(&m).unwrap();
    let alg = &ex.algebra;

    println!("C5: |Aut| = {}", ex.group.order());
    for block in &ex.orbits.blocks {
        println!("type {:?}: elements {:?}", block.id, block.elements);
    }
    for atom in &ex.table.atoms {
        println!(
            "atom {} ({} -> {}){}: {} pairs, converse {}",
            atom.id,
            alg.types()[atom.src].id,
            alg.types()[atom.dst].id,
            if atom.is_equality { " [equality]" } else { "" },
            atom.pairs.len(),
            atom.converse,
        );
    }
    println!("composition table:");
    for (s, t, result) in alg.comp_entries() {
        println!("  {s} . {t} = {result:?}");
    }
    let report = alg.check_proposition(Some((&ex.table, &ex.orbits)));
    for summary in &report.pairs {
        println!(
            "({},{}): {} labels in the Boolean algebra",
            summary.src, summary.dst, summary.label_count
        );
    }
}
