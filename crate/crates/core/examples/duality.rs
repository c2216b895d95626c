//! Compares each branching monoid with its image under the diagram
//! automorphism of SL_n.

use lie_branch::embed::{dual_case, levi_block_embedding};
use lie_branch::gamma::{duality_check, enumerate_gamma};
use lie_branch::report::element_label;

fn main() -> lie_branch::Result<()> {
    let d = levi_block_embedding(5, &[3, 2])?;
    for i in 0..d.g_rank() {
        let rep = duality_check(&d, &[i], 4)?;
        println!(
            "I = {:?} vs I* = {:?}: holds {}",
            rep.index_set, rep.dual_index_set, rep.holds
        );
    }
    let (dd, set) = dual_case(&d, &[1]);
    let en = enumerate_gamma(&d, &[1], 2)?;
    for e in en.elements.iter().filter(|e| !e.is_zero()) {
        println!("  {} <-> {}", element_label(&d, e), element_label(&dd, &e.dual(&d)));
    }
    println!("dual set {:?}", set.iter().map(|i| i + 1).collect::<Vec<_>>());
    Ok(())
}
