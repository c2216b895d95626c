//! Restricts the fundamental modules of E6 and E7 to some of their
//! maximal subgroups.

use lie_branch::branch::branch;
use lie_branch::embed::exceptional_embedding;
use lie_branch::report::branch_summary;

fn main() -> lie_branch::Result<()> {
    for id in ["e6_f4", "e6_c4", "e7_a7"] {
        let d = exceptional_embedding(id)?;
        println!("{}", d.summary());
        for i in 0..d.g_rank() {
            let mut lambda = vec![0; d.g_rank()];
            lambda[i] = 1;
            let s = branch_summary(&d, &branch(&d, &lambda)?)?;
            let parts: Vec<String> = s
                .constituents
                .iter()
                .map(|c| match c.multiplicity {
                    1 => format!("{}[{}]", c.label, c.dimension),
                    m => format!("{m}x{}[{}]", c.label, c.dimension),
                })
                .collect();
            println!("  {:>4} ({:>6}) -> {}", s.lambda_label, s.dimension, parts.join(" + "));
        }
    }
    Ok(())
}
