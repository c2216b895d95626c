//! Branching from GL_5 to the Levi subgroup GL_2 x GL_3. The torus
//! characters record the degree on each block.

use lie_branch::branch::branch;
use lie_branch::embed::levi_block_embedding;
use lie_branch::gamma::certify;
use lie_branch::report::element_label;

fn main() -> lie_branch::Result<()> {
    let d = levi_block_embedding(5, &[2, 3])?;
    println!("{}", d.summary());
    for s in ["pi1", "pi2", "pi1+pi4"] {
        let lambda = d.parse_g_weight(s)?;
        let r = branch(&d, &lambda)?;
        let parts: Vec<String> = r
            .sorted(&d.h_shape)
            .iter()
            .map(|(mu, _)| d.format_h_weight(mu))
            .collect();
        println!("  {s} -> {}", parts.join(" + "));
    }
    for i in 0..d.g_rank() {
        let cert = certify(&d, &[i], 4, None)?;
        let gens: Vec<String> = cert.generators.iter().map(|g| element_label(&d, g)).collect();
        println!("I = {{{}}}: {} generators: {}", i + 1, gens.len(), gens.join(" "));
    }
    Ok(())
}
