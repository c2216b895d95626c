//! Spin7 inside SL8 through the spin representation: computes the branching
//! monoid for each single node and checks it is free.

use lie_branch::embed::spin7_in_sl8;
use lie_branch::gamma::certify;
use lie_branch::report::element_label;

fn main() -> lie_branch::Result<()> {
    let d = spin7_in_sl8()?;
    println!("{}", d.summary());
    for i in 0..d.g_rank() {
        let cert = certify(&d, &[i], 4, None)?;
        if let Some(w) = &cert.witness {
            println!(
                "I = {{{}}}: not multiplicity free, m = {} at ({}; {})",
                i + 1,
                w.multiplicity,
                d.format_g_weight(&w.lambda),
                d.format_h_weight(&w.mu)
            );
            continue;
        }
        let gens: Vec<String> = cert.generators.iter().map(|g| element_label(&d, g)).collect();
        println!("I = {{{}}}: free {}, generators {}", i + 1, cert.free, gens.join(" "));
    }
    Ok(())
}
