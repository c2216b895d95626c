//! SL4 > SO4 is not spherical for I = {1,2}; finds the smallest degree with
//! a multiplicity and confirms it with the alternating-sum oracle.

use lie_branch::embed::so_in_sl;
use lie_branch::gamma::enumerate_gamma;
use lie_branch::oracle::alternating_sum_multiplicity;

fn main() -> lie_branch::Result<()> {
    let d = so_in_sl(4)?;
    for (set, label) in [(vec![0, 1], "{1,2}"), (vec![0, 1, 2], "S")] {
        for bound in 1..=5 {
            let en = enumerate_gamma(&d, &set, bound)?;
            if let Some(w) = en.witness {
                let check = alternating_sum_multiplicity(&d, &w.lambda, &w.mu)?;
                println!(
                    "I = {label}: first multiplicity at D = {bound}: m = {} (oracle {check}) at ({}; {})",
                    w.multiplicity,
                    d.format_g_weight(&w.lambda),
                    d.format_h_weight(&w.mu)
                );
                break;
            }
            println!(
                "I = {label}: D = {bound} multiplicity free ({} elements)",
                en.elements.len()
            );
        }
    }
    Ok(())
}
