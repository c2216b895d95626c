//! Loads a restriction matrix from a file and uses it like a built-in case.
//!
//! `cargo run --example custom_matrix [path]`; defaults to G2 inside Spin7.

use std::path::PathBuf;

use lie_branch::branch::branch;
use lie_branch::embed::from_matrix_file;
use lie_branch::gamma::certify;
use lie_branch::report::{branch_summary, element_label};

fn main() -> lie_branch::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/g2_in_b3.toml"));
    let d = from_matrix_file(&path)?;
    println!("{} from {}", d.summary(), path.display());
    for lambda in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]] {
        let s = branch_summary(&d, &branch(&d, &lambda)?)?;
        let parts: Vec<String> = s
            .constituents
            .iter()
            .map(|c| format!("{}x{}", c.multiplicity, c.label))
            .collect();
        println!(
            "  {} -> {}  ({} = {})",
            s.lambda_label,
            parts.join(" + "),
            s.dimension,
            s.total_dimension
        );
    }
    let cert = certify(&d, &[2], 4, None)?;
    let gens: Vec<String> = cert.generators.iter().map(|g| element_label(&d, g)).collect();
    println!("I = {{3}}: free {}, generators {}", cert.free, gens.join(" "));
    Ok(())
}
