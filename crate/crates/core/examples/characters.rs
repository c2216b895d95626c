//! Weight multiplicities, Weyl dimensions and a tensor square.

use lie_branch::chars::{dimension, dominant_character, full_character};
use lie_branch::rootsys::{Family, GroupShape, SimpleLieType};

fn main() -> lie_branch::Result<()> {
    let g2 = SimpleLieType::new(Family::G, 2)?;
    for lambda in [[1, 0], [0, 1], [1, 1], [2, 1]] {
        let ch = dominant_character(g2, &lambda)?;
        println!("G2 {lambda:?}: dim {}", dimension(&GroupShape::simple(g2), &lambda)?);
        for (mu, m) in ch.as_map() {
            println!("    {mu:?} x{m}");
        }
    }

    // adjoint of A2 squared, as dominant weights with multiplicity
    let a2 = GroupShape::simple(SimpleLieType::new(Family::A, 2)?);
    let adj = full_character(&a2, &[1, 1])?;
    let sq = adj.tensor(&adj);
    println!("A2 adjoint (x) adjoint has {} weights, mass {}", sq.len(), sq.mass());
    for (mu, m) in sq.dominant_part() {
        println!("    {mu:?} x{m}");
    }
    Ok(())
}
