//! Foldings of the maximal type with m = 4 and the folding relation
//! against subconjugacy of the folds.

use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::{folding_relation, SymmetryGroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = SymmetryGroup::new(GammaGroup::dihedral_z2(8)?);
    let h = g.parse("(D4 ^Z1 x^Z4d D8p)")?;
    let m = g.m_of(h.rep());
    for s in 1..=4 {
        println!("fold {s}: {}", g.name(&g.fold(&h, s)));
    }
    println!("\ns0 s1 relation subconjugate");
    for s0 in 1..=4 {
        for s1 in 1..=4 {
            let sub = g.subconjugate(&g.fold(&h, s1), &g.fold(&h, s0));
            println!("{s0:2} {s1:2} {:8} {sub}", folding_relation(m, s0, s1));
        }
    }
    Ok(())
}
