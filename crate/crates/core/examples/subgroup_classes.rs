//! Subgroup classes of D8 x Z2 and the character table of D8.

use o2deg::characters::{dihedral_character_table, isotypic_multiplicities};
use o2deg::gamma::GammaGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma = GammaGroup::dihedral_z2(8)?;
    for (i, class) in gamma.classes().iter().enumerate() {
        let weyl = gamma.group().weyl_order(&class.representative)?;
        println!("{:2} {:16} order {:2} conjugates {} |W| {weyl}", i, gamma.class_name(i), class.order(), class.conjugates.len());
    }
    println!("\n{}", dihedral_character_table(8)?.render());
    for v in isotypic_multiplicities(8)? {
        println!("j={} multiplicity {} (dim {})", v.j, v.multiplicity, v.dim);
    }
    Ok(())
}
