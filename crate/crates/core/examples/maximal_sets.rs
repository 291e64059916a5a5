//! Maximal orbit types of V_{1,j} for eight pendula, both index conventions.

use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::SymmetryGroup;
use o2deg::representations::{IndexConvention, IrrepLabel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = SymmetryGroup::new(GammaGroup::dihedral_z2(8)?);
    for convention in [IndexConvention::Antipodal, IndexConvention::Reference] {
        println!("{convention:?}");
        for j in 0..=4 {
            let v = g.irrep(IrrepLabel::new(1, j), convention)?;
            for h in g.maximal_orbit_types(&v)? {
                let dim = g.fixed_point_dim(&v, &h)?;
                println!("  j={j} {:28} dim {dim} |W| {} m {}", g.name(&h), g.weyl_order(&h)?, g.m_of(h.rep()));
            }
        }
    }
    Ok(())
}
