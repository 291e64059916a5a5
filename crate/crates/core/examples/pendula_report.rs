//! Existence report for eight coupled pendula at beta = 1.3, q = 2.

use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::SymmetryGroup;
use o2deg::pendula::{cycle_laplacian, existence_report, PendulaSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = SymmetryGroup::new(GammaGroup::dihedral_z2(8)?);
    for s in cycle_laplacian(8)?.spectrum {
        println!("z_{} = {}", s.j, s.z);
    }
    let config = PendulaSpec::new(8, 1.3, 2).config()?;
    let report = existence_report(&g, &config)?;
    for e in &report.entries {
        println!("{:30} (m, j) = ({}, {}) coeff {:2}: {}", e.orbit_type, e.m, e.j, e.coefficient, e.guarantee);
    }
    for e in &report.excluded {
        println!("excluded {:30} (m, j) = ({}, {}): {}", e.orbit_type, e.m, e.j, e.reason);
    }
    Ok(())
}
