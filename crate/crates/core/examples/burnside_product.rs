//! Products in the Burnside ring: a basic degree squared, and a product of
//! two generators at different foldings.

use o2deg::burnside::{multiply, BurnsideElement};
use o2deg::degrees::basic_degree;
use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::SymmetryGroup;
use o2deg::representations::{IndexConvention, IrrepLabel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = SymmetryGroup::new(GammaGroup::dihedral_z2(8)?);
    let d = basic_degree(&g, IrrepLabel::new(1, 1), IndexConvention::Antipodal)?;
    println!("deg(1,1)   = {}", d.render(&g));
    println!("deg(1,1)^2 = {}", multiply(&g, &d, &d)?.render(&g));
    let h = g.parse("(D2 ^D1 x^tD8d D8p)")?;
    let a = BurnsideElement::generator(g.fold(&h, 2));
    let b = BurnsideElement::generator(g.fold(&h, 3));
    println!("{} * {} = {}", a.render(&g), b.render(&g), multiply(&g, &a, &b)?.render(&g));
    Ok(())
}
