//! Degree invariant for a general spectrum on D6 x Z2, with the closed-form
//! coefficients at foldings of maximal types.

use o2deg::degrees::{degree_report, AnalysisConfig, Eigenvalue};
use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::SymmetryGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = SymmetryGroup::new(GammaGroup::dihedral_z2(6)?);
    let mus = [-1.0, -2.0, -4.2, -5.0];
    let config = AnalysisConfig::new(6, 1.5, mus.iter().enumerate().map(|(j, &mu)| Eigenvalue { j, mu, multiplicity: 1 }).collect());
    let report = degree_report(&g, &config)?;
    let sigma: Vec<_> = report.sigma_zero.iter().map(|i| (i.m, i.j)).collect();
    println!("Sigma_0 = {sigma:?}");
    println!("{} terms in the invariant", report.invariant.len());
    for e in &report.maximal_kind_nonzero {
        println!("{:32} coeff {:3} from (m, j) = ({}, {})", e.orbit_type, e.coeff, e.witness.m, e.witness.j);
    }
    Ok(())
}
