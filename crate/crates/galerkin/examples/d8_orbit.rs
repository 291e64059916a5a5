//! Newton search in the fixed space of the maximal type of `𝔐_{1,4}` for
//! eight pendula, `β = 1`, `q = 2`.

use o2deg::degrees::ResonancePolicy;
use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::SymmetryGroup;
use o2deg::pendula::PendulaSpec;
use o2deg_galerkin::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = SymmetryGroup::new(GammaGroup::dihedral_z2(8)?);
    let h = g.parse("(D2 ^D1 x^tD8d D8p)")?;
    let mut spec = PendulaSpec::new(8, 1.0, 2);
    spec.resonance = ResonancePolicy::Restrict;
    let seed = 7;
    let mut amplitude = Vec::new();
    for modes in [8, 16] {
        let model = Model::pendula(&spec, modes)?;
        let basis = symmetric_basis(&g, &h, modes)?;
        let x0 = seed_state(&basis, modes, 8, seed)?;
        let sol = newton_solve(&x0, &model, &basis, &NewtonOptions::default())?;
        let iso = isotropy_check(&g, &sol.state, 1e-6, &default_candidates(&g, 8));
        println!(
            "M={modes:2} dim={:3} iters={:2} residual={:.2e} nonstationary={} |mode1|={:.12} isotropy={}",
            basis.ncols(),
            sol.iterations,
            sol.residual_norm,
            sol.nonstationary,
            sol.state.mode_norm(1),
            iso.largest.as_deref().unwrap_or("(trivial)")
        );
        amplitude.push(sol.state.mode_norm(1));
    }
    println!("mode-1 change on doubling M: {:.2e}", (amplitude[1] - amplitude[0]).abs());
    Ok(())
}
