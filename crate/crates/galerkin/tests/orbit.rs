use nalgebra::DVector;
use o2deg::degrees::ResonancePolicy;
use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::{GElem, O2Elem, SymmetryGroup};
use o2deg::pendula::PendulaSpec;
use o2deg::representations::{IndexConvention, IrrepLabel};
use o2deg_galerkin::action::apply;
use o2deg_galerkin::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TARGET: &str = "(D2 ^D1 x^tD8d D8p)";
/// Mode-1 norm of the 𝔐_{1,4} orbit from a shooting solution of
/// `v'' = -5v + v³` on `V_4^-` (scipy, rtol 1e-13), times `√8`.
const MODE1_ORACLE: f64 = 6.860916035972;

fn d8() -> SymmetryGroup {
    SymmetryGroup::new(GammaGroup::dihedral_z2(8).unwrap())
}

fn resonant_spec() -> PendulaSpec {
    let mut spec = PendulaSpec::new(8, 1.0, 2);
    spec.resonance = ResonancePolicy::Restrict;
    spec
}

fn random_state(modes: usize, n: usize, seed: u64) -> GalerkinState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = DVector::from_fn(state_dim(modes, n), |_, _| rng.gen_range(-1.0..1.0));
    GalerkinState::from_vec(modes, n, v)
}

#[test]
fn fixed_space_dimension_is_additive() {
    let g = d8();
    let modes = 3;
    let mut types = g.dihedral_types(1);
    types.extend(g.dihedral_types(2));
    types.push(g.parse(TARGET).unwrap());
    for t in &types {
        let expect: u32 = (0..=modes as u32)
            .flat_map(|m| (0..=4).map(move |j| IrrepLabel::new(m, j)))
            .map(|l| {
                let v = g.irrep(l, IndexConvention::Antipodal).unwrap();
                g.fixed_point_dim(&v, t).unwrap()
            })
            .sum();
        let got = symmetric_basis(&g, t, modes).map(|b| b.ncols()).unwrap_or(0);
        assert_eq!(got as u32, expect, "{}", g.name(t));
    }
}

#[test]
fn basis_is_orthonormal_and_fixed() {
    let g = d8();
    let t = g.parse(TARGET).unwrap();
    let b = symmetric_basis(&g, &t, 4).unwrap();
    let gram = b.transpose() * &b;
    assert!((gram - nalgebra::DMatrix::identity(b.ncols(), b.ncols())).amax() < 1e-12);
    for e in g.realize(t.rep()).unwrap() {
        for c in 0..b.ncols() {
            let x = GalerkinState::from_vec(4, 8, b.column(c).into_owned());
            assert!((apply(g.gamma(), e, &x).coeffs - &x.coeffs).amax() < 1e-12);
        }
    }
}

#[test]
fn residual_is_equivariant() {
    let g = d8();
    let model = Model::pendula(&resonant_spec(), 4).unwrap();
    let x = random_state(4, 8, 11);
    let q = g.spatial();
    let gens = [
        GElem { o2: O2Elem::rotation(o2deg::cyclotomic::turn(1, 7)), spatial: q.identity() },
        GElem { o2: O2Elem::reflection(o2deg::cyclotomic::turn(0, 1)), spatial: q.identity() },
        GElem { o2: O2Elem::identity(), spatial: g.gamma().gamma() },
        GElem { o2: O2Elem::identity(), spatial: g.gamma().kappa() },
        GElem { o2: O2Elem::identity(), spatial: g.gamma().minus_one().unwrap() },
    ];
    for e in gens {
        let lhs = model.residual(&apply(g.gamma(), e, &x));
        let rhs = apply(g.gamma(), e, &GalerkinState::from_vec(4, 8, model.residual(&x))).coeffs;
        assert!((lhs - rhs).amax() < 1e-12, "{e:?}");
    }
}

#[test]
fn residual_of_symmetric_state_stays_symmetric() {
    let g = d8();
    let t = g.parse(TARGET).unwrap();
    let model = Model::pendula(&resonant_spec(), 5).unwrap();
    let b = symmetric_basis(&g, &t, 5).unwrap();
    let y = DVector::from_fn(b.ncols(), |i, _| 0.3 + 0.1 * i as f64);
    let r = model.residual(&GalerkinState::from_vec(5, 8, &b * y));
    let projected = &b * (b.transpose() * &r);
    assert!((r - projected).amax() < 1e-12);
}

#[test]
fn linear_problem_converges_to_zero() {
    let g = d8();
    let t = g.parse(TARGET).unwrap();
    let mut model = Model::pendula(&PendulaSpec::new(8, 1.1, 2), 4).unwrap();
    model.f = Nonlinearity::Zero;
    let b = symmetric_basis(&g, &t, 4).unwrap();
    let x0 = seed_state(&b, 4, 8, 3).unwrap();
    let opts = NewtonOptions { deflation: false, ..NewtonOptions::default() };
    let sol = newton_solve(&x0, &model, &b, &opts).unwrap();
    assert!(sol.state.coeffs.amax() < 1e-12);
    assert!(!sol.nonstationary);
}

#[test]
fn d8_orbit_matches_oracle_and_guarantee() {
    let g = d8();
    let t = g.parse(TARGET).unwrap();
    let model = Model::pendula(&resonant_spec(), 16).unwrap();
    let b = symmetric_basis(&g, &t, 16).unwrap();
    let x0 = seed_state(&b, 16, 8, 7).unwrap();
    let sol = newton_solve(&x0, &model, &b, &NewtonOptions::default()).unwrap();
    assert!(sol.residual_norm < 1e-8 && sol.nonstationary);
    assert!((sol.state.mode_norm(1) - MODE1_ORACLE).abs() < 1e-9, "{}", sol.state.mode_norm(1));
    let iso = isotropy_check(&g, &sol.state, 1e-6, &default_candidates(&g, 8));
    let found = iso.largest_type.expect("isotropy");
    assert!(g.subconjugate(&t, &found), "{:?}", iso.largest);
}

#[test]
fn export_and_csv_shapes() {
    let g = d8();
    let t = g.parse(TARGET).unwrap();
    let model = Model::pendula(&resonant_spec(), 4).unwrap();
    let b = symmetric_basis(&g, &t, 4).unwrap();
    let sol = newton_solve(&seed_state(&b, 4, 8, 1).unwrap(), &model, &b, &NewtonOptions::default()).unwrap();
    let e = SolutionExport::new(&sol, Some(TARGET.into()), 1);
    assert_eq!((e.coeffs.cos.len(), e.coeffs.cos[0].len()), (5, 8));
    assert!(e.coeffs.sin[0].iter().all(|v| *v == 0.0));
    let csv = sol.state.to_csv();
    assert_eq!(csv.lines().count(), 257);
    assert!(csv.starts_with("t,u0,u1,u2,u3,u4,u5,u6,u7\n"));
}

#[test]
fn jacobian_agrees_with_directional_derivatives() {
    let model = Model::pendula(&resonant_spec(), 3).unwrap();
    for seed in 0..4 {
        let x = random_state(3, 8, seed);
        let d = random_state(3, 8, seed + 100).coeffs;
        let h = 1e-6;
        let xp = GalerkinState::from_vec(3, 8, &x.coeffs + &d * h);
        let xm = GalerkinState::from_vec(3, 8, &x.coeffs - &d * h);
        let fd = (model.residual(&xp) - model.residual(&xm)) / (2.0 * h);
        let jd = model.jacobian(&x) * &d;
        assert!((&fd - &jd).norm() <= 1e-6 * jd.norm());
    }
}
