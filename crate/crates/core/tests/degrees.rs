mod common;

use o2deg::burnside::{multiply, unit, BurnsideElement};
use o2deg::characters::SpatialIrrep;
use o2deg::degrees::{
    basic_degree, basic_degree_of, coeff_maximal_fast, coeff_maximal_fast_with, degree_invariant, folding_counts,
    product_coeff, sigma_sets, x0, AnalysisConfig, DegreeError, Eigenvalue, SpectralIndex,
};
use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::{OrbitType, SymmetryGroup};
use o2deg::representations::{IndexConvention, Irrep, IrrepLabel};
use rand::seq::SliceRandom;
use rand::Rng;

fn group(n: usize) -> SymmetryGroup {
    SymmetryGroup::new(GammaGroup::dihedral_z2(n).unwrap())
}

fn product(g: &SymmetryGroup, labels: &[IrrepLabel]) -> BurnsideElement<OrbitType> {
    labels.iter().fold(unit(g), |acc, l| {
        multiply(g, &acc, &basic_degree(g, *l, IndexConvention::Antipodal).unwrap()).unwrap()
    })
}

/// `(H, j)` for every `H ∈ 𝔐_{1,j}`, `j ≤ 4`.
fn maximal_types(g: &SymmetryGroup) -> Vec<(OrbitType, usize)> {
    let mut out = Vec::new();
    for j in 0..=4 {
        let v = g.irrep(IrrepLabel::new(1, j), IndexConvention::Antipodal).unwrap();
        out.extend(g.maximal_orbit_types(&v).unwrap().into_iter().map(|h| (h, j)));
    }
    out
}

#[test]
fn basic_degrees_are_involutions() {
    for n in [3, 4, 8] {
        let g = group(n);
        let one = unit(&g);
        let mut count = 0;
        for u in SpatialIrrep::all(n) {
            for m in 0..=3 {
                let d = basic_degree_of(&g, &Irrep { m, spatial: u }).unwrap();
                assert_eq!(multiply(&g, &d, &d).unwrap(), one, "D{n} m={m} {u}");
                count += 1;
            }
        }
        assert!(count >= 12);
    }
}

#[test]
fn folding_maps_basic_degrees() {
    let g = group(8);
    for j in 0..=4 {
        for m in 1..=2u32 {
            let d = basic_degree(&g, IrrepLabel::new(m, j), IndexConvention::Antipodal).unwrap();
            for s in 1..=3 {
                let folded = d.map_types(|t| g.fold(t, s));
                let direct = basic_degree(&g, IrrepLabel::new(s * m, j), IndexConvention::Antipodal).unwrap();
                assert_eq!(folded, direct, "m={m} j={j} s={s}");
            }
        }
    }
}

fn random_config(rng: &mut impl Rng) -> AnalysisConfig {
    let beta = *[0.5, 1.0, 2.0].choose(rng).unwrap();
    let eig = (0..=4).map(|j| Eigenvalue { j, mu: rng.gen_range(-10.0..2.0), multiplicity: 1 }).collect();
    AnalysisConfig::new(8, beta, eig)
}

/// Odd foldings of the two `𝔪 = 8` siblings meet in each other after an
/// outer twist, which the gcd rule does not see; those are left to the
/// acceptance report.
#[test]
fn fast_coefficients_match_the_invariant() {
    let g = group(8);
    let mut types: Vec<OrbitType> =
        maximal_types(&g).into_iter().map(|(h, _)| h).filter(|h| g.m_of(h.rep()) < 8).collect();
    types.sort();
    types.dedup();
    assert_eq!(types.len(), 7);
    let mut rng = common::rng(7);
    let (mut configs, mut checked) = (0, 0);
    while configs < 20 {
        let config = random_config(&mut rng);
        let inv = match degree_invariant(&g, &config) {
            Ok(inv) => inv,
            Err(DegreeError::Resonance { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        for h in &types {
            for s0 in 1..=4 {
                let fast = coeff_maximal_fast(&g, h, 1, s0, &config).unwrap();
                assert_eq!(fast, inv.coeff(&g.fold(h, s0)), "{} s0={s0} {config:?}", g.name(h));
                checked += 1;
            }
        }
        configs += 1;
    }
    assert_eq!(checked, 20 * types.len() * 4);
}

fn index(m: u32, j: usize) -> SpectralIndex {
    SpectralIndex { m, j, mu_mj: -1.0 }
}

fn odd_dim(g: &SymmetryGroup, h: &OrbitType, l: IrrepLabel) -> bool {
    let v = g.irrep(l, IndexConvention::Antipodal).unwrap();
    g.fixed_point_dim(&v, h).unwrap() % 2 == 1
}

#[test]
fn two_factors_at_one_mode() {
    // deg_{𝒱_{1,j₁}}·deg_{𝒱_{1,j₂}} at H: -x₀ exactly when the parities differ.
    let g = group(8);
    let mut cases = 0;
    for (h, _) in maximal_types(&g) {
        for (j1, j2) in [(0, 1), (1, 2), (1, 4), (2, 3), (3, 4), (0, 4)] {
            let labels = [IrrepLabel::new(1, j1), IrrepLabel::new(1, j2)];
            let want = if odd_dim(&g, &h, labels[0]) != odd_dim(&g, &h, labels[1]) { -x0(&g, &h).unwrap() } else { 0 };
            assert_eq!(product(&g, &labels).coeff(&h), want);
            let sigma = [index(1, j1), index(1, j2)];
            assert_eq!(coeff_maximal_fast_with(&g, &h, 1, 1, &sigma, IndexConvention::Antipodal).unwrap(), want);
            cases += 1;
        }
    }
    assert!(cases >= 5);
}

#[test]
fn many_factors_at_one_folding() {
    // N factors at the same mode: -x₀ when an odd number of them has odd fixed dimension.
    let g = group(8);
    let mut rng = common::rng(8);
    let types = maximal_types(&g);
    for _ in 0..12 {
        let (h, _) = *types.choose(&mut rng).unwrap();
        let s = rng.gen_range(1..=3u32);
        let mut js: Vec<usize> = (0..=4).collect();
        js.shuffle(&mut rng);
        js.truncate(rng.gen_range(2..=4));
        let labels: Vec<IrrepLabel> = js.iter().map(|&j| IrrepLabel::new(s, j)).collect();
        let hs = g.fold(&h, s);
        let odd = labels.iter().filter(|l| odd_dim(&g, &hs, **l)).count();
        let want = if odd % 2 == 1 { -x0(&g, &h).unwrap() } else { 0 };
        assert_eq!(product(&g, &labels).coeff(&hs), want, "{} s={s} {js:?}", g.name(&h));
    }
}

#[test]
fn mixed_foldings_match_the_product() {
    let g = group(8);
    let mut rng = common::rng(9);
    let types = maximal_types(&g);
    let mut cases = 0;
    while cases < 15 {
        let (h, _) = *types.choose(&mut rng).unwrap();
        let mut ss: Vec<u32> = (1..=4).collect();
        ss.shuffle(&mut rng);
        ss.truncate(rng.gen_range(2..=3));
        let factors: Vec<(u32, usize)> = ss.iter().map(|&s| (s, rng.gen_range(0..=4))).collect();
        let labels: Vec<IrrepLabel> = factors.iter().map(|&(s, j)| IrrepLabel::new(s, j)).collect();
        let p = product(&g, &labels);
        for s0 in 1..=4 {
            let closed = product_coeff(&g, &h, 1, s0, &factors, IndexConvention::Antipodal).unwrap();
            assert_eq!(closed, p.coeff(&g.fold(&h, s0)), "{} {factors:?} s0={s0}", g.name(&h));
        }
        cases += 1;
    }
}

#[test]
fn repeated_folding_is_rejected() {
    let g = group(8);
    let (h, _) = maximal_types(&g)[0];
    let r = product_coeff(&g, &h, 1, 1, &[(1, 0), (1, 2)], IndexConvention::Antipodal);
    assert!(matches!(r, Err(DegreeError::InvalidParameter(_))));
}

#[test]
fn odd_folding_count_never_vanishes() {
    let g = group(8);
    let types = maximal_types(&g);
    let mut rng = common::rng(10);
    let mut hits = 0;
    for _ in 0..40 {
        let config = random_config(&mut rng);
        let Ok(sigma) = sigma_sets(&config) else { continue };
        for (h, _) in &types {
            let counts = folding_counts(&g, h, 1, &sigma.zero, config.convention).unwrap();
            for (&s0, &n) in &counts {
                if n % 2 == 1 && s0 <= 4 {
                    let c = coeff_maximal_fast_with(&g, h, 1, s0, &sigma.zero, config.convention).unwrap();
                    let x = x0(&g, h).unwrap();
                    assert_ne!(c, 0);
                    // -x₀ + 2x₀C for an integer C.
                    assert_eq!((c + x) % (2 * x), 0);
                    hits += 1;
                }
            }
        }
    }
    assert!(hits > 20, "{hits}");
}

#[test]
fn empty_spectrum_gives_the_unit() {
    let g = group(8);
    let config = AnalysisConfig::new(8, 1.0, (0..=4).map(|j| Eigenvalue { j, mu: 1.0, multiplicity: 1 }).collect());
    assert_eq!(degree_invariant(&g, &config).unwrap(), unit(&g));
}
