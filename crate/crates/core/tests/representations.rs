use std::collections::BTreeSet;

use o2deg::characters::SpatialIrrep;
use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::{OrbitType, SymmetryGroup};
use o2deg::representations::{maximal_sets_by_irrep, IndexConvention, Irrep, IrrepLabel, ReprError};

fn group(n: usize) -> SymmetryGroup {
    SymmetryGroup::new(GammaGroup::dihedral_z2(n).unwrap())
}

fn maximal(g: &SymmetryGroup, j: usize, c: IndexConvention) -> Vec<OrbitType> {
    g.maximal_orbit_types(&g.irrep(IrrepLabel::new(1, j), c).unwrap()).unwrap()
}

#[test]
fn folding_preserves_fixed_dimensions() {
    let g = group(8);
    let mut cases = 0;
    for (c, j) in [IndexConvention::Antipodal, IndexConvention::Reference].into_iter().flat_map(|c| (0..=4).map(move |j| (c, j))) {
        let v = g.irrep(IrrepLabel::new(1, j), c).unwrap();
        for (h, d) in g.isotropy_lattice(&v).unwrap() {
            for s in 1..=4 {
                let vs = g.irrep(IrrepLabel::new(s, j), c).unwrap();
                assert_eq!(g.fixed_point_dim(&vs, &g.fold(&h, s)).unwrap(), d, "{} s={s}", g.name(&h));
                cases += 1;
            }
        }
    }
    assert!(cases > 100, "{cases}");
}

#[test]
fn maximal_types_have_odd_fixed_dimension() {
    let g = group(8);
    for c in [IndexConvention::Antipodal, IndexConvention::Reference] {
        for j in 0..=4 {
            let v = g.irrep(IrrepLabel::new(1, j), c).unwrap();
            let hs = maximal(&g, j, c);
            assert!(!hs.is_empty());
            for h in hs {
                assert_eq!(g.fixed_point_dim(&v, &h).unwrap() % 2, 1, "{c:?} j={j} {}", g.name(&h));
            }
        }
    }
}

#[test]
fn reference_maximal_sets_are_disjoint() {
    let g = group(8);
    let sets: Vec<BTreeSet<OrbitType>> =
        (0..=4).map(|j| maximal(&g, j, IndexConvention::Reference).into_iter().collect()).collect();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            assert!(sets[a].is_disjoint(&sets[b]), "j={a}, j={b}");
        }
    }
}

#[test]
fn antipodal_overlap_is_confined_to_odd_indices() {
    // 𝒱₁⁻ and 𝒱₃⁻ differ by an outer twist that fixes the two D2 types.
    let g = group(8);
    let sets: Vec<BTreeSet<OrbitType>> =
        (0..=4).map(|j| maximal(&g, j, IndexConvention::Antipodal).into_iter().collect()).collect();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            let shared: Vec<String> = sets[a].intersection(&sets[b]).map(|t| g.name(t)).collect();
            if (a, b) == (1, 3) {
                assert_eq!(shared, ["(D2 ^D1 x^D2d D2p)", "(D2 ^D1 x^tD2d tD2p)"]);
            } else {
                assert!(shared.is_empty(), "j={a}, j={b}: {shared:?}");
            }
        }
    }
}

#[test]
fn lattice_search_agrees_with_direct_scan() {
    for n in [3, 4, 6, 8] {
        let g = group(n);
        for u in SpatialIrrep::all(n) {
            for m in 1..=3 {
                let v = Irrep { m, spatial: u };
                let mut a = g.isotropy_lattice(&v).unwrap();
                let mut b = g.isotropy_lattice_direct(&v).unwrap();
                a.sort();
                b.sort();
                assert_eq!(a, b, "D{n} {v}");
            }
        }
    }
}

#[test]
fn maximal_kind_lookup_recovers_the_label() {
    let g = group(8);
    for j in 0..=4 {
        for h in maximal(&g, j, IndexConvention::Reference) {
            for s in 1..=3 {
                let label = g.is_maximal_kind(&g.fold(&h, s), IndexConvention::Reference).unwrap();
                assert_eq!(label, Some(IrrepLabel::new(s, j)));
            }
        }
    }
    assert_eq!(g.is_maximal_kind(&g.top(), IndexConvention::Reference).unwrap(), None);
}

#[test]
fn stationary_modes_have_no_maximal_types() {
    let g = group(8);
    let v = g.irrep(IrrepLabel::new(0, 1), IndexConvention::Antipodal).unwrap();
    assert!(matches!(g.maximal_orbit_types(&v), Err(ReprError::StationaryMode)));
}

#[test]
fn every_spatial_irrep_has_maximal_types() {
    for n in [3, 4, 8] {
        let g = group(n);
        let sets = maximal_sets_by_irrep(&g).unwrap();
        assert_eq!(sets.len(), SpatialIrrep::all(n).len());
        assert!(sets.values().all(|s| !s.is_empty()));
    }
}
