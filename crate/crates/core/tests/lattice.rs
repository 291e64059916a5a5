mod common;

use std::collections::BTreeSet;

use num_integer::Integer;
use o2deg::fixtures::strip_pairing;
use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::{boolean_b, folding_relation, OrbitType, SymmetryGroup};
use o2deg::representations::{IndexConvention, IrrepLabel};
use proptest::prelude::*;

fn d8() -> SymmetryGroup {
    SymmetryGroup::new(GammaGroup::dihedral_z2(8).unwrap())
}

/// All `𝔐_{1,j}` members under both index conventions.
fn maximal_types(g: &SymmetryGroup) -> Vec<OrbitType> {
    let mut out = BTreeSet::new();
    for conv in [IndexConvention::Antipodal, IndexConvention::Reference] {
        for j in 0..=4 {
            let v = g.irrep(IrrepLabel::new(1, j), conv).unwrap();
            out.extend(g.maximal_orbit_types(&v).unwrap());
        }
    }
    out.into_iter().collect()
}

/// `ᵍH`, up to the Goursat pairing, among the intersection types of
/// `^{s0}H` and `^{s1}H`, where `g = gcd(s0, s1)`.
fn intersection_oracle(g: &SymmetryGroup, h: &OrbitType, s0: u32, s1: u32) -> bool {
    let want = g.name(&g.fold(h, s0.gcd(&s1)));
    let want = strip_pairing(&want);
    g.intersection_types(&g.fold(h, s0), &g.fold(h, s1)).iter().any(|t| strip_pairing(&g.name(t)) == want)
}

#[test]
fn folding_relation_matches_intersection_oracle() {
    let g = d8();
    let types = maximal_types(&g);
    let (mut cases, mut refuted) = (0, false);
    for h in &types {
        let m = g.m_of(h.rep());
        for s0 in 1..=6 {
            for s1 in 1..=6 {
                let rel = folding_relation(m, s0, s1);
                assert_eq!(rel, intersection_oracle(&g, h, s0, s1), "{} s0={s0} s1={s1}", g.name(h));
                refuted |= m == 4 && (s0, s1) == (2, 1) && !rel;
                cases += 1;
            }
        }
    }
    assert!(cases >= 100, "{cases}");
    assert!(refuted, "no m = 4, (2, 1) counterexample among {} types", types.len());
}

#[test]
fn folding_relation_is_subconjugacy_when_s1_divides_s0() {
    let g = d8();
    for h in &maximal_types(&g) {
        let m = g.m_of(h.rep());
        for s0 in 1..=6u32 {
            for s1 in (1..=s0).filter(|s1| s0 % s1 == 0) {
                let oracle = g.subconjugate(&g.fold(h, s1), &g.fold(h, s0));
                assert_eq!(folding_relation(m, s0, s1), oracle, "{} s0={s0} s1={s1}", g.name(h));
            }
        }
    }
    // Without divisibility the folds are never nested: D2 rotations are not in D5.
    let h = g.parse("(D1 x D8p)").unwrap();
    assert!(folding_relation(1, 5, 2));
    assert!(!g.subconjugate(&g.fold(&h, 2), &g.fold(&h, 5)));
}

#[test]
fn folding_relation_on_random_dihedral_types() {
    let g = d8();
    let pool: Vec<OrbitType> = (1..=8).flat_map(|n| g.dihedral_types(n)).collect();
    let mut runner = common::runner(150, 2);
    runner
        .run(&(any::<prop::sample::Index>(), 1u32..=6, 1u32..=6), |(pick, s0, s1)| {
            let h = pick.get(&pool);
            prop_assert_eq!(folding_relation(g.m_of(h.rep()), s0, s1), intersection_oracle(&g, h, s0, s1));
            Ok(())
        })
        .unwrap();
}

#[test]
fn fold_is_functorial_and_keeps_m() {
    let g = d8();
    for h in (1..=4).flat_map(|n| g.dihedral_types(n)) {
        for s in 1..=4 {
            let f = g.fold(&h, s);
            assert_eq!(g.m_of(f.rep()), g.m_of(h.rep()), "{}", g.name(&h));
            for t in 1..=3 {
                assert_eq!(g.fold(&h, s * t), g.fold(&f, t), "{} s={s} t={t}", g.name(&h));
            }
        }
    }
}

#[test]
fn subconjugacy_is_a_preorder() {
    let g = d8();
    let mut pool: Vec<OrbitType> = (1..=4).flat_map(|n| g.dihedral_types(n)).collect();
    pool.extend(g.full_types());
    pool.push(g.top());
    for a in &pool {
        assert!(g.subconjugate(a, a));
    }
    let mut runner = common::runner(300, 3);
    runner
        .run(&(any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<prop::sample::Index>()), |(x, y, z)| {
            let (a, b, c) = (x.get(&pool), y.get(&pool), z.get(&pool));
            if g.subconjugate(a, b) && g.subconjugate(b, c) {
                prop_assert!(g.subconjugate(a, c));
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn boolean_b_is_monotone() {
    let mut runner = common::runner(300, 4);
    runner
        .run(&(1u32..=12, prop::collection::btree_set(1u32..=12, 1..6), any::<u8>()), |(m, set, mask)| {
            let all: Vec<u32> = set.into_iter().collect();
            let sub: Vec<u32> = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
            if boolean_b(m, &all) {
                prop_assert!(boolean_b(m, &sub));
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn names_round_trip() {
    let g = d8();
    let mut pool: Vec<OrbitType> = (1..=8).flat_map(|n| g.dihedral_types(n)).collect();
    pool.extend(g.full_types());
    pool.push(g.top());
    for t in pool {
        assert_eq!(g.parse(&g.name(&t)).unwrap(), t, "{}", g.name(&t));
    }
}
