use o2deg::burnside::{multiply, unit, BurnsideElement};
use o2deg::degrees::basic_degree;
use o2deg::fixtures::{compare_sets, d8, strip_pairing};
use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::SymmetryGroup;
use o2deg::representations::{IndexConvention, IrrepLabel};

fn group() -> SymmetryGroup {
    SymmetryGroup::new(GammaGroup::dihedral_z2(8).unwrap())
}

#[test]
fn maximal_sets_match_reference() {
    let g = group();
    for label in &d8().labels {
        let v = g.irrep(IrrepLabel::new(1, label.j), IndexConvention::Reference).unwrap();
        let names: Vec<String> = g.maximal_orbit_types(&v).unwrap().iter().map(|t| g.name(t)).collect();
        let diff = compare_sets(&label.maximal, &names);
        assert!(diff.is_empty(), "j={}: {diff:?}", label.j);
    }
}

#[test]
fn degrees_share_support_and_signs_with_reference() {
    let g = group();
    for label in &d8().labels {
        let d = basic_degree(&g, IrrepLabel::new(1, label.j), IndexConvention::Reference).unwrap();
        let mut got: Vec<(String, i64)> = d.terms().map(|(t, c)| (strip_pairing(&g.name(&t)).to_string(), c.signum())).collect();
        let mut want: Vec<(String, i64)> = label.degree.iter().map(|t| (t.orbit_type.clone(), t.coeff.signum())).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want, "j={}", label.j);
        assert_eq!(multiply(&g, &d, &d).unwrap(), unit(&g), "j={}", label.j);
    }
}

// The ±2 reference coefficients sit on types with |W| = 2, where the
// recurrence only produces ±1; read with exact Weyl orders those
// expansions are not involutive.
#[test]
fn reference_doubled_terms_break_involution() {
    let g = group();
    for label in d8().labels.iter().filter(|l| l.degree.iter().any(|t| t.coeff.abs() == 2)) {
        let mut e = BurnsideElement::zero();
        for t in &label.degree {
            let ty = g.parse(&t.orbit_type).or_else(|_| g.parse(&format!("{}#1", t.orbit_type))).unwrap();
            e.add(ty, t.coeff);
        }
        assert_ne!(multiply(&g, &e, &e).unwrap(), unit(&g), "j={}", label.j);
    }
}

#[test]
fn weyl_orders_of_untwisted_maximal_types() {
    let g = group();
    assert_eq!(g.weyl_order(&g.parse("(D4 ^Z1 x^Z4d D8p)").unwrap()).unwrap(), 2);
    assert_eq!(g.weyl_order(&g.parse("(D8 ^Z1 x^Z1m D8p)#1").unwrap()).unwrap(), 2);
}

#[test]
fn fixture_report_flags_only_doubled_coefficients() {
    let g = group();
    let r = o2deg::fixtures::check_d8(&g).unwrap();
    assert!(r.classes.is_empty(), "{:?}", r.classes);
    for l in &r.labels {
        assert!(l.maximal.is_empty() && l.degree_signs.is_empty(), "j={}", l.j);
        assert_eq!(l.degree.is_empty(), !(1..=3).contains(&l.j), "j={}: {:?}", l.j, l.degree);
    }
    assert!(!r.passed());
}
