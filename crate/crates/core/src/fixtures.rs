//! D₈ reference data: maximal sets, basic degrees and class names for
//! `O(2) × D₈ × Z₂` at `m = 1`, with their naming normalizations.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::characters::SpatialIrrep;
use crate::degrees::{basic_degree, DegreeError};
use crate::o2_lattice::SymmetryGroup;
use crate::representations::{IndexConvention, IrrepLabel};

const D8_DATA: &str = include_str!("../data/d8_fixtures.json");

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ReferenceTerm {
    pub orbit_type: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ReferenceLabel {
    pub j: usize,
    pub irrep: String,
    pub maximal: Vec<String>,
    pub degree: Vec<ReferenceTerm>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ReferenceData {
    pub group: String,
    pub normalizations: Vec<String>,
    pub class_names: Vec<String>,
    pub labels: Vec<ReferenceLabel>,
}

pub fn d8() -> &'static ReferenceData {
    static DATA: OnceLock<ReferenceData> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(D8_DATA).expect("embedded D8 data is valid JSON"))
}

/// The irreducible that carries reference index `j`.
pub fn reference_irrep(n: usize, j: usize) -> Option<SpatialIrrep> {
    if n != 8 {
        return None;
    }
    let label = d8().labels.iter().find(|l| l.j == j)?;
    label.irrep.parse().ok()
}

/// Drop the `#k` pairing suffix.
pub fn strip_pairing(name: &str) -> &str {
    match name.rsplit_once('#') {
        Some((q, k)) if k.chars().all(|c| c.is_ascii_digit()) => q,
        _ => name,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
}

impl Mismatch {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

fn counted<'a>(items: impl IntoIterator<Item = (&'a str, i64)>) -> BTreeMap<String, i64> {
    let mut out = BTreeMap::new();
    for (name, c) in items {
        *out.entry(strip_pairing(name).to_string()).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Compare name sets, ignoring pairing suffixes.
pub fn compare_sets(expected: &[String], computed: &[String]) -> Mismatch {
    compare_terms(
        &expected.iter().map(|n| (n.clone(), 1)).collect::<Vec<_>>(),
        &computed.iter().map(|n| (n.clone(), 1)).collect::<Vec<_>>(),
    )
}

/// Compare `(name, coeff)` lists, ignoring pairing suffixes. Entries are
/// rendered as `c·name`.
pub fn compare_terms(expected: &[(String, i64)], computed: &[(String, i64)]) -> Mismatch {
    let want = counted(expected.iter().map(|(n, c)| (n.as_str(), *c)));
    let got = counted(computed.iter().map(|(n, c)| (n.as_str(), *c)));
    let render = |(n, c): (&String, &i64)| format!("{c}{n}");
    Mismatch {
        missing: want.iter().filter(|(n, c)| got.get(*n) != Some(c)).map(render).collect(),
        unexpected: got.iter().filter(|(n, c)| want.get(*n) != Some(c)).map(render).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelCheck {
    pub j: usize,
    pub maximal: Mismatch,
    /// Exact coefficients.
    pub degree: Mismatch,
    /// Coefficients reduced to their signs.
    pub degree_signs: Mismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub classes: Mismatch,
    pub labels: Vec<LabelCheck>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.classes.is_empty()
            && self.labels.iter().all(|l| l.maximal.is_empty() && l.degree.is_empty())
    }
}

/// Recompute the D₈ reference data under the reference index convention.
pub fn check_d8(g: &SymmetryGroup) -> Result<FixtureReport, DegreeError> {
    let data = d8();
    let names: Vec<String> = (0..g.gamma().classes().len()).map(|i| g.gamma().class_name(i).to_string()).collect();
    let classes = compare_sets(&data.class_names, &names);
    let mut labels = Vec::new();
    for label in &data.labels {
        let irrep = IrrepLabel::new(1, label.j);
        let v = g.irrep(irrep, IndexConvention::Reference)?;
        let maximal: Vec<String> = g.maximal_orbit_types(&v)?.iter().map(|t| g.name(t)).collect();
        let d = basic_degree(g, irrep, IndexConvention::Reference)?;
        let got: Vec<(String, i64)> = d.terms().map(|(t, c)| (g.name(&t), c)).collect();
        let want: Vec<(String, i64)> = label.degree.iter().map(|t| (t.orbit_type.clone(), t.coeff)).collect();
        let sign = |v: &[(String, i64)]| v.iter().map(|(n, c)| (n.clone(), c.signum())).collect::<Vec<_>>();
        labels.push(LabelCheck {
            j: label.j,
            maximal: compare_sets(&label.maximal, &maximal),
            degree: compare_terms(&want, &got),
            degree_signs: compare_terms(&sign(&want), &sign(&got)),
        });
    }
    Ok(FixtureReport { classes, labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_loads() {
        let d = d8();
        assert_eq!(d.class_names.len(), 38);
        assert_eq!(d.labels.len(), 5);
        for j in 0..5 {
            assert!(reference_irrep(8, j).is_some());
        }
        assert!(reference_irrep(6, 0).is_none());
    }

    #[test]
    fn suffixes_are_ignored() {
        let a = vec!["(D8 ^Z1 x^Z1m D8p)".to_string()];
        let b = vec!["(D8 ^Z1 x^Z1m D8p)#2".to_string()];
        assert!(compare_sets(&a, &b).is_empty());
        assert_eq!(strip_pairing("(G)"), "(G)");
    }
}
