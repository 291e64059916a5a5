//! The spatial symmetry group `Γ = D_N`, optionally times `Z₂`, with
//! element decoding and systematic subgroup-class names.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::finite_group::{
    adjoin_z2, build_dihedral, class_index, ElemId, ElemSet, FiniteGroup, GroupError, Subgroup,
    SubgroupConjugacyClass,
};

/// An element `κ^refl γ^rot` with a `Z₂` sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpatialElem {
    pub refl: bool,
    pub rot: usize,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct GammaGroup {
    n: usize,
    with_z2: bool,
    group: FiniteGroup,
    classes: Vec<SubgroupConjugacyClass>,
    class_of: HashMap<ElemSet, usize>,
}

#[derive(Serialize)]
struct ClassExport<'a> {
    name: &'a str,
    order: usize,
    class_size: usize,
    representative: Vec<&'a str>,
}

impl GammaGroup {
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        Ok(Self::wrap(n, false, build_dihedral(n)?))
    }

    pub fn dihedral_z2(n: usize) -> Result<Self, GroupError> {
        Ok(Self::wrap(n, true, adjoin_z2(&build_dihedral(n)?)))
    }

    /// Accepts `"D<N>"` and `"D<N>xZ2"`.
    pub fn parse(spec: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::InvalidParameter(format!("unknown group '{spec}'"));
        let body = spec.strip_prefix('D').ok_or_else(bad)?;
        let (digits, z2) = match body.strip_suffix("xZ2") {
            Some(d) => (d, true),
            None => (body, false),
        };
        let n: usize = digits.parse().map_err(|_| bad())?;
        if z2 {
            Self::dihedral_z2(n)
        } else {
            Self::dihedral(n)
        }
    }

    fn wrap(n: usize, with_z2: bool, group: FiniteGroup) -> Self {
        let mut g = Self { n, with_z2, group, classes: Vec::new(), class_of: HashMap::new() };
        let mut classes = g.group.subgroup_conjugacy_classes();
        let mut used: HashMap<String, usize> = HashMap::new();
        for c in classes.iter_mut() {
            let base = g.systematic_name(&c.representative.0);
            let k = used.entry(base.clone()).or_insert(0);
            *k += 1;
            c.name = if *k == 1 { base } else { format!("{base}#{k}") };
        }
        g.class_of = class_index(&classes);
        g.classes = classes;
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_z2(&self) -> bool {
        self.with_z2
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn label(&self) -> String {
        if self.with_z2 {
            format!("D{}xZ2", self.n)
        } else {
            format!("D{}", self.n)
        }
    }

    pub fn decode(&self, a: ElemId) -> SpatialElem {
        let a = a as usize;
        let d = a % (2 * self.n);
        SpatialElem { refl: d >= self.n, rot: d % self.n, sign: if a >= 2 * self.n { -1 } else { 1 } }
    }

    pub fn encode(&self, e: SpatialElem) -> ElemId {
        let mut id = e.rot % self.n + if e.refl { self.n } else { 0 };
        if e.sign < 0 {
            assert!(self.with_z2, "sign -1 needs the Z2 factor");
            id += 2 * self.n;
        }
        id as ElemId
    }

    pub fn gamma(&self) -> ElemId {
        self.encode(SpatialElem { refl: false, rot: 1 % self.n, sign: 1 })
    }

    pub fn kappa(&self) -> ElemId {
        self.encode(SpatialElem { refl: true, rot: 0, sign: 1 })
    }

    /// The antipodal element `(e, -1)`.
    pub fn minus_one(&self) -> Option<ElemId> {
        self.with_z2.then(|| self.encode(SpatialElem { refl: false, rot: 0, sign: -1 }))
    }

    pub fn classes(&self) -> &[SubgroupConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, s: &ElemSet) -> Option<usize> {
        self.class_of.get(s).copied()
    }

    /// Class lookup accepting both `D4pt` and the prefix form `tD4p`.
    pub fn class_by_name(&self, name: &str) -> Option<usize> {
        let name = to_suffix_tilde(name);
        self.classes.iter().position(|c| c.name == name)
    }

    pub fn class_name(&self, idx: usize) -> &str {
        &self.classes[idx].name
    }

    pub fn subgroup_name(&self, s: &ElemSet) -> String {
        self.class_of(s).map(|i| self.classes[i].name.clone()).unwrap_or_else(|| "?".into())
    }

    pub fn whole(&self) -> Subgroup {
        self.group.whole()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<ClassExport> = self
            .classes
            .iter()
            .map(|c| ClassExport {
                name: &c.name,
                order: c.order(),
                class_size: c.class_size(),
                representative: c.representative.0.iter().map(|a| self.group.name(a)).collect(),
            })
            .collect();
        serde_json::to_value(rows).expect("serializable")
    }

    /// Names built from the projection `π` to `D_N`, the sign pattern and
    /// the parity of the reflections:
    /// base `Z{k}`/`D{k}` (k rotations), then `p` if `(e,-1)` is inside,
    /// `d`/`z` for twisted subgroups (`z` when the kernel is exactly the
    /// rotation part), `Z1m` for the order-two twist of `γ^{N/2}`, and a
    /// trailing `t` when the relevant reflections all lie in `κγ^{odd}`.
    fn systematic_name(&self, h: &ElemSet) -> String {
        let elems: Vec<SpatialElem> = h.iter().map(|a| self.decode(a)).collect();
        let rots: BTreeSet<usize> = elems.iter().filter(|e| !e.refl).map(|e| e.rot).collect();
        let refls: BTreeSet<usize> = elems.iter().filter(|e| e.refl).map(|e| e.rot).collect();
        let plus_refls: BTreeSet<usize> =
            elems.iter().filter(|e| e.refl && e.sign > 0).map(|e| e.rot).collect();
        let k = rots.len();
        let dihedral = !refls.is_empty();
        let base = format!("{}{k}", if dihedral { "D" } else { "Z" });
        let has_minus_one = elems.iter().any(|e| !e.refl && e.rot == 0 && e.sign < 0);
        let twisted = elems.iter().any(|e| e.sign < 0);
        let suffix = if !twisted {
            ""
        } else if has_minus_one {
            "p"
        } else if !dihedral {
            if k == 2 {
                return "Z1m".into();
            }
            "d"
        } else {
            let kernel_refl = elems.iter().any(|e| e.refl && e.sign > 0);
            if kernel_refl {
                "d"
            } else {
                "z"
            }
        };
        let witness = if plus_refls.is_empty() { &refls } else { &plus_refls };
        let tilde = dihedral && self.n % 2 == 0 && witness.iter().all(|r| r % 2 == 1);
        format!("{base}{suffix}{}", if tilde { "t" } else { "" })
    }
}

/// `tD4p` → `D4pt`; names already in suffix form pass through.
pub fn to_suffix_tilde(name: &str) -> String {
    match name.strip_prefix('t') {
        Some(rest) => format!("{rest}t"),
        None => name.to_string(),
    }
}

/// `D4pt` → `tD4p`, the form used inside orbit-type literals.
pub fn to_prefix_tilde(name: &str) -> String {
    match name.strip_suffix('t') {
        Some(rest) if !rest.is_empty() => format!("t{rest}"),
        _ => name.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D8Z2_NAMES: [&str; 38] = [
        "Z1", "Z2", "D1t", "D1z", "D1", "Z1m", "Z1p", "D1zt", "D1pt", "D1p", "D2", "Z4", "D2t",
        "D2zt", "D2d", "Z4d", "D2dt", "D2z", "Z2p", "Z4p", "D4dt", "D2p", "D4", "D2pt", "D4z",
        "D4zt", "Z8", "Z8d", "D4t", "D4d", "D4p", "Z8p", "D8", "D4pt", "D8d", "D8z", "D8dt", "D8p",
    ];

    #[test]
    fn d8z2_names_match_reference_list() {
        let g = GammaGroup::dihedral_z2(8).unwrap();
        let mut ours: Vec<&str> = g.classes().iter().map(|c| c.name.as_str()).collect();
        let mut want = D8Z2_NAMES.to_vec();
        ours.sort();
        want.sort();
        assert_eq!(ours, want);
    }

    #[test]
    fn named_members() {
        let g = GammaGroup::dihedral_z2(8).unwrap();
        let e = |refl, rot, sign| g.encode(SpatialElem { refl, rot, sign });
        let z4d: ElemSet = [e(false, 0, 1), e(false, 2, -1), e(false, 4, 1), e(false, 6, -1)].into_iter().collect();
        assert_eq!(g.subgroup_name(&z4d), "Z4d");
        let td2d: ElemSet = [e(false, 0, 1), e(false, 4, -1), e(true, 1, 1), e(true, 5, -1)].into_iter().collect();
        assert_eq!(g.subgroup_name(&td2d), "D2dt");
        assert_eq!(g.class_by_name("tD2d"), g.class_of(&td2d));
    }

    #[test]
    fn tilde_forms() {
        assert_eq!(to_prefix_tilde("D4pt"), "tD4p");
        assert_eq!(to_suffix_tilde("tD4p"), "D4pt");
        assert_eq!(to_prefix_tilde("Z1"), "Z1");
    }
}
