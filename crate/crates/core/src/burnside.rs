//! The Burnside ring: sparse elements and multiplication by the
//! recurrence over a working lattice, plus an orbit-counting oracle for
//! finite groups.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

use crate::finite_group::{class_index, ElemId, ElemSet, FiniteGroup, Subgroup, SubgroupConjugacyClass};
use crate::o2_lattice::{boolean_b, LatticeError, OrbitType, SymmetryGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BurnsideError {
    #[error("lattice incomplete: division by |W({0})| is not exact")]
    LatticeIncomplete(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// What the recurrence needs from a lattice of orbit types.
pub trait OrbitLattice {
    type Type: Copy + Eq + Hash + Ord + Debug;

    fn top(&self) -> Self::Type;
    fn weyl(&self, t: &Self::Type) -> Result<u64, BurnsideError>;
    /// Members of the class `k` that contain a fixed representative of `l`.
    fn n_count(&self, l: &Self::Type, k: &Self::Type) -> Result<u64, BurnsideError>;
    fn intersection_types(&self, h: &Self::Type, k: &Self::Type) -> Result<Vec<Self::Type>, BurnsideError>;
    /// Strictly increasing along strict subconjugacy.
    fn rank(&self, t: &Self::Type) -> (u8, u64);
    fn label(&self, t: &Self::Type) -> String;
}

/// Tie-break among orbit types of equal rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Canonical,
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideElement<T: Ord> {
    terms: BTreeMap<T, i64>,
}

impl<T: Ord> Default for BurnsideElement<T> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermExport {
    pub orbit_type: String,
    pub coeff: i64,
}

impl<T: Ord + Copy> BurnsideElement<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(t: T) -> Self {
        let mut e = Self::zero();
        e.add(t, 1);
        e
    }

    pub fn add(&mut self, t: T, c: i64) {
        let slot = self.terms.entry(t).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&t);
        }
    }

    pub fn coeff(&self, t: &T) -> i64 {
        self.terms.get(t).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (T, i64)> + '_ {
        self.terms.iter().map(|(t, c)| (*t, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = T> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_types<U: Ord + Copy>(&self, f: impl Fn(&T) -> U) -> BurnsideElement<U> {
        let mut out = BurnsideElement::zero();
        for (t, c) in self.terms() {
            out.add(f(&t), c);
        }
        out
    }

    /// Terms ordered by decreasing rank.
    pub fn ordered_terms<L: OrbitLattice<Type = T>>(&self, lat: &L) -> Vec<(T, i64)> {
        let mut v: Vec<(T, i64)> = self.terms().collect();
        v.sort_by(|a, b| lat.rank(&b.0).cmp(&lat.rank(&a.0)).then(a.0.cmp(&b.0)));
        v
    }

    /// `1(G) - 2(D4 ^Z1 x^Z4d D8p) + …`.
    pub fn render<L: OrbitLattice<Type = T>>(&self, lat: &L) -> String {
        let terms = self.ordered_terms(lat);
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (t, c)) in terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if i == 0 {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&format!("{}{}", c.abs(), lat.label(t)));
        }
        out
    }

    pub fn export<L: OrbitLattice<Type = T>>(&self, lat: &L) -> Vec<TermExport> {
        self.ordered_terms(lat)
            .into_iter()
            .map(|(t, c)| TermExport { orbit_type: lat.label(&t), coeff: c })
            .collect()
    }
}

pub fn unit<L: OrbitLattice>(lat: &L) -> BurnsideElement<L::Type> {
    BurnsideElement::generator(lat.top())
}

struct Counts<'a, L: OrbitLattice> {
    lat: &'a L,
    weyl: HashMap<L::Type, u64>,
    n: HashMap<(L::Type, L::Type), u64>,
}

impl<'a, L: OrbitLattice> Counts<'a, L> {
    fn new(lat: &'a L) -> Self {
        Self { lat, weyl: HashMap::new(), n: HashMap::new() }
    }

    fn weyl(&mut self, t: &L::Type) -> Result<u64, BurnsideError> {
        if let Some(w) = self.weyl.get(t) {
            return Ok(*w);
        }
        let w = self.lat.weyl(t)?;
        self.weyl.insert(*t, w);
        Ok(w)
    }

    fn n(&mut self, l: &L::Type, k: &L::Type) -> Result<u64, BurnsideError> {
        if l == k {
            return Ok(1);
        }
        if self.lat.rank(l) >= self.lat.rank(k) {
            return Ok(0);
        }
        if let Some(c) = self.n.get(&(*l, *k)) {
            return Ok(*c);
        }
        let c = self.lat.n_count(l, k)?;
        self.n.insert((*l, *k), c);
        Ok(c)
    }

    /// `Σ_H a_H n(L,H) |W(H)|`.
    fn mark(&mut self, l: &L::Type, a: &BurnsideElement<L::Type>) -> Result<i64, BurnsideError> {
        let mut s = 0;
        for (h, c) in a.terms() {
            let n = self.n(l, &h)?;
            if n != 0 {
                s += c * (n * self.weyl(&h)?) as i64;
            }
        }
        Ok(s)
    }
}

fn sorted_lattice<L: OrbitLattice>(lat: &L, set: BTreeSet<L::Type>, tie: TieBreak) -> Vec<L::Type> {
    let mut v: Vec<L::Type> = set.into_iter().collect();
    v.sort_by(|a, b| {
        let by_rank = lat.rank(b).cmp(&lat.rank(a));
        let by_type = match tie {
            TieBreak::Canonical => a.cmp(b),
            TieBreak::Reversed => b.cmp(a),
        };
        by_rank.then(by_type)
    });
    v
}

/// Recover an element from its marks `φ_L` on a lattice sorted largest first:
/// `n_L = (φ_L - Σ_{L̃ > L} n_{L̃} n(L, L̃) |W(L̃)|) / |W(L)|`.
pub fn from_marks<L: OrbitLattice>(
    lat: &L,
    lattice: &[L::Type],
    mut mark: impl FnMut(&L::Type) -> Result<i64, BurnsideError>,
) -> Result<BurnsideElement<L::Type>, BurnsideError> {
    let mut counts = Counts::new(lat);
    from_marks_with(&mut counts, lattice, &mut mark)
}

fn from_marks_with<L: OrbitLattice>(
    counts: &mut Counts<'_, L>,
    lattice: &[L::Type],
    mark: &mut impl FnMut(&L::Type) -> Result<i64, BurnsideError>,
) -> Result<BurnsideElement<L::Type>, BurnsideError> {
    let mut out = BurnsideElement::zero();
    for (i, l) in lattice.iter().enumerate() {
        let mut rem = mark(l)?;
        for k in &lattice[..i] {
            let nk = out.coeff(k);
            if nk != 0 {
                let n = counts.n(l, k)?;
                if n != 0 {
                    rem -= nk * (n * counts.weyl(k)?) as i64;
                }
            }
        }
        let w = counts.weyl(l)? as i64;
        if rem % w != 0 {
            return Err(BurnsideError::LatticeIncomplete(counts.lat.label(l)));
        }
        out.add(*l, rem / w);
    }
    Ok(out)
}

pub fn multiply<L: OrbitLattice>(
    lat: &L,
    a: &BurnsideElement<L::Type>,
    b: &BurnsideElement<L::Type>,
) -> Result<BurnsideElement<L::Type>, BurnsideError> {
    multiply_with(lat, a, b, TieBreak::Canonical)
}

pub fn multiply_with<L: OrbitLattice>(
    lat: &L,
    a: &BurnsideElement<L::Type>,
    b: &BurnsideElement<L::Type>,
    tie: TieBreak,
) -> Result<BurnsideElement<L::Type>, BurnsideError> {
    if a.is_empty() || b.is_empty() {
        return Ok(BurnsideElement::zero());
    }
    let top = lat.top();
    if a.len() == 1 && a.coeff(&top) != 0 {
        return Ok(b.map_types(|t| *t).scaled(a.coeff(&top)));
    }
    if b.len() == 1 && b.coeff(&top) != 0 {
        return Ok(a.scaled(b.coeff(&top)));
    }
    let mut set = BTreeSet::new();
    for h in a.support() {
        for k in b.support() {
            set.extend(lat.intersection_types(&h, &k)?);
        }
    }
    let mut counts = Counts::new(lat);
    let mut marks = Counts::new(lat);
    let mut mark = |l: &L::Type| -> Result<i64, BurnsideError> { Ok(marks.mark(l, a)? * marks.mark(l, b)?) };
    let lattice = sorted_lattice(lat, set.clone(), tie);
    match from_marks_with(&mut counts, &lattice, &mut mark) {
        Err(BurnsideError::LatticeIncomplete(_)) => {
            // Close the working lattice under one more round of intersections.
            let current: Vec<L::Type> = set.iter().copied().collect();
            for (i, h) in current.iter().enumerate() {
                for k in &current[i..] {
                    set.extend(lat.intersection_types(h, k)?);
                }
            }
            let lattice = sorted_lattice(lat, set, tie);
            from_marks_with(&mut counts, &lattice, &mut mark)
        }
        other => other,
    }
}

impl<T: Ord + Copy> BurnsideElement<T> {
    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (t, c) in self.terms() {
            out.add(t, c * k);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add(t, c);
        }
        out
    }
}

/// Subgroup classes of a finite group as a lattice.
pub struct FiniteLattice<'g> {
    group: &'g FiniteGroup,
    classes: Vec<SubgroupConjugacyClass>,
    class_of: HashMap<ElemSet, usize>,
}

impl<'g> FiniteLattice<'g> {
    pub fn new(group: &'g FiniteGroup) -> Self {
        Self::with_classes(group, group.subgroup_conjugacy_classes())
    }

    pub fn with_classes(group: &'g FiniteGroup, classes: Vec<SubgroupConjugacyClass>) -> Self {
        let class_of = class_index(&classes);
        Self { group, classes, class_of }
    }

    pub fn classes(&self) -> &[SubgroupConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, s: &ElemSet) -> usize {
        self.class_of[s]
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }
}

impl OrbitLattice for FiniteLattice<'_> {
    type Type = usize;

    fn top(&self) -> usize {
        self.classes.len() - 1
    }

    fn weyl(&self, t: &usize) -> Result<u64, BurnsideError> {
        Ok(self.group.weyl_order(&self.classes[*t].representative).expect("class representative") as u64)
    }

    fn n_count(&self, l: &usize, k: &usize) -> Result<u64, BurnsideError> {
        Ok(self.group.n_count(&self.classes[*l].representative, &self.classes[*k]) as u64)
    }

    fn intersection_types(&self, h: &usize, k: &usize) -> Result<Vec<usize>, BurnsideError> {
        let rh = self.classes[*h].representative.0;
        let out: BTreeSet<usize> = self.classes[*k]
            .conjugates
            .iter()
            .map(|c| self.class_of[&rh.intersection(&c.0)])
            .collect();
        Ok(out.into_iter().collect())
    }

    fn rank(&self, t: &usize) -> (u8, u64) {
        (0, self.classes[*t].order() as u64)
    }

    fn label(&self, t: &usize) -> String {
        format!("({})", self.classes[*t].name)
    }
}

impl OrbitLattice for SymmetryGroup {
    type Type = OrbitType;

    fn top(&self) -> OrbitType {
        SymmetryGroup::top(self)
    }

    fn weyl(&self, t: &OrbitType) -> Result<u64, BurnsideError> {
        Ok(self.weyl_order(t)?)
    }

    fn n_count(&self, l: &OrbitType, k: &OrbitType) -> Result<u64, BurnsideError> {
        Ok(SymmetryGroup::n_count(self, l, k)?)
    }

    fn intersection_types(&self, h: &OrbitType, k: &OrbitType) -> Result<Vec<OrbitType>, BurnsideError> {
        Ok(SymmetryGroup::intersection_types(self, h, k))
    }

    fn rank(&self, t: &OrbitType) -> (u8, u64) {
        SymmetryGroup::rank(self, t)
    }

    fn label(&self, t: &OrbitType) -> String {
        self.name(t)
    }
}

/// Count orbits of `G` on `G/H × G/K` by the class of their stabilizers.
pub fn brute_force_product(lat: &FiniteLattice<'_>, h: &Subgroup, k: &Subgroup) -> BurnsideElement<usize> {
    let g = lat.group();
    let cosets = |s: &ElemSet| -> (Vec<ElemId>, HashMap<ElemId, usize>) {
        let mut reps = Vec::new();
        let mut index = HashMap::new();
        for a in g.elements() {
            if index.contains_key(&a) {
                continue;
            }
            let i = reps.len();
            reps.push(a);
            for x in g.coset(a, s).iter() {
                index.insert(x, i);
            }
        }
        (reps, index)
    };
    let (hr, hi) = cosets(&h.0);
    let (kr, ki) = cosets(&k.0);
    let width = kr.len();
    let mut seen = vec![false; hr.len() * width];
    let mut out = BurnsideElement::zero();
    for start in 0..seen.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            let (i, j) = (p / width, p % width);
            for &s in g.generators() {
                let q = hi[&g.mul(s, hr[i])] * width + ki[&g.mul(s, kr[j])];
                if !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
        let (x, y) = (hr[start / width], kr[start % width]);
        let stab = g.conj_set(x, &h.0).intersection(&g.conj_set(y, &k.0));
        out.add(lat.class_of(&stab), 1);
    }
    out
}

/// `|W(H)|·[s = gcd(s0,s1)]·[B_{𝔪(H)}({s0,s1})]`.
pub fn generator_product_coeff(g: &SymmetryGroup, h: &OrbitType, s0: u32, s1: u32, s: u32) -> Result<i64, BurnsideError> {
    use num_integer::Integer;
    if s != s0.gcd(&s1) || !boolean_b(g.m_of(h.rep()), &[s0, s1]) {
        return Ok(0);
    }
    Ok(g.weyl_order(h)? as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{adjoin_z2, build_dihedral, trivial_group};

    #[test]
    fn z2_products() {
        let z2 = adjoin_z2(&trivial_group());
        let lat = FiniteLattice::new(&z2);
        let z1 = BurnsideElement::generator(0);
        assert_eq!(multiply(&lat, &z1, &z1).unwrap(), z1.scaled(2));
        assert_eq!(multiply(&lat, &z1, &unit(&lat)).unwrap(), z1);
    }

    #[test]
    fn d3_free_orbits() {
        let d3 = build_dihedral(3).unwrap();
        let lat = FiniteLattice::new(&d3);
        let e = lat.classes()[0].representative;
        let brute = brute_force_product(&lat, &e, &e);
        assert_eq!(brute, BurnsideElement::generator(0).scaled(6));
        let g = BurnsideElement::generator(0);
        assert_eq!(multiply(&lat, &g, &g).unwrap(), brute);
    }
}
