//! Multiplication-table groups, their subgroups and subgroup classes.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub type ElemId = u16;

/// Largest supported group order.
pub const MAX_ORDER: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("group order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("element set is not a subgroup")]
    NotASubgroup,
}

/// Bitset over element ids.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet([u64; MAX_ORDER / 64]);

impl ElemSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(a: ElemId) -> Self {
        let mut s = Self::empty();
        s.insert(a);
        s
    }

    pub fn insert(&mut self, a: ElemId) -> bool {
        let (w, b) = (a as usize / 64, a as usize % 64);
        let fresh = self.0[w] & (1 << b) == 0;
        self.0[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, a: ElemId) -> bool {
        self.0[a as usize / 64] & (1 << (a as usize % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| (w * 64 + b) as ElemId)
        })
    }

    pub fn first(&self) -> Option<ElemId> {
        self.iter().next()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= b;
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn to_vec(&self) -> Vec<ElemId> {
        self.iter().collect()
    }
}

impl FromIterator<ElemId> for ElemSet {
    fn from_iter<I: IntoIterator<Item = ElemId>>(iter: I) -> Self {
        let mut s = Self::empty();
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<ElemId>,
    inv: Vec<ElemId>,
    identity: ElemId,
    names: Vec<String>,
    generators: Vec<ElemId>,
}

/// A subgroup, identified by its member set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgroup(pub ElemSet);

impl Subgroup {
    pub fn members(&self) -> ElemSet {
        self.0
    }
    pub fn order(&self) -> usize {
        self.0.len()
    }
    pub fn contains(&self, a: ElemId) -> bool {
        self.0.contains(a)
    }
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.is_subset(&other.0)
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupConjugacyClass {
    pub representative: Subgroup,
    /// Every conjugate of the representative.
    pub conjugates: Vec<Subgroup>,
    pub name: String,
}

impl SubgroupConjugacyClass {
    pub fn class_size(&self) -> usize {
        self.conjugates.len()
    }
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

impl FiniteGroup {
    /// Build from a full Cayley table, checking the group axioms.
    pub fn from_table(
        table: Vec<Vec<ElemId>>,
        names: Vec<String>,
        generators: Vec<ElemId>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::InvalidParameter("empty table".into()));
        }
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        if names.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(GroupError::NotAGroup("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x as usize >= order) {
            return Err(GroupError::NotAGroup("entry out of range".into()));
        }
        let mul: Vec<ElemId> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        let ids: Vec<usize> = (0..order).filter(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a)).collect();
        if ids.len() != 1 {
            return Err(GroupError::NotAGroup("no unique identity".into()));
        }
        let identity = ids[0];
        let mut inv = vec![0 as ElemId; order];
        for (a, slot) in inv.iter_mut().enumerate() {
            let b = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {a} has no inverse")))?;
            *slot = b as ElemId;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        if generators.iter().any(|&g| g as usize >= order) {
            return Err(GroupError::InvalidParameter("generator out of range".into()));
        }
        Ok(Self { order, mul, inv, identity: identity as ElemId, names, generators })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.order as ElemId
    }

    pub fn identity(&self) -> ElemId {
        self.identity
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inv[a as usize]
    }

    pub fn name(&self, a: ElemId) -> &str {
        &self.names[a as usize]
    }

    pub fn find(&self, name: &str) -> Option<ElemId> {
        self.names.iter().position(|n| n == name).map(|i| i as ElemId)
    }

    pub fn pow(&self, a: ElemId, k: i64) -> ElemId {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: ElemId) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: ElemId, x: ElemId) -> ElemId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn conj_set(&self, g: ElemId, s: &ElemSet) -> ElemSet {
        s.iter().map(|x| self.conj(g, x)).collect()
    }

    /// Left coset `a·s`.
    pub fn coset(&self, a: ElemId, s: &ElemSet) -> ElemSet {
        s.iter().map(|x| self.mul(a, x)).collect()
    }

    /// The subgroup generated by `s`.
    pub fn closure(&self, s: &ElemSet) -> ElemSet {
        let gens: Vec<ElemId> = s.iter().collect();
        let mut set = ElemSet::singleton(self.identity);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, s: &ElemSet) -> bool {
        s.contains(self.identity) && s.iter().all(|a| s.iter().all(|b| s.contains(self.mul(a, b))))
    }

    pub fn subgroup(&self, members: ElemSet) -> Result<Subgroup, GroupError> {
        if self.is_subgroup(&members) {
            Ok(Subgroup(members))
        } else {
            Err(GroupError::NotASubgroup)
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup(self.elements().collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup(ElemSet::singleton(self.identity))
    }

    pub fn normalizer(&self, h: &ElemSet) -> ElemSet {
        self.elements().filter(|&g| self.conj_set(g, h) == *h).collect()
    }

    /// Every subgroup, by repeated closure starting from the trivial one.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let trivial = ElemSet::singleton(self.identity);
        let mut seen = HashSet::from([trivial]);
        let mut queue = VecDeque::from([trivial]);
        let mut out = Vec::new();
        while let Some(h) = queue.pop_front() {
            out.push(Subgroup(h));
            let mut covered = h;
            for g in self.elements() {
                if covered.contains(g) {
                    continue;
                }
                let mut gen = h;
                gen.insert(g);
                let k = self.closure(&gen);
                covered = covered.union(&k.intersection(&self.coset(g, &h)));
                if seen.insert(k) {
                    queue.push_back(k);
                }
            }
        }
        out
    }

    /// Subgroup classes sorted by order, then by the least sorted member list
    /// among the conjugates (which is also the representative).
    pub fn subgroup_conjugacy_classes(&self) -> Vec<SubgroupConjugacyClass> {
        let subgroups = self.all_subgroups();
        let mut assigned: HashSet<ElemSet> = HashSet::new();
        let mut classes = Vec::new();
        for h in subgroups {
            if assigned.contains(&h.0) {
                continue;
            }
            let mut conjugates: Vec<Subgroup> = Vec::new();
            for g in self.elements() {
                let c = self.conj_set(g, &h.0);
                if assigned.insert(c) {
                    conjugates.push(Subgroup(c));
                }
            }
            conjugates.sort_by_key(|s| s.0.to_vec());
            classes.push(SubgroupConjugacyClass {
                representative: conjugates[0],
                conjugates,
                name: String::new(),
            });
        }
        classes.sort_by_key(|c| (c.order(), c.representative.0.to_vec()));
        for (i, c) in classes.iter_mut().enumerate() {
            c.name = format!("H{i}");
        }
        classes
    }

    pub fn weyl_order(&self, h: &Subgroup) -> Result<usize, GroupError> {
        if !self.is_subgroup(&h.0) {
            return Err(GroupError::InvalidParameter("not a subgroup".into()));
        }
        Ok(self.normalizer(&h.0).len() / h.order())
    }

    /// Number of members of `class` containing `h`.
    pub fn n_count(&self, h: &Subgroup, class: &SubgroupConjugacyClass) -> usize {
        class.conjugates.iter().filter(|k| h.is_subgroup_of(k)).count()
    }
}

/// Dihedral group `D_N`: ids `k` for `γ^k` and `N + k` for `κγ^k`.
pub fn build_dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("N must be positive".into()));
    }
    if 2 * n > MAX_ORDER {
        return Err(GroupError::TooLarge(2 * n));
    }
    let decode = |x: usize| (x / n, x % n);
    let table = (0..2 * n)
        .map(|x| {
            let (a, i) = decode(x);
            (0..2 * n)
                .map(|y| {
                    let (b, j) = decode(y);
                    // κ^a γ^i κ^b γ^j = κ^{a+b} γ^{(-1)^b i + j}
                    let sign_i = if b == 1 { n - i } else { i };
                    (((a + b) % 2) * n + (sign_i + j) % n) as ElemId
                })
                .collect()
        })
        .collect();
    let names = (0..2 * n)
        .map(|x| {
            let (a, i) = decode(x);
            let rot = match i {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            };
            match (a, rot.is_empty()) {
                (0, true) => "e".to_string(),
                (0, false) => rot,
                (_, _) => format!("k{rot}"),
            }
        })
        .collect();
    let gens = if n == 1 { vec![1] } else { vec![1, n as ElemId] };
    FiniteGroup::from_table(table, names, gens)
}

/// `g × Z₂`: id `x + s·|g|` for `(x, (-1)^s)`.
pub fn adjoin_z2(g: &FiniteGroup) -> FiniteGroup {
    let n = g.order();
    let table = (0..2 * n)
        .map(|x| {
            (0..2 * n)
                .map(|y| {
                    let s = (x / n + y / n) % 2;
                    g.mul((x % n) as ElemId, (y % n) as ElemId) + (s * n) as ElemId
                })
                .collect()
        })
        .collect();
    let names = (0..2 * n)
        .map(|x| format!("({},{})", g.name((x % n) as ElemId), if x < n { "1" } else { "-1" }))
        .collect();
    let mut gens: Vec<ElemId> = g.generators().to_vec();
    gens.push(g.identity() + n as ElemId);
    FiniteGroup::from_table(table, names, gens).expect("product of groups is a group")
}

/// The trivial group.
pub fn trivial_group() -> FiniteGroup {
    FiniteGroup::from_table(vec![vec![0]], vec!["e".into()], vec![]).expect("trivial group")
}

/// Map from every subgroup to the index of its class.
pub fn class_index(classes: &[SubgroupConjugacyClass]) -> HashMap<ElemSet, usize> {
    classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.conjugates.iter().map(move |s| (s.0, i)))
        .collect()
}
