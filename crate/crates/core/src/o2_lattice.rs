//! Closed subgroups of `G = O(2) × Q` (with `Q = Γ × Z₂` or `Γ`) written as
//! amalgams, their conjugacy classes, Weyl groups and folding.
//!
//! A finite amalgam with `K_O = D_n` is stored by its kernel `Z_Γ` and the
//! images of two generators: `ρ_{1/n} ↦ rot·Z_Γ` and `κρ_a ↦ refl·Z_Γ`, so
//!
//! ```text
//! H = {(ρ_{k/n}, rot^k z), (κρ_{a+k/n}, refl·rot^k z) : z ∈ Z_Γ}.
//! ```

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use crate::cyclotomic::{wrap, Turn};
use crate::finite_group::{ElemId, ElemSet, FiniteGroup, GroupError};
use crate::gamma::GammaGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("invalid amalgam: {0}")]
    InvalidAmalgam(String),
    #[error("infinite subgroup cannot be enumerated")]
    Unenumerable,
    #[error("orbit type {0} has an infinite Weyl group")]
    InfiniteWeyl(String),
    #[error("cannot parse orbit type '{0}': {1}")]
    Parse(String, String),
    #[error("orbit type literal '{0}' matches {1} classes; add a '#k' suffix")]
    Ambiguous(String, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `κ^refl ρ_angle`, with `ρ_θ` the rotation by `2πθ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct O2Elem {
    pub refl: bool,
    pub angle: Turn,
}

impl O2Elem {
    pub fn identity() -> Self {
        Self::rotation(Ratio::from_integer(0))
    }

    pub fn rotation(q: Turn) -> Self {
        Self { refl: false, angle: wrap(q) }
    }

    /// `κρ_q`.
    pub fn reflection(q: Turn) -> Self {
        Self { refl: true, angle: wrap(q) }
    }

    pub fn mul(self, other: Self) -> Self {
        let s = if other.refl { -self.angle } else { self.angle };
        Self { refl: self.refl ^ other.refl, angle: wrap(s + other.angle) }
    }

    pub fn inv(self) -> Self {
        if self.refl {
            self
        } else {
            Self::rotation(-self.angle)
        }
    }
}

impl fmt::Display for O2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}r{}", if self.refl { "k" } else { "" }, self.angle)
    }
}

/// An element of `O(2) × Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElem {
    pub o2: O2Elem,
    pub spatial: ElemId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum O2Subgroup {
    Cyclic { n: u32 },
    /// `D_n` with reflections `κρ_{offset + k/n}`.
    Dihedral { n: u32, offset: Turn },
    So2,
    Full,
}

impl O2Subgroup {
    pub fn contains(&self, x: O2Elem) -> bool {
        let on_grid = |q: Turn, n: u32| (q * Ratio::from_integer(n as i64)).is_integer();
        match *self {
            Self::Full => true,
            Self::So2 => !x.refl,
            Self::Cyclic { n } => !x.refl && on_grid(x.angle, n),
            Self::Dihedral { n, offset } => on_grid(if x.refl { x.angle - offset } else { x.angle }, n),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Cyclic { .. } | Self::Dihedral { .. })
    }

    pub fn rotation_order(&self) -> Option<u32> {
        match *self {
            Self::Cyclic { n } | Self::Dihedral { n, .. } => Some(n),
            _ => None,
        }
    }

    pub fn has_reflections(&self) -> bool {
        matches!(self, Self::Full | Self::Dihedral { .. })
    }

    pub fn label(&self) -> String {
        match *self {
            Self::Cyclic { n } => format!("Z{n}"),
            Self::Dihedral { n, .. } => format!("D{n}"),
            Self::So2 => "SO2".into(),
            Self::Full => "O2".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmalgamSubgroup {
    pub ko: O2Subgroup,
    /// Kernel `Z_Γ` of the spatial projection onto the quotient.
    pub z: ElemSet,
    /// Coset representative paired with the rotation generator `ρ_{1/n}`.
    pub rot: ElemId,
    /// Coset representative paired with `κρ_offset`.
    pub refl: ElemId,
}

/// Conjugacy class of an amalgam, held by its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitType(AmalgamSubgroup);

impl OrbitType {
    pub fn rep(&self) -> &AmalgamSubgroup {
        &self.0
    }

    pub fn is_top_kind(&self) -> bool {
        matches!(self.0.ko, O2Subgroup::Full)
    }
}

type Memo<K, V> = Mutex<HashMap<K, V>>;

/// The ambient group `O(2) × Q` with lattice caches.
pub struct SymmetryGroup {
    gamma: GammaGroup,
    canon: Memo<AmalgamSubgroup, OrbitType>,
    orbits: Memo<OrbitType, Arc<Vec<AmalgamSubgroup>>>,
    variants: Memo<String, Arc<Vec<OrbitType>>>,
}

impl fmt::Debug for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O(2) x {}", self.gamma.label())
    }
}

impl SymmetryGroup {
    pub fn new(gamma: GammaGroup) -> Self {
        Self {
            gamma,
            canon: Default::default(),
            orbits: Default::default(),
            variants: Default::default(),
        }
    }

    pub fn gamma(&self) -> &GammaGroup {
        &self.gamma
    }

    pub fn spatial(&self) -> &FiniteGroup {
        self.gamma.group()
    }

    fn q(&self) -> &FiniteGroup {
        self.gamma.group()
    }

    fn coset_rep(&self, a: ElemId, z: &ElemSet) -> ElemId {
        let q = self.q();
        z.iter().map(|w| q.mul(a, w)).min().expect("kernel is nonempty")
    }

    /// Validate and normalize an amalgam.
    pub fn amalgam(
        &self,
        ko: O2Subgroup,
        z: ElemSet,
        rot: ElemId,
        refl: ElemId,
    ) -> Result<AmalgamSubgroup, LatticeError> {
        let q = self.q();
        let bad = |m: &str| Err(LatticeError::InvalidAmalgam(m.into()));
        if !q.is_subgroup(&z) {
            return bad("kernel is not a subgroup");
        }
        let normalizes = |a: ElemId| q.conj_set(a, &z) == z;
        let rot = if matches!(ko, O2Subgroup::So2 | O2Subgroup::Full) { q.identity() } else { rot };
        let refl = if ko.has_reflections() { refl } else { q.identity() };
        if !normalizes(rot) || !normalizes(refl) {
            return bad("generator images must normalize the kernel");
        }
        if let Some(n) = ko.rotation_order() {
            if n == 0 {
                return bad("rotation order must be positive");
            }
            if !z.contains(q.pow(rot, n as i64)) {
                return bad("rotation image order must divide n");
            }
        }
        if ko.has_reflections() && (!z.contains(q.mul(refl, refl)) || !z.contains(q.pow(q.mul(refl, rot), 2))) {
            return bad("reflection image must be an involution modulo the kernel");
        }
        Ok(self.normalize(AmalgamSubgroup { ko, z, rot, refl }))
    }

    fn normalize(&self, mut h: AmalgamSubgroup) -> AmalgamSubgroup {
        let q = self.q();
        if let O2Subgroup::Dihedral { n, offset } = h.ko {
            let step = Ratio::new(1, n as i64);
            let t = (offset / step).floor().to_integer();
            let a0 = offset - step * Ratio::from_integer(t);
            h.refl = q.mul(h.refl, q.pow(h.rot, -t));
            h.ko = O2Subgroup::Dihedral { n, offset: a0 };
        }
        h.rot = self.coset_rep(h.rot, &h.z);
        h.refl = self.coset_rep(h.refl, &h.z);
        h
    }

    /// The spatial coset paired with `x`, if `x ∈ K_O`.
    pub fn image(&self, h: &AmalgamSubgroup, x: O2Elem) -> Option<ElemSet> {
        if !h.ko.contains(x) {
            return None;
        }
        let q = self.q();
        let y = match h.ko {
            O2Subgroup::So2 => q.identity(),
            O2Subgroup::Full => {
                if x.refl {
                    h.refl
                } else {
                    q.identity()
                }
            }
            O2Subgroup::Cyclic { n } | O2Subgroup::Dihedral { n, .. } => {
                let base = match h.ko {
                    O2Subgroup::Dihedral { offset, .. } if x.refl => x.angle - offset,
                    _ => x.angle,
                };
                let k = (base * Ratio::from_integer(n as i64)).to_integer();
                let r = q.pow(h.rot, k);
                if x.refl {
                    q.mul(h.refl, r)
                } else {
                    r
                }
            }
        };
        Some(q.coset(y, &h.z))
    }

    /// `h ⊆ k`.
    pub fn contains(&self, k: &AmalgamSubgroup, h: &AmalgamSubgroup) -> bool {
        if !h.z.is_subset(&k.z) {
            return false;
        }
        let member = |x: O2Elem, y: ElemId| self.image(k, x).is_some_and(|c| c.contains(y));
        match h.ko {
            O2Subgroup::So2 => matches!(k.ko, O2Subgroup::So2 | O2Subgroup::Full),
            O2Subgroup::Full => {
                matches!(k.ko, O2Subgroup::Full) && member(O2Elem::reflection(Ratio::from_integer(0)), h.refl)
            }
            O2Subgroup::Cyclic { n } => member(O2Elem::rotation(Ratio::new(1, n as i64)), h.rot),
            O2Subgroup::Dihedral { n, offset } => {
                member(O2Elem::rotation(Ratio::new(1, n as i64)), h.rot)
                    && member(O2Elem::reflection(offset), h.refl)
            }
        }
    }

    pub fn conjugate(&self, h: &AmalgamSubgroup, g: GElem) -> AmalgamSubgroup {
        let q = self.q();
        let p = g.spatial;
        let mut out = AmalgamSubgroup {
            ko: h.ko,
            z: q.conj_set(p, &h.z),
            rot: q.conj(p, h.rot),
            refl: q.conj(p, h.refl),
        };
        if let O2Subgroup::Dihedral { n, offset } = h.ko {
            let shifted = offset - g.o2.angle * Ratio::from_integer(2);
            let offset = if g.o2.refl { -shifted } else { shifted };
            out.ko = O2Subgroup::Dihedral { n, offset: wrap(offset) };
        }
        if g.o2.refl && h.ko.rotation_order().is_some() {
            out.rot = q.inv(out.rot);
        }
        self.normalize(out)
    }

    /// Order of the rotation generator's image in `K_O / Z_O`.
    pub fn m_of(&self, h: &AmalgamSubgroup) -> u32 {
        let q = self.q();
        let mut x = h.rot;
        let mut k = 1;
        while !h.z.contains(x) {
            x = q.mul(x, h.rot);
            k += 1;
        }
        k
    }

    /// `Z_O`, the kernel of the projection of `K_O` onto the quotient.
    pub fn kernel_o2(&self, h: &AmalgamSubgroup) -> O2Subgroup {
        match h.ko {
            O2Subgroup::Full => {
                if h.z.contains(h.refl) {
                    O2Subgroup::Full
                } else {
                    O2Subgroup::So2
                }
            }
            O2Subgroup::So2 => O2Subgroup::So2,
            O2Subgroup::Cyclic { n } => O2Subgroup::Cyclic { n: n / self.m_of(h) },
            O2Subgroup::Dihedral { n, offset } => {
                let m = self.m_of(h);
                let q = self.q();
                let hit = (0..m as i64).find(|&t| h.z.contains(q.mul(h.refl, q.pow(h.rot, t))));
                match hit {
                    Some(t) => O2Subgroup::Dihedral {
                        n: n / m,
                        offset: wrap(offset + Ratio::new(t, n as i64)),
                    },
                    None => O2Subgroup::Cyclic { n: n / m },
                }
            }
        }
    }

    /// `K_Γ`, the spatial projection.
    pub fn k_gamma(&self, h: &AmalgamSubgroup) -> ElemSet {
        let mut gens = h.z;
        gens.insert(h.rot);
        gens.insert(h.refl);
        self.q().closure(&gens)
    }

    pub fn realize(&self, h: &AmalgamSubgroup) -> Result<Vec<GElem>, LatticeError> {
        let q = self.q();
        let (n, offset) = match h.ko {
            O2Subgroup::Cyclic { n } => (n, None),
            O2Subgroup::Dihedral { n, offset } => (n, Some(offset)),
            _ => return Err(LatticeError::Unenumerable),
        };
        let mut out = Vec::new();
        for k in 0..n as i64 {
            let r = q.pow(h.rot, k);
            let step = Ratio::new(k, n as i64);
            for w in h.z.iter() {
                out.push(GElem { o2: O2Elem::rotation(step), spatial: q.mul(r, w) });
                if let Some(a) = offset {
                    out.push(GElem { o2: O2Elem::reflection(a + step), spatial: q.mul(q.mul(h.refl, r), w) });
                }
            }
        }
        Ok(out)
    }

    /// Matched cosets `(x·Z_O, y·Z_Γ)` of the quotient isomorphism.
    pub fn pairing(&self, h: &AmalgamSubgroup) -> Vec<(O2Elem, ElemSet)> {
        let m = self.m_of(h) as i64;
        let n = h.ko.rotation_order().unwrap_or(1) as i64;
        let mut out = Vec::new();
        let kernel_has_refl = self.kernel_o2(h).has_reflections();
        for k in 0..m {
            let x = O2Elem::rotation(Ratio::new(k, n));
            out.push((x, self.image(h, x).expect("rotation in K_O")));
        }
        if h.ko.has_reflections() && !kernel_has_refl {
            let a = match h.ko {
                O2Subgroup::Dihedral { offset, .. } => offset,
                _ => Ratio::from_integer(0),
            };
            for k in 0..m {
                let x = O2Elem::reflection(a + Ratio::new(k, n));
                out.push((x, self.image(h, x).expect("reflection in K_O")));
            }
        }
        out
    }

    /// Conjugators normalizing `D_n` at offset 0, or `{1, κ}` otherwise.
    fn o2_conjugators(ko: &O2Subgroup) -> Vec<O2Elem> {
        match *ko {
            O2Subgroup::Dihedral { n, .. } => (0..2 * n as i64)
                .flat_map(|k| {
                    let t = Ratio::new(k, 2 * n as i64);
                    [O2Elem::rotation(t), O2Elem::reflection(t)]
                })
                .collect(),
            _ => vec![O2Elem::identity(), O2Elem::reflection(Ratio::from_integer(0))],
        }
    }

    fn at_offset_zero(&self, h: &AmalgamSubgroup) -> AmalgamSubgroup {
        match h.ko {
            O2Subgroup::Dihedral { offset, .. } if offset != Ratio::from_integer(0) => self.conjugate(
                h,
                GElem { o2: O2Elem::rotation(offset / Ratio::from_integer(2)), spatial: self.q().identity() },
            ),
            _ => *h,
        }
    }

    /// Unfold a finite amalgam to its smallest rotation order `m_of(h)`.
    fn base_of(&self, h: &AmalgamSubgroup) -> (AmalgamSubgroup, u32) {
        match h.ko {
            O2Subgroup::Dihedral { n, offset } => {
                let m = self.m_of(h);
                let s = n / m;
                let mut b = *h;
                b.ko = O2Subgroup::Dihedral { n: m, offset: offset * Ratio::from_integer(s as i64) };
                (self.normalize(b), s)
            }
            O2Subgroup::Cyclic { n } => {
                let m = self.m_of(h);
                let mut b = *h;
                b.ko = O2Subgroup::Cyclic { n: m };
                (b, n / m)
            }
            _ => (*h, 1),
        }
    }

    fn fold_raw(h: &AmalgamSubgroup, s: u32) -> AmalgamSubgroup {
        let mut out = *h;
        out.ko = match h.ko {
            O2Subgroup::Dihedral { n, offset } => {
                O2Subgroup::Dihedral { n: n * s, offset: offset / Ratio::from_integer(s as i64) }
            }
            O2Subgroup::Cyclic { n } => O2Subgroup::Cyclic { n: n * s },
            other => other,
        };
        out
    }

    /// All conjugates under `N_{O(2)}(K_O) × Q` (offset-0 conjugates for
    /// dihedral types), computed on an unfolded base.
    fn base_orbit(&self, base: &AmalgamSubgroup) -> Vec<AmalgamSubgroup> {
        let q = self.q();
        let mut seen = HashSet::new();
        for x in Self::o2_conjugators(&base.ko) {
            for p in q.elements() {
                seen.insert(self.conjugate(base, GElem { o2: x, spatial: p }));
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort();
        v
    }

    pub fn canonical(&self, h: &AmalgamSubgroup) -> OrbitType {
        if let Some(t) = self.canon.lock().unwrap().get(h) {
            return *t;
        }
        let h0 = self.at_offset_zero(h);
        let (base, s) = self.base_of(&h0);
        let t = OrbitType(Self::fold_raw(&self.base_class(&base).0, s));
        self.canon.lock().unwrap().insert(*h, t);
        t
    }

    fn base_class(&self, base: &AmalgamSubgroup) -> OrbitType {
        if let Some(t) = self.canon.lock().unwrap().get(base) {
            return *t;
        }
        let orbit = self.base_orbit(base);
        let t = OrbitType(orbit[0]);
        {
            let mut canon = self.canon.lock().unwrap();
            for o in &orbit {
                canon.insert(*o, t);
            }
        }
        self.orbits.lock().unwrap().entry(t).or_insert_with(|| Arc::new(orbit));
        t
    }

    /// Offset-0 conjugates of a canonical type.
    pub fn conjugates(&self, t: &OrbitType) -> Arc<Vec<AmalgamSubgroup>> {
        let (base, s) = self.base_of(&t.0);
        let bt = self.base_class(&base);
        let base_orbit = self.orbits.lock().unwrap().get(&bt).cloned().expect("orbit cached");
        if s == 1 {
            return base_orbit;
        }
        Arc::new(base_orbit.iter().map(|b| Self::fold_raw(b, s)).collect())
    }

    /// `(O(2) × Q)`.
    pub fn top(&self) -> OrbitType {
        let q = self.q();
        self.canonical(&AmalgamSubgroup {
            ko: O2Subgroup::Full,
            z: q.whole().0,
            rot: q.identity(),
            refl: q.identity(),
        })
    }

    /// `(O(2) × K)`.
    pub fn product_type(&self, k: ElemSet) -> Result<OrbitType, LatticeError> {
        let q = self.q();
        let h = self.amalgam(O2Subgroup::Full, k, q.identity(), q.identity())?;
        Ok(self.canonical(&h))
    }

    pub fn fold(&self, t: &OrbitType, s: u32) -> OrbitType {
        assert!(s >= 1, "folding factor must be positive");
        // Folding commutes with conjugation, so it maps canonical forms to
        // canonical forms.
        OrbitType(Self::fold_raw(&t.0, s))
    }

    pub fn weyl_order(&self, t: &OrbitType) -> Result<u64, LatticeError> {
        let h = &t.0;
        let qn = self.q().order() as u64;
        let orbit = self.conjugates(t).len() as u64;
        let z = h.z.len() as u64;
        let num = match h.ko {
            O2Subgroup::Cyclic { .. } => return Err(LatticeError::InfiniteWeyl(self.name(t))),
            O2Subgroup::Dihedral { .. } | O2Subgroup::So2 => 2 * qn,
            O2Subgroup::Full => qn,
        };
        debug_assert_eq!(num % (orbit * z), 0);
        Ok(num / (orbit * z))
    }

    /// Number of members of the class `k` containing the canonical
    /// representative of `l`.
    pub fn n_count(&self, l: &OrbitType, k: &OrbitType) -> Result<u64, LatticeError> {
        if matches!(l.0.ko, O2Subgroup::Cyclic { .. }) && !matches!(k.0.ko, O2Subgroup::Cyclic { .. }) {
            return Err(LatticeError::InfiniteWeyl(self.name(l)));
        }
        if !self.may_contain(&k.0, &l.0) {
            return Ok(0);
        }
        Ok(self.conjugates(k).iter().filter(|c| self.contains(c, &l.0)).count() as u64)
    }

    /// Cheap necessary conditions for `l ≤ k` up to conjugacy.
    fn may_contain(&self, k: &AmalgamSubgroup, l: &AmalgamSubgroup) -> bool {
        if l.z.len() > k.z.len() || k.z.len() % l.z.len() != 0 {
            return false;
        }
        match (l.ko, k.ko) {
            (O2Subgroup::Full, O2Subgroup::Full) => true,
            (O2Subgroup::So2, O2Subgroup::So2 | O2Subgroup::Full) => true,
            (O2Subgroup::Full | O2Subgroup::So2, _) => false,
            (O2Subgroup::Dihedral { .. }, O2Subgroup::Cyclic { .. } | O2Subgroup::So2) => false,
            (_, O2Subgroup::Full | O2Subgroup::So2) => true,
            (lk, kk) => kk.rotation_order().unwrap() % lk.rotation_order().unwrap() == 0,
        }
    }

    /// `(h) ≤ (k)`.
    pub fn subconjugate(&self, h: &OrbitType, k: &OrbitType) -> bool {
        self.may_contain(&k.0, &h.0) && self.conjugates(k).iter().any(|c| self.contains(c, &h.0))
    }

    /// Subconjugacy using only conjugators `(x, e)` with `x ∈ O(2)`.
    pub fn subconjugate_o2_only(&self, h: &OrbitType, k: &OrbitType) -> bool {
        if !self.may_contain(&k.0, &h.0) {
            return false;
        }
        let e = self.q().identity();
        Self::o2_conjugators(&k.0.ko)
            .into_iter()
            .any(|x| self.contains(&self.conjugate(&k.0, GElem { o2: x, spatial: e }), &h.0))
    }

    /// Intersection of two amalgams, one of them finite or both infinite.
    pub fn intersect(&self, h: &AmalgamSubgroup, k: &AmalgamSubgroup) -> AmalgamSubgroup {
        let q = self.q();
        if !h.ko.is_finite() && k.ko.is_finite() {
            return self.intersect(k, h);
        }
        let z = h.z.intersection(&k.z);
        if !h.ko.is_finite() {
            let (ko, refl) = match (h.ko, k.ko) {
                (O2Subgroup::Full, O2Subgroup::Full) => {
                    let common = q.coset(h.refl, &h.z).intersection(&q.coset(k.refl, &k.z));
                    match common.first() {
                        Some(r) => (O2Subgroup::Full, r),
                        None => (O2Subgroup::So2, q.identity()),
                    }
                }
                _ => (O2Subgroup::So2, q.identity()),
            };
            return self.normalize(AmalgamSubgroup { ko, z, rot: q.identity(), refl });
        }
        let n = h.ko.rotation_order().unwrap();
        let common = |x: O2Elem| -> Option<ElemSet> {
            let c = self.image(h, x)?.intersection(&self.image(k, x)?);
            (!c.is_empty()).then_some(c)
        };
        let step = (1..n as i64).find_map(|i| common(O2Elem::rotation(Ratio::new(i, n as i64))).map(|c| (i, c)));
        let (n_new, rot) = match step {
            Some((i, c)) => ((n as i64 / i) as u32, c.first().unwrap()),
            None => (1, q.identity()),
        };
        let reflection = match h.ko {
            O2Subgroup::Dihedral { offset, .. } => (0..n as i64).find_map(|t| {
                let a = offset + Ratio::new(t, n as i64);
                common(O2Elem::reflection(a)).map(|c| (a, c.first().unwrap()))
            }),
            _ => None,
        };
        let (ko, refl) = match reflection {
            Some((a, r)) => (O2Subgroup::Dihedral { n: n_new, offset: wrap(a) }, r),
            None => (O2Subgroup::Cyclic { n: n_new }, q.identity()),
        };
        self.normalize(AmalgamSubgroup { ko, z, rot, refl })
    }

    /// Classes of `H ∩ gKg⁻¹` over all `g`, restricted to finite Weyl groups.
    pub fn intersection_types(&self, h: &OrbitType, k: &OrbitType) -> Vec<OrbitType> {
        let mut out = BTreeSet::new();
        let hk = &h.0;
        let kk = &k.0;
        let shifts: Vec<Turn> = match (hk.ko, kk.ko) {
            (O2Subgroup::Dihedral { n: a, .. }, O2Subgroup::Dihedral { n: b, .. }) => {
                let l = (a as i64).lcm(&(b as i64));
                (0..l / b as i64).map(|j| Ratio::new(j, l)).collect()
            }
            _ => vec![Ratio::from_integer(0)],
        };
        let e = self.q().identity();
        for c in self.conjugates(k).iter() {
            for &shift in &shifts {
                let moved = if shift == Ratio::from_integer(0) {
                    *c
                } else {
                    self.conjugate(c, GElem { o2: O2Elem::rotation(-shift / Ratio::from_integer(2)), spatial: e })
                };
                let i = self.intersect(hk, &moved);
                if !matches!(i.ko, O2Subgroup::Cyclic { .. }) {
                    out.insert(self.canonical(&i));
                }
            }
        }
        out.into_iter().collect()
    }

    /// Every class of amalgams with `K_O = D_n`.
    pub fn dihedral_types(&self, n: u32) -> Vec<OrbitType> {
        let q = self.q();
        let mut out = BTreeSet::new();
        for class in self.gamma.classes() {
            let z = class.representative.0;
            let norm = q.normalizer(&z);
            let reps: BTreeSet<ElemId> = norm.iter().map(|a| self.coset_rep(a, &z)).collect();
            for &rot in &reps {
                if !z.contains(q.pow(rot, n as i64)) {
                    continue;
                }
                for &refl in &reps {
                    if z.contains(q.mul(refl, refl)) && z.contains(q.pow(q.mul(refl, rot), 2)) {
                        let ko = O2Subgroup::Dihedral { n, offset: Ratio::from_integer(0) };
                        out.insert(self.canonical(&AmalgamSubgroup { ko, z, rot, refl }));
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Every class with `K_O = O(2)`.
    pub fn full_types(&self) -> Vec<OrbitType> {
        let q = self.q();
        let mut out = BTreeSet::new();
        for class in self.gamma.classes() {
            let z = class.representative.0;
            for refl in q.normalizer(&z).iter() {
                if let Ok(h) = self.amalgam(O2Subgroup::Full, z, q.identity(), refl) {
                    out.insert(self.canonical(&h));
                }
            }
        }
        out.into_iter().collect()
    }

    /// Ranking compatible with strict inclusion: kind, then size.
    pub fn rank(&self, t: &OrbitType) -> (u8, u64) {
        let z = t.0.z.len() as u64;
        match t.0.ko {
            O2Subgroup::Full => (3, z),
            O2Subgroup::So2 => (2, z),
            O2Subgroup::Dihedral { n, .. } => (1, 2 * n as u64 * z),
            O2Subgroup::Cyclic { n } => (0, n as u64 * z),
        }
    }

    fn quadruple(&self, t: &OrbitType) -> String {
        let h = &t.0;
        let g = &self.gamma;
        let lit = |s: &ElemSet| crate::gamma::to_prefix_tilde(&g.subgroup_name(s));
        let kg = self.k_gamma(h);
        if kg == self.q().whole().0 && h.ko == O2Subgroup::Full && h.z == kg {
            return "(G)".into();
        }
        let zo = self.kernel_o2(h);
        let ko_label = h.ko.label();
        if zo.label() == ko_label {
            format!("({ko_label} x {})", lit(&h.z))
        } else {
            format!("({ko_label} ^{} x^{} {})", zo.label(), lit(&h.z), lit(&kg))
        }
    }

    /// Literal `(K_O ^Z_O x^Z_Γ K_Γ)`, with a `#k` suffix when the
    /// quadruple alone does not determine the class.
    pub fn name(&self, t: &OrbitType) -> String {
        let quad = self.quadruple(t);
        match self.variants_of(&quad) {
            Ok(v) if v.len() > 1 => {
                let idx = v.iter().position(|x| x == t).expect("type among its variants");
                format!("{quad}#{}", idx + 1)
            }
            _ => quad,
        }
    }

    fn variants_of(&self, quad: &str) -> Result<Arc<Vec<OrbitType>>, LatticeError> {
        if let Some(v) = self.variants.lock().unwrap().get(quad) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.enumerate_quadruple(quad)?);
        self.variants.lock().unwrap().insert(quad.to_string(), v.clone());
        Ok(v)
    }

    fn enumerate_quadruple(&self, quad: &str) -> Result<Vec<OrbitType>, LatticeError> {
        let err = |m: &str| LatticeError::Parse(quad.to_string(), m.to_string());
        let inner = quad
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err("expected parentheses"))?
            .replace('×', "x");
        if inner.trim() == "G" {
            return Ok(vec![self.top()]);
        }
        let parts: Vec<&str> = inner.split_whitespace().collect();
        let (ko_s, zo_s, zg_s, kg_s) = match parts.as_slice() {
            [ko, "x", k] => (*ko, *ko, *k, *k),
            [ko, zo, zg, kg] => (
                *ko,
                zo.strip_prefix('^').ok_or_else(|| err("expected '^' before the O(2) kernel"))?,
                zg.strip_prefix("x^").ok_or_else(|| err("expected 'x^' before the spatial kernel"))?,
                *kg,
            ),
            _ => return Err(err("expected '(K ^Z x^Z K)' or '(K x K)'")),
        };
        let ko = parse_o2(ko_s).ok_or_else(|| err("unknown O(2) subgroup"))?;
        let zo = parse_o2(zo_s).ok_or_else(|| err("unknown O(2) kernel"))?;
        let zg = self.gamma.class_by_name(zg_s).ok_or_else(|| err("unknown spatial kernel"))?;
        let kg = self.gamma.class_by_name(kg_s).ok_or_else(|| err("unknown spatial subgroup"))?;
        let candidates = match ko {
            O2Subgroup::Dihedral { n, .. } => self.dihedral_types(n),
            O2Subgroup::Full => self.full_types(),
            O2Subgroup::So2 => {
                let q = self.q();
                self.gamma
                    .classes()
                    .iter()
                    .map(|c| self.canonical(&AmalgamSubgroup { ko, z: c.representative.0, rot: q.identity(), refl: q.identity() }))
                    .collect()
            }
            O2Subgroup::Cyclic { .. } => return Err(err("cyclic O(2) parts have infinite Weyl groups")),
        };
        let matches: Vec<OrbitType> = candidates
            .into_iter()
            .filter(|t| {
                let h = &t.0;
                self.gamma.class_of(&h.z) == Some(zg)
                    && self.gamma.class_of(&self.k_gamma(h)) == Some(kg)
                    && same_shape(&self.kernel_o2(h), &zo)
            })
            .collect();
        if matches.is_empty() {
            return Err(err("no subgroup with this description"));
        }
        Ok(matches)
    }

    pub fn parse(&self, literal: &str) -> Result<OrbitType, LatticeError> {
        let literal = literal.trim();
        let (quad, pick) = match literal.rsplit_once('#') {
            Some((q, k)) => {
                let k: usize = k
                    .parse()
                    .map_err(|_| LatticeError::Parse(literal.into(), "bad '#k' suffix".into()))?;
                (q, Some(k))
            }
            None => (literal, None),
        };
        let v = self.variants_of(&quad.replace('×', "x"))?;
        match (pick, v.len()) {
            (None, 1) => Ok(v[0]),
            (None, len) => Err(LatticeError::Ambiguous(literal.into(), len)),
            (Some(k), len) if (1..=len).contains(&k) => Ok(v[k - 1]),
            (Some(_), _) => Err(LatticeError::Parse(literal.into(), "suffix out of range".into())),
        }
    }
}

fn same_shape(a: &O2Subgroup, b: &O2Subgroup) -> bool {
    a.label() == b.label()
}

fn parse_o2(s: &str) -> Option<O2Subgroup> {
    let zero = Ratio::from_integer(0);
    match s {
        "O2" | "O(2)" => Some(O2Subgroup::Full),
        "SO2" | "SO(2)" => Some(O2Subgroup::So2),
        _ => {
            let (kind, n) = s.split_at(1);
            let n: u32 = n.parse().ok().filter(|&n| n > 0)?;
            match kind {
                "D" => Some(O2Subgroup::Dihedral { n, offset: zero }),
                "Z" => Some(O2Subgroup::Cyclic { n }),
                _ => None,
            }
        }
    }
}

/// `m | (s0 - s1)/gcd` or `m | (s0 + s1)/gcd`.
pub fn folding_relation(m: u32, s0: u32, s1: u32) -> bool {
    let (a, b) = (s0.max(s1) as u64, s0.min(s1) as u64);
    let g = a.gcd(&b);
    let m = m as u64;
    ((a - b) / g) % m == 0 || ((a + b) / g) % m == 0
}

/// Every pair in `indices` satisfies the folding relation for `m`.
pub fn boolean_b(m: u32, indices: &[u32]) -> bool {
    indices
        .iter()
        .enumerate()
        .all(|(i, &x)| indices[i + 1..].iter().all(|&y| folding_relation(m, x, y)))
}
