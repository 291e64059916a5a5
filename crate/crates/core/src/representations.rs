//! Irreducible representations `𝒱_{m,U} = 𝒲_m ⊗ U` of `O(2) × Q`, their
//! fixed-point dimensions and isotropy lattices.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{DihedralIrrep, SpatialIrrep};
use crate::cyclotomic::Cyclotomic;
use crate::finite_group::{ElemId, ElemSet};
use crate::o2_lattice::{GElem, LatticeError, O2Subgroup, OrbitType, SymmetryGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("isotypic index {j} is out of range for D{n}")]
    BadIndex { j: usize, n: usize },
    #[error("maximality is only defined for m >= 1")]
    StationaryMode,
    #[error("character average is not a nonnegative integer on {0}")]
    NonIntegral(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `𝒲_m ⊗ U` for a spatial irreducible `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Irrep {
    pub m: u32,
    pub spatial: SpatialIrrep,
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{} (x) {}", self.m, self.spatial)
    }
}

/// Which spatial irreducible the isotypic index `j` denotes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexConvention {
    #[default]
    /// `𝒱_j⁻`: the `D_N` summand of `ℝᴺ` with `(e,-1)` acting as `-1`.
    Antipodal,
    /// The irreducibles that carry the D₈ reference tables (see `fixtures`).
    Reference,
}

/// `(m, j)`, resolved through an [`IndexConvention`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrrepLabel {
    pub m: u32,
    pub j: usize,
}

impl IrrepLabel {
    pub fn new(m: u32, j: usize) -> Self {
        Self { m, j }
    }
}

pub fn spatial_irrep(n: usize, j: usize, convention: IndexConvention) -> Result<SpatialIrrep, ReprError> {
    let bad = ReprError::BadIndex { j, n };
    match convention {
        IndexConvention::Antipodal => {
            let d = DihedralIrrep::isotypic(n, j).ok_or(bad)?;
            Ok(SpatialIrrep { dihedral: d, antipodal: true })
        }
        IndexConvention::Reference => crate::fixtures::reference_irrep(n, j).ok_or(bad),
    }
}

impl SymmetryGroup {
    pub fn irrep(&self, label: IrrepLabel, convention: IndexConvention) -> Result<Irrep, ReprError> {
        Ok(Irrep { m: label.m, spatial: spatial_irrep(self.gamma().n(), label.j, convention)? })
    }

    pub fn irrep_character(&self, v: &Irrep, g: GElem) -> Cyclotomic {
        let u = v.spatial.character(self.gamma().n(), self.gamma().decode(g.spatial));
        if v.m == 0 {
            return u;
        }
        if g.o2.refl {
            return Cyclotomic::zero();
        }
        &Cyclotomic::two_cos(g.o2.angle * Ratio::from_integer(v.m as i64)) * &u
    }

    fn spatial_average(&self, v: &Irrep, set: &ElemSet) -> Result<u32, ReprError> {
        let n = self.gamma().n();
        let mut s = Cyclotomic::zero();
        for y in set.iter() {
            s += &v.spatial.character(n, self.gamma().decode(y));
        }
        let total = s.to_integer().ok_or_else(|| ReprError::NonIntegral(format!("{set:?}")))?;
        integral(total, set.len() as i64).ok_or_else(|| ReprError::NonIntegral(format!("{set:?}")))
    }

    /// `dim V^H`, by averaging the character over `H`.
    pub fn fixed_point_dim(&self, v: &Irrep, t: &OrbitType) -> Result<u32, ReprError> {
        let h = t.rep();
        match h.ko {
            O2Subgroup::Full | O2Subgroup::So2 if v.m > 0 => Ok(0),
            O2Subgroup::Full => self.spatial_average(v, &self.k_gamma(h)),
            O2Subgroup::So2 => self.spatial_average(v, &h.z),
            O2Subgroup::Cyclic { n } | O2Subgroup::Dihedral { n, .. } => {
                let q = self.spatial();
                let gn = self.gamma().n();
                let mut s = Cyclotomic::zero();
                let with_refl = v.m == 0 && h.ko.has_reflections();
                for k in 0..n as i64 {
                    let r: ElemId = q.pow(h.rot, k);
                    let mut inner = Cyclotomic::zero();
                    for w in h.z.iter() {
                        inner += &v.spatial.character(gn, self.gamma().decode(q.mul(r, w)));
                        if with_refl {
                            let y = q.mul(q.mul(h.refl, r), w);
                            inner += &v.spatial.character(gn, self.gamma().decode(y));
                        }
                    }
                    if v.m == 0 {
                        s += &inner;
                    } else {
                        let angle = Ratio::new(k * v.m as i64, n as i64);
                        s += &(&Cyclotomic::two_cos(angle) * &inner);
                    }
                }
                let order = n as i64 * h.z.len() as i64 * if h.ko.has_reflections() { 2 } else { 1 };
                let total = s.to_integer().ok_or_else(|| ReprError::NonIntegral(self.name(t)))?;
                integral(total, order).ok_or_else(|| ReprError::NonIntegral(self.name(t)))
            }
        }
    }

    /// Exponent of `Q`.
    pub fn spatial_exponent(&self) -> u32 {
        let q = self.spatial();
        q.elements().fold(1u32, |l, a| l.lcm(&(q.element_order(a) as u32)))
    }

    /// Orbit types of `V \ {0}` with finite Weyl group, with their
    /// fixed-point dimensions, largest first. `(G)` is not included.
    pub fn isotropy_lattice(&self, v: &Irrep) -> Result<Vec<(OrbitType, u32)>, ReprError> {
        let candidates: Vec<OrbitType> = if v.m == 0 {
            self.full_types().into_iter().filter(|t| t.rep().z.contains(t.rep().refl)).collect()
        } else if v.m == 1 {
            let e = self.spatial_exponent();
            (1..=e).filter(|d| e % d == 0).flat_map(|d| self.dihedral_types(d)).collect()
        } else {
            // Isotropy groups of the pullback along the m-fold cover are the
            // preimages of those of the m = 1 representation.
            let base = Irrep { m: 1, spatial: v.spatial };
            return Ok(self
                .isotropy_lattice(&base)?
                .into_iter()
                .map(|(t, d)| (self.fold(&t, v.m), d))
                .collect());
        };
        let mut with_dim = Vec::new();
        for t in candidates {
            let d = self.fixed_point_dim(v, &t)?;
            if d > 0 && t != self.top() {
                with_dim.push((t, d));
            }
        }
        with_dim.sort_by(|a, b| self.rank(&b.0).cmp(&self.rank(&a.0)).then(a.0.cmp(&b.0)));
        // Keep H only if no strictly larger candidate has the same fixed space.
        let mut out: Vec<(OrbitType, u32)> = Vec::new();
        for (i, (t, d)) in with_dim.iter().enumerate() {
            let absorbed = with_dim[..i]
                .iter()
                .any(|(k, dk)| dk == d && self.rank(k) > self.rank(t) && self.subconjugate(t, k));
            if !absorbed {
                out.push((*t, *d));
            }
        }
        Ok(out)
    }

    /// Direct candidate search for `m ≥ 1`: dihedral types with `n | m·exp(Q)`.
    pub fn isotropy_lattice_direct(&self, v: &Irrep) -> Result<Vec<(OrbitType, u32)>, ReprError> {
        let e = self.spatial_exponent() * v.m;
        let mut with_dim = Vec::new();
        for d in (1..=e).filter(|d| e % d == 0) {
            for t in self.dihedral_types(d) {
                let dim = self.fixed_point_dim(v, &t)?;
                if dim > 0 {
                    with_dim.push((t, dim));
                }
            }
        }
        with_dim.sort_by(|a, b| self.rank(&b.0).cmp(&self.rank(&a.0)).then(a.0.cmp(&b.0)));
        let mut out: Vec<(OrbitType, u32)> = Vec::new();
        for (i, (t, d)) in with_dim.iter().enumerate() {
            let absorbed = with_dim[..i]
                .iter()
                .any(|(k, dk)| dk == d && self.rank(k) > self.rank(t) && self.subconjugate(t, k));
            if !absorbed {
                out.push((*t, *d));
            }
        }
        Ok(out)
    }

    /// `(m, j)` with `t ∈ 𝔐_{m,j}`, smallest first.
    pub fn is_maximal_kind(&self, t: &OrbitType, convention: IndexConvention) -> Result<Option<IrrepLabel>, ReprError> {
        let n = match t.rep().ko {
            O2Subgroup::Dihedral { n, .. } => n,
            _ => return Ok(None),
        };
        for m in (1..=n).filter(|m| n % m == 0) {
            for j in 0..=self.gamma().n() / 2 {
                let base = self.irrep(IrrepLabel::new(1, j), convention)?;
                if self.maximal_orbit_types(&base)?.iter().any(|h| self.fold(h, m) == *t) {
                    return Ok(Some(IrrepLabel::new(m, j)));
                }
            }
        }
        Ok(None)
    }

    /// `𝔐_{m,U}`: maximal orbit types of `V \ {0}`.
    pub fn maximal_orbit_types(&self, v: &Irrep) -> Result<Vec<OrbitType>, ReprError> {
        if v.m == 0 {
            return Err(ReprError::StationaryMode);
        }
        let lattice = self.isotropy_lattice(v)?;
        Ok(maximal_among(self, &lattice))
    }
}

fn maximal_among(g: &SymmetryGroup, lattice: &[(OrbitType, u32)]) -> Vec<OrbitType> {
    let mut out: Vec<OrbitType> = lattice
        .iter()
        .filter(|(t, _)| {
            !lattice.iter().any(|(k, _)| k != t && g.rank(k) > g.rank(t) && g.subconjugate(t, k))
        })
        .map(|(t, _)| *t)
        .collect();
    out.sort();
    out
}

fn integral(total: i64, order: i64) -> Option<u32> {
    (total % order == 0 && total >= 0).then(|| (total / order) as u32)
}

/// Maximal sets `𝔐_{1,U}` for every spatial irreducible.
pub fn maximal_sets_by_irrep(g: &SymmetryGroup) -> Result<BTreeMap<SpatialIrrep, Vec<OrbitType>>, ReprError> {
    let mut out = BTreeMap::new();
    for u in SpatialIrrep::all(g.gamma().n()) {
        out.insert(u, g.maximal_orbit_types(&Irrep { m: 1, spatial: u })?);
    }
    Ok(out)
}
