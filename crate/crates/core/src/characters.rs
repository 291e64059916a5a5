//! Exact characters of `D_N` and of `D_N × Z₂`.
//!
//! Coordinates of `ℝᴺ` are permuted by `γ(i) = i + 1` and the edge
//! reflection `κ(i) = N - 1 - i`, so `χ_V(κ) = (1 - (-1)ᴺ)/2`.

use std::fmt;

use serde::Serialize;

use crate::cyclotomic::{turn, Cyclotomic};
use crate::finite_group::{build_dihedral, ElemId, FiniteGroup, GroupError};
use crate::gamma::SpatialElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DihedralIrrep {
    /// One-dimensional: `γ ↦ rot`, `κ ↦ refl`.
    OneDim { rot: i8, refl: i8 },
    /// Two-dimensional geometric representation `χ_j(γ^k) = 2cos(2πjk/N)`.
    Geometric(usize),
}

impl DihedralIrrep {
    pub const TRIVIAL: Self = Self::OneDim { rot: 1, refl: 1 };

    pub fn dim(&self) -> usize {
        match self {
            Self::OneDim { .. } => 1,
            Self::Geometric(_) => 2,
        }
    }

    pub fn character(&self, n: usize, refl: bool, rot: usize) -> Cyclotomic {
        match *self {
            Self::OneDim { rot: r, refl: s } => {
                let v = if rot % 2 == 1 { r } else { 1 } * if refl { s } else { 1 };
                Cyclotomic::integer(v as i64)
            }
            Self::Geometric(_) if refl => Cyclotomic::zero(),
            Self::Geometric(j) => Cyclotomic::two_cos(turn((j * rot) as i64, n as i64)),
        }
    }

    /// All irreducibles of `D_N`.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = vec![Self::TRIVIAL, Self::OneDim { rot: 1, refl: -1 }];
        if n % 2 == 0 {
            out.push(Self::OneDim { rot: -1, refl: -1 });
            out.push(Self::OneDim { rot: -1, refl: 1 });
        }
        out.extend((1..(n + 1) / 2).filter(|&j| 2 * j != n).map(Self::Geometric));
        out
    }

    /// The irreducible carried by the isotypic index `j ∈ 𝔍(N) = {0, …, ⌊N/2⌋}`.
    pub fn isotypic(n: usize, j: usize) -> Option<Self> {
        match j {
            0 => Some(Self::TRIVIAL),
            _ if 2 * j < n => Some(Self::Geometric(j)),
            _ if 2 * j == n => Some(Self::OneDim { rot: -1, refl: -1 }),
            _ => None,
        }
    }

    /// Table label: `chi_0`, `chi_j`, `chi_*` (κ ↦ -1), and for even `N`
    /// `chi_{N/2}` (the summand of `ℝᴺ`) and `chi_**`.
    pub fn label(&self, n: usize) -> String {
        match *self {
            Self::OneDim { rot: 1, refl: 1 } => "chi_0".into(),
            Self::OneDim { rot: 1, refl: _ } => "chi_*".into(),
            Self::OneDim { rot: _, refl: -1 } => format!("chi_{}", n / 2),
            Self::OneDim { .. } => "chi_**".into(),
            Self::Geometric(j) => format!("chi_{j}"),
        }
    }
}

/// Irreducible of `D_N × Z₂`: a `D_N` irreducible, with `(e,-1)` acting by
/// `-1` when `antipodal`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpatialIrrep {
    pub dihedral: DihedralIrrep,
    pub antipodal: bool,
}

impl SpatialIrrep {
    pub fn character(&self, n: usize, e: SpatialElem) -> Cyclotomic {
        let c = self.dihedral.character(n, e.refl, e.rot);
        if self.antipodal && e.sign < 0 {
            -c
        } else {
            c
        }
    }

    pub fn dim(&self) -> usize {
        self.dihedral.dim()
    }

    pub fn all(n: usize) -> Vec<Self> {
        DihedralIrrep::all(n)
            .into_iter()
            .flat_map(|d| [false, true].map(|a| Self { dihedral: d, antipodal: a }))
            .collect()
    }
}

impl fmt::Display for SpatialIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dihedral {
            DihedralIrrep::OneDim { rot, refl } => write!(f, "1d(g:{rot:+},k:{refl:+})")?,
            DihedralIrrep::Geometric(j) => write!(f, "2d({j})")?,
        }
        write!(f, "{}", if self.antipodal { "-" } else { "+" })
    }
}

impl std::str::FromStr for SpatialIrrep {
    type Err = String;

    /// Inverse of `Display`: `2d(3)-`, `1d(g:-1,k:+1)+`.
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("unrecognized irreducible '{s}'");
        let s = s.trim();
        let (body, antipodal) = match s.strip_suffix('-') {
            Some(b) => (b, true),
            None => (s.strip_suffix('+').ok_or_else(bad)?, false),
        };
        let inner = |prefix: &str| body.strip_prefix(prefix).and_then(|b| b.strip_suffix(')'));
        let dihedral = if let Some(j) = inner("2d(") {
            DihedralIrrep::Geometric(j.parse().map_err(|_| bad())?)
        } else if let Some(signs) = inner("1d(") {
            let (g, k) = signs.split_once(',').ok_or_else(bad)?;
            let sign = |t: &str, key: &str| -> Result<i8, String> {
                match t.strip_prefix(key) {
                    Some("+1") => Ok(1),
                    Some("-1") => Ok(-1),
                    _ => Err(bad()),
                }
            };
            DihedralIrrep::OneDim { rot: sign(g, "g:")?, refl: sign(k, "k:")? }
        } else {
            return Err(bad());
        };
        Ok(Self { dihedral, antipodal })
    }
}

/// Number of coordinates fixed by `κ^refl γ^rot`.
pub fn permutation_character(n: usize, refl: bool, rot: usize) -> i64 {
    (0..n)
        .filter(|&i| {
            let shifted = (i + rot) % n;
            let image = if refl { n - 1 - shifted } else { shifted };
            image == i
        })
        .count() as i64
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n: usize,
    /// Representatives of the element classes, with class sizes.
    pub classes: Vec<(ElemId, usize)>,
    pub rows: Vec<(DihedralIrrep, Vec<Cyclotomic>)>,
    group: FiniteGroup,
}

impl CharacterTable {
    pub fn class_name(&self, idx: usize) -> &str {
        self.group.name(self.classes[idx].0)
    }

    /// Class-weighted inner product of two class functions.
    pub fn inner(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let mut s = Cyclotomic::zero();
        for ((&(_, size), x), y) in self.classes.iter().zip(a).zip(b) {
            s += &((x * &y.conj()) * size as i64);
        }
        s
    }

    pub fn order(&self) -> i64 {
        2 * self.n as i64
    }

    /// The permutation character of `ℝᴺ`.
    pub fn permutation_row(&self) -> Vec<Cyclotomic> {
        self.classes
            .iter()
            .map(|&(a, _)| {
                let (refl, rot) = split(self.n, a);
                Cyclotomic::integer(permutation_character(self.n, refl, rot))
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (0..self.classes.len())
            .map(|i| format!("{}[{}]", self.class_name(i), self.classes[i].1))
            .collect();
        out.push_str(&format!("{:<8} {}\n", "", header.join("  ")));
        let mut rows: Vec<(String, &Vec<Cyclotomic>)> =
            self.rows.iter().map(|(r, v)| (r.label(self.n), v)).collect();
        let perm = self.permutation_row();
        rows.push(("chi_V".into(), &perm));
        for (label, values) in rows {
            let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("{label:<8} {}\n", cells.join("  ")));
        }
        out
    }
}

fn split(n: usize, a: ElemId) -> (bool, usize) {
    let a = a as usize;
    (a >= n, a % n)
}

pub fn dihedral_character_table(n: usize) -> Result<CharacterTable, GroupError> {
    let group = build_dihedral(n)?;
    let mut seen = vec![false; group.order()];
    let mut classes = Vec::new();
    for a in group.elements() {
        if seen[a as usize] {
            continue;
        }
        let mut size = 0;
        for g in group.elements() {
            let c = group.conj(g, a) as usize;
            if !seen[c] {
                seen[c] = true;
                size += 1;
            }
        }
        classes.push((a, size));
    }
    let rows = DihedralIrrep::all(n)
        .into_iter()
        .map(|irr| {
            let values = classes
                .iter()
                .map(|&(a, _)| {
                    let (refl, rot) = split(n, a);
                    irr.character(n, refl, rot)
                })
                .collect();
            (irr, values)
        })
        .collect();
    Ok(CharacterTable { n, classes, rows, group })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotypicMultiplicity {
    pub j: usize,
    pub multiplicity: usize,
    pub dim: usize,
}

/// Decompose `ℝᴺ` by character inner products, indexed by `𝔍(N)`.
pub fn isotypic_multiplicities(n: usize) -> Result<Vec<IsotypicMultiplicity>, GroupError> {
    let table = dihedral_character_table(n)?;
    let perm = table.permutation_row();
    (0..=n / 2)
        .map(|j| {
            let irr = DihedralIrrep::isotypic(n, j).expect("index within range");
            let row = &table.rows.iter().find(|(r, _)| *r == irr).expect("row present").1;
            let total = table.inner(&perm, row).to_integer().expect("integral inner product");
            let m = total / table.order();
            Ok(IsotypicMultiplicity { j, multiplicity: m as usize, dim: irr.dim() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormal_rows() {
        for n in 1..=10 {
            let t = dihedral_character_table(n).unwrap();
            let dims: usize = t.rows.iter().map(|(r, _)| r.dim() * r.dim()).sum();
            assert_eq!(dims, 2 * n);
            for (i, (_, a)) in t.rows.iter().enumerate() {
                for (k, (_, b)) in t.rows.iter().enumerate() {
                    let v = t.inner(a, b).to_integer().unwrap();
                    assert_eq!(v, if i == k { t.order() } else { 0 }, "N={n}");
                }
            }
        }
    }

    #[test]
    fn d8_values() {
        let t = dihedral_character_table(8).unwrap();
        assert_eq!(t.rows.len(), 7);
        let chi1 = DihedralIrrep::Geometric(1).character(8, false, 1);
        let sqrt2 = &chi1 * &chi1;
        assert_eq!(sqrt2.to_integer(), Some(2));
        assert!((chi1.re() - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn multiplicities() {
        let m8 = isotypic_multiplicities(8).unwrap();
        assert!(m8.iter().all(|m| m.multiplicity == 1));
        assert_eq!(m8.iter().map(|m| m.dim).collect::<Vec<_>>(), vec![1, 2, 2, 2, 1]);
        for n in 1..=12 {
            let total: usize = isotypic_multiplicities(n).unwrap().iter().map(|m| m.multiplicity * m.dim).sum();
            assert_eq!(total, n);
            assert_eq!(permutation_character(n, true, 0), ((1 - (-1i64).pow(n as u32)) / 2));
        }
    }
}
