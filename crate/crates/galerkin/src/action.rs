//! The action `(e^{iθ}, γ, ±1)u(t) = ±γu(t + θ)`, `κu(t) = u(-t)`, on
//! truncated states; fixed spaces and numerical isotropy.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::{GElem, O2Elem, O2Subgroup, OrbitType, SymmetryGroup};
use serde::Serialize;

use crate::{state_dim, GalerkinError, GalerkinState};

fn turns(angle: o2deg::cyclotomic::Turn) -> f64 {
    *angle.numer() as f64 / *angle.denom() as f64
}

/// `g·x`.
pub fn apply(gamma: &GammaGroup, g: GElem, x: &GalerkinState) -> GalerkinState {
    let n = x.n;
    let e = gamma.decode(g.spatial);
    let sign = e.sign as f64;
    let perm = |i: usize| {
        let s = (i + e.rot) % n;
        if e.refl {
            n - 1 - s
        } else {
            s
        }
    };
    let theta = 2.0 * PI * turns(g.o2.angle);
    let mut out = GalerkinState::zeros(x.modes, n);
    for k in 0..=x.modes {
        let (sp, cp) = (k as f64 * theta).sin_cos();
        for i in 0..n {
            let (a, b) = (x.a(k, i), x.b(k, i));
            let (a2, b2) = if g.o2.refl {
                (a * cp + b * sp, a * sp - b * cp)
            } else {
                (a * cp + b * sp, -a * sp + b * cp)
            };
            let p = perm(i);
            out.set_a(k, p, sign * a2);
            if k > 0 {
                out.set_b(k, p, sign * b2);
            }
        }
    }
    out
}

/// Elements of a representative; `SO(2)` is replaced by `Z_{M+1}`, which
/// fixes the same truncated states.
fn sample_elements(g: &SymmetryGroup, t: &OrbitType, modes: usize) -> Result<Vec<GElem>, GalerkinError> {
    let h = t.rep();
    match h.ko {
        O2Subgroup::Full | O2Subgroup::So2 => {
            let q = g.spatial();
            let l = modes as i64 + 1;
            let mut out = Vec::new();
            for k in 0..l {
                let step = o2deg::cyclotomic::turn(k, l);
                for w in h.z.iter() {
                    out.push(GElem { o2: O2Elem::rotation(step), spatial: w });
                    if h.ko == O2Subgroup::Full {
                        out.push(GElem { o2: O2Elem::reflection(step), spatial: q.mul(h.refl, w) });
                    }
                }
            }
            Ok(out)
        }
        _ => Ok(g.realize(h)?),
    }
}

/// Generators of a representative: the rotation and reflection pairs plus `Z_Γ`.
fn generators(g: &SymmetryGroup, rep: &o2deg::o2_lattice::AmalgamSubgroup, modes: usize) -> Vec<GElem> {
    let mut out: Vec<GElem> = rep.z.iter().map(|w| GElem { o2: O2Elem::identity(), spatial: w }).collect();
    match rep.ko {
        O2Subgroup::Cyclic { n } => {
            out.push(GElem { o2: O2Elem::rotation(o2deg::cyclotomic::turn(1, n as i64)), spatial: rep.rot });
        }
        O2Subgroup::Dihedral { n, offset } => {
            out.push(GElem { o2: O2Elem::rotation(o2deg::cyclotomic::turn(1, n as i64)), spatial: rep.rot });
            out.push(GElem { o2: O2Elem::reflection(offset), spatial: rep.refl });
        }
        O2Subgroup::So2 | O2Subgroup::Full => {
            let step = o2deg::cyclotomic::turn(1, modes as i64 + 1);
            out.push(GElem { o2: O2Elem::rotation(step), spatial: g.spatial().identity() });
            if rep.ko == O2Subgroup::Full {
                out.push(GElem { o2: O2Elem::reflection(o2deg::cyclotomic::turn(0, 1)), spatial: rep.refl });
            }
        }
    }
    out
}

/// Orthonormal basis (columns) of the states fixed by a representative of `t`.
pub fn symmetric_basis(g: &SymmetryGroup, t: &OrbitType, modes: usize) -> Result<DMatrix<f64>, GalerkinError> {
    let n = g.gamma().n();
    let dim = state_dim(modes, n);
    let elems = sample_elements(g, t, modes)?;
    let mut proj = DMatrix::<f64>::zeros(dim, dim);
    for col in 0..dim {
        let mut e = GalerkinState::zeros(modes, n);
        e.coeffs[col] = 1.0;
        let mut avg = DVector::<f64>::zeros(dim);
        for &x in &elems {
            avg += apply(g.gamma(), x, &e).coeffs;
        }
        proj.set_column(col, &(avg / elems.len() as f64));
    }
    let sym = (&proj + proj.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let cols: Vec<DVector<f64>> = (0..dim)
        .filter(|&i| eig.eigenvalues[i] > 0.5)
        .map(|i| canonical_sign(eig.eigenvectors.column(i).into_owned()))
        .collect();
    if cols.is_empty() {
        return Err(GalerkinError::DegenerateSymmetry(g.name(t)));
    }
    Ok(DMatrix::from_columns(&cols))
}

/// Flip so the largest entry is positive.
fn canonical_sign(v: DVector<f64>) -> DVector<f64> {
    let i = v.iamax();
    if v[i] < 0.0 {
        -v
    } else {
        v
    }
}

/// `‖g·x - x‖∞ ≤ tol` for every generator of `rep`.
fn fixed_by(g: &SymmetryGroup, rep: &o2deg::o2_lattice::AmalgamSubgroup, x: &GalerkinState, tol: f64) -> bool {
    generators(g, rep, x.modes).into_iter().all(|e| (apply(g.gamma(), e, x).coeffs - &x.coeffs).amax() <= tol)
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotropyReport {
    /// Candidate orbit types with a representative fixing the state.
    pub fixing: Vec<String>,
    /// The largest of them.
    pub largest: Option<String>,
    /// Generators of that representative.
    pub generators: Vec<String>,
    #[serde(skip)]
    pub largest_type: Option<OrbitType>,
}

/// `(G)`, the `O(2)` product types and all dihedral types with `n ≤ max_n`.
pub fn default_candidates(g: &SymmetryGroup, max_n: u32) -> Vec<OrbitType> {
    let mut out = vec![g.top()];
    out.extend(g.full_types());
    for n in 1..=max_n {
        out.extend(g.dihedral_types(n));
    }
    out.sort();
    out.dedup();
    out
}

pub fn isotropy_check(g: &SymmetryGroup, x: &GalerkinState, tol: f64, candidates: &[OrbitType]) -> IsotropyReport {
    let mut fixing: Vec<(OrbitType, o2deg::o2_lattice::AmalgamSubgroup)> = Vec::new();
    for t in candidates {
        if let Some(rep) = g.conjugates(t).iter().find(|r| fixed_by(g, r, x, tol)) {
            fixing.push((*t, *rep));
        }
    }
    let best = fixing.iter().max_by(|a, b| g.rank(&a.0).cmp(&g.rank(&b.0)).then(b.0.cmp(&a.0))).copied();
    let generators = best
        .map(|(_, rep)| generators(g, &rep, x.modes).iter().map(|e| describe(g, *e)).collect())
        .unwrap_or_default();
    IsotropyReport {
        fixing: fixing.iter().map(|(t, _)| g.name(t)).collect(),
        largest: best.map(|(t, _)| g.name(&t)),
        generators,
        largest_type: best.map(|(t, _)| t),
    }
}

fn describe(g: &SymmetryGroup, e: GElem) -> String {
    format!("({}, {})", e.o2, g.spatial().name(e.spatial))
}
