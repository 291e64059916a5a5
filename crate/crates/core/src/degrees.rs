//! Basic degrees, the spectral index sets `Σ₋ ⊇ Σ₀`, the degree invariant
//! and closed forms for coefficients at orbit types of maximal kind.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::burnside::{multiply, BurnsideElement, BurnsideError, TermExport};
use crate::o2_lattice::{boolean_b, OrbitType, SymmetryGroup};
use crate::representations::{IndexConvention, Irrep, IrrepLabel, ReprError};

/// Sign decisions closer to zero than this are treated as resonant.
pub const SIGN_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DegreeError {
    #[error("resonance: mu_{j} = -{m}^2/beta^2 violates (A0)")]
    Resonance { m: u32, j: usize },
    #[error("truncation guard {guard} binds for j = {j}")]
    GuardBinds { j: usize, guard: u32 },
    #[error("no eigenvalue for isotypic index {0}")]
    MissingIndex(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("orbit type {0} has |W| not in {{1, 2}}")]
    NotMaximalKind(String),
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
}

impl From<crate::o2_lattice::LatticeError> for DegreeError {
    fn from(e: crate::o2_lattice::LatticeError) -> Self {
        Self::Burnside(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub j: usize,
    pub mu: f64,
    #[serde(default = "one")]
    pub multiplicity: u32,
}

fn one() -> u32 {
    1
}

/// What to do with a resonant pair `(m, j)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResonancePolicy {
    /// Any resonance is an error.
    #[default]
    Reject,
    /// Drop resonant pairs; only coefficients at orbit types whose fixed
    /// spaces miss every resonant component are meaningful.
    Restrict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    #[serde(rename = "gammaN")]
    pub gamma_n: usize,
    pub beta: f64,
    pub eigenvalues: Vec<Eigenvalue>,
    #[serde(rename = "truncationGuard", default, skip_serializing_if = "Option::is_none")]
    pub truncation_guard: Option<u32>,
    #[serde(default)]
    pub convention: IndexConvention,
    #[serde(default)]
    pub resonance: ResonancePolicy,
}

impl AnalysisConfig {
    pub fn new(gamma_n: usize, beta: f64, eigenvalues: Vec<Eigenvalue>) -> Self {
        Self {
            gamma_n,
            beta,
            eigenvalues,
            truncation_guard: None,
            convention: IndexConvention::Antipodal,
            resonance: ResonancePolicy::Reject,
        }
    }

    pub fn mu(&self, j: usize) -> Result<f64, DegreeError> {
        self.eigenvalues.iter().find(|e| e.j == j).map(|e| e.mu).ok_or(DegreeError::MissingIndex(j))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralIndex {
    pub m: u32,
    pub j: usize,
    pub mu_mj: f64,
}

impl SpectralIndex {
    pub fn label(&self) -> IrrepLabel {
        IrrepLabel::new(self.m, self.j)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SigmaSets {
    pub minus: Vec<SpectralIndex>,
    pub zero: Vec<SpectralIndex>,
    /// Pairs dropped under [`ResonancePolicy::Restrict`].
    pub resonant: Vec<IrrepLabel>,
}

/// `μ_{m,j} = (m² + β²μ_j)/(1 + m²)`.
pub fn operator_eigenvalue(m: u32, j: usize, config: &AnalysisConfig) -> Result<f64, DegreeError> {
    let mu = config.mu(j)?;
    let m2 = (m as f64).powi(2);
    let num = m2 + config.beta * config.beta * mu;
    if num.abs() <= SIGN_EPS {
        return Err(DegreeError::Resonance { m, j });
    }
    Ok(num / (1.0 + m2))
}

pub fn sigma_sets(config: &AnalysisConfig) -> Result<SigmaSets, DegreeError> {
    if !(config.beta > 0.0) {
        return Err(DegreeError::InvalidParameter(format!("beta = {} must be positive", config.beta)));
    }
    let mut out = SigmaSets::default();
    let mut eigen = config.eigenvalues.clone();
    eigen.sort_by_key(|e| e.j);
    for e in &eigen {
        for m in 0u32.. {
            match operator_eigenvalue(m, e.j, config) {
                Err(DegreeError::Resonance { .. }) if config.resonance == ResonancePolicy::Restrict => {
                    out.resonant.push(IrrepLabel::new(m, e.j));
                }
                Err(err) => return Err(err),
                Ok(v) if v < 0.0 => {
                    if config.truncation_guard.is_some_and(|g| m >= g) {
                        return Err(DegreeError::GuardBinds { j: e.j, guard: m });
                    }
                    let idx = SpectralIndex { m, j: e.j, mu_mj: v };
                    out.minus.push(idx);
                    if e.multiplicity % 2 == 1 {
                        out.zero.push(idx);
                    }
                }
                Ok(_) => break,
            }
        }
    }
    Ok(out)
}

/// `G-deg(-id, B(𝒱_{m,j}))` by the recurrence over the isotropy lattice.
pub fn basic_degree(
    g: &SymmetryGroup,
    label: IrrepLabel,
    convention: IndexConvention,
) -> Result<BurnsideElement<OrbitType>, DegreeError> {
    basic_degree_of(g, &g.irrep(label, convention)?)
}

/// Basic degree of an arbitrary irreducible `𝒲_m ⊗ U`.
pub fn basic_degree_of(g: &SymmetryGroup, v: &Irrep) -> Result<BurnsideElement<OrbitType>, DegreeError> {
    let v = *v;
    let top = g.top();
    let mut lattice = vec![(top, g.fixed_point_dim(&v, &top)?)];
    lattice.extend(g.isotropy_lattice(&v)?);
    let types: Vec<OrbitType> = lattice.iter().map(|(t, _)| *t).collect();
    let dims: BTreeMap<OrbitType, u32> = lattice.into_iter().collect();
    Ok(crate::burnside::from_marks(g, &types, |t| Ok(if dims[t] % 2 == 0 { 1 } else { -1 }))?)
}

/// `∏_{(m,j) ∈ Σ₀} deg_{𝒱_{m,j}}`, multiplied in increasing `(m, j)`.
pub fn degree_invariant(g: &SymmetryGroup, config: &AnalysisConfig) -> Result<BurnsideElement<OrbitType>, DegreeError> {
    let sigma = sigma_sets(config)?;
    let mut labels: Vec<IrrepLabel> = sigma.zero.iter().map(SpectralIndex::label).collect();
    labels.sort();
    let mut acc = crate::burnside::unit(g);
    for label in labels {
        let d = basic_degree(g, label, config.convention)?;
        acc = multiply(g, &acc, &d)?;
    }
    Ok(acc)
}

/// `x₀ = 2/|W(H)|` for orbit types of maximal kind.
pub fn x0(g: &SymmetryGroup, h: &OrbitType) -> Result<i64, DegreeError> {
    match g.weyl_order(h)? {
        1 => Ok(2),
        2 => Ok(1),
        _ => Err(DegreeError::NotMaximalKind(g.name(h))),
    }
}

/// `-x₀[odd at s₀][s₀ ∈ S] + 2x₀ Σ_{I ≠ ∅,{s₀}} (-2)^{|I|-2} [B_𝔪(I)][s₀ = gcd I][all odd]`,
/// with `odd` the parity map on `S`.
fn closed_form(g: &SymmetryGroup, h: &OrbitType, s0: u32, odd: &BTreeMap<u32, bool>) -> Result<i64, DegreeError> {
    let x0 = x0(g, h)?;
    let m = g.m_of(h.rep());
    let s: Vec<u32> = odd.keys().copied().collect();
    let mut total = if odd.get(&s0) == Some(&true) { -x0 } else { 0 };
    let mut sum = 0i64;
    for mask in 1u64..(1u64 << s.len()) {
        let subset: Vec<u32> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        if subset.len() < 2 || !subset.iter().all(|x| odd[x]) {
            continue;
        }
        let gcd = subset.iter().fold(0u32, |a, b| a.gcd(b));
        if gcd == s0 && boolean_b(m, &subset) {
            sum += (-2i64).pow(subset.len() as u32 - 2);
        }
    }
    total += 2 * x0 * sum;
    Ok(total)
}

/// Coefficient of `ˢ⁰H` in `∏_k deg_{𝒱_{s_k m, j_k}}` for `H ∈ 𝔐_m`.
pub fn product_coeff(
    g: &SymmetryGroup,
    h: &OrbitType,
    m: u32,
    s0: u32,
    factors: &[(u32, usize)],
    convention: IndexConvention,
) -> Result<i64, DegreeError> {
    let mut odd = BTreeMap::new();
    for &(s, j) in factors {
        let v = g.irrep(IrrepLabel::new(m, j), convention)?;
        let d = g.fixed_point_dim(&v, h)?;
        if odd.insert(s, d % 2 == 1).is_some() {
            return Err(DegreeError::InvalidParameter(format!("folding {s} repeated")));
        }
    }
    closed_form(g, h, s0, &odd)
}

/// `𝔫ˢ(H)` for every `s ∈ S(H)`, where `H ∈ 𝔐_{m₀}`.
pub fn folding_counts(
    g: &SymmetryGroup,
    h: &OrbitType,
    m0: u32,
    sigma_zero: &[SpectralIndex],
    convention: IndexConvention,
) -> Result<BTreeMap<u32, usize>, DegreeError> {
    let mut out = BTreeMap::new();
    for idx in sigma_zero.iter().filter(|i| i.m > 0 && i.m % m0 == 0) {
        let s = idx.m / m0;
        let v = g.irrep(idx.label(), convention)?;
        if g.fixed_point_dim(&v, &g.fold(h, s))? % 2 == 1 {
            *out.entry(s).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Coefficient of `ˢ⁰H` in the degree invariant, for `H ∈ 𝔐_{m₀}`.
pub fn coeff_maximal_fast(
    g: &SymmetryGroup,
    h: &OrbitType,
    m0: u32,
    s0: u32,
    config: &AnalysisConfig,
) -> Result<i64, DegreeError> {
    let sigma = sigma_sets(config)?;
    coeff_maximal_fast_with(g, h, m0, s0, &sigma.zero, config.convention)
}

pub fn coeff_maximal_fast_with(
    g: &SymmetryGroup,
    h: &OrbitType,
    m0: u32,
    s0: u32,
    sigma_zero: &[SpectralIndex],
    convention: IndexConvention,
) -> Result<i64, DegreeError> {
    let counts = folding_counts(g, h, m0, sigma_zero, convention)?;
    let odd = counts.into_iter().map(|(s, n)| (s, n % 2 == 1)).collect();
    closed_form(g, h, s0, &odd)
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub m: u32,
    pub j: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximalEntry {
    pub orbit_type: String,
    pub coeff: i64,
    pub witness: Witness,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub sigma_minus: Vec<SpectralIndex>,
    pub sigma_zero: Vec<SpectralIndex>,
    pub invariant: Vec<TermExport>,
    pub maximal_kind_nonzero: Vec<MaximalEntry>,
}

/// Members of `𝔐_{1,j}` for every `j` carried by a nonzero mode of `Σ₀`.
pub fn maximal_candidates(
    g: &SymmetryGroup,
    sigma_zero: &[SpectralIndex],
    convention: IndexConvention,
) -> Result<Vec<(OrbitType, IrrepLabel)>, DegreeError> {
    let mut out = Vec::new();
    let js: BTreeSet<usize> = sigma_zero.iter().filter(|i| i.m > 0).map(|i| i.j).collect();
    for j in js {
        let v = g.irrep(IrrepLabel::new(1, j), convention)?;
        for h in g.maximal_orbit_types(&v)? {
            out.push((h, IrrepLabel::new(1, j)));
        }
    }
    Ok(out)
}

/// Full invariant plus the nonzero coefficients at foldings of maximal types.
pub fn degree_report(g: &SymmetryGroup, config: &AnalysisConfig) -> Result<DegreeReport, DegreeError> {
    let sigma = sigma_sets(config)?;
    let invariant = degree_invariant(g, config)?;
    let mut entries = Vec::new();
    let modes: BTreeSet<u32> = sigma.zero.iter().filter(|i| i.m > 0).map(|i| i.m).collect();
    for (h, label) in maximal_candidates(g, &sigma.zero, config.convention)? {
        for &s in &modes {
            let c = coeff_maximal_fast_with(g, &h, 1, s, &sigma.zero, config.convention)?;
            if c != 0 {
                entries.push(MaximalEntry {
                    orbit_type: g.name(&g.fold(&h, s)),
                    coeff: c,
                    witness: Witness { m: s, j: label.j },
                });
            }
        }
    }
    Ok(DegreeReport {
        sigma_minus: sigma.minus,
        sigma_zero: sigma.zero,
        invariant: invariant.export(g),
        maximal_kind_nonzero: entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(beta: f64, mus: &[f64]) -> AnalysisConfig {
        let eig = mus.iter().enumerate().map(|(j, &mu)| Eigenvalue { j, mu, multiplicity: 1 }).collect();
        AnalysisConfig::new(8, beta, eig)
    }

    #[test]
    fn eigenvalue_formula() {
        let c = config(1.0, &[-5.0]);
        assert_eq!(operator_eigenvalue(0, 0, &c).unwrap(), -5.0);
        assert_eq!(operator_eigenvalue(1, 0, &c).unwrap(), -2.0);
        assert!((operator_eigenvalue(3, 0, &c).unwrap() - 0.4).abs() < 1e-15);
        let r = config(1.0, &[-4.0]);
        assert_eq!(operator_eigenvalue(2, 0, &r), Err(DegreeError::Resonance { m: 2, j: 0 }));
    }

    #[test]
    fn sigma_truncation() {
        let s = sigma_sets(&config(1.0, &[-5.0])).unwrap();
        let ms: Vec<u32> = s.zero.iter().map(|i| i.m).collect();
        assert_eq!(ms, vec![0, 1, 2]);
        assert_eq!(s.minus.len(), 3);
        assert!(sigma_sets(&config(1.0, &[1.0, 0.5])).unwrap().minus.is_empty());
        let mut even = config(1.0, &[-5.0]);
        even.eigenvalues[0].multiplicity = 2;
        let s = sigma_sets(&even).unwrap();
        assert_eq!((s.minus.len(), s.zero.len()), (3, 0));
        let mut guarded = config(1.0, &[-50.0]);
        guarded.truncation_guard = Some(3);
        assert!(matches!(sigma_sets(&guarded), Err(DegreeError::GuardBinds { .. })));
    }
}
