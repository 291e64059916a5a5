//! Ring of `N` coupled pendula: the cycle Laplacian, its exact spectrum,
//! the analysis config it induces and the resulting existence report.
//!
//! The operator `A` is taken with eigenvalues `μ_j = -(z_j + 1)` on the
//! isotypic component `j`, i.e. `A = L - I` for the cycle Laplacian `L`
//! with spectrum `-z_j`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{turn, Cyclotomic};
use crate::degrees::{
    coeff_maximal_fast_with, maximal_candidates, sigma_sets, AnalysisConfig, DegreeError, Eigenvalue,
    ResonancePolicy, SpectralIndex,
};
use crate::o2_lattice::SymmetryGroup;
use crate::representations::{IndexConvention, IrrepLabel};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PendulaError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("(A0) violated at (m, j) = {0:?}")]
    Resonance(Vec<(u32, usize)>),
    #[error("coupling matrix does not commute with the D_N action")]
    NotEquivariant,
    #[error(transparent)]
    Degree(#[from] DegreeError),
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub j: usize,
    /// `z_j = 4 sin²(πj/N)`, exact.
    pub z: String,
    pub z_value: f64,
    pub eigenvector: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LaplacianSpec {
    pub n: usize,
    pub matrix: Vec<Vec<i64>>,
    pub spectrum: Vec<SpectrumEntry>,
}

/// `z_j = 2 - 2cos(2πj/N)`.
pub fn z_exact(n: usize, j: usize) -> Cyclotomic {
    Cyclotomic::integer(2) - Cyclotomic::two_cos(turn(j as i64, n as i64))
}

pub fn cycle_laplacian(n: usize) -> Result<LaplacianSpec, PendulaError> {
    if n < 3 {
        return Err(PendulaError::InvalidParameter(format!("cycle needs N >= 3, got {n}")));
    }
    let matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| match (k + n - i) % n {
                    0 => -2,
                    1 => 1,
                    d if d == n - 1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let spectrum = (0..=n / 2)
        .map(|j| {
            let z = z_exact(n, j);
            SpectrumEntry {
                j,
                z_value: z.re(),
                z: z.to_string(),
                eigenvector: format!("Re/Im of (1, g^{j}, g^{}, ..., g^{}), g = exp(2 pi i/{n})", 2 * j, (n - 1) * j),
            }
        })
        .collect();
    Ok(LaplacianSpec { n, matrix, spectrum })
}

/// Eigenvalue of a `D_N`-equivariant symmetric matrix on the component `j`,
/// read off from the real Fourier vector `cos(2πjk/N)`.
pub fn isotypic_eigenvalues(matrix: &[Vec<f64>]) -> Result<Vec<f64>, PendulaError> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(PendulaError::InvalidParameter("coupling matrix must be square".into()));
    }
    // Commutation with γ(i) = i + 1 and κ(i) = N - 1 - i.
    let equivariant = (0..n).all(|i| {
        (0..n).all(|k| {
            let shift = (matrix[(i + 1) % n][(k + 1) % n] - matrix[i][k]).abs() < 1e-12;
            let refl = (matrix[n - 1 - i][n - 1 - k] - matrix[i][k]).abs() < 1e-12;
            shift && refl
        })
    });
    if !equivariant {
        return Err(PendulaError::NotEquivariant);
    }
    Ok((0..=n / 2)
        .map(|j| {
            // Row 0 against the cosine vector; circulant symmetry does the rest.
            (0..n).map(|k| matrix[0][k] * (2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64).cos()).sum()
        })
        .collect())
}

/// `CLI` input: `{"N":8, "beta":1.0, "q":2, "coupling":"cycle"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PendulaSpec {
    #[serde(rename = "N")]
    pub n: usize,
    pub beta: f64,
    pub q: u32,
    #[serde(default = "cycle")]
    pub coupling: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laplacian: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub resonance: ResonancePolicy,
}

fn cycle() -> String {
    "cycle".into()
}

impl PendulaSpec {
    pub fn new(n: usize, beta: f64, q: u32) -> Self {
        Self { n, beta, q, coupling: cycle(), laplacian: None, resonance: ResonancePolicy::Reject }
    }

    pub fn config(&self) -> Result<AnalysisConfig, PendulaError> {
        if self.q < 2 || self.q % 2 == 1 {
            return Err(PendulaError::InvalidParameter(format!("q = {} must be even and >= 2", self.q)));
        }
        let mu: Vec<f64> = match (&self.laplacian, self.coupling.as_str()) {
            (Some(l), _) => {
                if l.len() != self.n {
                    return Err(PendulaError::InvalidParameter("laplacian size differs from N".into()));
                }
                isotypic_eigenvalues(l)?.into_iter().map(|lam| lam - 1.0).collect()
            }
            (None, "cycle") => {
                cycle_laplacian(self.n)?.spectrum.iter().map(|s| -(s.z_value + 1.0)).collect()
            }
            (None, other) => return Err(PendulaError::InvalidParameter(format!("unknown coupling '{other}'"))),
        };
        let eigenvalues = mu.into_iter().enumerate().map(|(j, mu)| Eigenvalue { j, mu, multiplicity: 1 }).collect();
        let mut config = AnalysisConfig::new(self.n, self.beta, eigenvalues);
        config.resonance = self.resonance;
        if self.resonance == ResonancePolicy::Reject {
            let resonant = resonances(&config);
            if !resonant.is_empty() {
                return Err(PendulaError::Resonance(resonant));
            }
        }
        sigma_sets(&config)?;
        Ok(config)
    }
}

/// Pairs with `β²(z_j + 1) = m²` within `ε`.
fn resonances(config: &AnalysisConfig) -> Vec<(u32, usize)> {
    let mut relaxed = config.clone();
    relaxed.resonance = ResonancePolicy::Restrict;
    sigma_sets(&relaxed).map(|s| s.resonant.iter().map(|l| (l.m, l.j)).collect()).unwrap_or_default()
}

pub fn pendula_config(n: usize, beta: f64, q: u32) -> Result<AnalysisConfig, PendulaError> {
    PendulaSpec::new(n, beta, q).config()
}

#[derive(Clone, Debug, Serialize)]
pub struct ExistenceEntry {
    pub orbit_type: String,
    pub m: u32,
    pub j: usize,
    pub coefficient: i64,
    pub guarantee: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExcludedEntry {
    pub orbit_type: String,
    pub m: u32,
    pub j: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExistenceReport {
    pub sigma_zero: Vec<SpectralIndex>,
    pub resonant: Vec<IrrepLabel>,
    pub entries: Vec<ExistenceEntry>,
    /// Candidates with zero coefficient or touched by a resonance.
    pub excluded: Vec<ExcludedEntry>,
    pub sign_convention: String,
}

/// One entry per `H ∈ 𝔐_{m,j}` with `(m, j) ∈ Σ₀`, `m ≥ 1`, and a nonzero
/// coefficient at `H` in the degree invariant.
pub fn existence_report(g: &SymmetryGroup, config: &AnalysisConfig) -> Result<ExistenceReport, PendulaError> {
    let sigma = sigma_sets(config)?;
    let present: BTreeSet<(u32, usize)> = sigma.zero.iter().map(|i| (i.m, i.j)).collect();
    let mut entries = Vec::new();
    let mut excluded = Vec::new();
    for (h, base) in maximal_candidates(g, &sigma.zero, config.convention)? {
        for &(m, j) in present.iter().filter(|(m, j)| *m > 0 && *j == base.j) {
            let t = g.fold(&h, m);
            let name = g.name(&t);
            let mut touched = None;
            for r in &sigma.resonant {
                let v = g.irrep(*r, config.convention).map_err(DegreeError::from)?;
                if g.fixed_point_dim(&v, &t).map_err(DegreeError::from)? > 0 {
                    touched = Some(*r);
                    break;
                }
            }
            if let Some(r) = touched {
                let reason = format!("resonant component (m, j) = ({}, {}) has nonzero fixed points", r.m, r.j);
                excluded.push(ExcludedEntry { orbit_type: name, m, j, reason });
                continue;
            }
            let c = coeff_maximal_fast_with(g, &h, 1, m, &sigma.zero, config.convention)?;
            if c == 0 {
                excluded.push(ExcludedEntry { orbit_type: name, m, j, reason: "zero coefficient".into() });
                continue;
            }
            let guarantee = format!("non-stationary periodic solution with (G_u) >= {name}");
            entries.push(ExistenceEntry { orbit_type: name, m, j, coefficient: c, guarantee });
        }
    }
    let sign_convention = match config.convention {
        IndexConvention::Antipodal => "A = L - I on the antipodal components V_j^-; mu_j = -(z_j + 1)",
        IndexConvention::Reference => "reference index convention; mu_j = -(z_j + 1)",
    };
    Ok(ExistenceReport {
        sigma_zero: sigma.zero,
        resonant: sigma.resonant,
        entries,
        excluded,
        sign_convention: sign_convention.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d8_spectrum() {
        let l = cycle_laplacian(8).unwrap();
        let z: Vec<f64> = l.spectrum.iter().map(|s| s.z_value).collect();
        let s2 = 2f64.sqrt();
        for (a, b) in z.iter().zip([0.0, 2.0 - s2, 2.0, 2.0 + s2, 4.0]) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(z_exact(8, 2).to_integer(), Some(2));
        assert_eq!(z_exact(4, 1).to_integer(), Some(2));
        assert_eq!(z_exact(4, 2).to_integer(), Some(4));
        assert!(l.matrix.iter().all(|r| r.iter().sum::<i64>() == 0));
        assert!(cycle_laplacian(2).is_err());
    }

    #[test]
    fn resonant_beta_is_rejected() {
        // β = 1 hits (m, j) = (1, 0) since z_0 = 0.
        match pendula_config(8, 1.0, 2) {
            Err(PendulaError::Resonance(r)) => assert!(r.contains(&(1, 0))),
            other => panic!("{other:?}"),
        }
        let c = pendula_config(8, 1.1, 2).unwrap();
        assert!((c.mu(0).unwrap() + 1.0).abs() < 1e-15);
        assert!(pendula_config(8, 1.1, 3).is_err());
    }

    #[test]
    fn custom_laplacian_matches_cycle() {
        let l = cycle_laplacian(6).unwrap();
        let m: Vec<Vec<f64>> = l.matrix.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let lam = isotypic_eigenvalues(&m).unwrap();
        for (a, s) in lam.iter().zip(&l.spectrum) {
            assert!((a + s.z_value).abs() < 1e-12);
        }
        let mut bad = m.clone();
        bad[0][2] = 0.5;
        assert_eq!(isotypic_eigenvalues(&bad), Err(PendulaError::NotEquivariant));
    }
}
