//! Fourier-Galerkin search for symmetric periodic orbits of
//! `ü = β²|u|^q u + β²Au`, restricted to the fixed space of an orbit type.

pub mod action;
pub mod model;
pub mod newton;

use std::fmt::Write as _;

use nalgebra::DVector;
use serde::Serialize;
use thiserror::Error;

pub use action::{default_candidates, isotropy_check, symmetric_basis, IsotropyReport};
pub use model::{Model, Nonlinearity};
pub use newton::{newton_solve, seed_state, NewtonOptions, Solution};

#[derive(Debug, Error)]
pub enum GalerkinError {
    #[error("fixed space of {0} is trivial")]
    DegenerateSymmetry(String),
    #[error("no convergence after {iterations} iterations, residual {residual:e}")]
    Convergence { iterations: usize, residual: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Lattice(#[from] o2deg::o2_lattice::LatticeError),
    #[error(transparent)]
    Pendula(#[from] o2deg::pendula::PendulaError),
}

/// Truncated Fourier series `u(t) = Σ_k a_k cos(kt) + b_k sin(kt)` in `ℝᴺ`.
///
/// Layout: `a_{k,i}` at `kN + i` for `k = 0..=M`, then `b_{k,i}` at
/// `(M + k)N + i` for `k = 1..=M`.
#[derive(Clone, Debug, PartialEq)]
pub struct GalerkinState {
    pub modes: usize,
    pub n: usize,
    pub coeffs: DVector<f64>,
}

impl GalerkinState {
    pub fn zeros(modes: usize, n: usize) -> Self {
        Self { modes, n, coeffs: DVector::zeros(state_dim(modes, n)) }
    }

    pub fn from_vec(modes: usize, n: usize, coeffs: DVector<f64>) -> Self {
        assert_eq!(coeffs.len(), state_dim(modes, n));
        Self { modes, n, coeffs }
    }

    pub fn cos_index(&self, k: usize, i: usize) -> usize {
        k * self.n + i
    }

    pub fn sin_index(&self, k: usize, i: usize) -> usize {
        debug_assert!(k >= 1);
        (self.modes + k) * self.n + i
    }

    pub fn set_a(&mut self, k: usize, i: usize, v: f64) {
        let idx = self.cos_index(k, i);
        self.coeffs[idx] = v;
    }

    pub fn set_b(&mut self, k: usize, i: usize, v: f64) {
        let idx = self.sin_index(k, i);
        self.coeffs[idx] = v;
    }

    pub fn a(&self, k: usize, i: usize) -> f64 {
        self.coeffs[self.cos_index(k, i)]
    }

    pub fn b(&self, k: usize, i: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.coeffs[self.sin_index(k, i)]
        }
    }

    /// Euclidean norm of the mode-`k` coefficients.
    pub fn mode_norm(&self, k: usize) -> f64 {
        (0..self.n).map(|i| self.a(k, i).powi(2) + self.b(k, i).powi(2)).sum::<f64>().sqrt()
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                (0..=self.modes)
                    .map(|k| {
                        let (s, c) = (k as f64 * t).sin_cos();
                        self.a(k, i) * c + self.b(k, i) * s
                    })
                    .sum()
            })
            .collect()
    }

    /// Same orbit with `modes` retained modes (padding with zeros).
    pub fn resized(&self, modes: usize) -> Self {
        let mut out = Self::zeros(modes, self.n);
        for k in 0..=modes.min(self.modes) {
            for i in 0..self.n {
                out.set_a(k, i, self.a(k, i));
                if k > 0 {
                    out.set_b(k, i, self.b(k, i));
                }
            }
        }
        out
    }

    pub fn is_nonstationary(&self, tol: f64) -> bool {
        (1..=self.modes).any(|k| self.mode_norm(k) > 10.0 * tol)
    }

    /// `t,u0,…,u{N-1}` sampled at 256 points of `[0, 2π)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for i in 0..self.n {
            let _ = write!(out, ",u{i}");
        }
        out.push('\n');
        for l in 0..256 {
            let t = 2.0 * std::f64::consts::PI * l as f64 / 256.0;
            let _ = write!(out, "{t:.12}");
            for v in self.eval(t) {
                let _ = write!(out, ",{v:.12e}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn state_dim(modes: usize, n: usize) -> usize {
    (2 * modes + 1) * n
}

#[derive(Clone, Debug, Serialize)]
pub struct ExportCoeffs {
    /// `a[k][i]`, `k = 0..=M`.
    pub cos: Vec<Vec<f64>>,
    /// `b[k][i]`, `k = 0..=M`; row 0 is zero.
    pub sin: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionExport {
    pub modes: usize,
    pub n: usize,
    pub coeffs: ExportCoeffs,
    pub residual_norm: f64,
    pub nonstationary: bool,
    pub isotropy: Option<String>,
    pub seed: u64,
}

impl SolutionExport {
    pub fn new(sol: &Solution, isotropy: Option<String>, seed: u64) -> Self {
        let s = &sol.state;
        let rows = |f: &dyn Fn(usize, usize) -> f64| (0..=s.modes).map(|k| (0..s.n).map(|i| f(k, i)).collect()).collect();
        Self {
            modes: s.modes,
            n: s.n,
            coeffs: ExportCoeffs { cos: rows(&|k, i| s.a(k, i)), sin: rows(&|k, i| s.b(k, i)) },
            residual_norm: sol.residual_norm,
            nonstationary: sol.nonstationary,
            isotropy,
            seed,
        }
    }
}
