//! Collocation residual and Jacobian of `ü - β²f(u) - β²Au`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use o2deg::pendula::{cycle_laplacian, PendulaSpec};

use crate::{state_dim, GalerkinError, GalerkinState};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nonlinearity {
    /// `f(u)_i = |u_i|^q u_i`.
    Power(u32),
    Zero,
}

impl Nonlinearity {
    fn value(&self, u: f64) -> f64 {
        match *self {
            Self::Power(q) => u.abs().powi(q as i32) * u,
            Self::Zero => 0.0,
        }
    }

    fn derivative(&self, u: f64) -> f64 {
        match *self {
            Self::Power(q) => (q as f64 + 1.0) * u.abs().powi(q as i32),
            Self::Zero => 0.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Model {
    pub n: usize,
    pub beta: f64,
    pub f: Nonlinearity,
    /// `A = L - I`.
    pub a: DMatrix<f64>,
    pub modes: usize,
    /// Collocation points per period.
    pub grid: usize,
    synth: DMatrix<f64>,
    analysis: DMatrix<f64>,
}

impl Model {
    pub fn new(n: usize, beta: f64, f: Nonlinearity, a: DMatrix<f64>, modes: usize) -> Self {
        Self::with_grid(n, beta, f, a, modes, 4 * modes + 4)
    }

    pub fn with_grid(n: usize, beta: f64, f: Nonlinearity, a: DMatrix<f64>, modes: usize, grid: usize) -> Self {
        let (synth, analysis) = transforms(modes, grid);
        Self { n, beta, f, a, modes, grid, synth, analysis }
    }

    /// The pendula system, `A = L - I` with the configured coupling matrix.
    pub fn pendula(spec: &PendulaSpec, modes: usize) -> Result<Self, GalerkinError> {
        spec.config()?;
        let l = match &spec.laplacian {
            Some(m) => DMatrix::from_fn(spec.n, spec.n, |i, k| m[i][k]),
            None => {
                let c = cycle_laplacian(spec.n)?;
                DMatrix::from_fn(spec.n, spec.n, |i, k| c.matrix[i][k] as f64)
            }
        };
        let a = l - DMatrix::identity(spec.n, spec.n);
        Ok(Self::new(spec.n, spec.beta, Nonlinearity::Power(spec.q), a, modes))
    }

    pub fn dim(&self) -> usize {
        state_dim(self.modes, self.n)
    }

    fn check(&self, x: &GalerkinState) {
        assert!(x.modes == self.modes && x.n == self.n, "state shape does not match the model");
    }

    /// Samples `u(t_l)` as a `grid × N` matrix.
    fn samples(&self, x: &GalerkinState) -> DMatrix<f64> {
        let c = self.coeff_matrix(x);
        &self.synth * c
    }

    /// Coefficients as a `(2M+1) × N` matrix, rows `a_0..a_M, b_1..b_M`.
    fn coeff_matrix(&self, x: &GalerkinState) -> DMatrix<f64> {
        DMatrix::from_fn(2 * self.modes + 1, self.n, |r, i| x.coeffs[r * self.n + i])
    }

    fn flatten(&self, c: &DMatrix<f64>) -> DVector<f64> {
        DVector::from_fn(self.dim(), |idx, _| c[(idx / self.n, idx % self.n)])
    }

    /// Linear part `ü - β²Au` in coefficient space.
    fn linear(&self, c: &DMatrix<f64>) -> DMatrix<f64> {
        let b2 = self.beta * self.beta;
        let mut out = c * self.a.transpose() * (-b2);
        for r in 0..c.nrows() {
            let k = if r <= self.modes { r } else { r - self.modes };
            let k2 = (k * k) as f64;
            for i in 0..self.n {
                out[(r, i)] -= k2 * c[(r, i)];
            }
        }
        out
    }

    pub fn residual(&self, x: &GalerkinState) -> DVector<f64> {
        self.check(x);
        let c = self.coeff_matrix(x);
        let u = &self.synth * &c;
        let fu = u.map(|v| self.f.value(v));
        let proj = &self.analysis * fu;
        let r = self.linear(&c) - proj * (self.beta * self.beta);
        self.flatten(&r)
    }

    pub fn jacobian(&self, x: &GalerkinState) -> DMatrix<f64> {
        self.check(x);
        let u = self.samples(x);
        let d = u.map(|v| self.f.derivative(v));
        let dim = self.dim();
        let b2 = self.beta * self.beta;
        let mut jac = DMatrix::zeros(dim, dim);
        let rows = 2 * self.modes + 1;
        for col in 0..dim {
            let (r0, i0) = (col / self.n, col % self.n);
            let mut e = DMatrix::zeros(rows, self.n);
            e[(r0, i0)] = 1.0;
            let mut out = self.linear(&e);
            // Nonlinear part only touches coordinate i0.
            for r in 0..rows {
                let s: f64 = (0..self.grid).map(|l| self.analysis[(r, l)] * d[(l, i0)] * self.synth[(l, r0)]).sum();
                out[(r, i0)] -= b2 * s;
            }
            jac.set_column(col, &self.flatten(&out));
        }
        jac
    }
}

/// Synthesis (`grid × (2M+1)`) and discrete projection (`(2M+1) × grid`).
fn transforms(modes: usize, grid: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    let rows = 2 * modes + 1;
    let t = |l: usize| 2.0 * PI * l as f64 / grid as f64;
    let basis = |r: usize, l: usize| {
        if r <= modes {
            (r as f64 * t(l)).cos()
        } else {
            ((r - modes) as f64 * t(l)).sin()
        }
    };
    let synth = DMatrix::from_fn(grid, rows, |l, r| basis(r, l));
    let analysis = DMatrix::from_fn(rows, grid, |r, l| {
        let w = if r == 0 { 1.0 } else { 2.0 };
        w * basis(r, l) / grid as f64
    });
    (synth, analysis)
}
