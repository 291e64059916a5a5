//! Newton iteration restricted to a fixed space, with optional deflation of
//! the trivial branch.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{GalerkinError, GalerkinState, Model};

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Multiply the residual by `1/‖y‖² + 1` so that `y = 0` repels.
    pub deflation: bool,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 200, deflation: true }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub state: GalerkinState,
    /// `‖F(x)‖₂` of the undeflated residual.
    pub residual_norm: f64,
    pub iterations: usize,
    pub nonstationary: bool,
}

/// Amplitude 0.5 along the basis vector carrying most of the lowest
/// nonconstant mode, plus a seeded perturbation of size `1e-3`.
pub fn seed_state(basis: &DMatrix<f64>, modes: usize, n: usize, seed: u64) -> Result<GalerkinState, GalerkinError> {
    let probe = |col: usize, k: usize| {
        GalerkinState::from_vec(modes, n, basis.column(col).into_owned()).mode_norm(k)
    };
    let (k, col) = (1..=modes)
        .find_map(|k| {
            (0..basis.ncols())
                .map(|c| (c, probe(c, k)))
                .filter(|&(_, w)| w > 1e-8)
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(c, _)| (k, c))
        })
        .ok_or_else(|| GalerkinError::InvalidParameter("fixed space has no nonconstant mode".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = DVector::from_fn(basis.ncols(), |_, _| rng.gen_range(-1e-3..1e-3));
    // Rescale so the chosen mode has norm 0.5.
    y[col] += 0.5 / probe(col, k);
    Ok(GalerkinState::from_vec(modes, n, basis * y))
}

/// Solves `F(By) = 0` for `y`, starting from the projection of `initial`.
pub fn newton_solve(
    initial: &GalerkinState,
    model: &Model,
    basis: &DMatrix<f64>,
    opts: &NewtonOptions,
) -> Result<Solution, GalerkinError> {
    if !(opts.tol > 0.0) {
        return Err(GalerkinError::InvalidParameter(format!("tol = {} must be positive", opts.tol)));
    }
    if basis.nrows() != model.dim() || initial.coeffs.len() != model.dim() {
        return Err(GalerkinError::InvalidParameter("state, basis and model sizes differ".into()));
    }
    let (modes, n) = (model.modes, model.n);
    let lift = |y: &DVector<f64>| GalerkinState::from_vec(modes, n, basis * y);
    let reduced = |y: &DVector<f64>| basis.transpose() * model.residual(&lift(y));
    let merit = |y: &DVector<f64>| {
        let r = reduced(y);
        if opts.deflation {
            r * deflation(y).0
        } else {
            r
        }
    };

    let mut y = basis.transpose() * &initial.coeffs;
    let mut full = model.residual(&lift(&y)).norm();
    for it in 0..opts.max_iter {
        if full < opts.tol {
            return Ok(finish(lift(&y), full, it, opts.tol));
        }
        let x = lift(&y);
        let r = basis.transpose() * model.residual(&x);
        let jr = basis.transpose() * model.jacobian(&x) * basis;
        let (g, jg) = if opts.deflation {
            let (mu, grad) = deflation(&y);
            (&r * mu, &jr * mu + &r * grad.transpose())
        } else {
            (r.clone(), jr)
        };
        let step = match jg.clone().lu().solve(&(-&g)) {
            Some(s) if s.iter().all(|v| v.is_finite()) => s,
            _ => jg.svd(true, true).solve(&(-&g), 1e-14).map_err(|_| GalerkinError::Convergence {
                iterations: it,
                residual: full,
            })?,
        };
        // Backtracking on ‖G‖.
        let g0 = g.norm();
        let mut lambda = 1.0;
        let mut next = &y + &step * lambda;
        while merit(&next).norm() > (1.0 - 1e-4 * lambda) * g0 && lambda > 1e-6 {
            lambda *= 0.5;
            next = &y + &step * lambda;
        }
        y = next;
        full = model.residual(&lift(&y)).norm();
    }
    if full < opts.tol {
        return Ok(finish(lift(&y), full, opts.max_iter, opts.tol));
    }
    Err(GalerkinError::Convergence { iterations: opts.max_iter, residual: full })
}

/// `μ(y) = 1/‖y‖² + 1` and `∇μ = -2y/‖y‖⁴`.
fn deflation(y: &DVector<f64>) -> (f64, DVector<f64>) {
    let s = y.norm_squared().max(1e-300);
    (1.0 / s + 1.0, y * (-2.0 / (s * s)))
}

fn finish(state: GalerkinState, residual_norm: f64, iterations: usize, tol: f64) -> Solution {
    let nonstationary = state.is_nonstationary(tol);
    Solution { state, residual_norm, iterations, nonstationary }
}
