//! Search for `d/r`-representations by Riemannian gradient descent on
//! products of complex Stiefel manifolds.
//!
//! Each vertex carries an orthonormal frame `V_x ∈ C^{d×r}` and the
//! objective is `Σ_{x~x'} ‖V_x* V_x'‖_F²`, which vanishes exactly on
//! representations. A failed search reports its best residual; it is never
//! evidence that no representation exists.

use serde::Serialize;

use super::projective::ProjectiveRepresentation;
use crate::graphs::Graph;
use crate::numerics::{orthonormalize_columns, random_isometry, split_rng, ComplexMatrix};
use crate::{Error, Result};

pub const SUCCESS_RESIDUAL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct ProjrankOptions {
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for ProjrankOptions {
    fn default() -> Self {
        ProjrankOptions { restarts: 20, iterations: 4000, seed: 0, tol: super::CERT_TOL }
    }
}

#[derive(Clone, Debug)]
pub enum ProjrankOutcome {
    Found {
        representation: ProjectiveRepresentation,
        restart: usize,
        iterations: usize,
        residual: f64,
    },
    /// No certificate found. This is not a proof of nonexistence.
    NotFound { best_residual: f64, restarts: usize },
}

#[derive(Serialize)]
pub struct ProjrankSummary {
    pub found: bool,
    pub residual: f64,
    pub restarts: usize,
}

impl ProjrankOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, ProjrankOutcome::Found { .. })
    }

    pub fn residual(&self) -> f64 {
        match self {
            ProjrankOutcome::Found { residual, .. } => *residual,
            ProjrankOutcome::NotFound { best_residual, .. } => *best_residual,
        }
    }

    pub fn summary(&self) -> ProjrankSummary {
        match self {
            ProjrankOutcome::Found { restart, residual, .. } => {
                ProjrankSummary { found: true, residual: *residual, restarts: restart + 1 }
            }
            ProjrankOutcome::NotFound { best_residual, restarts } => {
                ProjrankSummary { found: false, residual: *best_residual, restarts: *restarts }
            }
        }
    }
}

pub fn projrank_search(g: &Graph, d: usize, r: usize, opts: &ProjrankOptions) -> Result<ProjrankOutcome> {
    if r == 0 || r > d {
        return Err(Error::InvalidArgument(format!("rank {r} must lie in 1..={d}")));
    }
    let mut best = f64::INFINITY;
    for restart in 0..opts.restarts {
        let mut rng = split_rng(opts.seed, restart as u64);
        let frames: Vec<ComplexMatrix> =
            (0..g.n()).map(|_| random_isometry(d, r, &mut rng)).collect::<Result<_>>()?;
        let (frames, residual, iterations) = descend(g, frames, opts.iterations);
        if residual < SUCCESS_RESIDUAL {
            let projectors = frames.iter().map(|v| v * &v.adjoint()).collect();
            let representation = ProjectiveRepresentation::new(g.clone(), d, r, projectors, opts.tol)?;
            return Ok(ProjrankOutcome::Found { representation, restart, iterations, residual });
        }
        best = best.min(residual);
    }
    Ok(ProjrankOutcome::NotFound { best_residual: best, restarts: opts.restarts })
}

fn objective(edges: &[(usize, usize)], v: &[ComplexMatrix]) -> f64 {
    edges
        .iter()
        .map(|&(a, b)| (&v[a].adjoint() * &v[b]).frobenius_norm().powi(2))
        .sum()
}

/// Riemannian gradient `G − V·sym(V* G)` with `G = 2 Σ_{x'~x} V_x' V_x'* V_x`.
fn gradient(g: &Graph, v: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    v.iter()
        .enumerate()
        .map(|(x, vx)| {
            let mut grad = ComplexMatrix::zeros(vx.rows(), vx.cols());
            for y in g.neighbors(x) {
                let inner = &v[y].adjoint() * vx;
                grad = &grad + &(&v[y] * &inner);
            }
            let grad = grad.scale_real(2.0);
            let vg = &vx.adjoint() * &grad;
            &grad - &(vx * &vg.hermitian_part())
        })
        .collect()
}

fn retract(v: &[ComplexMatrix], dir: &[ComplexMatrix], t: f64) -> Vec<ComplexMatrix> {
    v.iter()
        .zip(dir)
        .map(|(a, b)| {
            let moved = a - &b.scale_real(t);
            orthonormalize_columns(&moved).unwrap_or_else(|_| a.clone())
        })
        .collect()
}

fn sq_norm(v: &[ComplexMatrix]) -> f64 {
    v.iter().map(|m| m.frobenius_norm().powi(2)).sum()
}

fn descend(g: &Graph, mut v: Vec<ComplexMatrix>, iterations: usize) -> (Vec<ComplexMatrix>, f64, usize) {
    let edges = g.edges();
    let mut f = objective(&edges, &v);
    let mut grad = gradient(g, &v);
    let mut step = 0.1;
    for it in 0..iterations {
        if f.sqrt() < SUCCESS_RESIDUAL {
            return (v, f.sqrt(), it);
        }
        let gnorm = sq_norm(&grad);
        if gnorm < 1e-30 {
            break;
        }
        let mut t = step;
        let mut accepted = None;
        for _ in 0..40 {
            let cand = retract(&v, &grad, t);
            let fc = objective(&edges, &cand);
            if fc <= f - 1e-4 * t * gnorm {
                accepted = Some((cand, fc));
                break;
            }
            t *= 0.5;
        }
        let Some((next, fnext)) = accepted else { break };
        let gnext = gradient(g, &next);
        // Barzilai–Borwein step from the ambient differences.
        let (mut ss, mut sy) = (0.0, 0.0);
        for k in 0..v.len() {
            let s = &next[k] - &v[k];
            let y = &gnext[k] - &grad[k];
            ss += s.frobenius_norm().powi(2);
            sy += s.inner(&y).re;
        }
        step = if sy > 0.0 { (ss / sy).clamp(1e-6, 1e3) } else { (2.0 * t).min(1e3) };
        v = next;
        f = fnext;
        grad = gnext;
    }
    let res = f.sqrt();
    (v, res, iterations)
}
