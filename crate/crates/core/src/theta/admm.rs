//! ADMM for `max ⟨J, X⟩` over `X ⪰ 0`, `tr X = 1`, `X_uv = 0` on edges,
//! optionally with `X ≥ 0` entrywise.

use super::{SdpOptions, SdpResult, ThetaMode};
use crate::graphs::Graph;
use crate::numerics::{eigh_symmetric, RealMatrix};
use crate::{Error, Result};

const STABLE_WINDOW: usize = 100;
const ADAPT_UNTIL: usize = 2000;

pub(super) fn solve(g: &Graph, mode: ThetaMode, opts: &SdpOptions) -> Result<SdpResult> {
    let n = g.n();
    let nn = n * n;
    let edge = edge_mask(g);
    let inv_n = 1.0 / n as f64;
    let mut z = vec![0.0; nn];
    for i in 0..n {
        z[i * n + i] = inv_n;
    }
    let mut x = z.clone();
    let mut u = vec![0.0; nn];
    let mut rho = 1.0;
    let mut basis: Option<Vec<f64>> = None;
    let mut history: Vec<f64> = Vec::with_capacity(opts.max_iterations.min(1 << 16));
    let mut y = vec![0.0; nn];
    let (mut r_norm, mut s_norm) = (f64::INFINITY, f64::INFINITY);

    for it in 1..=opts.max_iterations {
        for k in 0..nn {
            y[k] = z[k] - u[k] + 1.0 / rho;
        }
        project_affine(&mut y, n, &edge, mode);
        x.copy_from_slice(&y);

        for k in 0..nn {
            y[k] = x[k] + u[k];
        }
        symmetrize(&mut y, n);
        let (vals, vecs) = eigh_symmetric(&y, n, basis.as_deref())?;
        let z_new = psd_rebuild(&vals, &vecs, n);
        basis = Some(vecs);

        r_norm = 0.0;
        s_norm = 0.0;
        for k in 0..nn {
            let r = x[k] - z_new[k];
            r_norm += r * r;
            let s = z_new[k] - z[k];
            s_norm += s * s;
            u[k] += r;
        }
        r_norm = r_norm.sqrt();
        s_norm = rho * s_norm.sqrt();
        z = z_new;

        let value: f64 = x.iter().sum();
        history.push(value);
        let scale = 1.0 + frob(&x);
        if r_norm.max(s_norm) < opts.tol * scale && it > STABLE_WINDOW {
            let window = &history[history.len() - STABLE_WINDOW..];
            let (lo, hi) = window
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
            if hi - lo <= opts.tol * value.abs().max(1.0) {
                let gap = dual_gap(&u, rho, &edge, n, mode, value)?;
                return Ok(SdpResult {
                    value,
                    mode,
                    witness: RealMatrix::from_vec(n, n, z)?,
                    primal_residual: r_norm,
                    dual_residual: s_norm,
                    dual_gap_estimate: gap,
                    iterations: it,
                });
            }
        }

        if it <= ADAPT_UNTIL {
            if r_norm > 10.0 * s_norm {
                rho *= 2.0;
                u.iter_mut().for_each(|v| *v *= 0.5);
            } else if s_norm > 10.0 * r_norm {
                rho *= 0.5;
                u.iter_mut().for_each(|v| *v *= 2.0);
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iterations,
        detail: format!("ADMM residuals primal {r_norm:e}, dual {s_norm:e}"),
    })
}

fn edge_mask(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut mask = vec![false; n * n];
    for (a, b) in g.edges() {
        mask[a * n + b] = true;
        mask[b * n + a] = true;
    }
    mask
}

fn frob(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn symmetrize(a: &mut [f64], n: usize) {
    for i in 0..n {
        for j in i + 1..n {
            let s = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = s;
            a[j * n + i] = s;
        }
    }
}

/// Euclidean projection onto the affine (or polyhedral) constraint set.
fn project_affine(y: &mut [f64], n: usize, edge: &[bool], mode: ThetaMode) {
    symmetrize(y, n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let k = i * n + j;
            if edge[k] {
                y[k] = 0.0;
            } else if mode == ThetaMode::Inequality && y[k] < 0.0 {
                y[k] = 0.0;
            }
        }
    }
    let mut diag: Vec<f64> = (0..n).map(|i| y[i * n + i]).collect();
    match mode {
        ThetaMode::Equality => {
            let shift = (1.0 - diag.iter().sum::<f64>()) / n as f64;
            diag.iter_mut().for_each(|d| *d += shift);
        }
        ThetaMode::Inequality => project_simplex(&mut diag),
    }
    for (i, d) in diag.into_iter().enumerate() {
        y[i * n + i] = d;
    }
}

/// Projection onto `{d ≥ 0, Σ d = 1}` by the sorting method.
fn project_simplex(d: &mut [f64]) {
    let mut s = d.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut tau = 0.0;
    for (k, &v) in s.iter().enumerate() {
        cum += v;
        let t = (cum - 1.0) / (k + 1) as f64;
        if v - t > 0.0 {
            tau = t;
        }
    }
    d.iter_mut().for_each(|v| *v = (*v - tau).max(0.0));
}

fn psd_rebuild(vals: &[f64], vecs: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for (k, &lam) in vals.iter().enumerate() {
        if lam <= 0.0 {
            continue;
        }
        for i in 0..n {
            let vi = lam * vecs[i * n + k];
            if vi == 0.0 {
                continue;
            }
            let row = &mut out[i * n..(i + 1) * n];
            for (j, r) in row.iter_mut().enumerate() {
                *r += vi * vecs[j * n + k];
            }
        }
    }
    out
}

/// `λ_max(A) − value` for the dual-feasible matrix read off the multiplier
/// `ρU`: unit diagonal, `ρU` on edges, and `1` (equality) or `max(1, ρU)`
/// (inequality) off edges. Any such `A` bounds the optimum from above.
fn dual_gap(u: &[f64], rho: f64, edge: &[bool], n: usize, mode: ThetaMode, value: f64) -> Result<f64> {
    let mut a = vec![1.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let k = i * n + j;
            if i == j {
                continue;
            }
            let m = rho * 0.5 * (u[k] + u[j * n + i]);
            if edge[k] {
                a[k] = m;
            } else if mode == ThetaMode::Inequality {
                a[k] = m.max(1.0);
            }
        }
    }
    let (vals, _) = eigh_symmetric(&a, n, None)?;
    Ok(vals[n - 1] - value)
}
