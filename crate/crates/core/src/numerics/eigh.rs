//! Cyclic Jacobi eigensolvers: complex Hermitian, and a real symmetric
//! variant that accepts a warm-start eigenbasis.

use num::Zero;

use super::matrix::{real_matmul_into, ComplexMatrix, C64};
use super::Tolerances;
use crate::config::{check_cap, Caps};
use crate::{Error, Result};

pub const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with the matching eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigh {
    /// `‖M·V − V·diag(λ)‖_F`.
    pub fn residual(&self, m: &ComplexMatrix) -> f64 {
        let mv = m * &self.vectors;
        let n = m.rows();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (mv.get(i, j) - self.vectors.get(i, j) * self.values[j]).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }
}

pub fn eigh(m: &ComplexMatrix) -> Result<Eigh> {
    eigh_with(m, &Tolerances::default(), &Caps::default())
}

pub fn eigh_with(m: &ComplexMatrix, tol: &Tolerances, caps: &Caps) -> Result<Eigh> {
    if !m.is_square() {
        return Err(Error::Shape(format!("eigh of {}×{} matrix", m.rows(), m.cols())));
    }
    check_cap("eigensolver dimension", m.rows(), caps.eig_dim)?;
    let norm = m.frobenius_norm();
    let herm = m.hermitian_residual();
    if herm > tol.herm * norm.max(1.0) {
        return Err(Error::NotHermitian { residual: herm });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let target = 1e-15 * norm;

    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        let off = off_norm(&a);
        if off <= target {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                if sweep > 3 && app.abs() + 1e2 * g == app.abs() && aqq.abs() + 1e2 * g == aqq.abs() {
                    a.set(p, q, C64::zero());
                    a.set(q, p, C64::zero());
                    continue;
                }
                rotated = true;
                rotate(&mut a, &mut v, p, q, apq, app, aqq);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged && off_norm(&a) > tol.eig * norm {
        return Err(Error::NoConvergence {
            iterations: MAX_SWEEPS,
            detail: format!("Jacobi off-diagonal norm {:e}", off_norm(&a)),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = v.select_columns(&order);
    let out = Eigh { values, vectors };
    let res = out.residual(m);
    if res > tol.eig * norm.max(f64::MIN_POSITIVE) && res > 1e-300 {
        return Err(Error::NoConvergence {
            iterations: MAX_SWEEPS,
            detail: format!("eigen-residual {res:e} exceeds {:e}·‖M‖", tol.eig),
        });
    }
    Ok(out)
}

fn off_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc += a.get(p, q).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Zeroes `a[p][q]` with `W = diag(1, e^{-iφ})·R(θ)` on rows/columns `p, q`.
fn rotate(
    a: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    apq: C64,
    app: f64,
    aqq: f64,
) {
    let n = a.rows();
    let g = apq.norm();
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let em = phase.conj();
    let w_pp = C64::new(c, 0.0);
    let w_pq = C64::new(s, 0.0);
    let w_qp = -em * s;
    let w_qq = em * c;

    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * w_pp + akq * w_qp);
        a.set(k, q, akp * w_pq + akq * w_qq);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, w_pp.conj() * apk + w_qp.conj() * aqk);
        a.set(q, k, w_pq.conj() * apk + w_qq.conj() * aqk);
    }
    a.set(p, q, C64::zero());
    a.set(q, p, C64::zero());
    a.set(p, p, C64::new(app - t * g, 0.0));
    a.set(q, q, C64::new(aqq + t * g, 0.0));
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * w_pp + vkq * w_qp);
        v.set(k, q, vkp * w_pq + vkq * w_qq);
    }
}

/// Eigen-decomposition of a real symmetric `n×n` matrix given row-major.
/// `warm`, when present, is an orthogonal matrix whose columns approximately
/// diagonalize `a`; the solve then runs on `Wᵀ A W`. Eigenvectors are the
/// columns of the returned row-major matrix, values ascending.
pub fn eigh_symmetric(a: &[f64], n: usize, warm: Option<&[f64]>) -> Result<(Vec<f64>, Vec<f64>)> {
    if a.len() != n * n {
        return Err(Error::Shape("eigh_symmetric: data length".into()));
    }
    let mut m: Vec<f64>;
    let mut v: Vec<f64>;
    match warm {
        Some(w) if w.len() == n * n => {
            let wt = transpose(w, n);
            let mut tmp = vec![0.0; n * n];
            real_matmul_into(&wt, a, n, n, n, &mut tmp);
            m = vec![0.0; n * n];
            real_matmul_into(&tmp, w, n, n, n, &mut m);
            for i in 0..n {
                for j in i + 1..n {
                    let s = 0.5 * (m[i * n + j] + m[j * n + i]);
                    m[i * n + j] = s;
                    m[j * n + i] = s;
                }
            }
            v = w.to_vec();
        }
        _ => {
            m = a.to_vec();
            v = vec![0.0; n * n];
            for i in 0..n {
                v[i * n + i] = 1.0;
            }
        }
    }
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-15 * norm;
    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= target {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                if sweep > 3 && app.abs() + 1e2 * apq.abs() == app.abs() && aqq.abs() + 1e2 * apq.abs() == aqq.abs() {
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations: MAX_SWEEPS,
            detail: "real Jacobi did not converge".into(),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vectors[k * n + new] = v[k * n + old];
        }
    }
    Ok((values, vectors))
}

fn transpose(a: &[f64], n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = a[i * n + j];
        }
    }
    t
}
