//! Unit-vector representations `X → S(m, α)` and the handle bound.

use serde::Serialize;

use super::ThetaMode;
use crate::graphs::Graph;
use crate::numerics::{eigh, ComplexMatrix, C64};
use crate::{Error, Result};

/// Unit vectors with `v_u·v_w = alpha` on edges (or `≤ alpha` in the
/// inequality mode). Such a representation of `g` gives `ϑ̄(g) ≤ 1 − 1/alpha`.
#[derive(Clone, Debug, Serialize)]
pub struct SVectorRepresentation {
    pub alpha: f64,
    pub mode: ThetaMode,
    pub vectors: Vec<Vec<f64>>,
}

impl SVectorRepresentation {
    /// `1 − 1/alpha`.
    pub fn bound(&self) -> f64 {
        1.0 - 1.0 / self.alpha
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    /// Factors a PSD Gram matrix into vectors, dropping eigenvalues below
    /// `1e-10·‖G‖`.
    pub fn from_gram(gram: &ComplexMatrix, alpha: f64, mode: ThetaMode) -> Result<Self> {
        if !gram.is_real(1e-12) {
            return Err(Error::InvalidArgument("Gram matrix must be real".into()));
        }
        let n = gram.rows();
        let e = eigh(gram)?;
        let floor = 1e-10 * gram.frobenius_norm().max(1.0);
        if e.min() < -floor {
            return Err(Error::InvalidArgument(format!("Gram matrix has eigenvalue {}", e.min())));
        }
        let keep: Vec<usize> = (0..n).filter(|&k| e.values[k] > floor).collect();
        let vectors = (0..n)
            .map(|i| {
                keep.iter()
                    .map(|&k| e.values[k].sqrt() * e.vectors.get(i, k).re)
                    .collect()
            })
            .collect();
        Ok(SVectorRepresentation { alpha, mode, vectors })
    }

    /// Worst deviation from the contract: `|‖v‖−1|` and, per edge, the
    /// excess of `v_u·v_w` over `alpha` (two-sided in equality mode).
    pub fn violations(&self, g: &Graph) -> Result<(f64, f64)> {
        if self.vectors.len() != g.n() {
            return Err(Error::Shape("one vector per vertex expected".into()));
        }
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let norm = self
            .vectors
            .iter()
            .map(|v| (dot(v, v).sqrt() - 1.0).abs())
            .fold(0.0, f64::max);
        let edge = g
            .edges()
            .into_iter()
            .map(|(u, w)| {
                let d = dot(&self.vectors[u], &self.vectors[w]) - self.alpha;
                match self.mode {
                    ThetaMode::Equality => d.abs(),
                    ThetaMode::Inequality => d.max(0.0),
                }
            })
            .fold(0.0, f64::max);
        Ok((norm, edge))
    }

    pub fn verify(&self, g: &Graph, tol: f64) -> Result<()> {
        if !(self.alpha < 0.0) {
            return Err(Error::Verification(format!("alpha = {} is not negative", self.alpha)));
        }
        let (norm, edge) = self.violations(g)?;
        if norm > 1e-9 {
            return Err(Error::Verification(format!("vector norm off by {norm:e}")));
        }
        if edge > tol {
            return Err(Error::Verification(format!("edge inner product off by {edge:e}")));
        }
        Ok(())
    }
}

/// The regular simplex: `n` unit vectors in `R^{n−1}` with pairwise inner
/// product `−1/(n−1)`.
pub fn simplex_representation(n: usize) -> Result<SVectorRepresentation> {
    if n < 2 {
        return Err(Error::InvalidArgument("simplex needs n ≥ 2".into()));
    }
    let alpha = -1.0 / (n as f64 - 1.0);
    let gram = ComplexMatrix::from_fn(n, n, |i, j| C64::new(if i == j { 1.0 } else { alpha }, 0.0));
    let mut rep = SVectorRepresentation::from_gram(&gram, alpha, ThetaMode::Equality)?;
    for v in &mut rep.vectors {
        v.truncate(n - 1);
    }
    if rep.dim() != n - 1 {
        return Err(Error::Internal(format!("simplex Gram rank {} ≠ {}", rep.dim(), n - 1)));
    }
    Ok(rep)
}

/// `max_x 1/|⟨c, φ(x)⟩|²` for an orthonormal representation `φ` of `g`
/// (unit vectors, orthogonal on non-adjacent pairs) and unit handle `c`.
/// The result bounds `θ(g)` from above.
pub fn handle_bound(g: &Graph, rep: &[Vec<C64>], c: &[C64], tol: f64) -> Result<f64> {
    if rep.len() != g.n() {
        return Err(Error::Shape("one vector per vertex expected".into()));
    }
    let dim = c.len();
    if rep.iter().any(|v| v.len() != dim) {
        return Err(Error::Shape("vector and handle dimensions differ".into()));
    }
    let inner = |a: &[C64], b: &[C64]| a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C64>();
    let unit = |v: &[C64]| (inner(v, v).re.sqrt() - 1.0).abs() <= tol;
    if !unit(c) {
        return Err(Error::InvalidArgument("handle is not a unit vector".into()));
    }
    if let Some(x) = (0..g.n()).find(|&x| !unit(&rep[x])) {
        return Err(Error::InvalidArgument(format!("vector {x} is not a unit vector")));
    }
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            if !g.has_edge(x, y) {
                let ip = inner(&rep[x], &rep[y]).norm();
                if ip > tol {
                    return Err(Error::InvalidArgument(format!(
                        "non-adjacent pair ({x},{y}) has inner product {ip:e}"
                    )));
                }
            }
        }
    }
    Ok(rep
        .iter()
        .map(|v| 1.0 / inner(c, v).norm_sqr())
        .fold(if g.n() == 0 { 0.0 } else { f64::NEG_INFINITY }, f64::max))
}
