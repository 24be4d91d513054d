//! Orthogonal projectors with a cached integer rank.

use serde::{Deserialize, Serialize};

use super::eigh::eigh_with;
use super::matrix::{outer, ComplexMatrix};
use super::Tolerances;
use crate::config::Caps;
use crate::{Error, Result};

/// Largest `|tr P − round(tr P)|` accepted when reading off a rank.
pub const RANK_SLACK: f64 = 1e-6;

/// A Hermitian idempotent matrix. `rank = round(tr P)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Projector {
    m: ComplexMatrix,
    rank: usize,
}

impl Projector {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::default())
    }

    pub fn with_tolerances(m: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let rank = projector_rank(&m, tol)?;
        Ok(Projector { m, rank })
    }

    pub fn zero(d: usize) -> Self {
        Projector { m: ComplexMatrix::zeros(d, d), rank: 0 }
    }

    pub fn identity(d: usize) -> Self {
        Projector { m: ComplexMatrix::identity(d), rank: d }
    }

    /// Projector onto the span of orthonormal columns `q`.
    pub fn from_orthonormal_columns(q: &ComplexMatrix) -> Result<Self> {
        let p = q * &q.adjoint();
        Self::new(p)
    }

    /// Rank-one projector `v v*/‖v‖²`.
    pub fn from_vector(v: &ComplexMatrix) -> Result<Self> {
        let n2 = v.frobenius_norm().powi(2);
        if n2 == 0.0 {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        Self::new(outer(v).scale_real(1.0 / n2))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }
}

impl Serialize for Projector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Projector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(d)?;
        Projector::new(m).map_err(serde::de::Error::custom)
    }
}

/// `‖P² − P‖_F`.
pub fn idempotency_residual(m: &ComplexMatrix) -> f64 {
    (&(m * m) - m).frobenius_norm()
}

/// Checks projector-ness within `tol` and returns `round(tr m)`. When the
/// tolerance is too loose to pin the rank by the trace alone, the count of
/// eigenvalues above 1/2 must agree.
pub fn projector_rank(m: &ComplexMatrix, tol: &Tolerances) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NotProjector(format!("{}×{} is not square", m.rows(), m.cols())));
    }
    let scale = m.frobenius_norm().max(1.0);
    let herm = m.hermitian_residual();
    if herm > tol.herm * scale {
        return Err(Error::NotProjector(format!("hermiticity residual {herm:e}")));
    }
    let idem = idempotency_residual(m);
    if idem > tol.idem * scale {
        return Err(Error::NotProjector(format!("idempotency residual {idem:e}")));
    }
    let tr = m.trace().re;
    let rank = tr.round();
    if (tr - rank).abs() > RANK_SLACK || rank < 0.0 {
        return Err(Error::NotProjector(format!("ambiguous rank: trace {tr}")));
    }
    let d = m.rows();
    if (d as f64) * tol.idem * scale >= 0.25 {
        let e = eigh_with(m, tol, &Caps::default())?;
        let count = e.values.iter().filter(|&&x| x > 0.5).count();
        if count != rank as usize {
            return Err(Error::NotProjector(format!(
                "trace rank {rank} disagrees with eigencount {count}"
            )));
        }
    }
    Ok(rank as usize)
}

pub fn is_projector(m: &ComplexMatrix, tol: &Tolerances) -> bool {
    projector_rank(m, tol).is_ok()
}

/// `‖PQ‖_F ≤ tol`.
pub fn is_orthogonal_pair(p: &ComplexMatrix, q: &ComplexMatrix, tol: f64) -> bool {
    match p.try_matmul(q) {
        Ok(pq) => pq.frobenius_norm() <= tol,
        Err(_) => false,
    }
}
