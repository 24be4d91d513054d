//! Dense complex linear algebra for the SDP, certificate and protocol code.

mod eigh;
mod matrix;
mod projector;
mod random;

use serde::{Deserialize, Serialize};

pub use eigh::{eigh, eigh_symmetric, eigh_with, Eigh, MAX_SWEEPS};
pub use matrix::{
    kron, orthonormalize_columns, outer, partial_trace_first, partial_trace_second, realify,
    unvec, vec, ComplexMatrix, RealMatrix, C64,
};
pub use projector::{
    idempotency_residual, is_orthogonal_pair, is_projector, projector_rank, Projector, RANK_SLACK,
};
pub use random::{
    gaussian_matrix, gaussian_real_matrix, max_entangled_vector, random_hermitian,
    random_isometry, random_projector, random_projector_rng, seeded_rng, split_rng,
    standard_complex, Rng,
};

/// Numerical tolerances. `herm` and `idem` are relative to
/// `max(1, ‖M‖_F)`; `orth` is absolute on `‖PQ‖_F`; `eig` bounds the
/// eigen-residual relative to `‖M‖_F`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub herm: f64,
    pub idem: f64,
    pub orth: f64,
    pub eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { herm: 1e-9, idem: 1e-9, orth: 1e-9, eig: 1e-12 }
    }
}

impl Tolerances {
    /// The same value for the three projector tolerances; `eig` keeps its default.
    pub fn uniform(tol: f64) -> crate::Result<Self> {
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(crate::Error::InvalidArgument(format!("bad tolerance {tol}")));
        }
        Ok(Tolerances { herm: tol, idem: tol, orth: tol, ..Default::default() })
    }
}
