//! Lovász theta: an ADMM semidefinite solver, the closed form for regular
//! edge-transitive graphs, and vector representations.
//!
//! `lovasz_theta(g, Equality)` is `θ(g) = max{⟨J,M⟩ : tr M = 1, M_uv = 0 for
//! uv ∈ E(g), M ⪰ 0}`, so `θ(g) ≥ α(g)` and `ϑ̄(g) = θ(complement g)`.
//! `Inequality` adds `M ≥ 0` entrywise; applied to the complement this gives
//! the vector chromatic number.

mod admm;
mod vectors;

use serde::{Deserialize, Serialize};

use crate::config::{check_cap, Caps};
use crate::graphs::{is_edge_transitive_with, is_vertex_transitive_with, Graph};
use crate::numerics::{eigh_with, ComplexMatrix, RealMatrix, Tolerances};
use crate::{Error, Result};

pub use vectors::{handle_bound, simplex_representation, SVectorRepresentation};

pub const DEFAULT_TOL: f64 = 1e-7;
pub const MIN_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITERATIONS: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaMode {
    Equality,
    Inequality,
}

#[derive(Clone, Debug)]
pub struct SdpOptions {
    pub tol: f64,
    pub max_iterations: usize,
    pub caps: Caps,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions { tol: DEFAULT_TOL, max_iterations: DEFAULT_MAX_ITERATIONS, caps: Caps::default() }
    }
}

impl SdpOptions {
    pub fn with_tol(tol: f64) -> Self {
        SdpOptions { tol, ..Default::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SdpResult {
    pub value: f64,
    pub mode: ThetaMode,
    /// PSD optimizer estimate.
    #[serde(skip)]
    pub witness: RealMatrix,
    pub primal_residual: f64,
    pub dual_residual: f64,
    /// Upper bound from a dual-feasible matrix minus `value`.
    pub dual_gap_estimate: f64,
    pub iterations: usize,
}

pub fn lovasz_theta(g: &Graph, mode: ThetaMode) -> Result<SdpResult> {
    lovasz_theta_with(g, mode, &SdpOptions::default())
}

pub fn lovasz_theta_with(g: &Graph, mode: ThetaMode, opts: &SdpOptions) -> Result<SdpResult> {
    check_cap("theta SDP", g.n(), opts.caps.sdp_vertices)?;
    if !(opts.tol >= MIN_TOL) {
        return Err(Error::InvalidArgument(format!(
            "SDP tolerance {} below {MIN_TOL:e}",
            opts.tol
        )));
    }
    let n = g.n();
    if g.edge_count() == 0 {
        let w = if n == 0 {
            RealMatrix::zeros(0, 0)
        } else {
            RealMatrix::from_vec(n, n, vec![1.0 / n as f64; n * n])?
        };
        return Ok(SdpResult {
            value: n as f64,
            mode,
            witness: w,
            primal_residual: 0.0,
            dual_residual: 0.0,
            dual_gap_estimate: 0.0,
            iterations: 0,
        });
    }
    admm::solve(g, mode, opts)
}

/// `ϑ̄(g) = θ(complement g)`.
pub fn theta_bar(g: &Graph) -> Result<SdpResult> {
    theta_bar_with(g, &SdpOptions::default())
}

pub fn theta_bar_with(g: &Graph, opts: &SdpOptions) -> Result<SdpResult> {
    lovasz_theta_with(&g.complement(), ThetaMode::Equality, opts)
}

/// Vector chromatic number, the inequality relaxation of `ϑ̄`.
pub fn vector_chromatic(g: &Graph, opts: &SdpOptions) -> Result<SdpResult> {
    lovasz_theta_with(&g.complement(), ThetaMode::Inequality, opts)
}

/// `θ(g) = n·λ_min / (λ_min − λ_max)` for regular edge-transitive `g`.
pub fn theta_spectral(g: &Graph) -> Result<f64> {
    theta_spectral_with(g, &Caps::default())
}

pub fn theta_spectral_with(g: &Graph, caps: &Caps) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::Precondition("spectral formula needs at least one edge".into()));
    }
    if g.regular_degree().is_none() {
        return Err(Error::Precondition("spectral formula needs a regular graph".into()));
    }
    if !is_edge_transitive_with(g, caps)? {
        return Err(Error::Precondition("spectral formula needs an edge-transitive graph".into()));
    }
    let (lo, hi) = extreme_eigenvalues(g, caps)?;
    Ok(g.n() as f64 * lo / (lo - hi))
}

/// `ϑ̄(g) = n / θ(g)` with `θ(g)` from the spectral formula; needs `g`
/// vertex-transitive as well.
pub fn theta_bar_spectral(g: &Graph) -> Result<f64> {
    let caps = Caps::default();
    if !is_vertex_transitive_with(g, &caps)? {
        return Err(Error::Precondition("needs a vertex-transitive graph".into()));
    }
    Ok(g.n() as f64 / theta_spectral_with(g, &caps)?)
}

/// Smallest and largest adjacency eigenvalue.
pub fn extreme_eigenvalues(g: &Graph, caps: &Caps) -> Result<(f64, f64)> {
    let a = ComplexMatrix::from_real(g.n(), g.n(), &g.adjacency_matrix())?;
    let e = eigh_with(&a, &Tolerances::default(), caps)?;
    Ok((e.min(), e.max()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductIdentity {
    pub theta: f64,
    pub theta_bar: f64,
    pub product: f64,
    pub n: usize,
    pub holds: bool,
}

/// Checks `θ(g)·ϑ̄(g) = |V(g)|` within `tol·|V|` for vertex-transitive `g`.
pub fn vt_product_identity_check(g: &Graph, tol: f64, opts: &SdpOptions) -> Result<ProductIdentity> {
    if !is_vertex_transitive_with(g, &opts.caps)? {
        return Err(Error::Precondition("product identity needs a vertex-transitive graph".into()));
    }
    let theta = lovasz_theta_with(g, ThetaMode::Equality, opts)?.value;
    let theta_bar = theta_bar_with(g, opts)?.value;
    let product = theta * theta_bar;
    let n = g.n();
    Ok(ProductIdentity { theta, theta_bar, product, n, holds: (product - n as f64).abs() <= tol * n as f64 })
}
