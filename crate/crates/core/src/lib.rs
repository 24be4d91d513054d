//! Workbench for classical and quantum graph parameters.
//!
//! The crate is organised bottom-up:
//!
//! - [`graphs`]: finite simple graphs, named families and products.
//! - [`combinatorics`]: exact classical parameters (α, ω, χ, χ_f) and
//!   homomorphism search.
//! - [`numerics`]: dense complex linear algebra, Jacobi eigensolver and
//!   projector predicates.
//! - [`theta`]: Lovász theta via ADMM and via the spectral formula.
//! - [`quantum`]: projector certificates for quantum homomorphisms, their
//!   transformations, and projective representations.
//! - [`capacity`]: channels, confusability graphs and entanglement-assisted
//!   zero-error protocols.
//! - [`audit`]: the parameter table and inequality checklist over a corpus.

pub mod audit;
pub mod capacity;
pub mod combinatorics;
pub mod config;
mod error;
pub mod graphs;
pub mod numerics;
pub mod quantum;
pub mod theta;

pub use config::Caps;
pub use error::{Error, Result};
pub use graphs::Graph;
