//! Quantum homomorphisms as projector certificates.
//!
//! A certificate for `X ⇒ Y` in dimension `d` is a family of `d×d`
//! projectors `E_xy` such that each row `{E_xy}_y` is a projective
//! measurement and `E_xy E_x'y' = 0` whenever `x ~ x'` but `y ≁ y'`.
//! Every certificate is verified when it is built; constructions and
//! transformations only accept verified certificates and re-verify their
//! output.

mod certificate;
mod nonsignal;
mod projective;
mod projrank;
mod transforms;

/// Absolute tolerance on Frobenius norms used for certificates.
pub const CERT_TOL: f64 = 1e-8;

pub use certificate::{
    verify, CertificateData, CertificateJson, QuantumHomCertificate, VerificationReport, Violation, ViolationKind,
};
pub use nonsignal::{k2_correlation, losing_mass, ns_check, ns_residuals, NSCorrelation, NSResiduals, NS_TOL};
pub use projective::{
    kneser_to_projective, projrep_from_independence_cert, projrep_tensor_pullback, ProjectiveJson,
    ProjectiveRepresentation,
};
pub use projrank::{projrank_search, ProjrankOptions, ProjrankOutcome, ProjrankSummary, SUCCESS_RESIDUAL};
pub use transforms::{
    cert_from_classical_hom, cert_to_independence_cert, cert_to_theta_vectors, compose_certificates, direct_sum,
    equalize_ranks, independence_cert_to_hom_cert, kneser_cert_lift, omega_coloring_certificate, realify_certificate,
    restrict_to_component, ComponentRestriction,
};
