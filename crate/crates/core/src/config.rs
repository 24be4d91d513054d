/// Size caps that keep every exact computation desk-sized.
///
/// These are configuration rather than constants: every `*_with` entry point
/// takes a `Caps`, and the plain entry points use [`Caps::default`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` accepted by [`crate::graphs::omega_graph`].
    pub omega_n: usize,
    /// Largest vertex count for a full automorphism group computation.
    pub automorphism_full: usize,
    /// Largest vertex count for transitivity-only orbit checks.
    pub automorphism_orbit: usize,
    /// Largest vertex count for product and power constructions.
    pub product_vertices: usize,
    /// Largest vertex count for independence / clique branch-and-bound.
    pub clique_vertices: usize,
    /// Largest vertex count for the exact fractional chromatic LP.
    pub fractional_vertices: usize,
    /// Largest `|V(x)|·|V(y)|` for homomorphism search.
    pub homomorphism_size: usize,
    /// Largest vertex count for the theta SDP.
    pub sdp_vertices: usize,
    /// Largest matrix dimension handed to the eigensolver.
    pub eig_dim: usize,
    /// Largest number of vertices of a Kneser target built explicitly.
    pub kneser_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            omega_n: 12,
            automorphism_full: 32,
            automorphism_orbit: 128,
            product_vertices: 4096,
            clique_vertices: 64,
            fractional_vertices: 16,
            homomorphism_size: 1 << 16,
            sdp_vertices: 64,
            eig_dim: 512,
            kneser_vertices: 20_000,
        }
    }
}

pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> crate::Result<()> {
    if size > cap {
        Err(crate::Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
