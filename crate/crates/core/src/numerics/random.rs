//! Seeded sampling of Gaussian matrices, Hermitian matrices and projectors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::matrix::{orthonormalize_columns, ComplexMatrix, C64};
use super::projector::Projector;
use crate::{Error, Result};

pub type Rng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An independent child stream, so sub-tasks stay reproducible regardless
/// of how many values the parent has drawn.
pub fn split_rng(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn standard_complex(rng: &mut Rng) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| standard_complex(rng))
}

pub fn gaussian_real_matrix(rows: usize, cols: usize, rng: &mut Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let x: f64 = StandardNormal.sample(rng);
        C64::new(x, 0.0)
    })
}

pub fn random_hermitian(d: usize, rng: &mut Rng) -> ComplexMatrix {
    gaussian_matrix(d, d, rng).hermitian_part()
}

/// `d×r` matrix with orthonormal columns spanning a Gaussian subspace.
pub fn random_isometry(d: usize, r: usize, rng: &mut Rng) -> Result<ComplexMatrix> {
    if r > d {
        return Err(Error::InvalidArgument(format!("rank {r} exceeds dimension {d}")));
    }
    loop {
        if let Ok(q) = orthonormalize_columns(&gaussian_matrix(d, r, rng)) {
            return Ok(q);
        }
    }
}

pub fn random_projector(d: usize, r: usize, seed: u64) -> Result<Projector> {
    random_projector_rng(d, r, &mut seeded_rng(seed))
}

pub fn random_projector_rng(d: usize, r: usize, rng: &mut Rng) -> Result<Projector> {
    if r == 0 {
        return Ok(Projector::zero(d));
    }
    let q = random_isometry(d, r, rng)?;
    Projector::from_orthonormal_columns(&q)
}

/// `Φ = d^{-1/2} Σ_i e_i ⊗ e_i` as a column of length `d²`.
pub fn max_entangled_vector(d: usize) -> Result<ComplexMatrix> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let s = 1.0 / (d as f64).sqrt();
    let mut v = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        v[i * d + i] = C64::new(s, 0.0);
    }
    Ok(ComplexMatrix::column(v))
}
