//! Projective representations: rank-`r` projectors in dimension `d`,
//! orthogonal on adjacent vertices. A `d/r`-representation bounds `ξ_f`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::certificate::QuantumHomCertificate;
use crate::combinatorics::Rational;
use crate::graphs::{is_vertex_transitive, kneser, kneser_subsets, Graph};
use crate::numerics::{idempotency_residual, kron, ComplexMatrix, C64};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ProjectiveRepresentation {
    graph: Graph,
    d: usize,
    r: usize,
    projectors: Vec<ComplexMatrix>,
    residual: f64,
}

impl ProjectiveRepresentation {
    /// Verifies ranks, projector-ness and orthogonality on edges within `tol`.
    pub fn new(graph: Graph, d: usize, r: usize, projectors: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        if projectors.len() != graph.n() {
            return Err(Error::Shape(format!("{} projectors for {} vertices", projectors.len(), graph.n())));
        }
        if r == 0 || r > d {
            return Err(Error::InvalidArgument(format!("rank {r} must lie in 1..={d}")));
        }
        for (x, p) in projectors.iter().enumerate() {
            if p.rows() != d || p.cols() != d {
                return Err(Error::Shape(format!("projector {x} is not {d}×{d}")));
            }
            let res = p.hermitian_residual().max(idempotency_residual(p));
            if res > tol {
                return Err(Error::Verification(format!("vertex {x}: projector residual {res:.3e}")));
            }
            let tr = p.trace().re;
            if (tr - r as f64).abs() > 1e-6 {
                return Err(Error::Verification(format!("vertex {x}: trace {tr} but rank {r} required")));
            }
        }
        let mut residual: f64 = 0.0;
        for (a, b) in graph.edges() {
            let res = (&projectors[a] * &projectors[b]).frobenius_norm();
            if res > tol {
                return Err(Error::Verification(format!("edge ({a},{b}): ‖F_a F_b‖ = {res:.3e}")));
            }
            residual = residual.max(res);
        }
        Ok(ProjectiveRepresentation { graph, d, r, projectors, residual })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn projector(&self, x: usize) -> &ComplexMatrix {
        &self.projectors[x]
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    /// Largest `‖F_a F_b‖_F` over edges.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// `d/r`, reduced.
    pub fn value(&self) -> Rational {
        Rational::new((self.d as i64).into(), (self.r as i64).into())
    }

    /// `I_k ⊗ F_x`: a `kd/kr`-representation with the same value.
    pub fn amplify(&self, k: usize, tol: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("amplification factor must be positive".into()));
        }
        let id = ComplexMatrix::identity(k);
        let projectors = self.projectors.iter().map(|p| kron(&id, p)).collect();
        Self::new(self.graph.clone(), k * self.d, k * self.r, projectors, tol)
    }

    /// Vectors `vec(F_x)/√r` and handle `vec(I)/√d`: an orthonormal
    /// representation of the complement with handle value `d/r`.
    pub fn handle_vectors(&self) -> (Vec<Vec<C64>>, Vec<C64>) {
        let sr = (self.r as f64).sqrt();
        let vectors = self.projectors.iter().map(|p| p.data().iter().map(|z| z / sr).collect()).collect();
        let handle = ComplexMatrix::identity(self.d).scale_real(1.0 / (self.d as f64).sqrt());
        (vectors, handle.data().to_vec())
    }
}

/// JSON form `{"graph", "d", "r", "projectors": {"x": matrix}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProjectiveJson {
    pub graph: Graph,
    pub d: usize,
    pub r: usize,
    pub projectors: BTreeMap<String, ComplexMatrix>,
}

impl From<&ProjectiveRepresentation> for ProjectiveJson {
    fn from(p: &ProjectiveRepresentation) -> Self {
        ProjectiveJson {
            graph: p.graph.clone(),
            d: p.d,
            r: p.r,
            projectors: p.projectors.iter().enumerate().map(|(x, m)| (x.to_string(), m.clone())).collect(),
        }
    }
}

impl ProjectiveJson {
    pub fn into_representation(self, tol: f64) -> Result<ProjectiveRepresentation> {
        let mut projectors = vec![None; self.graph.n()];
        for (key, m) in self.projectors {
            let x: usize = key.trim().parse().map_err(|_| Error::Parse(format!("bad vertex key `{key}`")))?;
            let slot = projectors
                .get_mut(x)
                .ok_or_else(|| Error::Parse(format!("vertex key `{key}` out of range")))?;
            *slot = Some(m);
        }
        let projectors = projectors
            .into_iter()
            .enumerate()
            .map(|(x, m)| m.ok_or_else(|| Error::Parse(format!("missing projector for vertex {x}"))))
            .collect::<Result<Vec<_>>>()?;
        ProjectiveRepresentation::new(self.graph, self.d, self.r, projectors, tol)
    }
}

/// `K_{n:r}` with each subset sent to the diagonal projector on its elements.
pub fn kneser_to_projective(n: usize, r: usize, tol: f64) -> Result<ProjectiveRepresentation> {
    let graph = kneser(n, r)?;
    let projectors = kneser_subsets(n, r)
        .into_iter()
        .map(|s| {
            let mut m = ComplexMatrix::zeros(n, n);
            for i in s {
                m.set(i, i, C64::new(1.0, 0.0));
            }
            m
        })
        .collect();
    ProjectiveRepresentation::new(graph, n, r, projectors, tol)
}

/// `F_x = Σ_y E_xy ⊗ F'_y`: pulls a representation of `Y` back along a
/// certificate `X ⇒ Y`, keeping the value.
pub fn projrep_tensor_pullback(
    c: &QuantumHomCertificate,
    rep: &ProjectiveRepresentation,
    tol: f64,
) -> Result<ProjectiveRepresentation> {
    if c.target() != rep.graph() {
        return Err(Error::Shape("representation is not of the certificate target".into()));
    }
    let (nx, ny, d) = (c.source().n(), c.target().n(), c.d());
    let dd = d * rep.d();
    let projectors = (0..nx)
        .map(|x| {
            (0..ny)
                .filter(|&y| c.rank(x, y) > 0)
                .fold(ComplexMatrix::zeros(dd, dd), |acc, y| &acc + &kron(c.projector(x, y), rep.projector(y)))
        })
        .collect();
    ProjectiveRepresentation::new(c.source().clone(), dd, d * rep.r(), projectors, tol)
}

/// `F_x = Σ_i E_ix` from an equal-rank certificate `K_m ⇒ complement(X)` for
/// vertex-transitive `X`, a representation of value `|V(X)|/m`.
pub fn projrep_from_independence_cert(c: &QuantumHomCertificate, tol: f64) -> Result<ProjectiveRepresentation> {
    let m = c.source().n();
    if m == 0 || c.source().edge_count() != m * (m - 1) / 2 {
        return Err(Error::Precondition("source must be a non-empty complete graph".into()));
    }
    let x = c.target().complement();
    if !is_vertex_transitive(&x)? {
        return Err(Error::Precondition("X must be vertex-transitive".into()));
    }
    let n = x.n();
    let r = c.rank(0, 0);
    let unequal = (0..m).any(|i| (0..n).any(|v| c.rank(i, v) != r));
    if unequal || r == 0 {
        let table: Vec<Vec<usize>> = (0..m).map(|i| (0..n).map(|v| c.rank(i, v)).collect()).collect();
        return Err(Error::Precondition(format!("certificate ranks are not all equal: {table:?}")));
    }
    let d = c.d();
    let projectors = (0..n)
        .map(|v| (0..m).fold(ComplexMatrix::zeros(d, d), |acc, i| &acc + c.projector(i, v)))
        .collect();
    ProjectiveRepresentation::new(x, d, m * r, projectors, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{find_homomorphism, Homomorphism};
    use crate::graphs::{complete, cycle, cycle_rotations};
    use crate::quantum::{cert_from_classical_hom, equalize_ranks, CERT_TOL};
    use crate::theta::{handle_bound, lovasz_theta, ThetaMode};

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn kneser_representations() {
        let p = kneser_to_projective(5, 2, CERT_TOL).unwrap();
        assert_eq!(p.value(), q(5, 2));
        let k = kneser_to_projective(4, 1, CERT_TOL).unwrap();
        assert_eq!(k.value(), q(4, 1));
        assert_eq!(k.graph(), &complete(4).unwrap());
    }

    #[test]
    fn pullback_through_coloring() {
        let c5 = cycle(5).unwrap();
        let k3 = complete(3).unwrap();
        let h = find_homomorphism(&c5, &k3).unwrap().unwrap();
        let c = cert_from_classical_hom(&h).unwrap();
        let rep = kneser_to_projective(3, 1, CERT_TOL).unwrap();
        let pulled = projrep_tensor_pullback(&c, &rep, CERT_TOL).unwrap();
        assert_eq!(pulled.value(), q(3, 1));
        for x in 0..5 {
            assert_eq!(pulled.projector(x), rep.projector(h.image(x)));
        }
    }

    #[test]
    fn c5_from_independent_set() {
        let c5 = cycle(5).unwrap();
        let h = Homomorphism::new(complete(2).unwrap(), c5.complement(), vec![0, 2]).unwrap();
        let c = cert_from_classical_hom(&h).unwrap();
        assert!(projrep_from_independence_cert(&c, CERT_TOL).is_err());
        let eq = equalize_ranks(&c, &cycle_rotations(5), CERT_TOL).unwrap();
        let rep = projrep_from_independence_cert(&eq, CERT_TOL).unwrap();
        assert_eq!(rep.value(), q(5, 2));
        assert_eq!(rep.r(), 2);
    }

    #[test]
    fn trivial_single_message() {
        let c5 = cycle(5).unwrap();
        let h = Homomorphism::new(complete(1).unwrap(), c5.complement(), vec![3]).unwrap();
        let c = equalize_ranks(&cert_from_classical_hom(&h).unwrap(), &cycle_rotations(5), CERT_TOL).unwrap();
        let rep = projrep_from_independence_cert(&c, CERT_TOL).unwrap();
        assert_eq!(rep.value(), q(5, 1));
    }

    #[test]
    fn handle_value_is_d_over_r() {
        let p = kneser_to_projective(5, 2, CERT_TOL).unwrap();
        let (vecs, c) = p.handle_vectors();
        let b = handle_bound(&p.graph().complement(), &vecs, &c, 1e-9).unwrap();
        assert!((b - 2.5).abs() < 1e-12);
        let tb = lovasz_theta(&p.graph().complement(), ThetaMode::Equality).unwrap().value;
        assert!(tb <= b + 1e-5);
    }

    #[test]
    fn amplify_keeps_value() {
        let p = kneser_to_projective(5, 2, CERT_TOL).unwrap();
        let a = p.amplify(3, CERT_TOL).unwrap();
        assert_eq!((a.d(), a.r()), (15, 6));
        assert_eq!(a.value(), p.value());
    }

    #[test]
    fn json_round_trip() {
        let p = kneser_to_projective(5, 2, CERT_TOL).unwrap();
        let text = serde_json::to_string(&ProjectiveJson::from(&p)).unwrap();
        let back: ProjectiveJson = serde_json::from_str(&text).unwrap();
        let back = back.into_representation(CERT_TOL).unwrap();
        assert_eq!(back.projectors(), p.projectors());
    }
}
