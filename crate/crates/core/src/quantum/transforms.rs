//! Constructions that take certificates to certificates (or to vectors).

use std::collections::HashMap;

use num::complex::Complex64;

use super::certificate::{CertificateData, QuantumHomCertificate};
use crate::combinatorics::{check_group, Homomorphism};
use crate::config::{check_cap, Caps};
use crate::graphs::{complete, homomorphic_product, kneser, kneser_subsets, omega_graph_with, Graph, Permutation};
use crate::numerics::{eigh, kron, realify, ComplexMatrix, C64, RANK_SLACK};
use crate::theta::{SVectorRepresentation, ThetaMode};
use crate::{Error, Result};

/// Scalar `d = 1` certificate with `E_xy = [h(x) = y]`.
pub fn cert_from_classical_hom(h: &Homomorphism) -> Result<QuantumHomCertificate> {
    let (x, y) = (h.source(), h.target());
    let one = ComplexMatrix::identity(1);
    let zero = ComplexMatrix::zeros(1, 1);
    let projectors = (0..x.n())
        .flat_map(|xv| (0..y.n()).map(move |yv| (xv, yv)))
        .map(|(xv, yv)| if h.image(xv) == yv { one.clone() } else { zero.clone() })
        .collect();
    QuantumHomCertificate::new(CertificateData::new(x.clone(), y.clone(), 1, projectors)?, 0.0)
}

/// Replaces each `E_xy` by its real `2d×2d` image.
pub fn realify_certificate(c: &QuantumHomCertificate, tol: f64) -> Result<QuantumHomCertificate> {
    let projectors = c.data().projectors.iter().map(|p| realify(p).to_complex()).collect();
    let data = CertificateData::new(c.source().clone(), c.target().clone(), 2 * c.d(), projectors)?;
    QuantumHomCertificate::new(data, tol)
}

/// `E''_xz = Σ_y E_xy ⊗ E'_yz`, a certificate `X ⇒ Z` of dimension `d₁d₂`.
pub fn compose_certificates(
    c1: &QuantumHomCertificate,
    c2: &QuantumHomCertificate,
    tol: f64,
) -> Result<QuantumHomCertificate> {
    if c1.target() != c2.source() {
        return Err(Error::Shape("first target differs from second source".into()));
    }
    let (nx, ny, nz) = (c1.source().n(), c1.target().n(), c2.target().n());
    let d = c1.d() * c2.d();
    let mut projectors = Vec::with_capacity(nx * nz);
    for x in 0..nx {
        for z in 0..nz {
            let mut acc = ComplexMatrix::zeros(d, d);
            for y in 0..ny {
                let (a, b) = (c1.projector(x, y), c2.projector(y, z));
                if c1.rank(x, y) > 0 && c2.rank(y, z) > 0 {
                    acc = &acc + &kron(a, b);
                }
            }
            projectors.push(acc);
        }
    }
    let data = CertificateData::new(c1.source().clone(), c2.target().clone(), d, projectors)?;
    QuantumHomCertificate::new(data, tol)
}

#[derive(Clone, Debug)]
pub struct ComponentRestriction {
    /// Index of the component among `target.component_vertex_sets()`.
    pub k: usize,
    /// Vertices of `Y` in component `k`, in the order used by the new target.
    pub vertices: Vec<usize>,
    pub certificate: QuantumHomCertificate,
    /// `max_x ‖E_{x,k} − E_{0,k}‖_F`, zero in exact arithmetic.
    pub constancy_residual: f64,
}

/// For connected `X`, finds a component `Y_k` with `E_k = Σ_{y∈Y_k} E_xy ≠ 0`
/// and compresses the certificate onto the range of `E_k`.
pub fn restrict_to_component(c: &QuantumHomCertificate, tol: f64) -> Result<ComponentRestriction> {
    let x = c.source();
    if x.n() == 0 || !x.is_connected() {
        return Err(Error::Precondition("source graph must be connected and non-empty".into()));
    }
    let d = c.d();
    let comps = c.target().component_vertex_sets();
    let block_sum = |xv: usize, comp: &[usize]| {
        comp.iter().fold(ComplexMatrix::zeros(d, d), |acc, &y| &acc + c.projector(xv, y))
    };
    let mut sums = Vec::with_capacity(comps.len());
    let mut constancy: f64 = 0.0;
    for comp in &comps {
        let e0 = block_sum(0, comp);
        for xv in 1..x.n() {
            constancy = constancy.max((&block_sum(xv, comp) - &e0).frobenius_norm());
        }
        sums.push(e0);
    }
    let traces: Vec<f64> = sums.iter().map(|e| e.trace().re).collect();
    if let Some(t) = traces.iter().find(|t| (*t - t.round()).abs() > RANK_SLACK) {
        return Err(Error::Precondition(format!("ambiguous component rank: trace {t}")));
    }
    let k = traces
        .iter()
        .position(|t| t.round() >= 1.0)
        .ok_or_else(|| Error::Internal("no component carries weight".into()))?;
    let vertices = comps[k].clone();
    let target = c.target().induced(&vertices);
    let rank = traces[k].round() as usize;

    let (new_d, projectors) = if rank == d {
        let p = (0..x.n())
            .flat_map(|xv| vertices.iter().map(move |&y| (xv, y)))
            .map(|(xv, y)| c.projector(xv, y).clone())
            .collect();
        (d, p)
    } else {
        let e = eigh(&sums[k])?;
        let keep: Vec<usize> = (0..d).filter(|&i| e.values[i] > 0.5).collect();
        if keep.len() != rank {
            return Err(Error::Internal("component eigencount disagrees with trace".into()));
        }
        let v = e.vectors.select_columns(&keep);
        let vh = v.adjoint();
        let p = (0..x.n())
            .flat_map(|xv| vertices.iter().map(move |&y| (xv, y)))
            .map(|(xv, y)| {
                let m = &(&vh * c.projector(xv, y)) * &v;
                m.hermitian_part()
            })
            .collect();
        (rank, p)
    };
    let data = CertificateData::new(x.clone(), target, new_d, projectors)?;
    Ok(ComponentRestriction {
        k,
        vertices,
        certificate: QuantumHomCertificate::new(data, tol)?,
        constancy_residual: constancy,
    })
}

/// Rank-one certificate `Ω_n ⇒ K_n` onto `v_{u,i} = (u_j ω^{ij}/√n)_j`,
/// `ω = e^{2πi/n}`.
pub fn omega_coloring_certificate(n: usize, tol: f64, caps: &Caps) -> Result<QuantumHomCertificate> {
    if n < 2 {
        return Err(Error::InvalidArgument("omega certificate needs n ≥ 2".into()));
    }
    let source = omega_graph_with(n, caps)?;
    let target = complete(n)?;
    let scale = 1.0 / (n as f64).sqrt();
    let mut projectors = Vec::with_capacity(source.n() * n);
    for u in 0..source.n() {
        let signs = crate::graphs::omega_signs(n, u);
        for i in 0..n {
            let v: Vec<C64> = (0..n)
                .map(|j| {
                    let angle = 2.0 * std::f64::consts::PI * ((i * j) % n) as f64 / n as f64;
                    Complex64::from_polar(scale * signs[j] as f64, angle)
                })
                .collect();
            projectors.push(crate::numerics::outer(&ComplexMatrix::column(v)));
        }
    }
    QuantumHomCertificate::new(CertificateData::new(source, target, n, projectors)?, tol)
}

/// `u_x = d^{-1/2} Σ_y v_y ⊗ vec(E_xy)` for a real certificate `X ⇒ Y` and
/// a vector representation of `Y`; the result represents `X` with the same
/// `alpha`.
pub fn cert_to_theta_vectors(
    c: &QuantumHomCertificate,
    rep: &SVectorRepresentation,
    tol: f64,
) -> Result<SVectorRepresentation> {
    if !c.is_real(1e-12) {
        return Err(Error::Precondition("certificate is complex; realify it first".into()));
    }
    if rep.mode != ThetaMode::Equality {
        return Err(Error::Precondition("representation must be in equality mode".into()));
    }
    rep.verify(c.target(), tol)?;
    let (nx, ny, d) = (c.source().n(), c.target().n(), c.d());
    let m = rep.dim();
    let s = 1.0 / (d as f64).sqrt();
    let vectors: Vec<Vec<f64>> = (0..nx)
        .map(|x| {
            let mut u = vec![0.0; m * d * d];
            for y in 0..ny {
                if c.rank(x, y) == 0 {
                    continue;
                }
                let e = c.projector(x, y).data();
                for (a, &va) in rep.vectors[y].iter().enumerate() {
                    if va == 0.0 {
                        continue;
                    }
                    let block = &mut u[a * d * d..(a + 1) * d * d];
                    for (slot, z) in block.iter_mut().zip(e) {
                        *slot += s * va * z.re;
                    }
                }
            }
            u
        })
        .collect();
    let out = SVectorRepresentation { alpha: rep.alpha, mode: ThetaMode::Equality, vectors };
    out.verify(c.source(), tol)?;
    Ok(out)
}

/// `P_{i,(x,y)} = δ_{ix} E_xy`: a certificate `K_m ⇒ complement(X ⋉ Y)`.
pub fn cert_to_independence_cert(c: &QuantumHomCertificate, tol: f64) -> Result<QuantumHomCertificate> {
    let (nx, ny, d) = (c.source().n(), c.target().n(), c.d());
    let source = complete(nx)?;
    let target = homomorphic_product(c.source(), c.target()).complement();
    let zero = ComplexMatrix::zeros(d, d);
    let mut projectors = Vec::with_capacity(nx * nx * ny);
    for i in 0..nx {
        for x in 0..nx {
            for y in 0..ny {
                projectors.push(if i == x { c.projector(x, y).clone() } else { zero.clone() });
            }
        }
    }
    QuantumHomCertificate::new(CertificateData::new(source, target, d, projectors)?, tol)
}

/// `Q_xy = Σ_i P_{i,(x,y)}` from a certificate `K_m ⇒ complement(x ⋉ y)`
/// with `m = |V(x)|`.
pub fn independence_cert_to_hom_cert(
    c: &QuantumHomCertificate,
    x: &Graph,
    y: &Graph,
    tol: f64,
) -> Result<QuantumHomCertificate> {
    let m = c.source().n();
    if m != x.n() {
        return Err(Error::Precondition(format!("clique size {m} differs from |V(X)| = {}", x.n())));
    }
    if c.source().edge_count() != m * m.saturating_sub(1) / 2 {
        return Err(Error::Precondition("source must be a complete graph".into()));
    }
    let expect = homomorphic_product(x, y).complement();
    if *c.target() != expect {
        return Err(Error::Shape("target is not complement(X ⋉ Y)".into()));
    }
    let (nx, ny, d) = (x.n(), y.n(), c.d());
    let mut projectors = Vec::with_capacity(nx * ny);
    for xv in 0..nx {
        let mut ranks = 0usize;
        for yv in 0..ny {
            let p = xv * ny + yv;
            let q = (0..m).fold(ComplexMatrix::zeros(d, d), |acc, i| &acc + c.projector(i, p));
            ranks += (0..m).map(|i| c.rank(i, p)).sum::<usize>();
            projectors.push(q);
        }
        if ranks != d {
            return Err(Error::Internal(format!("rank count {ranks} ≠ d = {d} at x = {xv}")));
        }
    }
    QuantumHomCertificate::new(CertificateData::new(x.clone(), y.clone(), d, projectors)?, tol)
}

/// Lifts `X ⇒ Y` to `X ⋉ Y ⇒ K_{|G|:|G|/|V(Y)|}` for a transitive group
/// `G ≤ Aut(Y)` given by its elements: `(x, y)` receives `E_xy'` on the coset
/// `G(y, y') = {g : g(y) = y'}`.
pub fn kneser_cert_lift(
    c: &QuantumHomCertificate,
    group: &[Permutation],
    tol: f64,
    caps: &Caps,
) -> Result<QuantumHomCertificate> {
    let y = c.target();
    let ny = y.n();
    check_group(y, group)?;
    let order = group.len();
    if ny == 0 || order % ny != 0 {
        return Err(Error::Precondition(format!("|G| = {order} not divisible by |V(Y)| = {ny}")));
    }
    let r = order / ny;
    let size = crate::combinatorics::binomial(order, r).unwrap_or(usize::MAX);
    check_cap("Kneser target", size, caps.kneser_vertices)?;
    let target = kneser(order, r)?;
    let index: HashMap<Vec<usize>, usize> = kneser_subsets(order, r)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let source = homomorphic_product(c.source(), y);
    let d = c.d();
    let nk = target.n();
    let mut projectors = vec![ComplexMatrix::zeros(d, d); source.n() * nk];
    for x in 0..c.source().n() {
        for yv in 0..ny {
            for y2 in 0..ny {
                let coset: Vec<usize> = (0..order).filter(|&g| group[g][yv] == y2).collect();
                if coset.len() != r {
                    return Err(Error::Internal(format!("coset of size {} ≠ {r}", coset.len())));
                }
                projectors[(x * ny + yv) * nk + index[&coset]] = c.projector(x, y2).clone();
            }
        }
    }
    QuantumHomCertificate::new(CertificateData::new(source, target, d, projectors)?, tol)
}

/// Block-diagonal `E_xy ⊕ E'_xy` of two certificates between the same graphs.
pub fn direct_sum(
    a: &QuantumHomCertificate,
    b: &QuantumHomCertificate,
    tol: f64,
) -> Result<QuantumHomCertificate> {
    if a.source() != b.source() || a.target() != b.target() {
        return Err(Error::Shape("direct sum needs equal source and target".into()));
    }
    let (da, db) = (a.d(), b.d());
    let projectors = a
        .data()
        .projectors
        .iter()
        .zip(&b.data().projectors)
        .map(|(p, q)| block_diag(&[p, q]))
        .collect();
    let data = CertificateData::new(a.source().clone(), a.target().clone(), da + db, projectors)?;
    QuantumHomCertificate::new(data, tol)
}

pub(crate) fn block_diag(blocks: &[&ComplexMatrix]) -> ComplexMatrix {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut m = ComplexMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(off + i, off + j, b.get(i, j));
            }
        }
        off += b.rows();
    }
    m
}

/// Direct sum over `g ∈ G` of the certificate relabelled by `g` on the
/// target. For `G` transitive on `V(Y)` every `E_iy` of the result has rank
/// `(|G|/|V(Y)|)·Σ_y rank E_iy`, independent of `y`.
pub fn equalize_ranks(c: &QuantumHomCertificate, group: &[Permutation], tol: f64) -> Result<QuantumHomCertificate> {
    let y = c.target();
    check_group(y, group)?;
    let (nx, ny, d) = (c.source().n(), y.n(), c.d());
    let dd = d * group.len();
    let mut inverse = Vec::with_capacity(group.len());
    for g in group {
        let mut inv = vec![0; ny];
        for (a, &b) in g.iter().enumerate() {
            inv[b] = a;
        }
        inverse.push(inv);
    }
    let mut projectors = Vec::with_capacity(nx * ny);
    for x in 0..nx {
        for yv in 0..ny {
            let blocks: Vec<&ComplexMatrix> = inverse.iter().map(|inv| c.projector(x, inv[yv])).collect();
            projectors.push(block_diag(&blocks));
        }
    }
    QuantumHomCertificate::new(CertificateData::new(c.source().clone(), y.clone(), dd, projectors)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::find_homomorphism;
    use crate::graphs::{cycle, cycle_rotations, disjoint_union, omega_graph};
    use crate::numerics::random_projector;
    use crate::quantum::{verify, ViolationKind, CERT_TOL};
    use crate::theta::simplex_representation;

    fn classical(x: &Graph, y: &Graph) -> QuantumHomCertificate {
        let h = find_homomorphism(x, y).unwrap().unwrap();
        cert_from_classical_hom(&h).unwrap()
    }

    #[test]
    fn classical_and_realified() {
        let c5 = cycle(5).unwrap();
        let k3 = complete(3).unwrap();
        let c = classical(&c5, &k3);
        assert_eq!(c.report().worst, 0.0);
        let r = realify_certificate(&c, CERT_TOL).unwrap();
        assert_eq!(r.d(), 2);
        assert_eq!(r.rank(0, 0), 2);
        let rr = realify_certificate(&r, CERT_TOL).unwrap();
        assert_eq!(rr.d(), 4);
        let id = Homomorphism::new(k3.clone(), k3.clone(), vec![0, 1, 2]).unwrap();
        assert_eq!(cert_from_classical_hom(&id).unwrap().data().projectors.len(), 9);
    }

    #[test]
    fn omega_certificate_verifies() {
        let c = omega_coloring_certificate(4, 1e-10, &Caps::default()).unwrap();
        assert_eq!(c.data().projectors.len(), 64);
        assert!(c.report().worst < 1e-10);
        let r = realify_certificate(&c, CERT_TOL).unwrap();
        assert!(r.is_real(0.0));
    }

    #[test]
    fn perturbation_is_caught() {
        let c = omega_coloring_certificate(4, 1e-10, &Caps::default()).unwrap();
        let mut data = c.into_data();
        data.set(3, 1, random_projector(4, 1, 5).unwrap().into_matrix());
        let report = verify(&data, CERT_TOL);
        assert!(!report.ok);
        assert!(report
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::Completeness && v.x == 3));
        assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Consistency && v.x == 3));
    }

    #[test]
    fn composition() {
        let c5 = cycle(5).unwrap();
        let (k3, k4, k5) = (complete(3).unwrap(), complete(4).unwrap(), complete(5).unwrap());
        let a = classical(&c5, &k3);
        let b = classical(&k3, &k4);
        let ab = compose_certificates(&a, &b, CERT_TOL).unwrap();
        let h = find_homomorphism(&c5, &k3).unwrap().unwrap().then(&find_homomorphism(&k3, &k4).unwrap().unwrap()).unwrap();
        assert_eq!(ab.data(), cert_from_classical_hom(&h).unwrap().data());
        let om = omega_coloring_certificate(4, 1e-10, &Caps::default()).unwrap();
        let c = compose_certificates(&om, &classical(&k4, &k5), CERT_TOL).unwrap();
        assert_eq!(c.d(), 4);
        assert!(compose_certificates(&b, &a, CERT_TOL).is_err());
    }

    #[test]
    fn composition_associates() {
        let om = omega_coloring_certificate(4, 1e-10, &Caps::default()).unwrap();
        let k4 = complete(4).unwrap();
        let k5 = complete(5).unwrap();
        let k6 = complete(6).unwrap();
        let b = realify_certificate(&classical(&k4, &k5), CERT_TOL).unwrap();
        let c = classical(&k5, &k6);
        let left = compose_certificates(&compose_certificates(&om, &b, CERT_TOL).unwrap(), &c, CERT_TOL).unwrap();
        let right = compose_certificates(&om, &compose_certificates(&b, &c, CERT_TOL).unwrap(), CERT_TOL).unwrap();
        assert_eq!(left.d(), right.d());
        for (p, q) in left.data().projectors.iter().zip(&right.data().projectors) {
            assert!((p - q).frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn component_restriction() {
        let c5 = cycle(5).unwrap();
        let k3 = complete(3).unwrap();
        let y = disjoint_union(&k3, &k3);
        let c = classical(&c5, &y);
        let r = restrict_to_component(&c, CERT_TOL).unwrap();
        assert_eq!(r.k, 0);
        assert_eq!(r.certificate.target().n(), 3);
        assert_eq!(r.constancy_residual, 0.0);
        let same = restrict_to_component(&classical(&c5, &k3), CERT_TOL).unwrap();
        assert_eq!(same.certificate.data().projectors, classical(&c5, &k3).data().projectors);
    }

    #[test]
    fn component_restriction_compresses() {
        let c5 = cycle(5).unwrap();
        let k3 = complete(3).unwrap();
        let y = disjoint_union(&k3, &k3);
        let first = Homomorphism::new(c5.clone(), y.clone(), vec![0, 1, 0, 1, 2]).unwrap();
        let second = Homomorphism::new(c5.clone(), y.clone(), vec![3, 4, 3, 4, 5]).unwrap();
        let sum = direct_sum(
            &cert_from_classical_hom(&first).unwrap(),
            &cert_from_classical_hom(&second).unwrap(),
            CERT_TOL,
        )
        .unwrap();
        assert_eq!(sum.d(), 2);
        let r = restrict_to_component(&sum, CERT_TOL).unwrap();
        assert_eq!(r.k, 0);
        assert_eq!(r.certificate.d(), 1);
        assert!(r.constancy_residual < 1e-15);
        let omega = omega_coloring_certificate(4, 1e-10, &Caps::default()).unwrap();
        assert!(!omega_graph(4).unwrap().is_connected());
        assert!(restrict_to_component(&omega, CERT_TOL).is_err());
    }

    #[test]
    fn theta_vectors_from_classical() {
        let c = classical(&cycle(5).unwrap(), &complete(3).unwrap());
        let rep = simplex_representation(3).unwrap();
        let u = cert_to_theta_vectors(&c, &rep, 1e-8).unwrap();
        assert!((u.alpha + 0.5).abs() < 1e-15);
    }

    #[test]
    fn theta_vectors_from_omega() {
        let om = omega_coloring_certificate(4, 1e-10, &Caps::default()).unwrap();
        assert!(cert_to_theta_vectors(&om, &simplex_representation(4).unwrap(), 1e-8).is_err());
        let real = realify_certificate(&om, CERT_TOL).unwrap();
        let u = cert_to_theta_vectors(&real, &simplex_representation(4).unwrap(), 1e-8).unwrap();
        let (norm, edge) = u.violations(&omega_graph(4).unwrap()).unwrap();
        assert!(norm < 1e-10 && edge < 1e-8);
        assert!((u.bound() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn independence_round_trip() {
        let c5 = cycle(5).unwrap();
        let k3 = complete(3).unwrap();
        let c = classical(&c5, &k3);
        let ind = cert_to_independence_cert(&c, CERT_TOL).unwrap();
        assert_eq!(ind.source().n(), 5);
        assert_eq!(ind.d(), 1);
        let back = independence_cert_to_hom_cert(&ind, &c5, &k3, CERT_TOL).unwrap();
        assert_eq!(back.data(), c.data());
        assert!(independence_cert_to_hom_cert(&ind, &k3, &k3, CERT_TOL).is_err());
    }

    #[test]
    fn omega_independence_cert() {
        let om = omega_coloring_certificate(4, 1e-10, &Caps::default()).unwrap();
        let ind = cert_to_independence_cert(&om, CERT_TOL).unwrap();
        assert_eq!(ind.source().n(), 16);
        assert_eq!(ind.target().n(), 64);
    }

    #[test]
    fn kneser_lift_of_identity() {
        let c5 = cycle(5).unwrap();
        let id = Homomorphism::new(c5.clone(), c5.clone(), (0..5).collect()).unwrap();
        let c = cert_from_classical_hom(&id).unwrap();
        let lifted = kneser_cert_lift(&c, &cycle_rotations(5), CERT_TOL, &Caps::default()).unwrap();
        assert_eq!(lifted.target().n(), 5);
        assert_eq!(lifted.d(), 1);
        let mut rots = cycle_rotations(5);
        rots.truncate(2);
        assert!(kneser_cert_lift(&c, &rots, CERT_TOL, &Caps::default()).is_err());
    }

    #[test]
    fn equalized_ranks() {
        let c5 = cycle(5).unwrap();
        // Independent set {0, 2} as a classical K2 → complement(C5) certificate.
        let h = Homomorphism::new(complete(2).unwrap(), c5.complement(), vec![0, 2]).unwrap();
        let c = cert_from_classical_hom(&h).unwrap();
        let e = equalize_ranks(&c, &cycle_rotations(5), CERT_TOL).unwrap();
        assert_eq!(e.d(), 5);
        for i in 0..2 {
            for y in 0..5 {
                assert_eq!(e.rank(i, y), 1);
            }
        }
    }
}
