//! Entanglement-assisted zero-error protocols: Alice measures her half of a
//! shared state with a message-dependent POVM and feeds the outcome to the
//! channel; Bob decodes from his residual state.

use serde::{Deserialize, Serialize};

use crate::config::{check_cap, Caps};
use crate::graphs::Graph;
use crate::numerics::{eigh, idempotency_residual, kron, max_entangled_vector, ComplexMatrix, C64};
use crate::quantum::QuantumHomCertificate;
use crate::{Error, Result};

/// Completeness and state normalization tolerance.
pub const PROTOCOL_TOL: f64 = 1e-9;

const MAX_LISTED: usize = 100;

/// Message `i` is sent by measuring `{E_iz}_z` on the `A` half of `state`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProtocolJson")]
pub struct EAProtocol {
    m: usize,
    d_a: usize,
    d_b: usize,
    povms: Vec<Vec<ComplexMatrix>>,
    state: ComplexMatrix,
}

#[derive(Deserialize)]
struct ProtocolJson {
    d_a: usize,
    d_b: usize,
    povms: Vec<Vec<ComplexMatrix>>,
    state: ComplexMatrix,
}

impl TryFrom<ProtocolJson> for EAProtocol {
    type Error = Error;

    fn try_from(j: ProtocolJson) -> Result<Self> {
        EAProtocol::new(j.d_a, j.d_b, j.povms, j.state, PROTOCOL_TOL)
    }
}

impl EAProtocol {
    /// Checks shapes, positivity within `tol`, completeness and a unit state.
    pub fn new(
        d_a: usize,
        d_b: usize,
        povms: Vec<Vec<ComplexMatrix>>,
        state: ComplexMatrix,
        tol: f64,
    ) -> Result<Self> {
        let m = povms.len();
        let nz = povms.first().map_or(0, |p| p.len());
        if d_a == 0 || d_b == 0 {
            return Err(Error::InvalidArgument("local dimensions must be positive".into()));
        }
        if povms.iter().any(|p| p.len() != nz) {
            return Err(Error::Shape("every message needs one operator per input".into()));
        }
        if state.cols() != 1 || state.rows() != d_a * d_b {
            return Err(Error::Shape(format!("state must be a column of length {}", d_a * d_b)));
        }
        let norm = state.frobenius_norm();
        if (norm - 1.0).abs() > PROTOCOL_TOL {
            return Err(Error::InvalidArgument(format!("state has norm {norm}")));
        }
        let id = ComplexMatrix::identity(d_a);
        for (i, povm) in povms.iter().enumerate() {
            let mut sum = ComplexMatrix::zeros(d_a, d_a);
            for (z, e) in povm.iter().enumerate() {
                if e.rows() != d_a || e.cols() != d_a {
                    return Err(Error::Shape(format!("E[{i}][{z}] is not {d_a}×{d_a}")));
                }
                if e.max_abs() == 0.0 {
                    continue;
                }
                let herm = e.hermitian_residual();
                if herm > tol {
                    return Err(Error::NotHermitian { residual: herm });
                }
                let low = eigh(&e.hermitian_part())?.min();
                if low < -tol {
                    return Err(Error::InvalidArgument(format!("E[{i}][{z}] has eigenvalue {low:.3e}")));
                }
                sum = &sum + e;
            }
            let res = (&sum - &id).frobenius_norm();
            if res > PROTOCOL_TOL {
                return Err(Error::InvalidArgument(format!("POVM {i} sums to I only within {res:.3e}")));
            }
        }
        Ok(EAProtocol { m, d_a, d_b, povms, state })
    }

    pub fn messages(&self) -> usize {
        self.m
    }

    pub fn inputs(&self) -> usize {
        self.povms.first().map_or(0, |p| p.len())
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn povm(&self, i: usize) -> &[ComplexMatrix] {
        &self.povms[i]
    }

    pub fn state(&self) -> &ComplexMatrix {
        &self.state
    }

    /// Projective measurements and the canonical maximally entangled state.
    pub fn class(&self, tol: f64) -> ProtocolClass {
        let projective = self.povms.iter().flatten().all(|e| idempotency_residual(e) <= tol);
        let canonical_state = self.d_a == self.d_b
            && max_entangled_vector(self.d_a).is_ok_and(|phi| (&phi - &self.state).frobenius_norm() <= tol);
        ProtocolClass { projective, canonical_state }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProtocolClass {
    pub projective: bool,
    pub canonical_state: bool,
}

/// `β_z^i = tr_A((E_iz ⊗ I)ψψ*)`, indexed `[i][z]`.
pub fn residual_states(p: &EAProtocol) -> Vec<Vec<ComplexMatrix>> {
    // With Ψ the d_A×d_B reshaping of ψ, β = Ψᵀ Eᵀ Ψ̄.
    let psi = ComplexMatrix::from_vec(p.d_a, p.d_b, p.state.data().to_vec()).expect("state shape checked");
    let (psi_t, psi_bar) = (psi.transpose(), psi.conj());
    p.povms
        .iter()
        .map(|povm| {
            povm.iter()
                .map(|e| {
                    if e.max_abs() == 0.0 {
                        ComplexMatrix::zeros(p.d_b, p.d_b)
                    } else {
                        &(&psi_t * &e.transpose()) * &psi_bar
                    }
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ProtocolViolation {
    pub i: usize,
    pub j: usize,
    pub z: usize,
    pub z2: usize,
    pub trace: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProtocolReport {
    pub ok: bool,
    pub tol: f64,
    pub messages: usize,
    /// Largest `|tr(β_z^i β_z'^j)|` over checked positions.
    pub worst: f64,
    pub violation_count: usize,
    /// The first violations found, at most 100.
    pub violations: Vec<ProtocolViolation>,
    pub class: ProtocolClass,
}

fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let n = a.rows();
    let (a, b) = (a.data(), b.data());
    let mut s = C64::new(0.0, 0.0);
    for k in 0..n {
        for l in 0..n {
            s += a[k * n + l] * b[l * n + k];
        }
    }
    s
}

/// `tr(β_z^i β_z'^j) = 0` within `tol` for all `i ≠ j` and all `z, z'`
/// adjacent or equal in the confusability graph `g`.
pub fn verify_protocol(p: &EAProtocol, g: &Graph, tol: f64) -> Result<ProtocolReport> {
    if g.n() != p.inputs() {
        return Err(Error::Shape(format!("protocol has {} inputs, graph {} vertices", p.inputs(), g.n())));
    }
    let beta = residual_states(p);
    let nonzero: Vec<Vec<bool>> = beta.iter().map(|row| row.iter().map(|b| b.max_abs() > 0.0).collect()).collect();
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut violations = Vec::new();
    for i in 0..p.m {
        for j in i + 1..p.m {
            for z in 0..g.n() {
                if !nonzero[i][z] {
                    continue;
                }
                for z2 in std::iter::once(z).chain(g.neighbors(z)) {
                    if !nonzero[j][z2] {
                        continue;
                    }
                    let t = trace_product(&beta[i][z], &beta[j][z2]).norm();
                    worst = worst.max(t);
                    if !(t <= tol) {
                        count += 1;
                        if violations.len() < MAX_LISTED {
                            violations.push(ProtocolViolation { i, j, z, z2, trace: t });
                        }
                    }
                }
            }
        }
    }
    Ok(ProtocolReport {
        ok: count == 0,
        tol,
        messages: p.m,
        worst,
        violation_count: count,
        violations,
        class: p.class(tol.max(PROTOCOL_TOL)),
    })
}

/// Scalar protocol: message `i` is sent by the input `codewords[i]`.
pub fn classical_protocol(n_inputs: usize, codewords: &[usize]) -> Result<EAProtocol> {
    if let Some(&z) = codewords.iter().find(|&&z| z >= n_inputs) {
        return Err(Error::InvalidArgument(format!("input {z} out of range")));
    }
    let povms = codewords
        .iter()
        .map(|&s| {
            (0..n_inputs)
                .map(|z| if z == s { ComplexMatrix::identity(1) } else { ComplexMatrix::zeros(1, 1) })
                .collect()
        })
        .collect();
    EAProtocol::new(1, 1, povms, ComplexMatrix::identity(1), PROTOCOL_TOL)
}

/// From a certificate `K_m ⇒ complement(X)`: message `i` measures
/// `{E_ix}_x` on the maximally entangled state. The result is checked
/// against `X` as the confusability graph.
pub fn protocol_from_independence_cert(c: &QuantumHomCertificate, tol: f64) -> Result<EAProtocol> {
    let m = c.source().n();
    if c.source().edge_count() != m * m.saturating_sub(1) / 2 {
        return Err(Error::Precondition("certificate source must be complete".into()));
    }
    let d = c.d();
    let ny = c.target().n();
    let povms = (0..m).map(|i| (0..ny).map(|x| c.projector(i, x).clone()).collect()).collect();
    let p = EAProtocol::new(d, d, povms, max_entangled_vector(d)?, tol.max(PROTOCOL_TOL))?;
    let report = verify_protocol(&p, &c.target().complement(), tol)?;
    if !report.ok {
        return Err(Error::Verification(format!(
            "derived protocol fails with {} violation(s), worst {:.3e}",
            report.violation_count, report.worst
        )));
    }
    Ok(p)
}

/// Transports a protocol for `X` along a certificate
/// `complement(X) ⇒ complement(Y)`: `F_iy = Σ_x P_xy ⊗ E_ix` on the state
/// `Φ_d ⊗ ψ`, with Alice holding `A'⊗A` and Bob `B'⊗B`.
pub fn lift_protocol(c: &QuantumHomCertificate, p: &EAProtocol, tol: f64) -> Result<EAProtocol> {
    lift_protocol_with(c, p, tol, &Caps::default())
}

pub fn lift_protocol_with(c: &QuantumHomCertificate, p: &EAProtocol, tol: f64, caps: &Caps) -> Result<EAProtocol> {
    let (nx, ny, d) = (c.source().n(), c.target().n(), c.d());
    if p.inputs() != nx {
        return Err(Error::Shape(format!("protocol has {} inputs, certificate source {nx}", p.inputs())));
    }
    let x = c.source().complement();
    let report = verify_protocol(p, &x, tol)?;
    if !report.ok {
        return Err(Error::Precondition(format!(
            "input protocol is not valid for X: {} violation(s)",
            report.violation_count
        )));
    }
    let (da, db) = (d * p.d_a, d * p.d_b);
    check_cap("lifted local dimension", da.max(db), caps.eig_dim)?;

    let povms = (0..p.m)
        .map(|i| {
            (0..ny)
                .map(|y| {
                    (0..nx)
                        .filter(|&xv| c.rank(xv, y) > 0 && p.povms[i][xv].max_abs() > 0.0)
                        .fold(ComplexMatrix::zeros(da, da), |acc, xv| &acc + &kron(c.projector(xv, y), &p.povms[i][xv]))
                })
                .collect()
        })
        .collect();

    let s = 1.0 / (d as f64).sqrt();
    let psi = p.state.data();
    let mut state = vec![C64::new(0.0, 0.0); da * db];
    for k in 0..d {
        for a in 0..p.d_a {
            for b in 0..p.d_b {
                let alice = k * p.d_a + a;
                let bob = k * p.d_b + b;
                state[alice * db + bob] = psi[a * p.d_b + b] * s;
            }
        }
    }
    let lifted = EAProtocol::new(da, db, povms, ComplexMatrix::column(state), tol.max(PROTOCOL_TOL))?;
    let report = verify_protocol(&lifted, &c.target().complement(), tol)?;
    if !report.ok {
        return Err(Error::Verification(format!(
            "lifted protocol fails with {} violation(s), worst {:.3e}",
            report.violation_count, report.worst
        )));
    }
    Ok(lifted)
}

/// `max_{i,y} ‖α_y^i − (1/d) Σ_x P_xyᵀ ⊗ β_x^i‖_F` for a lifted protocol.
pub fn lift_factorization_residual(
    c: &QuantumHomCertificate,
    p: &EAProtocol,
    lifted: &EAProtocol,
) -> Result<f64> {
    let (nx, ny, d) = (c.source().n(), c.target().n(), c.d());
    if lifted.inputs() != ny || lifted.messages() != p.messages() || lifted.d_b() != d * p.d_b() {
        return Err(Error::Shape("lifted protocol does not match the certificate".into()));
    }
    let beta = residual_states(p);
    let alpha = residual_states(lifted);
    let mut worst = 0.0f64;
    for i in 0..p.m {
        for y in 0..ny {
            let expected = (0..nx)
                .fold(ComplexMatrix::zeros(lifted.d_b, lifted.d_b), |acc, xv| {
                    &acc + &kron(&c.projector(xv, y).transpose(), &beta[i][xv])
                })
                .scale_real(1.0 / d as f64);
            worst = worst.max((&alpha[i][y] - &expected).frobenius_norm());
        }
    }
    Ok(worst)
}
