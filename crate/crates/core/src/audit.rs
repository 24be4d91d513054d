//! Parameter table and inequality checklist over a corpus of graphs.
//!
//! Each corpus entry is described by a [`GraphSpec`] so that structure the
//! checks depend on (product factors, `Ω_n`, Kneser parameters) travels with
//! the graph. Rows are computed independently; cross-graph checks are kept
//! in a separate section so adding an entry never changes another row.

use std::time::Instant;

use num::{BigInt, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    chromatic_number_with, clique_number_with, find_homomorphism_with, fractional_chromatic_with,
    independence_number_with, Rational,
};
use crate::config::Caps;
use crate::graphs::{
    cartesian_product, complete, cycle, empty, homomorphic_product, is_vertex_transitive_with, kneser, omega_graph_with,
    path, strong_product_with, Graph,
};
use crate::quantum::{
    cert_from_classical_hom, cert_to_independence_cert, kneser_to_projective, omega_coloring_certificate,
    projrep_tensor_pullback, QuantumHomCertificate, CERT_TOL,
};
use crate::theta::{lovasz_theta_with, theta_spectral_with, SdpOptions, SdpResult, ThetaMode};
use crate::{Error, Result};

/// Serializable recipe for a graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphSpec {
    Complete { n: usize },
    Empty { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    Kneser { n: usize, r: usize },
    Omega { n: usize },
    HomomorphicProduct { x: Box<GraphSpec>, y: Box<GraphSpec> },
    CartesianProduct { x: Box<GraphSpec>, y: Box<GraphSpec> },
    StrongProduct { x: Box<GraphSpec>, y: Box<GraphSpec> },
    Complement { of: Box<GraphSpec> },
    Custom { graph: Graph },
}

impl GraphSpec {
    pub fn build(&self, caps: &Caps) -> Result<Graph> {
        Ok(match self {
            GraphSpec::Complete { n } => complete(*n)?,
            GraphSpec::Empty { n } => empty(*n),
            GraphSpec::Cycle { n } => cycle(*n)?,
            GraphSpec::Path { n } => path(*n),
            GraphSpec::Kneser { n, r } => kneser(*n, *r)?,
            GraphSpec::Omega { n } => omega_graph_with(*n, caps)?,
            GraphSpec::HomomorphicProduct { x, y } => {
                let (x, y) = (x.build(caps)?, y.build(caps)?);
                crate::config::check_cap("product", x.n() * y.n(), caps.product_vertices)?;
                homomorphic_product(&x, &y)
            }
            GraphSpec::CartesianProduct { x, y } => {
                let (x, y) = (x.build(caps)?, y.build(caps)?);
                crate::config::check_cap("product", x.n() * y.n(), caps.product_vertices)?;
                cartesian_product(&x, &y)
            }
            GraphSpec::StrongProduct { x, y } => strong_product_with(&x.build(caps)?, &y.build(caps)?, caps)?,
            GraphSpec::Complement { of } => of.build(caps)?.complement(),
            GraphSpec::Custom { graph } => graph.clone(),
        })
    }

    /// Factors `(X, Y)` when the graph is `X ⋉ Y`, including `X □ K_n`.
    fn hom_factors(&self) -> Option<(&GraphSpec, &GraphSpec)> {
        match self {
            GraphSpec::HomomorphicProduct { x, y } => Some((x, y)),
            GraphSpec::CartesianProduct { x, y } if matches!(**y, GraphSpec::Complete { .. }) => Some((x, y)),
            _ => None,
        }
    }

    fn cartesian_factors(&self) -> Option<(&GraphSpec, &GraphSpec)> {
        match self {
            GraphSpec::CartesianProduct { x, y } => Some((x, y)),
            GraphSpec::HomomorphicProduct { x, y } if matches!(**y, GraphSpec::Complete { .. }) => Some((x, y)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: GraphSpec,
}

impl CorpusEntry {
    pub fn new(name: &str, spec: GraphSpec) -> Self {
        CorpusEntry { name: name.to_string(), spec }
    }
}

/// `K_1..K_5`, `C_4..C_7`, Petersen, `Ω_4`, `C_5 ⋉ K_3` and `Ω_4 □ K_4`.
pub fn bundled_corpus() -> Vec<CorpusEntry> {
    let mut v: Vec<CorpusEntry> =
        (1..=5).map(|n| CorpusEntry::new(&format!("K{n}"), GraphSpec::Complete { n })).collect();
    v.extend((4..=7).map(|n| CorpusEntry::new(&format!("C{n}"), GraphSpec::Cycle { n })));
    v.push(CorpusEntry::new("petersen", GraphSpec::Kneser { n: 5, r: 2 }));
    v.push(CorpusEntry::new("omega4", GraphSpec::Omega { n: 4 }));
    v.push(CorpusEntry::new(
        "C5_hom_K3",
        GraphSpec::HomomorphicProduct {
            x: Box::new(GraphSpec::Cycle { n: 5 }),
            y: Box::new(GraphSpec::Complete { n: 3 }),
        },
    ));
    v.push(CorpusEntry::new(
        "omega4_box_K4",
        GraphSpec::CartesianProduct {
            x: Box::new(GraphSpec::Omega { n: 4 }),
            y: Box::new(GraphSpec::Complete { n: 4 }),
        },
    ));
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

/// One inequality instance. `margin` is `rhs − lhs` (for `Eq`, `−|rhs − lhs|`).
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub source: String,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, source: &str, relation: Relation, lhs: f64, rhs: f64, slack: f64) -> Self {
        let (margin, pass) = match relation {
            Relation::Le => (rhs - lhs, lhs <= rhs + slack),
            Relation::Lt => (rhs - lhs, lhs < rhs - slack),
            Relation::Eq => (-(rhs - lhs).abs(), (rhs - lhs).abs() <= slack),
        };
        Check { name: name.into(), source: source.into(), relation, lhs, rhs, margin, pass }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SdpDiagnostics {
    pub value: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub dual_gap_estimate: f64,
    pub iterations: usize,
}

impl From<&SdpResult> for SdpDiagnostics {
    fn from(r: &SdpResult) -> Self {
        SdpDiagnostics {
            value: r.value,
            primal_residual: r.primal_residual,
            dual_residual: r.dual_residual,
            dual_gap_estimate: r.dual_gap_estimate,
            iterations: r.iterations,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphRow {
    pub name: String,
    pub n: usize,
    pub edges: usize,
    pub vertex_transitive: Option<bool>,
    pub alpha: usize,
    pub omega: usize,
    pub chi: usize,
    /// Exact, as `p/q`; absent when the LP is over its cap.
    pub chi_f: Option<String>,
    pub theta: f64,
    pub theta_bar: f64,
    pub theta_spectral: Option<f64>,
    pub c0: usize,
    /// Smallest verified quantum colouring found.
    pub chi_q_upper: usize,
    pub chi_q_witness: String,
    /// Largest verified quantum independent set found.
    pub alpha_q_lower: usize,
    pub alpha_q_witness: String,
    /// Value `d/r` of a verified projective representation.
    pub xi_f_upper: Option<String>,
    pub theta_diagnostics: SdpDiagnostics,
    pub theta_bar_diagnostics: SdpDiagnostics,
    pub seconds: f64,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl GraphRow {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug)]
pub struct AuditOptions {
    pub sdp: SdpOptions,
    /// Slack applied to comparisons involving SDP values.
    pub slack: f64,
    pub seed: u64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { sdp: SdpOptions::default(), slack: 1e-4, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub version: String,
    pub seed: u64,
    pub slack: f64,
    pub rows: Vec<GraphRow>,
    /// Checks relating two corpus members.
    pub cross_checks: Vec<Check>,
    /// The bound chain on `|V(Ω_n)|/α_q(Ω_n)` against `χ_q(Ω_n)`.
    pub omega_chain: Vec<Check>,
    pub failures: Vec<String>,
    pub ok: bool,
}

fn q_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// A verified certificate `X ⇒ Y` for the factors of a homomorphic product:
/// classical if one exists, otherwise the `Ω_n ⇒ K_n` construction.
fn factor_certificate(x: &GraphSpec, y: &GraphSpec, caps: &Caps) -> Result<Option<QuantumHomCertificate>> {
    let (xg, yg) = (x.build(caps)?, y.build(caps)?);
    if let (GraphSpec::Omega { n }, GraphSpec::Complete { n: m }) = (x, y) {
        if n == m {
            return omega_coloring_certificate(*n, CERT_TOL, caps).map(Some);
        }
    }
    match find_homomorphism_with(&xg, &yg, caps)? {
        Some(h) => cert_from_classical_hom(&h).map(Some),
        None => Ok(None),
    }
}

pub fn audit_entry(entry: &CorpusEntry, opts: &AuditOptions) -> Result<GraphRow> {
    let start = Instant::now();
    let caps = &opts.sdp.caps;
    let slack = opts.slack;
    let g = entry.spec.build(caps)?;
    let n = g.n();
    let mut notes = Vec::new();

    let alpha = independence_number_with(&g, caps)?.value;
    let omega = clique_number_with(&g, caps)?.value;
    let chi = chromatic_number_with(&g, caps)?.value;
    let vt = match is_vertex_transitive_with(&g, caps) {
        Ok(b) => Some(b),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let frac = match fractional_chromatic_with(&g, caps) {
        Ok(f) => Some(f),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let chi_f = match (&frac, vt) {
        (Some(f), _) => Some(f.value.clone()),
        (None, Some(true)) if alpha > 0 => {
            notes.push("χ_f = |V|/α (vertex-transitive); LP over cap".into());
            Some(Rational::new(BigInt::from(n), BigInt::from(alpha)))
        }
        _ => {
            notes.push("fractional chromatic number skipped: over cap".into());
            None
        }
    };
    let theta_r = lovasz_theta_with(&g, ThetaMode::Equality, &opts.sdp)?;
    let theta_bar_r = lovasz_theta_with(&g.complement(), ThetaMode::Equality, &opts.sdp)?;
    let (theta, theta_bar) = (theta_r.value, theta_bar_r.value);
    let theta_spec = theta_spectral_with(&g, caps).ok();

    let mut chi_q_upper = chi;
    let mut chi_q_witness = "classical colouring".to_string();
    if let GraphSpec::Omega { n: m } = entry.spec {
        let c = omega_coloring_certificate(m, CERT_TOL, caps)?;
        if m < chi_q_upper {
            chi_q_upper = m;
            chi_q_witness = format!("verified certificate into K{m}, d = {}", c.d());
        }
    }

    let mut alpha_q_lower = alpha;
    let mut alpha_q_witness = "classical independent set".to_string();
    if let Some((x, y)) = entry.spec.hom_factors() {
        if let Some(c) = factor_certificate(x, y, caps)? {
            let ic = cert_to_independence_cert(&c, CERT_TOL)?;
            if ic.target() != &g.complement() {
                return Err(Error::Internal("independence certificate does not match the product".into()));
            }
            if ic.source().n() > alpha_q_lower {
                alpha_q_lower = ic.source().n();
                alpha_q_witness = format!("verified certificate K{} ⇒ complement, d = {}", ic.source().n(), ic.d());
            }
        }
    }

    let mut xi_f = None;
    if let Some(f) = &frac {
        if 2 * f.r <= f.d {
            let h = f.kneser_homomorphism(&g, caps)?;
            let rep = kneser_to_projective(f.d, f.r, CERT_TOL)?;
            let pulled = projrep_tensor_pullback(&cert_from_classical_hom(&h)?, &rep, CERT_TOL)?;
            xi_f = Some(pulled.value());
        }
    }

    let mut checks = Vec::new();
    let sandwich = "sandwich theorem";
    let mut le = |name: &str, source: &str, lhs: f64, rhs: f64, s: f64| {
        checks.push(Check::new(name, source, Relation::Le, lhs, rhs, s));
    };
    le("ω ≤ ϑ̄", sandwich, omega as f64, theta_bar, slack);
    if let Some(f) = &chi_f {
        le("ϑ̄ ≤ χ_f", "ϑ̄ bounded by the fractional chromatic number", theta_bar, q_to_f64(f), slack);
        le("χ_f ≤ χ", "a colouring is a fractional colouring", q_to_f64(f), chi as f64, 0.0);
        le("ω ≤ χ_f", "clique bound", omega as f64, q_to_f64(f), 0.0);
    }
    le("ϑ̄ ≤ χ", sandwich, theta_bar, chi as f64, slack);
    if let Some(x) = &xi_f {
        le("ϑ̄ ≤ ξ_f witness", "ϑ̄ bounded by projective rank", theta_bar, q_to_f64(x), slack);
    }
    le("⌈ϑ̄⌉ ≤ χ_q witness", "ϑ̄ bounds the quantum chromatic number", (theta_bar - slack).ceil(), chi_q_upper as f64, 0.0);
    le("ω ≤ χ_q witness", "clique bound", omega as f64, chi_q_upper as f64, 0.0);
    le("χ_q witness ≤ χ", "a colouring is a quantum colouring", chi_q_upper as f64, chi as f64, 0.0);
    le("α ≤ α_q witness", "a classical independent set is quantum", alpha as f64, alpha_q_lower as f64, 0.0);
    le("α_q witness ≤ ⌊ϑ⌋", "ϑ bounds the quantum independence number", alpha_q_lower as f64, (theta + slack).floor(), 0.0);
    le("α ≤ ϑ", sandwich, alpha as f64, theta, slack);
    le("c_0 ≤ ⌊ϑ⌋", "one-shot capacity below ϑ", alpha as f64, (theta + slack).floor(), 0.0);
    if vt == Some(true) {
        let cc = "clique-coclique bound";
        le("α·ω ≤ |V|", cc, (alpha * omega) as f64, n as f64, 0.0);
        le("α_q witness · ω ≤ |V|", cc, (alpha_q_lower * omega) as f64, n as f64, 0.0);
        le("|V|/α ≤ χ", "vertex-transitive colouring bound", n as f64 / alpha.max(1) as f64, chi as f64, 0.0);
        checks.push(Check::new(
            "ϑ·ϑ̄ = |V|",
            "product identity for vertex-transitive graphs",
            Relation::Eq,
            theta * theta_bar,
            n as f64,
            1e-3 * n as f64,
        ));
    }
    if let Some(s) = theta_spec {
        checks.push(Check::new("ϑ(SDP) = ϑ(spectral)", "closed form for edge-transitive graphs", Relation::Eq, theta, s, slack));
    }
    if let Some((x, y)) = entry.spec.cartesian_factors() {
        let (xg, yg) = (x.build(caps)?, y.build(caps)?);
        let (ax, ay) = (independence_number_with(&xg, caps)?.value, independence_number_with(&yg, caps)?.value);
        let bound = (ax * yg.n()).min(ay * xg.n());
        checks.push(Check::new("α(X□Y) ≤ min(α(X)|Y|, α(Y)|X|)", "Vizing", Relation::Le, alpha as f64, bound as f64, 0.0));
        if alpha_q_lower > alpha {
            notes.push(format!("strict separation: α = {alpha} < {alpha_q_lower} = α_q witness"));
        } else {
            notes.push(format!("no strict separation at this size: α = {alpha} = α_q witness"));
        }
    }

    Ok(GraphRow {
        name: entry.name.clone(),
        n,
        edges: g.edge_count(),
        vertex_transitive: vt,
        alpha,
        omega,
        chi,
        chi_f: chi_f.map(|f| f.to_string()),
        theta,
        theta_bar,
        theta_spectral: theta_spec,
        c0: alpha,
        chi_q_upper,
        chi_q_witness,
        alpha_q_lower,
        alpha_q_witness,
        xi_f_upper: xi_f.map(|q| q.to_string()),
        theta_diagnostics: (&theta_r).into(),
        theta_bar_diagnostics: (&theta_bar_r).into(),
        seconds: start.elapsed().as_secs_f64(),
        checks,
        notes,
    })
}

/// No-homomorphism lemma on corpus pairs: if `X → Y` with `Y`
/// vertex-transitive then `α(X)/|V(X)| ≥ α(Y)/|V(Y)|`.
pub fn cross_checks(entries: &[CorpusEntry], rows: &[GraphRow], caps: &Caps) -> Result<Vec<Check>> {
    const MAX_PAIR_VERTICES: usize = 16;
    let graphs: Vec<Graph> = entries.iter().map(|e| e.spec.build(caps)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, x) in graphs.iter().enumerate() {
        for (j, y) in graphs.iter().enumerate() {
            if i == j || x.n() > MAX_PAIR_VERTICES || y.n() > MAX_PAIR_VERTICES || rows[j].vertex_transitive != Some(true) {
                continue;
            }
            if find_homomorphism_with(x, y, caps)?.is_some() {
                out.push(Check::new(
                    &format!("{} → {}: α(Y)/|V(Y)| ≤ α(X)/|V(X)|", rows[i].name, rows[j].name),
                    "no-homomorphism lemma",
                    Relation::Le,
                    rows[j].alpha as f64 / y.n() as f64,
                    rows[i].alpha as f64 / x.n() as f64,
                    1e-12,
                ));
            }
        }
    }
    Ok(out)
}

/// Exact `α_q(Ω_n) ≤ ⌊ϑ(Ω_n)⌋` with `ϑ(Ω_n)` from the spectrum
/// `λ_max = C(n, n/2)`, `λ_min = −λ_max/(n−1)`, compared with `χ_q(Ω_n) = n`.
/// The strict inequality holds exactly when `n` is not a power of two.
pub fn omega_chain_analytic(n: usize) -> Result<Vec<Check>> {
    if n == 0 || n % 4 != 0 {
        return Err(Error::InvalidArgument(format!("n = {n} must be a positive multiple of 4")));
    }
    let v = BigInt::from(1u8) << n;
    let lmax = num::integer::binomial(BigInt::from(n), BigInt::from(n / 2));
    let lmin = Rational::new(-lmax.clone(), BigInt::from(n - 1));
    let theta = Rational::from_integer(v.clone()) * &lmin / (&lmin - Rational::from_integer(lmax));
    let floor = theta.floor().to_integer();
    let ratio = Rational::new(v.clone(), floor.clone());
    let nq = Rational::from_integer(BigInt::from(n));
    let strict = ratio > nq;
    let power_of_two = n.is_power_of_two();
    let src = "quantum no-homomorphism counterexample";
    let mut out = vec![Check::new(
        &format!("ϑ(Ω{n}) = 2^n/n"),
        "spectral closed form",
        Relation::Eq,
        q_to_f64(&theta),
        q_to_f64(&Rational::new(v.clone(), BigInt::from(n))),
        0.0,
    )];
    out.push(Check::new(
        &format!("|V(Ω{n})|/⌊ϑ⌋ ≥ χ_q(Ω{n}) = {n}"),
        src,
        Relation::Le,
        n as f64,
        q_to_f64(&ratio),
        0.0,
    ));
    let expected = !power_of_two;
    out.push(Check {
        name: format!("strict for Ω{n} iff n is not a power of two"),
        source: src.into(),
        relation: Relation::Eq,
        lhs: strict as u8 as f64,
        rhs: expected as u8 as f64,
        margin: 0.0,
        pass: strict == expected,
    });
    Ok(out)
}

/// The same chain at `n = 4` from the SDP value of `ϑ(Ω_4)` and the
/// verified colouring certificate. Equality is expected since 4 is a power of two.
fn omega_chain_numeric(opts: &AuditOptions) -> Result<Vec<Check>> {
    let caps = &opts.sdp.caps;
    let g = omega_graph_with(4, caps)?;
    let theta = lovasz_theta_with(&g, ThetaMode::Equality, &opts.sdp)?.value;
    let cert = omega_coloring_certificate(4, CERT_TOL, caps)?;
    let bound = (theta + opts.slack).floor();
    Ok(vec![Check::new(
        "|V(Ω4)|/⌊ϑ(Ω4)⌋ = χ_q witness (no strict gap)",
        "quantum no-homomorphism counterexample",
        Relation::Eq,
        g.n() as f64 / bound,
        cert.target().n() as f64,
        0.0,
    )])
}

/// Audits every entry; `map` decides how rows are scheduled (sequentially
/// or on a thread pool) and must preserve order.
pub fn run_audit_with<F>(entries: &[CorpusEntry], opts: &AuditOptions, map: F) -> Result<AuditReport>
where
    F: FnOnce(&[CorpusEntry], &(dyn Fn(&CorpusEntry) -> Result<GraphRow> + Sync)) -> Vec<Result<GraphRow>>,
{
    let rows = map(entries, &|e| audit_entry(e, opts)).into_iter().collect::<Result<Vec<_>>>()?;
    let cross = cross_checks(entries, &rows, &opts.sdp.caps)?;
    let mut omega_chain = omega_chain_analytic(12)?;
    omega_chain.extend(omega_chain_analytic(4)?);
    omega_chain.extend(omega_chain_numeric(opts)?);
    let mut failures = Vec::new();
    for r in &rows {
        failures.extend(r.failures().map(|c| format!("{}: {}", r.name, c.name)));
    }
    failures.extend(cross.iter().chain(&omega_chain).filter(|c| !c.pass).map(|c| c.name.clone()));
    Ok(AuditReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: opts.seed,
        slack: opts.slack,
        ok: failures.is_empty(),
        rows,
        cross_checks: cross,
        omega_chain,
        failures,
    })
}

pub fn run_audit(entries: &[CorpusEntry], opts: &AuditOptions) -> Result<AuditReport> {
    run_audit_with(entries, opts, |es, f| es.iter().map(f).collect())
}
