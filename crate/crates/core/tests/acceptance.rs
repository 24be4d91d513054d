//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! The report goes straight to stderr, so it shows up under plain
//! `cargo test` as well.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num::{BigInt, BigRational};
use qgraph::audit::{bundled_corpus, run_audit, AuditOptions};
use qgraph::capacity::{lift_protocol, protocol_from_independence_cert, residual_states, verify_protocol, EAProtocol};
use qgraph::combinatorics::{find_homomorphism, fractional_chromatic, independence_number, Homomorphism};
use qgraph::graphs::{
    automorphisms, cartesian_product, complete, cycle, cycle_rotations, homomorphic_product, is_isomorphic, kneser, omega_graph,
};
use qgraph::numerics::{
    kron, max_entangled_vector, outer, partial_trace_first, random_projector_rng, seeded_rng, ComplexMatrix, C64,
};
use qgraph::quantum::{
    cert_from_classical_hom, cert_to_independence_cert, cert_to_theta_vectors, compose_certificates,
    independence_cert_to_hom_cert, kneser_cert_lift, omega_coloring_certificate, projrank_search,
    realify_certificate, verify, ProjrankOptions, ProjrankOutcome, QuantumHomCertificate,
    CERT_TOL,
};
use qgraph::theta::{
    extreme_eigenvalues, lovasz_theta, simplex_representation, theta_bar, theta_bar_spectral,
    vt_product_identity_check, SdpOptions, ThetaMode,
};
use qgraph::{Caps, Graph};
use rand::Rng;

type Outcome = Result<String, String>;

fn lib<T>(r: qgraph::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, format!("took {e:.2?}, limit {limit:?}"))?;
    Ok(e)
}

fn report(line: &str) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

fn run(id: usize, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())),
    };
    let secs = start.elapsed().as_secs_f64();
    match &outcome {
        Ok(detail) => report(&format!("PASS  [{id:>2}] {title} ({secs:.2}s): {detail}")),
        Err(why) => report(&format!("FAIL  [{id:>2}] {title} ({secs:.2}s): {why}")),
    }
    outcome.is_ok()
}

fn c1_pentagon_theta() -> Outcome {
    let t = Instant::now();
    let c5 = lib(cycle(5))?;
    let s5 = 5f64.sqrt();
    let th = lib(lovasz_theta(&c5, ThetaMode::Equality))?.value;
    let tb = lib(theta_bar(&c5))?.value;
    ensure((th - s5).abs() < 1e-4, format!("θ(C5) = {th}"))?;
    ensure((tb - s5).abs() < 1e-4, format!("ϑ̄(C5) = {tb}"))?;
    let e = within(t, Duration::from_secs(5))?;
    Ok(format!("θ = {th:.8}, ϑ̄ = {tb:.8}, {e:.2?}"))
}

fn c2_omega4() -> Outcome {
    let g = lib(omega_graph(4))?;
    let sdp = lib(theta_bar(&g))?.value;
    let spectral = lib(theta_bar_spectral(&g))?;
    ensure((sdp - 4.0).abs() < 1e-4, format!("SDP ϑ̄ = {sdp}"))?;
    ensure((spectral - 4.0).abs() < 1e-4, format!("spectral ϑ̄ = {spectral}"))?;
    ensure((sdp - spectral).abs() < 1e-4, "SDP and spectral disagree")?;
    let (lmin, lmax) = lib(extreme_eigenvalues(&g, &Caps::default()))?;
    ensure((lmin + 2.0).abs() < 1e-10 && (lmax - 6.0).abs() < 1e-10, format!("λ = ({lmin}, {lmax})"))?;
    Ok(format!("SDP {sdp:.8}, spectral {spectral:.12}, λ_min {lmin:.12}, λ_max {lmax:.12}"))
}

fn c3_petersen() -> Outcome {
    let p = lib(kneser(5, 2))?;
    let th = lib(lovasz_theta(&p, ThetaMode::Equality))?.value;
    ensure((th - 4.0).abs() < 1e-4, format!("θ(Petersen) = {th}"))?;
    let id = lib(vt_product_identity_check(&p, 1e-4, &SdpOptions::default()))?;
    ensure((id.product - 10.0).abs() < 1e-3, format!("θ·ϑ̄ = {}", id.product))?;
    Ok(format!("θ = {th:.8}, θ·ϑ̄ = {:.8}", id.product))
}

fn c4_omega_certificate() -> Outcome {
    let c = lib(omega_coloring_certificate(4, CERT_TOL, &Caps::default()))?;
    let worst = c.report().worst;
    ensure(worst < 1e-10, format!("worst residual {worst:e}"))?;
    let mut data = c.data().clone();
    let (x, y) = (0..16 * 4).map(|k| (k / 4, k % 4)).find(|&(x, y)| c.rank(x, y) > 0).unwrap();
    let k = x * 4 + y;
    let e = &data.projectors[k];
    let bumped = ComplexMatrix::from_fn(e.rows(), e.cols(), |i, j| {
        e.get(i, j) + if (i, j) == (0, 0) { C64::new(1e-3, 0.0) } else { C64::new(0.0, 0.0) }
    });
    data.projectors[k] = bumped;
    let tampered = verify(&data, CERT_TOL);
    ensure(!tampered.ok, "perturbed certificate still verifies")?;
    let tb = lib(theta_bar(&lib(omega_graph(4))?))?.value;
    let lower = (tb - 1e-4).ceil() as usize;
    ensure(lower == c.target().n(), format!("⌈ϑ̄⌉ = {lower} ≠ {}", c.target().n()))?;
    Ok(format!("worst {worst:.1e}; perturbed worst {:.1e}; ⌈ϑ̄⌉ = 4 = witness", tampered.worst))
}

fn graphs_up_to(n_max: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut reps: Vec<Graph> = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if !reps.iter().any(|r| r.edge_count() == g.edge_count() && is_isomorphic(r, &g)) {
                reps.push(g);
            }
        }
        out.extend(reps);
    }
    out
}

fn c5_lemma_equivalence() -> Outcome {
    let t = Instant::now();
    let corpus = graphs_up_to(5);
    ensure(corpus.len() == 52, format!("{} graphs on ≤ 5 vertices, expected 52", corpus.len()))?;
    let ys = [lib(complete(2))?, lib(complete(3))?, lib(cycle(5))?];
    let mut homs = 0;
    for x in &corpus {
        for y in &ys {
            let hom = lib(find_homomorphism(x, y))?.is_some();
            let alpha = lib(independence_number(&homomorphic_product(x, y)))?.value;
            ensure(
                hom == (alpha == x.n()),
                format!("exception at X = {:?}, |V(Y)| = {}: hom {hom}, α = {alpha}", x.edges(), y.n()),
            )?;
            homs += usize::from(hom);
        }
    }
    let e = within(t, Duration::from_secs(60))?;
    Ok(format!("{} pairs, {homs} with a homomorphism, zero exceptions, {e:.2?}", corpus.len() * ys.len()))
}

fn c6_theta_vectors() -> Outcome {
    let c = lib(realify_certificate(&lib(omega_coloring_certificate(4, CERT_TOL, &Caps::default()))?, CERT_TOL))?;
    let simplex = lib(simplex_representation(4))?;
    let rep = lib(cert_to_theta_vectors(&c, &simplex, CERT_TOL))?;
    let g = c.source();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let norm = rep.vectors.iter().map(|v| (dot(v, v).sqrt() - 1.0).abs()).fold(0.0, f64::max);
    let edge = g
        .edges()
        .iter()
        .map(|&(u, v)| (dot(&rep.vectors[u], &rep.vectors[v]) + 1.0 / 3.0).abs())
        .fold(0.0, f64::max);
    ensure(norm < 1e-10, format!("norm deviation {norm:e}"))?;
    ensure(edge < 1e-8, format!("edge deviation {edge:e}"))?;
    ensure((rep.alpha + 1.0 / 3.0).abs() < 1e-15, "α changed")?;
    Ok(format!("{} vectors in R^{}, norm dev {norm:.1e}, edge dev {edge:.1e}", rep.vectors.len(), rep.dim()))
}

fn residual(e: &ComplexMatrix, d: usize) -> ComplexMatrix {
    let phi = outer(&max_entangled_vector(d).unwrap());
    let lhs = kron(e, &ComplexMatrix::identity(d));
    partial_trace_first(&lhs.try_matmul(&phi).unwrap(), d, d).unwrap()
}

fn c7_trace_identity() -> Outcome {
    let mut rng = seeded_rng(7);
    let mut worst: f64 = 0.0;
    let mut protocol_worst: f64 = 0.0;
    for _ in 0..100 {
        let d = rng.random_range(2..=8);
        let e = lib(random_projector_rng(d, rng.random_range(1..=d), &mut rng))?.into_matrix();
        let f = lib(random_projector_rng(d, rng.random_range(1..=d), &mut rng))?.into_matrix();
        let (be, bf) = (residual(&e, d), residual(&f, d));
        let lhs = lib(be.try_matmul(&bf))?.trace();
        let rhs = lib(e.try_matmul(&f))?.trace() / (d * d) as f64;
        worst = worst.max((lhs - rhs).norm());

        let id = ComplexMatrix::identity(d);
        let povms = vec![vec![e.clone(), lib(id.try_sub(&e))?], vec![f.clone(), lib(id.try_sub(&f))?]];
        let p = lib(EAProtocol::new(d, d, povms, lib(max_entangled_vector(d))?, 1e-9))?;
        let beta = residual_states(&p);
        let lhs = lib(beta[0][0].try_matmul(&beta[1][0]))?.trace();
        protocol_worst = protocol_worst.max((lhs - rhs).norm());
    }
    ensure(worst < 1e-10, format!("partial-trace route: worst {worst:e}"))?;
    ensure(protocol_worst < 1e-10, format!("protocol route: worst {protocol_worst:e}"))?;
    Ok(format!("100 pairs, worst {worst:.1e} (partial trace), {protocol_worst:.1e} (protocol)"))
}

fn c8_projrank() -> Outcome {
    let t = Instant::now();
    let c5 = lib(cycle(5))?;
    let opts = ProjrankOptions::default();
    ensure(opts.restarts <= 20, "more than 20 restarts configured")?;
    let found = lib(projrank_search(&c5, 5, 2, &opts))?;
    let (restart, res) = match &found {
        ProjrankOutcome::Found { restart, residual, representation, .. } => {
            ensure(*residual < 1e-10, format!("residual {residual:e}"))?;
            ensure(representation.value() == BigRational::new(BigInt::from(5), BigInt::from(2)), "value ≠ 5/2")?;
            (*restart, *residual)
        }
        ProjrankOutcome::NotFound { best_residual, .. } => return Err(format!("(5,2) not found: {best_residual:e}")),
    };
    let e = within(t, Duration::from_secs(30))?;
    let fail = lib(projrank_search(&c5, 2, 1, &ProjrankOptions { restarts: 5, iterations: 1000, ..opts }))?;
    ensure(!fail.is_found(), "(2,1) reported success")?;
    Ok(format!(
        "(5,2) at restart {restart} residual {res:.1e} in {e:.2?}; (2,1) best residual {:.3}",
        fail.residual()
    ))
}

fn c9_fractional() -> Outcome {
    let half5 = BigRational::new(BigInt::from(5), BigInt::from(2));
    let c5 = lib(fractional_chromatic(&lib(cycle(5))?))?.value;
    let pet = lib(fractional_chromatic(&lib(kneser(5, 2))?))?.value;
    ensure(c5 == half5, format!("χ_f(C5) = {c5}"))?;
    ensure(pet == half5, format!("χ_f(Petersen) = {pet}"))?;
    Ok(format!("χ_f(C5) = {c5}, χ_f(Petersen) = {pet}"))
}

fn c10_separation_instance() -> Outcome {
    let o4 = lib(omega_graph(4))?;
    let k4 = lib(complete(4))?;
    let boxed = cartesian_product(&o4, &k4);
    ensure(boxed == homomorphic_product(&o4, &k4), "Ω4□K4 ≠ Ω4⋉K4")?;
    let alpha = lib(independence_number(&boxed))?.value;
    let alpha_o4 = lib(independence_number(&o4))?.value;
    ensure(alpha <= 4 * alpha_o4, format!("Vizing: α = {alpha} > 4·{alpha_o4}"))?;
    let oc = lib(omega_coloring_certificate(4, CERT_TOL, &Caps::default()))?;
    let ic = lib(cert_to_independence_cert(&oc, CERT_TOL))?;
    let p = lib(protocol_from_independence_cert(&ic, CERT_TOL))?;
    let report = lib(verify_protocol(&p, &boxed, CERT_TOL))?;
    ensure(report.ok && p.messages() == 16, format!("protocol: ok {}, {} messages", report.ok, p.messages()))?;
    let separated = p.messages() > alpha;
    ensure(separated == (alpha < 16), "separation claim disagrees with the exact α")?;
    let verdict = if separated { "strict separation" } else { "no strict separation at n = 4" };
    Ok(format!("α = {alpha} ≤ 4·α(Ω4) = {}, 16-message protocol verifies, {verdict}", 4 * alpha_o4))
}

fn verified(c: &QuantumHomCertificate, what: &str) -> Result<(), String> {
    let r = verify(c.data(), CERT_TOL);
    ensure(r.ok, format!("{what}: worst {:e}", r.worst))
}

fn c11_round_trips() -> Outcome {
    let t = Instant::now();
    let caps = Caps::default();
    let c5 = lib(cycle(5))?;
    let k3 = lib(complete(3))?;
    let k4 = lib(complete(4))?;
    let mut count = 0;

    let h = lib(find_homomorphism(&c5, &k3))?.ok_or("no C5 → K3")?;
    let ch = lib(cert_from_classical_hom(&h))?;
    let k3k4 = lib(Homomorphism::new(k3.clone(), k4.clone(), vec![0, 1, 2]))?;
    let composed = lib(compose_certificates(&ch, &lib(cert_from_classical_hom(&k3k4))?, CERT_TOL))?;
    verified(&composed, "classical composition")?;
    count += 1;

    let oc = lib(omega_coloring_certificate(4, CERT_TOL, &caps))?;
    let ident = lib(Homomorphism::new(k4.clone(), k4.clone(), (0..4).collect()))?;
    let oc2 = lib(compose_certificates(&oc, &lib(realify_certificate(&lib(cert_from_classical_hom(&ident))?, CERT_TOL))?, CERT_TOL))?;
    verified(&oc2, "quantum composition")?;
    count += 1;

    for (c, x, y) in [(&ch, &c5, &k3), (&oc, oc.source(), &k4)] {
        let ic = lib(cert_to_independence_cert(c, CERT_TOL))?;
        verified(&ic, "independence certificate")?;
        let back = lib(independence_cert_to_hom_cert(&ic, x, y, CERT_TOL))?;
        verified(&back, "inverse")?;
        let diff = (0..x.n() * y.n())
            .map(|k| lib(back.projector(k / y.n(), k % y.n()).try_sub(c.projector(k / y.n(), k % y.n()))).map(|m| m.max_abs()))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(0.0, f64::max);
        ensure(diff < 1e-12, format!("round trip differs by {diff:e}"))?;
        count += 2;

        let group = if y.n() == 3 { lib(lib(automorphisms(y))?.elements(6))? } else { cycle_rotations(y.n()) };
        let lifted = lib(kneser_cert_lift(c, &group, CERT_TOL, &caps))?;
        verified(&lifted, "Kneser lift")?;
        count += 1;

        let p = lib(protocol_from_independence_cert(&ic, CERT_TOL))?;
        let g = ic.target().clone();
        let id = lib(Homomorphism::new(g.clone(), g.clone(), (0..g.n()).collect()))?;
        let along = lib(realify_certificate(&lib(cert_from_classical_hom(&id))?, CERT_TOL))?;
        let lp = lib(lift_protocol(&along, &p, CERT_TOL))?;
        let r = lib(verify_protocol(&lp, &g.complement(), CERT_TOL))?;
        ensure(r.ok && lp.messages() == p.messages(), "lifted protocol fails")?;
        count += 2;
    }

    let e = within(t, Duration::from_secs(120))?;
    Ok(format!("{count} constructed objects verified at {CERT_TOL:e}, {e:.2?}"))
}

fn c12_audit() -> Outcome {
    let report = lib(run_audit(&bundled_corpus(), &AuditOptions::default()))?;
    ensure(report.ok, format!("failures: {:?}", report.failures))?;
    let needed = ["ω ≤ ϑ̄", "ϑ̄ ≤ χ_f", "χ_f ≤ χ", "α ≤ ϑ"];
    for row in &report.rows {
        for n in needed {
            ensure(row.checks.iter().any(|c| c.name == n), format!("{}: no {n} check", row.name))?;
        }
        if row.vertex_transitive == Some(true) {
            ensure(row.checks.iter().any(|c| c.name.contains("α·ω")), format!("{}: no clique-coclique check", row.name))?;
        }
        ensure(row.checks.iter().all(|c| c.margin.is_finite()), format!("{}: missing margin", row.name))?;
    }
    let checks: usize = report.rows.iter().map(|r| r.checks.len()).sum();
    let tightest = report
        .rows
        .iter()
        .flat_map(|r| r.checks.iter().map(move |c| (c.margin, r.name.as_str(), c.name.as_str())))
        .filter(|c| c.0 > 0.0)
        .fold((f64::INFINITY, "", ""), |a, c| if c.0 < a.0 { c } else { a });
    Ok(format!(
        "{} graphs, {checks} checks, {} cross checks, tightest strict margin {:.2e} ({}: {})",
        report.rows.len(),
        report.cross_checks.len(),
        tightest.0,
        tightest.1,
        tightest.2
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("θ(C5) = ϑ̄(C5) = √5", c1_pentagon_theta),
        ("ϑ̄(Ω4) = 4 by SDP and spectrum", c2_omega4),
        ("θ(Petersen) = 4 and θ·ϑ̄ = 10", c3_petersen),
        ("Ω4 colouring certificate", c4_omega_certificate),
        ("hom ⇔ α(X⋉Y) = |V(X)| on graphs ≤ 5 vertices", c5_lemma_equivalence),
        ("theta vectors from a certificate", c6_theta_vectors),
        ("residual-state trace identity", c7_trace_identity),
        ("projective rank search on C5", c8_projrank),
        ("exact χ_f of C5 and Petersen", c9_fractional),
        ("Ω4□K4 capacity instance", c10_separation_instance),
        ("composition and round trips", c11_round_trips),
        ("full audit of the bundled corpus", c12_audit),
    ];
    let passed: Vec<bool> = criteria.iter().enumerate().map(|(i, (t, f))| run(i + 1, t, *f)).collect();
    let n = passed.iter().filter(|&&p| p).count();
    report(&format!("acceptance: {n}/{} criteria passed", passed.len()));
    assert_eq!(n, passed.len(), "acceptance criteria failed");
}
