//! `qgraph-cli`: graph generation, parameter tables, certificate and protocol
//! verification, constructions, and the corpus audit.
//!
//! Exit codes: 0 ok, 1 verification or audit failure, 2 usage or input
//! error, 3 resource cap exceeded.

mod output;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use qgraph::audit::{audit_entry, bundled_corpus, run_audit_with, AuditOptions, CorpusEntry, GraphSpec};
use qgraph::capacity::{lift_protocol_with, protocol_from_independence_cert, verify_protocol, EAProtocol};
use qgraph::combinatorics::find_homomorphism_with;
use qgraph::graphs::{automorphisms_with, io};
use qgraph::quantum::{
    cert_from_classical_hom, cert_to_independence_cert, compose_certificates, independence_cert_to_hom_cert,
    kneser_cert_lift, kneser_to_projective, omega_coloring_certificate, projrank_search,
    projrep_from_independence_cert, projrep_tensor_pullback, realify_certificate, verify, CertificateData,
    ProjectiveJson, ProjrankOptions, ProjrankOutcome, QuantumHomCertificate, CERT_TOL,
};
use qgraph::theta::DEFAULT_TOL;
use qgraph::{Caps, Error, Graph};

#[derive(Parser)]
#[command(name = "qgraph-cli", version, about = "Classical and quantum graph parameter workbench")]
struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Verification tolerance (default 1e-8) for verify/derive; SDP
    /// tolerance (default 1e-7) for params/audit.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Override a size cap, e.g. `--cap clique_vertices=80`. Repeatable.
    #[arg(long = "cap", global = true, value_name = "NAME=VALUE")]
    caps: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Process corpus entries in parallel.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Parameter table and inequality checks for one graph file.
    Params { graph: PathBuf },
    /// Verify a certificate, projective representation or protocol file.
    Verify { file: PathBuf },
    /// Run a construction and print the verified result.
    Derive {
        #[command(subcommand)]
        construction: Construction,
    },
    /// Audit a corpus directory (the bundled corpus when omitted).
    Audit {
        dir: Option<PathBuf>,
        /// Write the bundled corpus into this directory and exit.
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    Complete { n: usize },
    Empty { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    Kneser { n: usize, r: usize },
    Omega { n: usize },
    /// A graph spec or corpus entry in JSON.
    Spec { file: PathBuf },
}

#[derive(Subcommand)]
enum Construction {
    /// Certificate `Ω_n ⇒ K_n`.
    OmegaColoring { n: usize },
    /// Scalar certificate from a classical homomorphism, if one exists.
    ClassicalHom { x: PathBuf, y: PathBuf },
    /// `X ⇒ Y` into `K_|V(X)| ⇒ complement(X ⋉ Y)`.
    IndependenceCert { cert: PathBuf },
    /// `K_|V(X)| ⇒ complement(X ⋉ Y)` back to `X ⇒ Y`.
    HomFromIndependence { cert: PathBuf, x: PathBuf, y: PathBuf },
    Compose { first: PathBuf, second: PathBuf },
    Realify { cert: PathBuf },
    /// `X ⋉ Y ⇒ K_{|G|:|G|/|V(Y)|}` with `G = Aut(Y)`.
    KneserLift { cert: PathBuf },
    /// Diagonal representation of `K_{n:r}`.
    KneserRep { n: usize, r: usize },
    /// Pull a representation of `Y` back along `X ⇒ Y`.
    Pullback { cert: PathBuf, rep: PathBuf },
    /// Representation of `X` from an equal-rank `K_m ⇒ complement(X)`.
    RepFromIndependence { cert: PathBuf },
    /// Numerical search for a `d/r`-representation.
    Projrank {
        graph: PathBuf,
        d: usize,
        r: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 4000)]
        iterations: usize,
    },
    /// Protocol from `K_m ⇒ complement(X)` for the confusability graph `X`.
    Protocol { cert: PathBuf },
    /// Lift a protocol for `X` along `complement(X) ⇒ complement(Y)`.
    LiftProtocol { cert: PathBuf, protocol: PathBuf },
}

/// A protocol together with its confusability graph.
#[derive(Serialize, Deserialize)]
struct ProtocolFile {
    graph: Graph,
    protocol: EAProtocol,
}

#[derive(Debug)]
enum Failure {
    /// Verification, audit or search failure (exit 1), with a report.
    Rejected(String),
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::InvalidArgument(_) | Error::Parse(_) | Error::Json(_) | Error::Io(_) | Error::Shape(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

struct Ctx {
    seed: u64,
    tol: Option<f64>,
    caps: Caps,
    format: Format,
    parallel: bool,
}

impl Ctx {
    fn cert_tol(&self) -> f64 {
        self.tol.unwrap_or(CERT_TOL)
    }

    fn audit_options(&self) -> AuditOptions {
        let mut opts = AuditOptions { seed: self.seed, ..Default::default() };
        opts.sdp.tol = self.tol.unwrap_or(DEFAULT_TOL);
        opts.sdp.caps = self.caps.clone();
        opts
    }
}

fn parse_caps(items: &[String]) -> CliResult<Caps> {
    let mut caps = Caps::default();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--cap expects NAME=VALUE, got `{item}`")))?;
        let value: usize =
            value.trim().parse().map_err(|_| Failure::Usage(format!("cap value `{value}` is not an integer")))?;
        let slot = match name.trim() {
            "omega_n" => &mut caps.omega_n,
            "automorphism_full" => &mut caps.automorphism_full,
            "automorphism_orbit" => &mut caps.automorphism_orbit,
            "product_vertices" => &mut caps.product_vertices,
            "clique_vertices" => &mut caps.clique_vertices,
            "fractional_vertices" => &mut caps.fractional_vertices,
            "homomorphism_size" => &mut caps.homomorphism_size,
            "sdp_vertices" => &mut caps.sdp_vertices,
            "eig_dim" => &mut caps.eig_dim,
            "kneser_vertices" => &mut caps.kneser_vertices,
            other => return Err(Failure::Usage(format!("unknown cap `{other}`"))),
        };
        *slot = value;
    }
    Ok(caps)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    Ok(io::parse_any(&read(path)?)?)
}

fn read_cert(path: &Path, tol: f64) -> CliResult<QuantumHomCertificate> {
    let data: CertificateData = read_json(path)?;
    Ok(QuantumHomCertificate::new(data, tol)?)
}

fn json_out<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn require_json(ctx: &Ctx, what: &str) -> CliResult<()> {
    if ctx.format == Format::Json {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{what} only supports --format json")))
    }
}

fn cmd_gen(ctx: &Ctx, family: &Family) -> CliResult<String> {
    let spec = match family {
        Family::Complete { n } => GraphSpec::Complete { n: *n },
        Family::Empty { n } => GraphSpec::Empty { n: *n },
        Family::Cycle { n } => GraphSpec::Cycle { n: *n },
        Family::Path { n } => GraphSpec::Path { n: *n },
        Family::Kneser { n, r } => GraphSpec::Kneser { n: *n, r: *r },
        Family::Omega { n } => GraphSpec::Omega { n: *n },
        Family::Spec { file } => {
            let v: Value = read_json(file)?;
            let v = v.get("spec").cloned().unwrap_or(v);
            serde_json::from_value(v).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?
        }
    };
    let g = spec.build(&ctx.caps)?;
    Ok(match ctx.format {
        Format::Json => io::to_json(&g),
        Format::Dot => io::to_dot(&g),
        Format::Csv => output::edges_csv(&g),
    })
}

fn cmd_params(ctx: &Ctx, path: &Path) -> CliResult<(String, bool)> {
    let graph = read_graph(path)?;
    let name = path.file_stem().map_or("graph".into(), |s| s.to_string_lossy().into_owned());
    let row = audit_entry(&CorpusEntry { name, spec: GraphSpec::Custom { graph } }, &ctx.audit_options())?;
    let ok = row.failures().next().is_none();
    let text = match ctx.format {
        Format::Json => json_out(&row),
        Format::Csv => output::rows_csv(std::slice::from_ref(&row)),
        Format::Dot => return Err(Failure::Usage("params supports json or csv".into())),
    };
    Ok((text, ok))
}

fn cmd_verify(ctx: &Ctx, path: &Path) -> CliResult<(String, bool)> {
    require_json(ctx, "verify")?;
    let v: Value = read_json(path)?;
    let tol = ctx.cert_tol();
    let obj = v.as_object().ok_or_else(|| Failure::Usage("expected a JSON object".into()))?;
    if obj.contains_key("source") && obj.contains_key("projectors") {
        let data: CertificateData = serde_json::from_value(v).map_err(|e| Failure::Usage(e.to_string()))?;
        let report = verify(&data, tol);
        let ok = report.ok;
        let out = json!({ "kind": "certificate", "source_n": data.source.n(), "target_n": data.target.n(),
                          "d": data.d, "report": report });
        return Ok((json_out(&out), ok));
    }
    if obj.contains_key("graph") && obj.contains_key("r") && obj.contains_key("projectors") {
        let rep: ProjectiveJson = serde_json::from_value(v).map_err(|e| Failure::Usage(e.to_string()))?;
        let (d, r) = (rep.d, rep.r);
        let out = match rep.into_representation(tol) {
            Ok(p) => json!({ "kind": "representation", "ok": true, "d": d, "r": r,
                             "value": p.value().to_string(), "residual": p.residual(), "tol": tol }),
            Err(e) => json!({ "kind": "representation", "ok": false, "d": d, "r": r, "error": e.to_string(), "tol": tol }),
        };
        let ok = out["ok"] == json!(true);
        return Ok((json_out(&out), ok));
    }
    if obj.contains_key("graph") && obj.contains_key("protocol") {
        let graph: Graph = serde_json::from_value(v["graph"].clone()).map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(match serde_json::from_value::<EAProtocol>(v["protocol"].clone()) {
            Ok(p) => {
                let report = verify_protocol(&p, &graph, tol)?;
                let ok = report.ok;
                (json_out(&json!({ "kind": "protocol", "report": report })), ok)
            }
            Err(e) => (json_out(&json!({ "kind": "protocol", "ok": false, "error": e.to_string() })), false),
        });
    }
    Err(Failure::Usage("unrecognized file: expected a certificate, representation or protocol".into()))
}

fn cmd_derive(ctx: &Ctx, c: &Construction) -> CliResult<String> {
    require_json(ctx, "derive")?;
    let tol = ctx.cert_tol();
    let caps = &ctx.caps;
    let cert_out = |c: QuantumHomCertificate| Ok(json_out(&c));
    match c {
        Construction::OmegaColoring { n } => cert_out(omega_coloring_certificate(*n, tol, caps)?),
        Construction::ClassicalHom { x, y } => {
            let (x, y) = (read_graph(x)?, read_graph(y)?);
            match find_homomorphism_with(&x, &y, caps)? {
                Some(h) => cert_out(cert_from_classical_hom(&h)?),
                None => Err(Failure::Rejected("no homomorphism exists".into())),
            }
        }
        Construction::IndependenceCert { cert } => cert_out(cert_to_independence_cert(&read_cert(cert, tol)?, tol)?),
        Construction::HomFromIndependence { cert, x, y } => {
            let c = read_cert(cert, tol)?;
            cert_out(independence_cert_to_hom_cert(&c, &read_graph(x)?, &read_graph(y)?, tol)?)
        }
        Construction::Compose { first, second } => {
            cert_out(compose_certificates(&read_cert(first, tol)?, &read_cert(second, tol)?, tol)?)
        }
        Construction::Realify { cert } => cert_out(realify_certificate(&read_cert(cert, tol)?, tol)?),
        Construction::KneserLift { cert } => {
            let c = read_cert(cert, tol)?;
            let group = automorphisms_with(c.target(), caps)?.elements(caps.kneser_vertices)?;
            cert_out(kneser_cert_lift(&c, &group, tol, caps)?)
        }
        Construction::KneserRep { n, r } => Ok(json_out(&ProjectiveJson::from(&kneser_to_projective(*n, *r, tol)?))),
        Construction::Pullback { cert, rep } => {
            let c = read_cert(cert, tol)?;
            let rep = read_json::<ProjectiveJson>(rep)?.into_representation(tol)?;
            Ok(json_out(&ProjectiveJson::from(&projrep_tensor_pullback(&c, &rep, tol)?)))
        }
        Construction::RepFromIndependence { cert } => {
            let rep = projrep_from_independence_cert(&read_cert(cert, tol)?, tol)?;
            Ok(json_out(&ProjectiveJson::from(&rep)))
        }
        Construction::Projrank { graph, d, r, restarts, iterations } => {
            let g = read_graph(graph)?;
            let opts = ProjrankOptions { restarts: *restarts, iterations: *iterations, seed: ctx.seed, tol };
            match projrank_search(&g, *d, *r, &opts)? {
                ProjrankOutcome::Found { representation, .. } => Ok(json_out(&ProjectiveJson::from(&representation))),
                ProjrankOutcome::NotFound { best_residual, restarts } => Err(Failure::Rejected(format!(
                    "no certificate found after {restarts} restarts (best residual {best_residual:.3e}); \
                     this is not a proof that none exists"
                ))),
            }
        }
        Construction::Protocol { cert } => {
            let c = read_cert(cert, tol)?;
            let protocol = protocol_from_independence_cert(&c, tol)?;
            Ok(json_out(&ProtocolFile { graph: c.target().complement(), protocol }))
        }
        Construction::LiftProtocol { cert, protocol } => {
            let c = read_cert(cert, tol)?;
            let pf: ProtocolFile = read_json(protocol)?;
            let lifted = lift_protocol_with(&c, &pf.protocol, tol, caps)?;
            Ok(json_out(&ProtocolFile { graph: c.target().complement(), protocol: lifted }))
        }
    }
}

fn load_corpus(dir: &Path) -> CliResult<Vec<CorpusEntry>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Failure::Usage(format!("{} has no .json corpus entries", dir.display())));
    }
    paths.iter().map(|p| read_json(p)).collect()
}

fn cmd_audit(ctx: &Ctx, dir: Option<&Path>, export: Option<&Path>) -> CliResult<(String, bool)> {
    if let Some(out) = export {
        fs::create_dir_all(out).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
        let corpus = bundled_corpus();
        for (i, e) in corpus.iter().enumerate() {
            let path = out.join(format!("{i:02}_{}.json", e.name));
            fs::write(&path, json_out(e) + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        }
        return Ok((format!("wrote {} entries to {}", corpus.len(), out.display()), true));
    }
    let entries = match dir {
        Some(d) => load_corpus(d)?,
        None => bundled_corpus(),
    };
    let opts = ctx.audit_options();
    let report = if ctx.parallel {
        run_audit_with(&entries, &opts, |es, f| es.par_iter().map(f).collect())?
    } else {
        run_audit_with(&entries, &opts, |es, f| es.iter().map(f).collect())?
    };
    let text = match ctx.format {
        Format::Json => json_out(&report),
        Format::Csv => output::rows_csv(&report.rows),
        Format::Dot => return Err(Failure::Usage("audit supports json or csv".into())),
    };
    Ok((text, report.ok))
}

fn run(cli: &Cli) -> CliResult<(String, bool)> {
    let ctx = Ctx {
        seed: cli.seed,
        tol: cli.tol,
        caps: parse_caps(&cli.caps)?,
        format: cli.format,
        parallel: cli.parallel,
    };
    if let Some(t) = ctx.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Gen { family } => Ok((cmd_gen(&ctx, family)?, true)),
        Command::Params { graph } => cmd_params(&ctx, graph),
        Command::Verify { file } => cmd_verify(&ctx, file),
        Command::Derive { construction } => Ok((cmd_derive(&ctx, construction)?, true)),
        Command::Audit { dir, export } => cmd_audit(&ctx, dir.as_deref(), export.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            let _ = writeln!(std::io::stdout(), "{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Rejected(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
