//! Certificate data, the verifier, and the verified certificate type.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graphs::Graph;
use crate::numerics::{idempotency_residual, ComplexMatrix, RANK_SLACK};
use crate::{Error, Result};

/// Unverified projector family `E_xy`, stored row-major at `x·|V(Y)| + y`.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateData {
    pub source: Graph,
    pub target: Graph,
    pub d: usize,
    pub projectors: Vec<ComplexMatrix>,
}

impl CertificateData {
    pub fn new(source: Graph, target: Graph, d: usize, projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let want = source.n() * target.n();
        if projectors.len() != want {
            return Err(Error::Shape(format!("{} projectors, expected {want}", projectors.len())));
        }
        if let Some(i) = projectors.iter().position(|p| p.rows() != d || p.cols() != d) {
            return Err(Error::Shape(format!("projector {i} is not {d}×{d}")));
        }
        Ok(CertificateData { source, target, d, projectors })
    }

    pub fn get(&self, x: usize, y: usize) -> &ComplexMatrix {
        &self.projectors[x * self.target.n() + y]
    }

    #[cfg(test)]
    pub(crate) fn set(&mut self, x: usize, y: usize, m: ComplexMatrix) {
        let k = x * self.target.n() + y;
        self.projectors[k] = m;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `E_xy` is not a Hermitian idempotent with integral trace.
    Projector,
    /// `Σ_y E_xy ≠ I`.
    Completeness,
    /// `E_xy E_xy' ≠ 0` for `y ≠ y'`.
    Consistency,
    /// `E_xy E_x'y' ≠ 0` for `x ~ x'` and `y ≁ y'`.
    Adjacency,
    /// `Σ_x rank E_xy > d` for a complete source.
    RankCount,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub x: usize,
    pub y: Option<usize>,
    pub x2: Option<usize>,
    pub y2: Option<usize>,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub tol: f64,
    pub worst: f64,
    pub projector_residual: f64,
    pub completeness_residual: f64,
    pub consistency_residual: f64,
    pub adjacency_residual: f64,
    pub violations: Vec<Violation>,
}

/// Checks every condition of a quantum homomorphism within `tol` (absolute,
/// on Frobenius norms) and lists each violated instance.
pub fn verify(c: &CertificateData, tol: f64) -> VerificationReport {
    let (nx, ny, d) = (c.source.n(), c.target.n(), c.d);
    let mut violations = Vec::new();
    let mut push = |kind, x, y, x2, y2, residual: f64, acc: &mut f64| {
        *acc = acc.max(residual);
        if !(residual <= tol) {
            violations.push(Violation { kind, x, y, x2, y2, residual });
        }
    };

    let nonzero: Vec<bool> = c.projectors.iter().map(|p| p.max_abs() > 0.0).collect();
    let mut ranks = vec![0usize; c.projectors.len()];
    let mut proj_res = 0.0f64;
    for x in 0..nx {
        for y in 0..ny {
            let k = x * ny + y;
            if !nonzero[k] {
                continue;
            }
            let p = &c.projectors[k];
            let tr = p.trace();
            let rank_err = (tr.re - tr.re.round()).abs().max(tr.im.abs());
            let res = p.hermitian_residual().max(idempotency_residual(p));
            let res = if rank_err > RANK_SLACK { res.max(rank_err) } else { res };
            push(ViolationKind::Projector, x, Some(y), None, None, res, &mut proj_res);
            ranks[k] = tr.re.round().max(0.0) as usize;
        }
    }

    let mut comp_res = 0.0f64;
    let id = ComplexMatrix::identity(d);
    for x in 0..nx {
        let mut sum = ComplexMatrix::zeros(d, d);
        for y in 0..ny {
            if nonzero[x * ny + y] {
                sum = &sum + c.get(x, y);
            }
        }
        let res = (&sum - &id).frobenius_norm();
        push(ViolationKind::Completeness, x, None, None, None, res, &mut comp_res);
    }

    let mut cons_res = 0.0f64;
    for x in 0..nx {
        for y in 0..ny {
            for y2 in y + 1..ny {
                if nonzero[x * ny + y] && nonzero[x * ny + y2] {
                    let res = (c.get(x, y) * c.get(x, y2)).frobenius_norm();
                    push(ViolationKind::Consistency, x, Some(y), Some(x), Some(y2), res, &mut cons_res);
                }
            }
        }
    }

    let mut adj_res = 0.0f64;
    for (x, x2) in c.source.edges() {
        for y in 0..ny {
            if !nonzero[x * ny + y] {
                continue;
            }
            for y2 in 0..ny {
                if c.target.has_edge(y, y2) || !nonzero[x2 * ny + y2] {
                    continue;
                }
                let res = (c.get(x, y) * c.get(x2, y2)).frobenius_norm();
                push(ViolationKind::Adjacency, x, Some(y), Some(x2), Some(y2), res, &mut adj_res);
            }
        }
    }

    if nx > 0 && c.source.edge_count() == nx * (nx - 1) / 2 {
        for y in 0..ny {
            let total: usize = (0..nx).map(|x| ranks[x * ny + y]).sum();
            if total > d {
                let mut dummy = 0.0;
                push(ViolationKind::RankCount, 0, Some(y), None, None, (total - d) as f64, &mut dummy);
            }
        }
    }

    let worst = proj_res.max(comp_res).max(cons_res).max(adj_res);
    VerificationReport {
        ok: violations.is_empty(),
        tol,
        worst,
        projector_residual: proj_res,
        completeness_residual: comp_res,
        consistency_residual: cons_res,
        adjacency_residual: adj_res,
        violations,
    }
}

/// A certificate that passed [`verify`]. Transformations only accept this type.
#[derive(Clone, Debug)]
pub struct QuantumHomCertificate {
    data: CertificateData,
    ranks: Vec<usize>,
    report: VerificationReport,
}

impl QuantumHomCertificate {
    pub fn new(data: CertificateData, tol: f64) -> Result<Self> {
        let report = verify(&data, tol);
        if !report.ok {
            let first = &report.violations[0];
            return Err(Error::Verification(format!(
                "{} violation(s); first {:?} at x={} y={:?} x'={:?} y'={:?} residual {:.3e}",
                report.violations.len(),
                first.kind,
                first.x,
                first.y,
                first.x2,
                first.y2,
                first.residual
            )));
        }
        let ranks = data.projectors.iter().map(|p| p.trace().re.round().max(0.0) as usize).collect();
        Ok(QuantumHomCertificate { data, ranks, report })
    }

    pub fn source(&self) -> &Graph {
        &self.data.source
    }

    pub fn target(&self) -> &Graph {
        &self.data.target
    }

    pub fn d(&self) -> usize {
        self.data.d
    }

    pub fn projector(&self, x: usize, y: usize) -> &ComplexMatrix {
        self.data.get(x, y)
    }

    pub fn rank(&self, x: usize, y: usize) -> usize {
        self.ranks[x * self.data.target.n() + y]
    }

    pub fn data(&self) -> &CertificateData {
        &self.data
    }

    pub fn into_data(self) -> CertificateData {
        self.data
    }

    pub fn report(&self) -> &VerificationReport {
        &self.report
    }

    /// True when every entry is real to within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.data.projectors.iter().all(|p| p.is_real(tol))
    }
}

/// JSON form: `{"source", "target", "d", "projectors": {"x,y": matrix}}`.
/// Pairs absent from `projectors` are zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub source: Graph,
    pub target: Graph,
    pub d: usize,
    pub projectors: BTreeMap<String, ComplexMatrix>,
}

impl From<&CertificateData> for CertificateJson {
    fn from(c: &CertificateData) -> Self {
        let ny = c.target.n();
        let projectors = c
            .projectors
            .iter()
            .enumerate()
            .filter(|(_, p)| p.max_abs() > 0.0)
            .map(|(k, p)| (format!("{},{}", k / ny, k % ny), p.clone()))
            .collect();
        CertificateJson { source: c.source.clone(), target: c.target.clone(), d: c.d, projectors }
    }
}

impl TryFrom<CertificateJson> for CertificateData {
    type Error = Error;

    fn try_from(j: CertificateJson) -> Result<Self> {
        let (nx, ny) = (j.source.n(), j.target.n());
        let mut projectors = vec![ComplexMatrix::zeros(j.d, j.d); nx * ny];
        for (key, m) in j.projectors {
            let (x, y) = parse_pair(&key)?;
            if x >= nx || y >= ny {
                return Err(Error::Parse(format!("projector key `{key}` out of range")));
            }
            projectors[x * ny + y] = m;
        }
        CertificateData::new(j.source, j.target, j.d, projectors)
    }
}

pub(crate) fn parse_pair(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("projector key `{key}` is not `x,y`"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl Serialize for CertificateData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CertificateData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CertificateData::try_from(CertificateJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl Serialize for QuantumHomCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.data.serialize(s)
    }
}
