//! Dense row-major complex and real matrices.

use std::ops::{Add, Index, Mul, Neg, Sub};

use num::complex::Complex64;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type C64 = Complex64;

/// Dense complex matrix. Entries are always finite.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![C64::zero(); rows * cols] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m.data[i * d + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("matrix entries must be finite".into()));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Column vector.
    pub fn column(entries: Vec<C64>) -> Self {
        let n = entries.len();
        ComplexMatrix { rows: n, cols: 1, data: entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, z: C64) {
        self.data[i * self.cols + j] = z;
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{op}: {}×{} vs {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn try_matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "matmul: {}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `⟨A, B⟩ = tr(A* B)`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    /// `‖M − M*‖_F ≤ tol · max(1, ‖M‖_F)`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_residual() <= tol * self.frobenius_norm().max(1.0)
    }

    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(M + M*)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.data.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn real_part(&self) -> RealMatrix {
        RealMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.re).collect() }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix add shape")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix sub shape")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_matmul(rhs).expect("matmul shape")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        let data = j.data.into_iter().map(|[re, im]| C64::new(re, im)).collect();
        ComplexMatrix::from_vec(j.rows, j.cols, data).map_err(serde::de::Error::custom)
    }
}

/// `A ⊗ B` with `(A⊗B)[(i·p + k), (j·q + l)] = A[i,j]·B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (p, q) = (b.rows, b.cols);
    let mut out = ComplexMatrix::zeros(a.rows * p, a.cols * q);
    let oc = out.cols;
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..p {
                for l in 0..q {
                    out.data[(i * p + k) * oc + j * q + l] = x * b.data[k * q + l];
                }
            }
        }
    }
    out
}

/// Row-stacking: entry `(i, j)` lands at position `i·cols + j`.
pub fn vec(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::column(a.data.clone())
}

/// Inverse of [`vec`].
pub fn unvec(v: &ComplexMatrix, rows: usize, cols: usize) -> Result<ComplexMatrix> {
    if v.cols != 1 && v.rows != 1 {
        return Err(Error::Shape("unvec expects a vector".into()));
    }
    ComplexMatrix::from_vec(rows, cols, v.data.clone())
}

/// `tr_A` on `C^{d_a} ⊗ C^{d_b}`: the linear map with `A ⊗ B ↦ tr(A)·B`.
pub fn partial_trace_first(m: &ComplexMatrix, d_a: usize, d_b: usize) -> Result<ComplexMatrix> {
    let d = d_a * d_b;
    if m.rows != d || m.cols != d {
        return Err(Error::Shape(format!(
            "partial trace of {}×{} over {d_a}⊗{d_b}",
            m.rows, m.cols
        )));
    }
    Ok(ComplexMatrix::from_fn(d_b, d_b, |k, l| {
        (0..d_a).map(|i| m.get(i * d_b + k, i * d_b + l)).sum()
    }))
}

/// `tr_B` on `C^{d_a} ⊗ C^{d_b}`.
pub fn partial_trace_second(m: &ComplexMatrix, d_a: usize, d_b: usize) -> Result<ComplexMatrix> {
    let d = d_a * d_b;
    if m.rows != d || m.cols != d {
        return Err(Error::Shape(format!(
            "partial trace of {}×{} over {d_a}⊗{d_b}",
            m.rows, m.cols
        )));
    }
    Ok(ComplexMatrix::from_fn(d_a, d_a, |i, j| {
        (0..d_b).map(|k| m.get(i * d_b + k, j * d_b + k)).sum()
    }))
}

/// `v v*` for a column vector.
pub fn outer(v: &ComplexMatrix) -> ComplexMatrix {
    let n = v.data.len();
    ComplexMatrix::from_fn(n, n, |i, j| v.data[i] * v.data[j].conj())
}

/// Orthonormalizes the columns by modified Gram–Schmidt with one
/// reorthogonalization pass. Fails on numerically dependent columns.
pub fn orthonormalize_columns(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (n, k) = (a.rows, a.cols);
    let mut q: Vec<Vec<C64>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut v = a.col(j);
        let start: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for _ in 0..2 {
            for u in &q {
                let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-12 * start.max(f64::MIN_POSITIVE) || norm == 0.0 {
            return Err(Error::InvalidArgument("columns are linearly dependent".into()));
        }
        q.push(v.into_iter().map(|z| z / norm).collect());
    }
    Ok(ComplexMatrix::from_fn(n, k, |i, j| q[j][i]))
}

/// The real `2d×2d` image `[[Re A, Im A], [−Im A, Re A]]`.
pub fn realify(a: &ComplexMatrix) -> RealMatrix {
    let (r, c) = (a.rows, a.cols);
    let mut out = RealMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = a.get(i, j);
            out.set(i, j, z.re);
            out.set(i, c + j, z.im);
            out.set(r + i, j, -z.im);
            out.set(r + i, c + j, z.re);
        }
    }
    out
}

/// Dense row-major real matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m.data[i * d + i] = 1.0;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for {rows}×{cols}", data.len())));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("matrix entries must be finite".into()));
        }
        Ok(RealMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape("real matmul".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        real_matmul_into(&self.data, &other.data, self.rows, self.cols, other.cols, &mut out.data);
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }
}

impl From<&RealMatrix> for ComplexMatrix {
    fn from(m: &RealMatrix) -> Self {
        m.to_complex()
    }
}

/// `out = a (n×k) · b (k×m)`, row-major slices.
pub(crate) fn real_matmul_into(a: &[f64], b: &[f64], n: usize, k: usize, m: usize, out: &mut [f64]) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for i in 0..n {
        let orow = &mut out[i * m..(i + 1) * m];
        for p in 0..k {
            let x = a[i * k + p];
            if x == 0.0 {
                continue;
            }
            for (o, &y) in orow.iter_mut().zip(&b[p * m..(p + 1) * m]) {
                *o += x * y;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn vec_of_identity() {
        let v = vec(&ComplexMatrix::identity(2));
        assert_eq!(v.data(), &[c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]);
        assert_eq!(v.cols(), 1);
    }

    #[test]
    fn kron_with_scalar_identity() {
        let b = ComplexMatrix::from_vec(2, 2, vec![c(1., 2.), c(3., 0.), c(0., -1.), c(4., 4.)]).unwrap();
        assert_eq!(kron(&ComplexMatrix::identity(1), &b), b);
        let k = kron(&b, &ComplexMatrix::identity(2));
        assert_eq!(k.get(1, 1), c(1., 2.));
        assert_eq!(k.get(2, 0), c(0., -1.));
    }

    #[test]
    fn partial_traces_of_products() {
        let a = ComplexMatrix::from_vec(2, 2, vec![c(1., 0.), c(2., 1.), c(0., 3.), c(5., 0.)]).unwrap();
        let b = ComplexMatrix::from_vec(2, 2, vec![c(7., 0.), c(0., 1.), c(1., 1.), c(-2., 0.)]).unwrap();
        let ab = kron(&a, &b);
        assert_eq!(partial_trace_first(&ab, 2, 2).unwrap(), b.scale(a.trace()));
        assert_eq!(partial_trace_second(&ab, 2, 2).unwrap(), a.scale(b.trace()));
        assert!(partial_trace_first(&ab, 3, 2).is_err());
    }

    #[test]
    fn realify_identity() {
        assert_eq!(realify(&ComplexMatrix::identity(3)), RealMatrix::identity(6));
    }

    #[test]
    fn rejects_non_finite_and_bad_shapes() {
        assert!(ComplexMatrix::from_vec(1, 1, vec![c(f64::NAN, 0.)]).is_err());
        assert!(ComplexMatrix::from_vec(2, 1, vec![c(1., 0.)]).is_err());
        let a = ComplexMatrix::zeros(2, 3);
        assert!(a.try_matmul(&a).is_err());
        assert!(a.try_add(&ComplexMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = ComplexMatrix::from_vec(1, 2, vec![c(1.5, -2.0), c(0.0, 1.0)]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"data":[[1.5,-2.0],[0.0,1.0]]}"#);
        assert_eq!(serde_json::from_str::<ComplexMatrix>(&s).unwrap(), a);
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"rows":2,"cols":2,"data":[]}"#).is_err());
    }
}
