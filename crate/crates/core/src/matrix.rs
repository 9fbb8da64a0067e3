//! Dense complex matrices at desk scale.
//!
//! Everything in the crate is built on [`ComplexMatrix`]: a row-major buffer of
//! `Complex64` values. The sizes involved are small (registers of at most a
//! dozen qubits), so the kernels here are plain triple loops. Hermitian
//! eigendecomposition is delegated to `nalgebra`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
pub use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default upper bound on the dimension of any matrix built by a tensor
/// product (`2^12`).
pub const DEFAULT_DIM_CAP: usize = 1 << 12;

/// Environment variable that overrides [`DEFAULT_DIM_CAP`].
pub const DIM_CAP_ENV: &str = "DEQUANTLAB_DIM_CAP";

/// Default relative tolerance for [`rank`].
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Upper bound on matrix dimensions produced by tensor products.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimCap(pub usize);

impl Default for DimCap {
    fn default() -> Self {
        DimCap(DEFAULT_DIM_CAP)
    }
}

impl DimCap {
    /// Reads `DEQUANTLAB_DIM_CAP`, falling back to the default when unset or
    /// unparsable.
    pub fn from_env() -> Self {
        std::env::var(DIM_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .map(DimCap)
            .unwrap_or_default()
    }

    pub fn check(self, dim: usize) -> Result<()> {
        if dim > self.0 {
            Err(Error::Capacity { requested: dim, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!("empty matrix shape {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| c(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::default(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in diag.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<_> = diag.iter().map(|&x| c(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// `|v⟩⟨w|`
    pub fn outer(v: &[Complex64], w: &[Complex64]) -> Self {
        let mut m = Self::zeros(v.len(), w.len());
        for (i, a) in v.iter().enumerate() {
            for (j, b) in w.iter().enumerate() {
                m[(i, j)] = a * b.conj();
            }
        }
        m
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

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Matrix product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "multiply",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![Complex64::default(); n * p];
        for i in 0..n {
            let row = &mut out[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &other.data[k * p..(k + 1) * p];
                for (o, b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { rows: n, cols: p, data: out })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { op: "apply", left: (self.rows, self.cols), right: (v.len(), 1) });
        }
        Ok((0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|self − other|_F`; panics on shape mismatch.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in distance");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }

    /// `(A + A†)/2`
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        (self + &adj).scale_real(0.5)
    }

    /// `|A − A†|_F`
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.distance(&self.adjoint())
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, n: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Panicking product for internal use on shapes already known to agree.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.multiply(rhs).expect("shape mismatch in mul")
    }
}

/// Kronecker product `a ⊗ b`, refusing results larger than `cap`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix, cap: DimCap) -> Result<ComplexMatrix> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    cap.check(rows.max(cols))?;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let s = a[(i, j)];
            if s.re == 0.0 && s.im == 0.0 {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = s * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Eigenvalues in ascending order with matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(λ) V†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut scaled = self.eigenvectors.clone();
        for i in 0..d {
            for j in 0..d {
                scaled[(i, j)] *= self.eigenvalues[j];
            }
        }
        &scaled * &self.eigenvectors.adjoint()
    }

    /// Groups eigenvalues closer than `tol` into clusters, returning index
    /// ranges into the ascending eigenvalue list.
    pub fn clusters(&self, tol: f64) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.dim() {
            if i == self.dim() || self.eigenvalues[i] - self.eigenvalues[i - 1] > tol {
                out.push(start..i);
                start = i;
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows, a.cols));
    }
    let defect = a.hermiticity_defect();
    if defect > 1e-9 * a.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let n = a.rows;
    let m = a.hermitian_part().to_nalgebra();
    let eig =
        SymmetricEigen::try_new(m, EIGEN_EPS, EIGEN_MAX_ITER).ok_or(Error::EigenNonConvergence(EIGEN_MAX_ITER))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]).then(i.cmp(&j)));

    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, dst)] = eig.eigenvectors[(r, src)];
        }
    }
    Ok(HermitianEigen { eigenvalues, eigenvectors: vectors })
}

/// Number of eigenvalues above `tol · max(1, λ_max)`.
pub fn rank(a: &ComplexMatrix, tol: f64) -> Result<usize> {
    let eig = hermitian_eigen(a)?;
    let top = eig.eigenvalues.last().copied().unwrap_or(0.0).max(1.0);
    Ok(eig.eigenvalues.iter().filter(|&&l| l > tol * top).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pz() -> ComplexMatrix {
        ComplexMatrix::from_real_diag(&[1.0, 0.0])
    }

    fn px() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap()
    }

    // Scalar-loop product kept apart from `multiply`.
    fn naive_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = Complex64::default();
                for k in 0..a.cols() {
                    acc += a[(i, k)] * b[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    #[test]
    fn identity_times_m() {
        let m = ComplexMatrix::from_vec(2, 2, vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0), c(4.0, 0.0)]).unwrap();
        assert_eq!(ComplexMatrix::identity(2).multiply(&m).unwrap(), m);
    }

    #[test]
    fn projector_products() {
        assert_eq!(pz().multiply(&pz()).unwrap(), pz());
        let expected = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.0, 0.0]).unwrap();
        let got = pz().multiply(&px()).unwrap();
        assert!(got.distance(&expected) < 1e-15);
        assert!(got.distance(&naive_product(&pz(), &px())) < 1e-15);
    }

    #[test]
    fn multiply_rejects_mismatch() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.multiply(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn from_vec_rejects_nan() {
        assert!(matches!(ComplexMatrix::from_vec(1, 1, vec![c(f64::NAN, 0.0)]), Err(Error::NonFinite)));
        assert!(ComplexMatrix::from_vec(2, 2, vec![c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn kron_shapes_and_values() {
        let cap = DimCap::default();
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor_product(&i2, &i2, cap).unwrap(), ComplexMatrix::identity(4));
        assert_eq!(tensor_product(&pz(), &pz(), cap).unwrap(), ComplexMatrix::from_real_diag(&[1.0, 0.0, 0.0, 0.0]));
        let k = tensor_product(&ComplexMatrix::zeros(2, 2), &ComplexMatrix::identity(3), cap).unwrap();
        assert_eq!((k.rows(), k.cols()), (6, 6));
    }

    #[test]
    fn kron_respects_cap() {
        let a = ComplexMatrix::identity(4);
        assert!(matches!(tensor_product(&a, &a, DimCap(8)), Err(Error::Capacity { requested: 16, cap: 8 })));
    }

    #[test]
    fn eigen_of_pauli_z_and_half_sigma_y() {
        let sz = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let e = hermitian_eigen(&sz).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14 && (e.eigenvalues[1] - 1.0).abs() < 1e-14);

        let half_sy = ComplexMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.0, 0.0)]).unwrap();
        let e = hermitian_eigen(&half_sy).unwrap();
        assert!((e.eigenvalues[0] + 0.5).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 0.5).abs() < 1e-14);
        assert!(e.reconstruct().distance(&half_sy) < 1e-14);
    }

    #[test]
    fn eigen_of_identity() {
        let e = hermitian_eigen(&ComplexMatrix::identity(4)).unwrap();
        assert!(e.eigenvalues.iter().all(|l| (l - 1.0).abs() < 1e-14));
        let v = &e.eigenvectors;
        assert!((&v.adjoint() * v).distance(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian(_))));
        assert!(matches!(hermitian_eigen(&ComplexMatrix::zeros(2, 3)), Err(Error::NotSquare(2, 3))));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&pz(), DEFAULT_RANK_TOL).unwrap(), 1);
        assert_eq!(rank(&ComplexMatrix::identity(8), DEFAULT_RANK_TOL).unwrap(), 8);
        assert_eq!(rank(&ComplexMatrix::zeros(3, 3), DEFAULT_RANK_TOL).unwrap(), 0);
    }

    #[test]
    fn trace_norm_adjoint() {
        assert_eq!(pz().trace().unwrap(), c(1.0, 0.0));
        assert!((ComplexMatrix::identity(4).frobenius_norm() - 2.0).abs() < 1e-15);
        let m = ComplexMatrix::from_vec(1, 2, vec![c(1.0, 2.0), c(3.0, -1.0)]).unwrap();
        assert_eq!(m.adjoint().adjoint(), m);
        assert!(matches!(m.trace(), Err(Error::NotSquare(1, 2))));
    }

    #[test]
    fn pow_matches_chain() {
        let m = pz().multiply(&px()).unwrap();
        let chain = &(&m * &m) * &m;
        assert!(m.pow(3).unwrap().distance(&chain) < 1e-15);
        assert_eq!(m.pow(0).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn eigen_clusters() {
        let m = ComplexMatrix::from_real_diag(&[0.5, -0.5, 0.5, 0.0]);
        let e = hermitian_eigen(&m).unwrap();
        assert_eq!(e.clusters(1e-9), vec![0..1, 1..2, 2..4]);
    }
}
