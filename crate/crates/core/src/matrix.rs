use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::{check_finite, modulus, Scalar, ONE, ZERO};
use crate::svd::{svd, Svd};

/// Convergence threshold of the Hermitian eigensolver.
const EIGEN_EPS: f64 = 5.0 * f64::EPSILON;
const ITER_PER_DIM: usize = 2000;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixOperator {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Singular values in descending order together with the rank cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub singular_values: Vec<f64>,
    pub cutoff: f64,
}

impl Spectrum {
    pub fn largest(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Smallest singular value above the cutoff.
    pub fn smallest_nonzero(&self) -> Option<f64> {
        self.singular_values.iter().rev().copied().find(|&s| s > self.cutoff)
    }

    pub fn rank(&self) -> usize {
        self.singular_values.iter().filter(|&&s| s > self.cutoff).count()
    }
}

impl MatrixOperator {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidModel("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        for &e in &entries {
            check_finite(e)?;
        }
        let m = MatrixOperator { rows, cols, entries };
        if m.is_zero() {
            return Err(Error::InvalidModel("the zero matrix is not an operator model".into()));
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, got: bad.len() });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|row| row.iter().map(|&x| Scalar::new(x, 0.0)).collect()).collect())
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("matrix dimensions must be positive".into()));
        }
        Ok(Self::diagonal(&vec![ONE; n]))
    }

    /// Square diagonal matrix, unchecked.
    pub(crate) fn diagonal(d: &[Scalar]) -> Self {
        let n = d.len();
        let mut entries = vec![ZERO; n * n];
        for (i, &x) in d.iter().enumerate() {
            entries[i * n + i] = x;
        }
        MatrixOperator { rows: n, cols: n, entries }
    }

    /// Unchecked assembly; may produce the zero matrix.
    pub(crate) fn from_parts(rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        MatrixOperator { rows, cols, entries }
    }

    pub(crate) fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_parts(rows, cols, vec![ZERO; rows * cols])
    }

    pub(crate) fn from_dmatrix(m: &DMatrix<Scalar>) -> Self {
        let mut entries = Vec::with_capacity(m.nrows() * m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                entries.push(m[(i, j)]);
            }
        }
        Self::from_parts(m.nrows(), m.ncols(), entries)
    }

    pub fn to_dmatrix(&self) -> DMatrix<Scalar> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == ZERO)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when every entry off the main diagonal is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == ZERO))
    }

    fn main_diagonal(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * x[j]).sum()).collect())
    }

    pub fn adjoint(&self) -> MatrixOperator {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn mul(&self, other: &MatrixOperator) -> Result<MatrixOperator> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &MatrixOperator, f: impl Fn(Scalar, Scalar) -> Scalar) -> Result<MatrixOperator> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self::from_parts(self.rows, self.cols, entries))
    }

    pub fn add(&self, other: &MatrixOperator) -> Result<MatrixOperator> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &MatrixOperator) -> Result<MatrixOperator> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Scalar) -> MatrixOperator {
        Self::from_parts(self.rows, self.cols, self.entries.iter().map(|&e| c * e).collect())
    }

    /// `self − μ I` for square matrices.
    pub fn shift(&self, mu: Scalar) -> Result<MatrixOperator> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set(i, i, self.get(i, i) - mu);
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &MatrixOperator) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.entries.iter().map(|&e| modulus(e)).fold(0.0, f64::max))
    }

    fn svd_iterations(&self) -> usize {
        ITER_PER_DIM * self.rows.max(self.cols)
    }

    /// Singular values in descending order with cutoff `rank_tol · σ_max`.
    ///
    /// Diagonal matrices are read off exactly.
    pub fn spectrum(&self, rank_tol: f64) -> Result<Spectrum> {
        let mut sv: Vec<f64> = if self.is_diagonal() {
            self.main_diagonal().into_iter().map(modulus).collect()
        } else {
            // The adjoint has the same singular values.
            let d = if self.rows < self.cols { self.to_dmatrix().adjoint() } else { self.to_dmatrix() };
            svd(&d)?.sigma
        };
        sv.sort_by(|a, b| b.total_cmp(a));
        let largest = sv.first().copied().unwrap_or(0.0);
        if largest == 0.0 {
            return Err(Error::NumericallyZero);
        }
        Ok(Spectrum { singular_values: sv, cutoff: rank_tol * largest })
    }

    /// Operator 2-norm.
    pub fn norm(&self) -> Result<f64> {
        match self.spectrum(1.0) {
            Ok(s) => Ok(s.largest()),
            Err(Error::NumericallyZero) => Ok(0.0),
            Err(e) => Err(e),
        }
    }

    /// Moore–Penrose inverse with singular values at or below
    /// `rank_tol · σ_max` treated as zero.
    pub fn pinv(&self, rank_tol: f64) -> Result<MatrixOperator> {
        if self.is_zero() {
            return Ok(Self::zeros(self.cols, self.rows));
        }
        if self.is_diagonal() {
            let cutoff = self.spectrum(rank_tol)?.cutoff;
            let mut out = Self::zeros(self.cols, self.rows);
            for (i, d) in self.main_diagonal().into_iter().enumerate() {
                if modulus(d) > cutoff {
                    out.set(i, i, ONE / d);
                }
            }
            return Ok(out);
        }
        if self.rows < self.cols {
            return Ok(self.adjoint().pinv(rank_tol)?.adjoint());
        }
        let Svd { u, sigma, v } = svd(&self.to_dmatrix())?;
        let cutoff = rank_tol * sigma[0];
        let mut out = DMatrix::<Scalar>::zeros(self.cols, self.rows);
        for (k, &s) in sigma.iter().enumerate() {
            if s <= cutoff {
                continue;
            }
            let v = v.column(k);
            let uh = u.column(k).adjoint();
            out += (v * uh) * Scalar::new(1.0 / s, 0.0);
        }
        Ok(Self::from_dmatrix(&out))
    }

    /// Orthonormal basis of the numerical null space.
    pub fn kernel_basis(&self, rank_tol: f64) -> Result<Vec<Vec<Scalar>>> {
        let spectrum = self.spectrum(rank_tol)?;
        if self.is_diagonal() {
            let diag = self.main_diagonal();
            return Ok((0..self.cols)
                .filter(|&j| j >= diag.len() || modulus(diag[j]) <= spectrum.cutoff)
                .map(|j| {
                    let mut e = vec![ZERO; self.cols];
                    e[j] = ONE;
                    e
                })
                .collect());
        }
        // Pad with zero rows so the decomposition returns a full V.
        let n = self.cols;
        let mut padded = DMatrix::<Scalar>::zeros(self.rows.max(n), n);
        padded.view_mut((0, 0), (self.rows, n)).copy_from(&self.to_dmatrix());
        let Svd { sigma, v, .. } = svd(&padded)?;
        Ok(sigma
            .iter()
            .enumerate()
            .filter(|(_, &s)| s <= spectrum.cutoff)
            .map(|(k, _)| v.column(k).iter().copied().collect())
            .collect())
    }

    /// Dimension of the numerical null space.
    pub fn nullity(&self, rank_tol: f64) -> Result<usize> {
        Ok(self.cols - self.spectrum(rank_tol)?.rank())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.entries.iter().map(|&e| modulus(e)).fold(1.0, f64::max);
        (0..self.rows).all(|i| (i..self.cols).all(|j| modulus(self.get(i, j) - self.get(j, i).conj()) <= tol * scale))
    }

    /// Eigen-decomposition of a Hermitian matrix: eigenvalues and
    /// orthonormal eigenvectors as columns.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, DMatrix<Scalar>)> {
        let eig = self
            .to_dmatrix()
            .try_symmetric_eigen(EIGEN_EPS, self.svd_iterations())
            .ok_or_else(|| Error::NonConvergent("Hermitian eigendecomposition".into()))?;
        Ok((eig.eigenvalues.iter().copied().collect(), eig.eigenvectors))
    }

    /// True when the Hermitian part test passes and no eigenvalue falls
    /// below `−psd_tol · max(1, λ_max)`.
    pub fn is_psd(&self, psd_tol: f64) -> Result<bool> {
        if !self.is_hermitian(psd_tol) {
            return Ok(false);
        }
        let (vals, _) = self.hermitian_eigen()?;
        let top = vals.iter().copied().fold(1.0, f64::max);
        Ok(vals.iter().all(|&l| l >= -psd_tol * top))
    }

    /// Principal square root of a Hermitian positive semidefinite matrix.
    /// Eigenvalues at or below `rank_tol · λ_max` are treated as zero, so
    /// the root has the same numerical rank.
    pub fn sqrt_psd(&self, psd_tol: f64, rank_tol: f64) -> Result<MatrixOperator> {
        if !self.is_psd(psd_tol)? {
            return Err(Error::NotPositiveSelfAdjoint);
        }
        if self.is_diagonal() {
            let diag = self.main_diagonal();
            let cutoff = rank_tol * diag.iter().map(|x| x.re).fold(0.0, f64::max);
            let root = |x: Scalar| if x.re <= cutoff { 0.0 } else { libm::sqrt(x.re) };
            let d: Vec<Scalar> = diag.into_iter().map(|x| Scalar::new(root(x), 0.0)).collect();
            return Ok(Self::diagonal(&d));
        }
        let (vals, vecs) = self.hermitian_eigen()?;
        let cutoff = rank_tol * vals.iter().copied().fold(0.0, f64::max);
        let mut out = DMatrix::<Scalar>::zeros(self.rows, self.cols);
        for (k, &l) in vals.iter().enumerate() {
            if l <= cutoff {
                continue;
            }
            let s = libm::sqrt(l);
            let v = vecs.column(k);
            out += (v * v.adjoint()) * Scalar::new(s, 0.0);
        }
        Ok(Self::from_dmatrix(&out))
    }

    /// Block matrix `[[a, b], [c, e]]`.
    pub(crate) fn assemble(a: &Self, b: &Self, c: &Self, e: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != e.rows || a.cols != c.cols || b.cols != e.cols {
            return Err(Error::InvalidModel(format!(
                "blocks are not conformable: a {}x{}, b {}x{}, c {}x{}, e {}x{}",
                a.rows, a.cols, b.rows, b.cols, c.rows, c.cols, e.rows, e.cols
            )));
        }
        let (rows, cols) = (a.rows + c.rows, a.cols + b.cols);
        let mut out = Self::zeros(rows, cols);
        for (block, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (e, a.rows, a.cols)] {
            for i in 0..block.rows {
                for j in 0..block.cols {
                    out.set(r0 + i, c0 + j, block.get(i, j));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        libm::fabs(a - b) <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn rank_one_gamma() {
        let m = MatrixOperator::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        let s = m.spectrum(1e-10).unwrap();
        assert!(close(s.smallest_nonzero().unwrap(), 2.0));
        assert_eq!(s.rank(), 1);
        let k = m.kernel_basis(1e-10).unwrap();
        assert_eq!(k.len(), 1);
        assert!(modulus(k[0][0] + k[0][1]) < 1e-12);
    }

    #[test]
    fn pinv_examples() {
        let m = MatrixOperator::from_real_rows(&[&[2.0, 0.0], &[0.0, 0.0]]).unwrap();
        let p = m.pinv(1e-10).unwrap();
        assert_eq!(p.entries(), &[Scalar::new(0.5, 0.0), ZERO, ZERO, ZERO]);
        let m = MatrixOperator::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        let p = m.pinv(1e-10).unwrap();
        assert!(p.entries().iter().all(|&e| modulus(e - Scalar::new(0.25, 0.0)) < 1e-14));
    }

    /// A rank-one complex matrix on which the decomposition once stopped
    /// on a wrong factorization.
    #[test]
    fn rank_one_complex_pinv() {
        let c = Scalar::new;
        let row = [c(-1.8065739685540647, 2.8242297459977195), c(-1.0022512900986151, 2.5090839408904486), c(-2.8686519861978024, 1.9058001342862312)];
        let second = [c(-11.162879680996525, 2.7888937228015793), c(-8.41347165949092, 3.898095327422342), c(-11.648321626414337, -2.005427609971637)];
        let entries: Vec<Scalar> = row.iter().chain(&second).copied().collect();
        let m = MatrixOperator::new(2, 3, entries).unwrap();
        let s = m.spectrum(1e-10).unwrap();
        assert_eq!(s.rank(), 1);
        let direct = libm::sqrt(row.iter().chain(&second).map(|x| x.norm_sqr()).sum::<f64>());
        assert!(close(s.largest(), direct));
        let p = m.pinv(1e-10).unwrap();
        assert!(m.mul(&p).unwrap().mul(&m).unwrap().max_abs_diff(&m).unwrap() < 1e-12 * direct);
    }

    #[test]
    fn root_keeps_the_numerical_rank() {
        let m = MatrixOperator::from_real_rows(&[&[1.0, 0.0], &[0.0, 1e-14]]).unwrap();
        let r = m.sqrt_psd(1e-10, 1e-10).unwrap();
        assert_eq!(r.spectrum(1e-10).unwrap().rank(), m.spectrum(1e-10).unwrap().rank());
        let g = MatrixOperator::from_real_rows(&[&[2.0, 1.0], &[1.0, 0.5 + 1e-15]]).unwrap();
        let rg = g.sqrt_psd(1e-10, 1e-10).unwrap();
        assert_eq!(rg.spectrum(1e-10).unwrap().rank(), 1);
    }

    #[test]
    fn zero_matrix_is_rejected() {
        assert!(MatrixOperator::from_real_rows(&[&[0.0, 0.0]]).is_err());
        assert!(MatrixOperator::new(1, 2, vec![ONE]).is_err());
    }

    #[test]
    fn psd_square_root() {
        let m = MatrixOperator::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let r = m.sqrt_psd(1e-10, 1e-10).unwrap();
        assert!(r.mul(&r).unwrap().max_abs_diff(&m).unwrap() < 1e-10);
        let neg = MatrixOperator::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap();
        assert_eq!(neg.sqrt_psd(1e-10, 1e-10), Err(Error::NotPositiveSelfAdjoint));
    }

    #[test]
    fn kernel_of_wide_matrix() {
        let m = MatrixOperator::from_real_rows(&[&[1.0, 2.0, 3.0]]).unwrap();
        let k = m.kernel_basis(1e-10).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(modulus(m.apply(v).unwrap()[0]) < 1e-12);
        }
    }
}
