//! 2×2 block operator matrices `𝒜 = [[A, B], [C, E]]`, their Schur and
//! quadratic complements, three-factor reconstructions and closed-range
//! equivalences.
//!
//! Two regimes are supported. In the diagonal regime all four blocks are
//! diagonal on ℓ² and `𝒜` decouples into the 2×2 cells
//! `[[a_n, b_n], [c_n, e_n]]`, which makes γ(𝒜) exactly computable. In the
//! matrix regime all blocks are dense and `𝒜` is assembled.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::calculus::diagonal_relative_bound;
use crate::diagonal::{law_profile, DiagonalOperator};
use crate::error::{Error, Result};
use crate::matrix::MatrixOperator;
use crate::model::OperatorModel;
use crate::scalar::{modulus, KernelDim, Scalar, ONE, ZERO};
use crate::stability::gamma;
use crate::symbolic::{profile_class, Asymptotics, Extremes, Law};
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    a: OperatorModel,
    b: OperatorModel,
    c: OperatorModel,
    e: OperatorModel,
    mu: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Complement {
    /// `S₂(μ) = E − μ − C(A − μ)⁻¹B`
    Schur2,
    /// `S₁(μ) = A − μ − B(E − μ)⁻¹C`
    Schur1,
    /// `T₂(μ) = B − (A − μ)C⁻¹(E − μ)`
    Quad2,
    /// `T₁(μ) = C − (E − μ)B⁻¹(A − μ)`
    Quad1,
}

impl Complement {
    pub const ALL: [Complement; 4] = [Complement::Schur2, Complement::Schur1, Complement::Quad2, Complement::Quad1];

    pub fn name(self) -> &'static str {
        match self {
            Complement::Schur2 => "schur2",
            Complement::Schur1 => "schur1",
            Complement::Quad2 => "quad2",
            Complement::Quad1 => "quad1",
        }
    }
}

impl fmt::Display for Complement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Complement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Complement::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidModel(format!("unknown complement `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub complement_stable: bool,
    pub whole_stable: bool,
    pub consistent: bool,
}

/// γ(𝒜) with attainment and kernel dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockProfile {
    pub gamma: f64,
    pub attained: bool,
    pub kernel_dim: KernelDim,
}

/// Smallest nonzero singular value of `[[a, b], [c, e]]` given its
/// determinant, or `None` for the zero cell.
fn cell_sigma(s: f64, det_sq: f64) -> Option<f64> {
    if s == 0.0 {
        return None;
    }
    if det_sq == 0.0 {
        return Some(libm::sqrt(s));
    }
    let disc = (s * s - 4.0 * det_sq).max(0.0);
    Some(libm::sqrt(2.0 * det_sq / (s + libm::sqrt(disc))))
}

fn cell_moduli(a: Scalar, b: Scalar, c: Scalar, e: Scalar) -> (f64, f64) {
    let s = [a, b, c, e].iter().map(|z| z.norm_sqr()).sum();
    (s, (a * e - b * c).norm_sqr())
}

/// Shape of the singular values of a class of cells.
#[derive(Clone, Copy)]
enum Branch {
    /// Determinant vanishes identically: one nonzero singular value.
    RankOne,
    /// Both singular values coincide.
    Equal,
    General,
}

/// Laws of one tail class of the cells.
struct CellLaws {
    s: Law,
    det: Law,
}

impl CellLaws {
    fn new(l: [&Law; 4]) -> Result<Self> {
        let [a, b, c, e] = l;
        let det = a.mul(e).sub(&b.mul(c))?;
        let s = a.modulus_sq().add(&b.modulus_sq())?.add(&c.modulus_sq())?.add(&e.modulus_sq())?;
        Ok(CellLaws { s, det })
    }

    fn det_sq(&self, n: usize) -> f64 {
        self.det.eval(n).norm_sqr()
    }

    fn s(&self, n: usize) -> f64 {
        self.s.eval(n).re
    }
}

impl BlockMatrix {
    /// All four blocks must be nonzero and share a representation:
    /// diagonal blocks on a common ℓ², or conformable dense blocks.
    pub fn new(a: OperatorModel, b: OperatorModel, c: OperatorModel, e: OperatorModel) -> Result<Self> {
        for x in [&a, &b, &c, &e] {
            if x.is_zero() {
                return Err(Error::InvalidModel("blocks must be nonzero operators".into()));
            }
        }
        let m = BlockMatrix { a, b, c, e, mu: ZERO };
        m.check_regime()?;
        Ok(m)
    }

    fn check_regime(&self) -> Result<()> {
        match self.blocks() {
            [OperatorModel::Diagonal(_), OperatorModel::Diagonal(_), OperatorModel::Diagonal(_), OperatorModel::Diagonal(_)] => {
                Ok(())
            }
            [OperatorModel::Matrix(a), OperatorModel::Matrix(b), OperatorModel::Matrix(c), OperatorModel::Matrix(e)] => {
                MatrixOperator::assemble(a, b, c, e).map(|_| ())
            }
            _ => Err(Error::UnsupportedModel("block entries must be all diagonal or all matrix".into())),
        }
    }

    /// Unchecked assembly; blocks may be zero.
    pub(crate) fn from_parts(a: OperatorModel, b: OperatorModel, c: OperatorModel, e: OperatorModel, mu: Scalar) -> Self {
        BlockMatrix { a, b, c, e, mu }
    }

    pub fn with_mu(mut self, mu: Scalar) -> Self {
        self.mu = mu;
        self
    }

    pub fn a(&self) -> &OperatorModel {
        &self.a
    }

    pub fn b(&self) -> &OperatorModel {
        &self.b
    }

    pub fn c(&self) -> &OperatorModel {
        &self.c
    }

    pub fn e(&self) -> &OperatorModel {
        &self.e
    }

    /// Spectral shift used by default for complements.
    pub fn mu(&self) -> Scalar {
        self.mu
    }

    pub fn blocks(&self) -> [&OperatorModel; 4] {
        [&self.a, &self.b, &self.c, &self.e]
    }

    pub fn is_diagonal_regime(&self) -> bool {
        matches!(self.a, OperatorModel::Diagonal(_))
    }

    fn diagonals(&self) -> Option<[&DiagonalOperator; 4]> {
        match self.blocks() {
            [OperatorModel::Diagonal(a), OperatorModel::Diagonal(b), OperatorModel::Diagonal(c), OperatorModel::Diagonal(e)] => {
                Some([a, b, c, e])
            }
            _ => None,
        }
    }

    fn matrices(&self) -> Option<[&MatrixOperator; 4]> {
        match self.blocks() {
            [OperatorModel::Matrix(a), OperatorModel::Matrix(b), OperatorModel::Matrix(c), OperatorModel::Matrix(e)] => {
                Some([a, b, c, e])
            }
            _ => None,
        }
    }

    /// The same operator with the roles of `H` and `K` exchanged:
    /// `[[E, C], [B, A]]`.
    pub fn swapped(&self) -> BlockMatrix {
        BlockMatrix { a: self.e.clone(), b: self.c.clone(), c: self.b.clone(), e: self.a.clone(), mu: self.mu }
    }

    /// `𝒜 − μ`: the diagonal blocks shifted by `μ`.
    pub fn shifted(&self, mu: Scalar) -> Result<BlockMatrix> {
        Ok(BlockMatrix {
            a: shift(&self.a, mu)?,
            b: self.b.clone(),
            c: self.c.clone(),
            e: shift(&self.e, mu)?,
            mu: self.mu - mu,
        })
    }

    /// Split dimension of an input vector.
    fn split(&self, len: usize) -> Result<usize> {
        match self.matrices() {
            Some([a, b, ..]) => {
                if len != a.cols() + b.cols() {
                    return Err(Error::DimensionMismatch { expected: a.cols() + b.cols(), got: len });
                }
                Ok(a.cols())
            }
            None => {
                if len % 2 != 0 {
                    return Err(Error::DimensionMismatch { expected: len + 1, got: len });
                }
                Ok(len / 2)
            }
        }
    }

    /// `𝒜(x_H, x_K)`; for diagonal blocks the input is split in halves.
    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let k = self.split(x.len())?;
        let (xh, xk) = x.split_at(k);
        let add = |p: Vec<Scalar>, q: Vec<Scalar>| p.iter().zip(&q).map(|(u, v)| u + v).collect::<Vec<_>>();
        let mut top = add(self.a.apply(xh)?, self.b.apply(xk)?);
        top.extend(add(self.c.apply(xh)?, self.e.apply(xk)?));
        Ok(top)
    }

    /// Cell `[[a_n, b_n], [c_n, e_n]]` of the diagonal regime.
    pub fn cell(&self, n: usize) -> Option<[Scalar; 4]> {
        let [a, b, c, e] = self.diagonals()?;
        Some([a.entry(n), b.entry(n), c.entry(n), e.entry(n)])
    }

    /// The `2N × 2N` matrix `[[A_N, B_N], [C_N, E_N]]` of truncations, or
    /// the assembled dense operator in the matrix regime (`dim` ignored).
    pub fn assemble(&self, dim: usize) -> Result<MatrixOperator> {
        let [a, b, c, e] = [&self.a, &self.b, &self.c, &self.e].map(|x| dense(x, dim));
        MatrixOperator::assemble(&a?, &b?, &c?, &e?)
    }

    fn aligned(&self) -> Option<(Vec<DiagonalOperator>, usize)> {
        let d = self.diagonals()?;
        Some(DiagonalOperator::align_all(&d))
    }

    /// γ(𝒜), exact in the diagonal regime through the cell analysis.
    pub fn profile(&self, tol: &ToleranceConfig) -> Result<BlockProfile> {
        let Some((ops, period)) = self.aligned() else {
            let m = self.assemble(0)?;
            let s = m.spectrum(tol.rank_tol)?;
            let gamma = s.smallest_nonzero().ok_or(Error::NumericallyZero)?;
            return Ok(BlockProfile { gamma, attained: true, kernel_dim: KernelDim::Finite(m.cols() - s.rank()) });
        };
        let mut ext = Extremes::EMPTY;
        let mut kernel = KernelDim::Finite(0);
        let head = ops[0].head().len();
        for i in 0..head {
            let [a, b, c, e] = [0, 1, 2, 3].map(|k| ops[k].head()[i]);
            let (s, det_sq) = cell_moduli(a, b, c, e);
            match cell_sigma(s, det_sq) {
                None => kernel = kernel.add(KernelDim::Finite(2)),
                Some(sigma) => {
                    ext.value(sigma);
                    if det_sq == 0.0 {
                        kernel = kernel.add(KernelDim::Finite(1));
                    }
                }
            }
        }
        let laws: Vec<Vec<Law>> = ops.iter().map(|d| d.tail().laws_with_period(period)).collect();
        let max_shift = laws.iter().flatten().map(Law::max_shift).fold(0.0, f64::max);
        for r in 0..period {
            let first = ops[0].tail().first_in_class(r, period);
            let cl = CellLaws::new([&laws[0][r], &laws[1][r], &laws[2][r], &laws[3][r]])?;
            if cl.s.is_zero() {
                kernel = KernelDim::Infinite;
                continue;
            }
            let det_sq = cl.det.modulus_sq();
            let (branch, series) = if det_sq.is_zero() {
                kernel = KernelDim::Infinite;
                (Branch::RankOne, cl.s.real_series())
            } else {
                for z in law_profile(&cl.det, first, period).zeros {
                    kernel = kernel.add(KernelDim::Finite(if cl.s(z) == 0.0 { 2 } else { 1 }));
                }
                let disc = cl.s.mul(&cl.s).sub(&det_sq.scale(Scalar::new(4.0, 0.0)))?;
                if disc.is_zero() {
                    (Branch::Equal, cl.s.real_series().map(|s| s.scale(0.5)))
                } else {
                    let root = disc.real_series().and_then(|d| d.powf(0.5));
                    let series = match (det_sq.real_series(), cl.s.real_series(), root) {
                        (Some(d), Some(s), Some(q)) => s.add(&q).recip().map(|den| d.mul(&den).scale(2.0)),
                        _ => None,
                    };
                    (Branch::General, series)
                }
            };
            let asym = Asymptotics::from_series(series.as_ref(), max_shift);
            let profile = profile_class(first, period, asym, |n| {
                let s = cl.s(n);
                match branch {
                    Branch::RankOne => libm::sqrt(s),
                    Branch::Equal => libm::sqrt(s / 2.0),
                    Branch::General => cell_sigma(s, cl.det_sq(n)).unwrap_or(0.0),
                }
            });
            ext.profile(&profile);
        }
        if ext.inf == f64::INFINITY {
            return Err(Error::NumericallyZero);
        }
        Ok(BlockProfile { gamma: ext.inf, attained: ext.inf_attained, kernel_dim: kernel })
    }

    /// Orthogonal projection of `x` onto `N(𝒜)`.
    pub fn kernel_projection(&self, x: &[Scalar], tol: &ToleranceConfig) -> Result<Vec<Scalar>> {
        let k = self.split(x.len())?;
        let Some((ops, period)) = self.aligned() else {
            let m = self.assemble(0)?;
            let mut x0 = vec![ZERO; x.len()];
            for v in m.kernel_basis(tol.rank_tol)? {
                let c: Scalar = v.iter().zip(x).map(|(vi, xi)| vi.conj() * xi).sum();
                for (o, vi) in x0.iter_mut().zip(&v) {
                    *o += c * vi;
                }
            }
            return Ok(x0);
        };
        let laws: Vec<Vec<Law>> = ops.iter().map(|d| d.tail().laws_with_period(period)).collect();
        let dets = (0..period)
            .map(|r| Ok(CellLaws::new([&laws[0][r], &laws[1][r], &laws[2][r], &laws[3][r]])?.det))
            .collect::<Result<Vec<_>>>()?;
        let head = ops[0].head().len();
        let mut x0 = vec![ZERO; x.len()];
        for i in 0..k {
            let n = i + 1;
            let [a, b, c, e] = [0, 1, 2, 3].map(|j| ops[j].entry(n));
            let det = if n <= head { a * e - b * c } else { dets[(n - 1) % period].eval(n) };
            let (u, v) = (x[i], x[k + i]);
            if [a, b, c, e].iter().all(|&z| z == ZERO) {
                x0[i] = u;
                x0[k + i] = v;
            } else if det == ZERO {
                // Rows are parallel; the kernel is spanned by a vector orthogonal to a nonzero row.
                let (p, q) = if a != ZERO || b != ZERO { (a, b) } else { (c, e) };
                let w = [q, -p];
                let norm = libm::sqrt(w[0].norm_sqr() + w[1].norm_sqr());
                let w = [w[0] / norm, w[1] / norm];
                let coef = w[0].conj() * u + w[1].conj() * v;
                x0[i] = coef * w[0];
                x0[k + i] = coef * w[1];
            }
        }
        Ok(x0)
    }
}

fn dense(op: &OperatorModel, dim: usize) -> Result<MatrixOperator> {
    match op {
        OperatorModel::Diagonal(d) => d.truncate(dim),
        OperatorModel::Matrix(m) => Ok(m.clone()),
        OperatorModel::Block(_) => Err(op.unsupported("nested block assembly")),
    }
}

fn shift(op: &OperatorModel, mu: Scalar) -> Result<OperatorModel> {
    match op {
        OperatorModel::Diagonal(d) => Ok(d.map(|x| Ok(x - mu), |l| l.sub(&Law::constant(mu)))?.into()),
        OperatorModel::Matrix(m) => Ok(m.shift(mu)?.into()),
        OperatorModel::Block(_) => Err(op.unsupported("shift")),
    }
}

/// Every entry of `d` is nonzero (pointwise invertibility).
fn diagonal_injective(d: &DiagonalOperator) -> bool {
    !d.is_zero() && d.kernel_support().dim == KernelDim::Finite(0)
}

/// No kernel and a positive γ.
fn diagonal_boundedly_invertible(d: &DiagonalOperator) -> bool {
    diagonal_injective(d) && d.inf_nonzero_modulus().0 > 0.0
}

fn matrix_invertible(m: &MatrixOperator, tol: &ToleranceConfig) -> Result<bool> {
    Ok(m.is_square() && !m.is_zero() && m.spectrum(tol.rank_tol)?.rank() == m.rows())
}

/// Inverse of an invertible dense matrix; diagonal matrices are inverted
/// entrywise.
fn dense_inverse(m: &MatrixOperator) -> Result<MatrixOperator> {
    if m.is_diagonal() {
        let mut out = m.clone();
        for i in 0..m.rows() {
            out.set(i, i, ONE / m.get(i, i));
        }
        return Ok(out);
    }
    m.to_dmatrix()
        .try_inverse()
        .map(|inv| MatrixOperator::from_dmatrix(&inv))
        .ok_or_else(|| Error::NotInvertible("pivot block".into()))
}

/// `s − x·y/p` (entrywise in the diagonal regime).
fn diag_complement(
    s: &DiagonalOperator,
    x: &DiagonalOperator,
    pivot: &DiagonalOperator,
    y: &DiagonalOperator,
) -> Result<DiagonalOperator> {
    let xy = DiagonalOperator::zip_with(x, y, |u, v| Ok(u * v), |u, v| Ok(u.mul(v)))?;
    let q = DiagonalOperator::zip_with(&xy, pivot, |u, v| Ok(u / v), |u, v| u.div(v))?;
    DiagonalOperator::zip_with(s, &q, |u, v| Ok(u - v), |u, v| u.sub(v))
}

/// Generic complement `s − x·p⁻¹·y` where `p` must be invertible.
fn complement_of(
    s: &OperatorModel,
    x: &OperatorModel,
    pivot: &OperatorModel,
    y: &OperatorModel,
    pivot_name: &str,
    bounded: bool,
    tol: &ToleranceConfig,
) -> Result<OperatorModel> {
    match (s, x, pivot, y) {
        (OperatorModel::Diagonal(s), OperatorModel::Diagonal(x), OperatorModel::Diagonal(p), OperatorModel::Diagonal(y)) => {
            let ok = if bounded { diagonal_boundedly_invertible(p) } else { diagonal_injective(p) };
            if !ok {
                return Err(Error::NotInvertible(pivot_name.into()));
            }
            Ok(diag_complement(s, x, p, y)?.into())
        }
        (OperatorModel::Matrix(s), OperatorModel::Matrix(x), OperatorModel::Matrix(p), OperatorModel::Matrix(y)) => {
            if !matrix_invertible(p, tol)? {
                return Err(Error::NotInvertible(pivot_name.into()));
            }
            let inv = dense_inverse(p)?;
            Ok(s.sub(&x.mul(&inv)?.mul(y)?)?.into())
        }
        _ => Err(Error::UnsupportedModel("complements need four blocks of one representation".into())),
    }
}

/// `S₂(μ) = E − μ − C(A − μ)⁻¹B`.
pub fn schur2(m: &BlockMatrix, mu: Scalar, tol: &ToleranceConfig) -> Result<OperatorModel> {
    let am = shift(&m.a, mu)?;
    let em = shift(&m.e, mu)?;
    complement_of(&em, &m.c, &am, &m.b, "A - mu", false, tol)
}

/// `S₁(μ) = A − μ − B(E − μ)⁻¹C`.
pub fn schur1(m: &BlockMatrix, mu: Scalar, tol: &ToleranceConfig) -> Result<OperatorModel> {
    schur2(&m.swapped(), mu, tol).map_err(|e| rename(e, "E - mu"))
}

/// `T₂(μ) = B − (A − μ)C⁻¹(E − μ)`.
pub fn quad2(m: &BlockMatrix, mu: Scalar, tol: &ToleranceConfig) -> Result<OperatorModel> {
    let am = shift(&m.a, mu)?;
    let em = shift(&m.e, mu)?;
    complement_of(&m.b, &am, &m.c, &em, "C", true, tol)
}

/// `T₁(μ) = C − (E − μ)B⁻¹(A − μ)`.
pub fn quad1(m: &BlockMatrix, mu: Scalar, tol: &ToleranceConfig) -> Result<OperatorModel> {
    quad2(&m.swapped(), mu, tol).map_err(|e| rename(e, "B"))
}

fn rename(e: Error, pivot: &str) -> Error {
    match e {
        Error::NotInvertible(_) => Error::NotInvertible(pivot.into()),
        other => other,
    }
}

pub fn complement(m: &BlockMatrix, which: Complement, mu: Scalar, tol: &ToleranceConfig) -> Result<OperatorModel> {
    match which {
        Complement::Schur2 => schur2(m, mu, tol),
        Complement::Schur1 => schur1(m, mu, tol),
        Complement::Quad2 => quad2(m, mu, tol),
        Complement::Quad1 => quad1(m, mu, tol),
    }
}

/// Dense `[[A, B], [C, E]]` at truncation size `dim`.
pub fn assemble_direct(m: &BlockMatrix, dim: usize) -> Result<MatrixOperator> {
    m.assemble(dim)
}

fn identity(n: usize) -> MatrixOperator {
    MatrixOperator::diagonal(&vec![ONE; n])
}

fn block(a: &MatrixOperator, b: &MatrixOperator, c: &MatrixOperator, e: &MatrixOperator) -> Result<MatrixOperator> {
    MatrixOperator::assemble(a, b, c, e)
}

/// The three-factor product reconstructing `𝒜` from the complement:
///
/// * `schur2`: `μ + [[I, 0], [C(A−μ)⁻¹, I]] · diag(A − μ, S₂) · [[I, (A−μ)⁻¹B], [0, I]]`
/// * `schur1`: `μ + [[I, B(E−μ)⁻¹], [0, I]] · diag(S₁, E − μ) · [[I, 0], [(E−μ)⁻¹C, I]]`
/// * `quad2`: `μ + [[I, (A−μ)C⁻¹], [0, I]] · [[0, T₂], [C, 0]] · [[I, C⁻¹(E−μ)], [0, I]]`
/// * `quad1`: `μ + [[I, 0], [(E−μ)B⁻¹, I]] · [[0, B], [T₁, 0]] · [[I, 0], [B⁻¹(A−μ), I]]`
pub fn assemble_factorized(
    m: &BlockMatrix,
    mu: Scalar,
    which: Complement,
    dim: usize,
    tol: &ToleranceConfig,
) -> Result<MatrixOperator> {
    let [left, middle, right] = factors(m, mu, which, dim, tol)?;
    left.mul(&middle)?.mul(&right)?.shift(-mu)
}

/// The three factors of [`assemble_factorized`], before adding `μ`.
fn factors(m: &BlockMatrix, mu: Scalar, which: Complement, dim: usize, tol: &ToleranceConfig) -> Result<[MatrixOperator; 3]> {
    let comp = dense(&complement(m, which, mu, tol)?, dim)?;
    let a = dense(&shift(&m.a, mu)?, dim)?;
    let e = dense(&shift(&m.e, mu)?, dim)?;
    let b = dense(&m.b, dim)?;
    let c = dense(&m.c, dim)?;
    let (ih, ik) = (identity(a.cols()), identity(e.cols()));
    let z = MatrixOperator::zeros;
    let (left, middle, right) = match which {
        Complement::Schur2 => {
            let inv = dense_inverse(&a)?;
            (
                block(&ih, &z(a.rows(), e.cols()), &c.mul(&inv)?, &ik)?,
                block(&a, &z(a.rows(), e.cols()), &z(e.rows(), a.cols()), &comp)?,
                block(&ih, &inv.mul(&b)?, &z(e.rows(), a.cols()), &ik)?,
            )
        }
        Complement::Schur1 => {
            let inv = dense_inverse(&e)?;
            (
                block(&ih, &b.mul(&inv)?, &z(e.rows(), a.cols()), &ik)?,
                block(&comp, &z(a.rows(), e.cols()), &z(e.rows(), a.cols()), &e)?,
                block(&ih, &z(a.rows(), e.cols()), &inv.mul(&c)?, &ik)?,
            )
        }
        Complement::Quad2 => {
            let inv = dense_inverse(&c)?;
            (
                block(&ih, &a.mul(&inv)?, &z(e.rows(), a.cols()), &ik)?,
                block(&z(a.rows(), a.cols()), &comp, &c, &z(e.rows(), e.cols()))?,
                block(&ih, &inv.mul(&e)?, &z(e.rows(), a.cols()), &ik)?,
            )
        }
        Complement::Quad1 => {
            let inv = dense_inverse(&b)?;
            (
                block(&ih, &z(a.rows(), e.cols()), &e.mul(&inv)?, &ik)?,
                block(&z(a.rows(), a.cols()), &b, &comp, &z(e.rows(), e.cols()))?,
                block(&ih, &z(a.rows(), e.cols()), &inv.mul(&a)?, &ik)?,
            )
        }
    };
    Ok([left, middle, right])
}

/// Entrywise agreement `|x − y| ≤ tol · max(1, |y|)`.
pub fn matrices_match(x: &MatrixOperator, y: &MatrixOperator, tol: f64) -> bool {
    x.rows() == y.rows()
        && x.cols() == y.cols()
        && x.entries().iter().zip(y.entries()).all(|(&u, &v)| modulus(u - v) <= tol * modulus(v).max(1.0))
}

/// Checks the three-factor reconstruction of `𝒜` against its direct
/// assembly, truncating diagonal blocks to `dim`. Each entry may differ by
/// `match_tol` times the larger of 1, the direct entry, and the matching
/// entry of `|L|·|D|·|R|`.
pub fn factorization_check(m: &BlockMatrix, mu: Scalar, which: Complement, dim: usize, tol: &ToleranceConfig) -> Result<bool> {
    tol.validate()?;
    let direct = assemble_direct(m, dim)?;
    let [left, middle, right] = factors(m, mu, which, dim, tol)?;
    let factored = left.mul(&middle)?.mul(&right)?.shift(-mu)?;
    // Rounding in the product is bounded entrywise by |L|·|D|·|R|.
    let abs = |x: &MatrixOperator| x.to_dmatrix().map(modulus);
    let scale = abs(&left) * abs(&middle) * abs(&right);
    let (f, d) = (factored.entries(), direct.entries());
    Ok(factored.rows() == direct.rows()
        && factored.cols() == direct.cols()
        && (0..f.len()).all(|k| {
            let (i, j) = (k / direct.cols(), k % direct.cols());
            let bound = modulus(d[k]).max(scale[(i, j)]).max(1.0);
            modulus(f[k] - d[k]) <= tol.match_tol * bound
        }))
}

/// Hypotheses of the closed-range equivalence at `μ = 0`, checked exactly
/// in the diagonal regime. Besides the dominance inequality and bounded
/// invertibility of the pivot, the outer factors of the reconstruction
/// must be bounded; for `schur2` that is boundedness of `A⁻¹B`.
fn check_hypotheses(m: &BlockMatrix, which: Complement, tol: &ToleranceConfig) -> Result<()> {
    let (pivot, dominated, coupled, names) = match which {
        Complement::Schur2 => (&m.a, &m.c, &m.b, ["A", "‖Cx‖ ≤ a‖Ax‖", "A⁻¹B bounded"]),
        Complement::Schur1 => (&m.e, &m.b, &m.c, ["E", "‖Bx‖ ≤ a‖Ex‖", "E⁻¹C bounded"]),
        Complement::Quad2 => (&m.c, &m.a, &m.e, ["C", "‖Ax‖ ≤ a‖Cx‖", "C⁻¹E bounded"]),
        Complement::Quad1 => (&m.b, &m.e, &m.a, ["B", "‖Ex‖ ≤ a‖Bx‖", "B⁻¹A bounded"]),
    };
    let fail = |what: &str| Error::HypothesisFails(String::from(what));
    match (pivot, dominated, coupled) {
        (OperatorModel::Diagonal(p), OperatorModel::Diagonal(d), OperatorModel::Diagonal(c)) => {
            if !diagonal_boundedly_invertible(p) {
                return Err(fail(&format!("{} is not boundedly invertible", names[0])));
            }
            for (x, name) in [(d, names[1]), (c, names[2])] {
                match diagonal_relative_bound(x, p) {
                    Ok(_) => {}
                    Err(Error::Incomparable) => return Err(fail(name)),
                    Err(e) => return Err(e),
                }
            }
            Ok(())
        }
        (OperatorModel::Matrix(p), _, _) => {
            if !matrix_invertible(p, tol)? {
                return Err(fail(&format!("{} is not boundedly invertible", names[0])));
            }
            Ok(())
        }
        _ => Err(Error::UnsupportedModel("mixed block representations".into())),
    }
}

/// Closed range of the complement at `μ = 0` versus closed range of `𝒜`.
/// A complement equal to the zero operator has closed range `{0}`.
pub fn closed_range_equivalence(m: &BlockMatrix, which: Complement, tol: &ToleranceConfig) -> Result<EquivalenceReport> {
    tol.validate()?;
    check_hypotheses(m, which, tol)?;
    let comp = complement(m, which, ZERO, tol)?;
    let complement_stable = comp.is_zero() || gamma(&comp, tol)?.0 > 0.0;
    let whole_stable = m.profile(tol)?.gamma > 0.0;
    Ok(EquivalenceReport { complement_stable, whole_stable, consistent: complement_stable == whole_stable })
}
