//! Operator constructions: adjoints, generalized inverses, the defect and
//! bounded transforms, square roots, powers, sums, products, direct sums.

use alloc::format;

use crate::blockmat::BlockMatrix;
use crate::diagonal::{law_is_nonneg_real, law_profile, DiagonalOperator};
use crate::error::{Error, Result};
use crate::matrix::MatrixOperator;
use crate::model::{norm, OperatorModel};
use crate::scalar::{modulus, scalar_powi, Scalar, ONE, ZERO};
use crate::symbolic::{Extremes, Law};
use crate::tolerance::ToleranceConfig;

/// Relative bound `‖Sx‖ ≤ b‖Tx‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeBoundCertificate {
    pub b: f64,
    /// Exact (rule algebra) rather than bisection.
    pub exact: bool,
}

const BISECTION_REL: f64 = 1e-10;

pub fn adjoint(op: &OperatorModel) -> Result<OperatorModel> {
    match op {
        OperatorModel::Diagonal(d) => Ok(d.map(|x| Ok(x.conj()), |l| Ok(l.conj()))?.into()),
        OperatorModel::Matrix(m) => Ok(m.adjoint().into()),
        OperatorModel::Block(_) => Err(op.unsupported("adjoint")),
    }
}

/// Entrywise `1/d_n` off the kernel and `0` on it.
pub fn diagonal_pseudo_inverse(d: &DiagonalOperator) -> Result<DiagonalOperator> {
    let d = d.with_isolated_zeros_in_head();
    d.map(
        |x| Ok(if x == ZERO { ZERO } else { ONE / x }),
        |l| if l.is_zero() { Ok(Law::zero()) } else { l.recip() },
    )
}

pub fn pseudo_inverse(op: &OperatorModel, tol: &ToleranceConfig) -> Result<OperatorModel> {
    match op {
        OperatorModel::Diagonal(d) => Ok(diagonal_pseudo_inverse(d)?.into()),
        OperatorModel::Matrix(m) => Ok(m.pinv(tol.rank_tol)?.into()),
        OperatorModel::Block(_) => Err(op.unsupported("pseudo-inverse")),
    }
}

pub fn is_bounded(op: &OperatorModel) -> Result<bool> {
    match op {
        OperatorModel::Diagonal(d) => Ok(d.sup_modulus() < f64::INFINITY),
        OperatorModel::Matrix(_) => Ok(true),
        OperatorModel::Block(_) => Err(op.unsupported("boundedness test")),
    }
}

/// `1 + |f|²` as a law.
fn one_plus_modulus_sq(l: &Law) -> Result<Law> {
    Law::constant(ONE).add(&l.modulus_sq())
}

/// `C_T = (I + T*T)⁻¹`: entries `1/(1 + |d_n|²)`.
pub fn defect_transform(d: &DiagonalOperator) -> Result<DiagonalOperator> {
    d.map(|x| Ok(Scalar::new(1.0 / (1.0 + x.norm_sqr()), 0.0)), |l| one_plus_modulus_sq(l)?.recip())
}

/// `Z_T = T(I + T*T)^{-1/2}`: entries `d_n/√(1 + |d_n|²)`.
pub fn bounded_transform(d: &DiagonalOperator) -> Result<DiagonalOperator> {
    d.map(
        |x| Ok(x / libm::sqrt(1.0 + x.norm_sqr())),
        |l| if l.is_zero() { Ok(Law::zero()) } else { l.times_radical(&one_plus_modulus_sq(l)?, -0.5) },
    )
}

/// Square root of a positive self-adjoint operator.
pub fn sqrt_op(op: &OperatorModel, tol: &ToleranceConfig) -> Result<OperatorModel> {
    match op {
        OperatorModel::Diagonal(d) => {
            if !d.is_nonneg_real() {
                return Err(Error::NotPositiveSelfAdjoint);
            }
            Ok(d.map(|x| Ok(Scalar::new(libm::sqrt(x.re), 0.0)), |l| Ok(l.sqrt()))?.into())
        }
        OperatorModel::Matrix(m) => Ok(m.sqrt_psd(tol.psd_tol, tol.rank_tol)?.into()),
        OperatorModel::Block(_) => Err(op.unsupported("square root")),
    }
}

/// `Tⁿ` for `n ≥ 1`.
pub fn power_op(op: &OperatorModel, n: u32) -> Result<OperatorModel> {
    if n == 0 {
        return Err(Error::DomainViolation("power must be at least 1".into()));
    }
    match op {
        OperatorModel::Diagonal(d) => Ok(d.map(|x| Ok(scalar_powi(x, n as i32)), |l| Ok(l.powi(n)))?.into()),
        OperatorModel::Matrix(m) => {
            if !m.is_square() {
                return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
            }
            let mut acc = m.clone();
            for _ in 1..n {
                acc = acc.mul(m)?;
            }
            Ok(acc.into())
        }
        OperatorModel::Block(_) => Err(op.unsupported("power")),
    }
}

/// `sup |s_n|/|t_n|` with `0/0 = 0`; `Incomparable` when `s` is nonzero
/// where `t` vanishes or the ratio is unbounded.
pub fn diagonal_relative_bound(s: &DiagonalOperator, t: &DiagonalOperator) -> Result<f64> {
    let t = t.with_isolated_zeros_in_head();
    let (ops, period) = DiagonalOperator::align_all(&[s, &t]);
    let (s, t) = (&ops[0], &ops[1]);
    let mut ext = Extremes::EMPTY;
    for (&x, &y) in s.head().iter().zip(t.head()) {
        match (x == ZERO, y == ZERO) {
            (true, _) => ext.value(0.0),
            (false, true) => return Err(Error::Incomparable),
            (false, false) => ext.value(modulus(x) / modulus(y)),
        }
    }
    let (ls, lt) = (s.tail().laws_with_period(period), t.tail().laws_with_period(period));
    for r in 0..period {
        if lt[r].is_zero() {
            if !ls[r].is_zero() {
                return Err(Error::Incomparable);
            }
            continue;
        }
        let ratio = ls[r].div(&lt[r])?;
        ext.profile(&law_profile(&ratio, t.tail().first_in_class(r, period), period));
    }
    if ext.sup == f64::INFINITY {
        return Err(Error::Incomparable);
    }
    Ok(ext.sup)
}

fn matrix_relative_bound(s: &MatrixOperator, t: &MatrixOperator, tol: &ToleranceConfig) -> Result<f64> {
    if s.rows() != t.rows() || s.cols() != t.cols() {
        return Err(Error::DimensionMismatch { expected: t.rows() * t.cols(), got: s.rows() * s.cols() });
    }
    let s_norm = s.norm()?;
    if s_norm == 0.0 {
        return Ok(0.0);
    }
    for v in t.kernel_basis(tol.rank_tol)? {
        if norm(&s.apply(&v)?) > tol.rank_tol * s_norm {
            return Err(Error::Incomparable);
        }
    }
    let gamma = t.spectrum(tol.rank_tol)?.smallest_nonzero().ok_or(Error::NumericallyZero)?;
    let tt = t.adjoint().mul(t)?;
    let ss = s.adjoint().mul(s)?;
    let psd = |b: f64| -> Result<bool> { tt.scale(Scalar::new(b * b, 0.0)).sub(&ss)?.is_psd(tol.psd_tol) };
    let (mut lo, mut hi) = (0.0, s_norm / gamma);
    while !psd(hi)? {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NonConvergent("relative bound bracket".into()));
        }
    }
    while hi - lo > BISECTION_REL * hi {
        let mid = 0.5 * (lo + hi);
        if psd(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Smallest `b` with `‖Sx‖ ≤ b‖Tx‖` for every `x`.
pub fn relative_bound(s: &OperatorModel, t: &OperatorModel, tol: &ToleranceConfig) -> Result<RelativeBoundCertificate> {
    tol.validate()?;
    match (s, t) {
        (OperatorModel::Diagonal(s), OperatorModel::Diagonal(t)) => {
            Ok(RelativeBoundCertificate { b: diagonal_relative_bound(s, t)?, exact: true })
        }
        (OperatorModel::Matrix(s), OperatorModel::Matrix(t)) => {
            Ok(RelativeBoundCertificate { b: matrix_relative_bound(s, t, tol)?, exact: false })
        }
        _ => Err(Error::UnsupportedModel("relative bounds need two diagonal or two matrix models".into())),
    }
}

fn sum(s: &OperatorModel, t: &OperatorModel) -> Result<OperatorModel> {
    match (s, t) {
        (OperatorModel::Diagonal(s), OperatorModel::Diagonal(t)) => {
            Ok(DiagonalOperator::zip_with(s, t, |x, y| Ok(x + y), |x, y| x.add(y))?.into())
        }
        (OperatorModel::Matrix(s), OperatorModel::Matrix(t)) => Ok(s.add(t)?.into()),
        _ => Err(Error::UnsupportedModel("sums need two diagonal or two matrix models".into())),
    }
}

/// `S + T` together with the relative bound of `S` with respect to `T`,
/// which must be below one.
pub fn add_with_bound(
    s: &OperatorModel,
    t: &OperatorModel,
    tol: &ToleranceConfig,
) -> Result<(OperatorModel, RelativeBoundCertificate)> {
    let cert = relative_bound(s, t, tol)?;
    if cert.b >= 1.0 {
        return Err(Error::BoundNotLessThanOne(cert.b));
    }
    Ok((sum(s, t)?, cert))
}

/// `S + T` for diagonals with disjoint supports.
pub fn add_orthogonal_ranges(s: &DiagonalOperator, t: &DiagonalOperator) -> Result<DiagonalOperator> {
    let (ops, period) = DiagonalOperator::align_all(&[s, t]);
    let (s, t) = (&ops[0], &ops[1]);
    for (i, (&x, &y)) in s.head().iter().zip(t.head()).enumerate() {
        if x != ZERO && y != ZERO {
            return Err(Error::SupportsOverlap(i + 1));
        }
    }
    let (ls, lt) = (s.tail().laws_with_period(period), t.tail().laws_with_period(period));
    for r in 0..period {
        let product = ls[r].mul(&lt[r]);
        if product.is_zero() {
            continue;
        }
        let first = s.tail().first_in_class(r, period);
        let overlap = (0..).map(|k| first + k * period).find(|&n| product.eval(n) != ZERO);
        return Err(Error::SupportsOverlap(overlap.unwrap_or(first)));
    }
    DiagonalOperator::zip_with(s, t, |x, y| Ok(x + y), |x, y| x.add(y))
}

/// `S + T` for nonnegative real diagonals with `t_n − s_n ≥ a` and `T`
/// bounded; the sum then has γ at least `a`. Explicit entries may miss the
/// gap by a few ulps of `t_n`.
pub fn add_coercive(s: &DiagonalOperator, t: &DiagonalOperator, a: f64) -> Result<DiagonalOperator> {
    if !(a > 0.0) {
        return Err(Error::DomainViolation(format!("coercivity constant must be positive, got {a}")));
    }
    if t.sup_modulus() == f64::INFINITY {
        return Err(Error::Unbounded);
    }
    if !s.is_nonneg_real() || !t.is_nonneg_real() {
        return Err(Error::CoercivityFails("entries must be nonnegative reals".into()));
    }
    let (ops, period) = DiagonalOperator::align_all(&[s, t]);
    let (s, t) = (&ops[0], &ops[1]);
    for (i, (&x, &y)) in s.head().iter().zip(t.head()).enumerate() {
        if y.re - x.re < a - 4.0 * f64::EPSILON * y.re {
            return Err(Error::CoercivityFails(format!("|t_n| - |s_n| < {a} at n = {}", i + 1)));
        }
    }
    let (ls, lt) = (s.tail().laws_with_period(period), t.tail().laws_with_period(period));
    for r in 0..period {
        let first = s.tail().first_in_class(r, period);
        let gap = lt[r].sub(&ls[r])?.sub(&Law::constant(Scalar::new(a, 0.0)))?;
        if !law_is_nonneg_real(&gap, first, period) {
            return Err(Error::CoercivityFails(format!("|t_n| - |s_n| < {a} on the tail class of n = {first}")));
        }
    }
    DiagonalOperator::zip_with(s, t, |x, y| Ok(x + y), |x, y| x.add(y))
}

/// `TS`.
pub fn compose(t: &OperatorModel, s: &OperatorModel) -> Result<OperatorModel> {
    match (t, s) {
        (OperatorModel::Diagonal(t), OperatorModel::Diagonal(s)) => {
            Ok(DiagonalOperator::zip_with(t, s, |x, y| Ok(x * y), |x, y| Ok(x.mul(y)))?.into())
        }
        (OperatorModel::Matrix(t), OperatorModel::Matrix(s)) => Ok(t.mul(s)?.into()),
        _ => Err(Error::UnsupportedModel("products need two diagonal or two matrix models".into())),
    }
}

/// `T × S`: interleaved indexing for diagonals, block diagonal for matrices.
pub fn direct_sum(t: &OperatorModel, s: &OperatorModel) -> Result<OperatorModel> {
    match (t, s) {
        (OperatorModel::Diagonal(t), OperatorModel::Diagonal(s)) => Ok(t.interleave(s).into()),
        (OperatorModel::Matrix(t), OperatorModel::Matrix(s)) => {
            let zt = MatrixOperator::zeros(t.rows(), s.cols());
            let zs = MatrixOperator::zeros(s.rows(), t.cols());
            Ok(MatrixOperator::assemble(t, &zt, &zs, s)?.into())
        }
        _ => Err(Error::UnsupportedModel("direct sums need two diagonal or two matrix models".into())),
    }
}

/// `cT` for `c ≠ 0`.
pub fn scale(c: Scalar, op: &OperatorModel) -> Result<OperatorModel> {
    if c == ZERO {
        return Err(Error::ZeroScalar);
    }
    crate::scalar::check_finite(c)?;
    match op {
        OperatorModel::Diagonal(d) => Ok(d.map(|x| Ok(c * x), |l| Ok(l.scale(c)))?.into()),
        OperatorModel::Matrix(m) => Ok(m.scale(c).into()),
        OperatorModel::Block(b) => {
            let [a, bb, cc, e] = b.blocks().map(|x| scale(c, x));
            Ok(BlockMatrix::from_parts(a?, bb?, cc?, e?, b.mu()).into())
        }
    }
}

/// `(‖x‖² + ‖Tx‖²)^{1/2}`.
pub fn graph_norm(op: &OperatorModel, x: &[Scalar]) -> Result<f64> {
    let tx = op.apply(x)?;
    Ok(libm::hypot(norm(x), norm(&tx)))
}
