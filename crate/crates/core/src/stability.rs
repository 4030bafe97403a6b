//! γ(T), `M_T`, stability verdicts, witnesses and truncation studies.

use alloc::format;
use alloc::vec::Vec;

use crate::diagonal::DiagonalOperator;
use crate::error::{Error, Result};
use crate::matrix::MatrixOperator;
use crate::model::{norm, OperatorModel};
use crate::scalar::{KernelDim, Scalar, ZERO};
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Reduced minimum modulus γ(T).
    pub gamma: f64,
    pub gamma_attained: bool,
    /// `M_T = 1/γ`, `+∞` when γ = 0.
    pub hus_constant: f64,
    pub stable: bool,
    /// Largest `r` with the nonzero spectrum of `T*T` inside `[r, ∞)`.
    pub spectral_floor: f64,
    pub kernel_dim: KernelDim,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessResult {
    /// Nearest kernel vector to `x`.
    pub x0: Vec<Scalar>,
    pub distance: f64,
    /// `M_T · ‖Tx‖`.
    pub bound: f64,
}

struct Analysis {
    gamma: f64,
    attained: bool,
    kernel_dim: KernelDim,
    /// Whether γ comes from exact rule analysis.
    exact: bool,
}

fn diagonal_analysis(d: &DiagonalOperator) -> Result<Analysis> {
    if d.is_zero() {
        return Err(Error::NumericallyZero);
    }
    let p = d.profile();
    Ok(Analysis { gamma: p.inf_nonzero, attained: p.inf_attained, kernel_dim: p.kernel.dim, exact: true })
}

fn matrix_analysis(m: &MatrixOperator, tol: &ToleranceConfig) -> Result<Analysis> {
    let s = m.spectrum(tol.rank_tol)?;
    let gamma = s.smallest_nonzero().ok_or(Error::NumericallyZero)?;
    Ok(Analysis { gamma, attained: true, kernel_dim: KernelDim::Finite(m.cols() - s.rank()), exact: false })
}

fn analysis(op: &OperatorModel, tol: &ToleranceConfig) -> Result<Analysis> {
    tol.validate()?;
    match op {
        OperatorModel::Diagonal(d) => diagonal_analysis(d),
        OperatorModel::Matrix(m) => matrix_analysis(m, tol),
        OperatorModel::Block(b) => {
            let p = b.profile(tol)?;
            Ok(Analysis { gamma: p.gamma, attained: p.attained, kernel_dim: p.kernel_dim, exact: b.is_diagonal_regime() })
        }
    }
}

/// γ(T) and whether the infimum is attained.
pub fn gamma(op: &OperatorModel, tol: &ToleranceConfig) -> Result<(f64, bool)> {
    let a = analysis(op, tol)?;
    Ok((a.gamma, a.attained))
}

pub fn stability_report(op: &OperatorModel, tol: &ToleranceConfig) -> Result<StabilityReport> {
    let a = analysis(op, tol)?;
    let hus_constant = if a.gamma > 0.0 { 1.0 / a.gamma } else { f64::INFINITY };
    Ok(StabilityReport {
        gamma: a.gamma,
        gamma_attained: a.attained,
        hus_constant,
        stable: a.gamma > 0.0,
        spectral_floor: a.gamma * a.gamma,
        kernel_dim: a.kernel_dim,
    })
}

fn kernel_projection(op: &OperatorModel, x: &[Scalar], tol: &ToleranceConfig) -> Result<Vec<Scalar>> {
    match op {
        OperatorModel::Diagonal(d) => {
            let k = d.kernel_support();
            Ok(x.iter().enumerate().map(|(i, &v)| if k.contains(i + 1) { v } else { ZERO }).collect())
        }
        OperatorModel::Matrix(m) => {
            if x.len() != m.cols() {
                return Err(Error::DimensionMismatch { expected: m.cols(), got: x.len() });
            }
            let mut x0 = alloc::vec![ZERO; x.len()];
            for v in m.kernel_basis(tol.rank_tol)? {
                let c: Scalar = v.iter().zip(x).map(|(vi, xi)| vi.conj() * xi).sum();
                for (o, vi) in x0.iter_mut().zip(&v) {
                    *o += c * vi;
                }
            }
            Ok(x0)
        }
        OperatorModel::Block(b) => b.kernel_projection(x, tol),
    }
}

/// Realizes the stability inequality at `x` with the optimal kernel
/// vector `x0`, the orthogonal projection of `x` onto `N(T)`.
pub fn hus_witness(op: &OperatorModel, x: &[Scalar], tol: &ToleranceConfig) -> Result<WitnessResult> {
    let report = stability_report(op, tol)?;
    if !report.stable {
        return Err(Error::NotStable);
    }
    let tx = op.apply(x)?;
    let x0 = kernel_projection(op, x, tol)?;
    let residual: Vec<Scalar> = x.iter().zip(&x0).map(|(a, b)| a - b).collect();
    Ok(WitnessResult { distance: norm(&residual), bound: report.hus_constant * norm(&tx), x0 })
}

/// Whether the nonzero spectrum of `T*T` lies in `[r, ∞)`.
///
/// Exact models compare γ² with `r` directly; dense models allow the
/// relative slack `psd_tol`.
pub fn spectral_floor_check(op: &OperatorModel, r: f64, tol: &ToleranceConfig) -> Result<bool> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::DomainViolation(format!("floor candidate must be positive and finite, got {r}")));
    }
    let a = analysis(op, tol)?;
    let floor = a.gamma * a.gamma;
    Ok(if a.exact { floor >= r } else { floor >= r * (1.0 - tol.psd_tol) })
}

/// `diag(d_1, …, d_N)`.
pub fn truncate(d: &DiagonalOperator, n: usize) -> Result<MatrixOperator> {
    d.truncate(n)
}

/// `(N, γ(truncate(d, N)))` for each requested size. A truncation with no
/// nonzero entry has an empty carrier and is listed with `γ = +∞`.
pub fn gamma_convergence_table(d: &DiagonalOperator, dims: &[usize], tol: &ToleranceConfig) -> Result<Vec<(usize, f64)>> {
    if dims.is_empty() || dims.windows(2).any(|w| w[0] >= w[1]) || dims[0] == 0 {
        return Err(Error::InvalidModel("dims must be nonempty, positive and strictly increasing".into()));
    }
    dims.iter()
        .map(|&n| {
            let m = truncate(d, n)?;
            match matrix_analysis(&m, tol) {
                Ok(a) => Ok((n, a.gamma)),
                Err(Error::NumericallyZero) => Ok((n, f64::INFINITY)),
                Err(e) => Err(e),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::real;
    use crate::tail::TailRule;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn kernel_plus_n() -> OperatorModel {
        DiagonalOperator::from_reals(&[0.0, 2.0, 3.0], TailRule::power(1.0, 1.0)).unwrap().into()
    }

    fn mixed() -> DiagonalOperator {
        DiagonalOperator::from_reals(&[1.0], TailRule::Cyclic(alloc::vec![TailRule::power(1.0, -1.0), TailRule::power(1.0, 1.0)]))
            .unwrap()
    }

    #[test]
    fn report_of_kernel_plus_n() {
        let r = stability_report(&kernel_plus_n(), &tol()).unwrap();
        assert_eq!(
            r,
            StabilityReport {
                gamma: 2.0,
                gamma_attained: true,
                hus_constant: 0.5,
                stable: true,
                spectral_floor: 4.0,
                kernel_dim: KernelDim::Finite(1)
            }
        );
    }

    #[test]
    fn report_of_decaying_diagonal() {
        let d: OperatorModel = DiagonalOperator::from_reals(&[], TailRule::power(1.0, -2.0)).unwrap().into();
        let r = stability_report(&d, &tol()).unwrap();
        assert_eq!((r.gamma, r.stable, r.hus_constant, r.spectral_floor), (0.0, false, f64::INFINITY, 0.0));
        assert_eq!(r.kernel_dim, KernelDim::Finite(0));
    }

    #[test]
    fn floor_checks() {
        assert!(spectral_floor_check(&kernel_plus_n(), 4.0, &tol()).unwrap());
        assert!(!spectral_floor_check(&kernel_plus_n(), 4.5, &tol()).unwrap());
        assert!(!spectral_floor_check(&mixed().into(), 1e-9, &tol()).unwrap());
    }

    #[test]
    fn witness_on_diagonal() {
        let d: OperatorModel = DiagonalOperator::from_reals(&[0.0, 2.0], TailRule::power(1.0, 1.0)).unwrap().into();
        let w = hus_witness(&d, &[real(1.0), real(1.0)], &tol()).unwrap();
        assert_eq!(w, WitnessResult { x0: alloc::vec![real(1.0), ZERO], distance: 1.0, bound: 1.0 });
        assert_eq!(hus_witness(&mixed().into(), &[real(1.0)], &tol()), Err(Error::NotStable));
    }

    #[test]
    fn convergence_tables() {
        let t = gamma_convergence_table(&mixed(), &[4, 16, 64], &tol()).unwrap();
        assert_eq!(t, alloc::vec![(4, 1.0 / 3.0), (16, 1.0 / 15.0), (64, 1.0 / 63.0)]);
        let k = gamma_convergence_table(kernel_plus_n().as_diagonal().unwrap(), &[4, 8], &tol()).unwrap();
        assert_eq!(k, alloc::vec![(4, 2.0), (8, 2.0)]);
        assert!(gamma_convergence_table(&mixed(), &[4, 4], &tol()).is_err());
    }
}
