//! Named example operators: Bernstein and Szász–Mirakjan operators,
//! sampled multiplication operators and a family of ℓ² diagonals.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::diagonal::DiagonalOperator;
use crate::error::{Error, Result};
use crate::matrix::MatrixOperator;
use crate::scalar::{powi, real, Scalar, ZERO};
use crate::tail::TailRule;

/// Largest degree evaluated with exact binomials and products.
const DIRECT_MAX_DEGREE: u32 = 50;

fn ln_choose(n: u32, k: u32) -> f64 {
    libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
}

fn choose(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `P_{n,k}(x) = C(n,k) x^k (1 − x)^{n−k}`.
pub fn bernstein_basis(n: u32, k: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::DomainViolation("degree must be at least 1".into()));
    }
    if k > n {
        return Err(Error::DomainViolation(format!("index {k} exceeds degree {n}")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DomainViolation(format!("node {x} is outside [0, 1]")));
    }
    if n <= DIRECT_MAX_DEGREE {
        return Ok(choose(n, k) * powi(x, k as i32) * powi(1.0 - x, (n - k) as i32));
    }
    // Endpoints: only one basis function survives.
    if x == 0.0 {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    if x == 1.0 {
        return Ok(if k == n { 1.0 } else { 0.0 });
    }
    let ln = ln_choose(n, k) + k as f64 * libm::log(x) + (n - k) as f64 * libm::log1p(-x);
    Ok(libm::exp(ln))
}

/// `[P_{n,k}(x_j)]_{j,k}`, the action of `B_n` on nodal data.
pub fn bernstein_nodal_matrix(n: u32, nodes: &[f64]) -> Result<MatrixOperator> {
    if nodes.is_empty() {
        return Err(Error::DomainViolation("node list is empty".into()));
    }
    let mut entries = Vec::with_capacity(nodes.len() * (n as usize + 1));
    for &x in nodes {
        for k in 0..=n {
            entries.push(real(bernstein_basis(n, k, x)?));
        }
    }
    MatrixOperator::new(nodes.len(), n as usize + 1, entries)
}

/// Uniform nodes `k/n`, `k = 0..=n`.
pub fn bernstein_nodes(n: u32) -> Vec<f64> {
    (0..=n).map(|k| k as f64 / n as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SzaszSpec {
    pub n: u32,
    /// Candidate stability constant `N` to be refuted.
    pub hus_candidate_n: f64,
}

impl SzaszSpec {
    pub fn new(n: u32, hus_candidate_n: f64) -> Result<Self> {
        if n == 0 || !(hus_candidate_n > 0.0) || !hus_candidate_n.is_finite() {
            return Err(Error::DomainViolation("Szász parameters need n ≥ 1 and N > 0".into()));
        }
        Ok(SzaszSpec { n, hus_candidate_n })
    }
}

/// Terms beyond the Poisson mode allowed before giving up.
const SZASZ_EXTRA_TERMS: f64 = 100_000.0;

/// `(M_n f)(x) = e^{−nx} Σ_k f(k/n) (nx)^k / k!`, truncated once the
/// remaining Poisson mass is below `series_tol`.
pub fn szasz_apply(spec: &SzaszSpec, f: impl Fn(f64) -> f64, x: f64, series_tol: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::DomainViolation(format!("Szász argument {x} must be a finite nonnegative real")));
    }
    let n = spec.n as f64;
    let lambda = n * x;
    if lambda == 0.0 {
        return Ok(f(0.0));
    }
    let ln_lambda = libm::log(lambda);
    let weight = |k: f64| libm::exp(-lambda + k * ln_lambda - libm::lgamma(k + 1.0));
    let cap = lambda + SZASZ_EXTRA_TERMS * (1.0 + libm::sqrt(lambda));
    let mut sum = 0.0;
    let mut k = 0.0;
    loop {
        sum += f(k / n) * weight(k);
        // Past the mode the tail is dominated by a geometric series.
        if k + 2.0 > lambda {
            let next = weight(k + 1.0);
            let tail = next / (1.0 - lambda / (k + 2.0));
            if tail < series_tol {
                return Ok(sum);
            }
        }
        k += 1.0;
        if k > cap {
            return Err(Error::NonConvergent(format!("Szász series at x = {x}")));
        }
    }
}

/// Piecewise-linear hat with the given peak at `center`, vanishing
/// outside `[left, right]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hat {
    pub left: f64,
    pub center: f64,
    pub right: f64,
    pub peak: f64,
}

impl Hat {
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.left || x >= self.right {
            0.0
        } else if x <= self.center {
            self.peak * (x - self.left) / (self.center - self.left)
        } else {
            self.peak * (self.right - x) / (self.right - self.center)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SzaszWitness {
    pub j: u64,
    pub hat: Hat,
    /// Grid supremum of `|M_n f|` over `[0, 3j/n]`.
    pub sup_norm: f64,
    /// `‖M_n f‖∞` predicted in closed form, `f(j/n) jʲ/(j! eʲ)`.
    pub predicted_sup: f64,
    /// Distance at the peak node to any function agreeing with the kernel.
    pub kernel_gap: f64,
}

/// `ln(jʲ / (j! eʲ))`, with `0⁰ = 1`.
pub fn ln_poisson_peak(j: u64) -> f64 {
    if j == 0 {
        return 0.0;
    }
    let j = j as f64;
    j * libm::log(j) - libm::lgamma(j + 1.0) - j
}

/// Smallest `j` with `(N + 1) jʲ/(j! eʲ) ≤ 1`.
pub fn szasz_min_j(hus_candidate_n: f64) -> u64 {
    let ln_peak = libm::log(hus_candidate_n + 1.0);
    (1..).find(|&j| ln_peak + ln_poisson_peak(j) <= 0.0).unwrap()
}

const WITNESS_SERIES_TOL: f64 = 1e-16;

/// The hat of height `N + 1` at `j/n` whose image has sup norm at most
/// one, refuting every stability constant up to `N`.
pub fn szasz_instability_witness(spec: &SzaszSpec, grid_points: usize) -> Result<SzaszWitness> {
    if grid_points < 2 {
        return Err(Error::DomainViolation("witness grid needs at least two points".into()));
    }
    let n = spec.n as f64;
    let j = szasz_min_j(spec.hus_candidate_n);
    let jf = j as f64;
    let peak = spec.hus_candidate_n + 1.0;
    let hat = Hat { left: (jf - 1.0) / n, center: jf / n, right: (jf + 1.0) / n, peak };
    let upper = 3.0 * jf / n;
    let mut sup_norm: f64 = 0.0;
    for i in 0..grid_points {
        let x = upper * i as f64 / (grid_points - 1) as f64;
        let v = szasz_apply(spec, |t| hat.eval(t), x, WITNESS_SERIES_TOL)?;
        sup_norm = sup_norm.max(libm::fabs(v));
    }
    Ok(SzaszWitness {
        j,
        hat,
        sup_norm,
        predicted_sup: peak * libm::exp(ln_poisson_peak(j)),
        kernel_gap: peak,
    })
}

/// Symbol of a sampled multiplication operator.
#[derive(Debug, Clone, PartialEq)]
pub enum Phi {
    /// `φ(x) = x`.
    IdentityOn01,
    /// `φ(x) = x + c`.
    Shifted(f64),
    /// Explicit samples `φ(x_1), …, φ(x_N)`.
    Grid(Vec<Scalar>),
}

/// `diag(φ(x_1), …, φ(x_N))` with `x_i = i/(N + 1)`.
pub fn multiplication_sampled(phi: &Phi, n: usize) -> Result<MatrixOperator> {
    if n == 0 {
        return Err(Error::DomainViolation("sample count must be positive".into()));
    }
    let node = |i: usize| i as f64 / (n + 1) as f64;
    let d: Vec<Scalar> = match phi {
        Phi::IdentityOn01 => (1..=n).map(|i| real(node(i))).collect(),
        Phi::Shifted(c) => (1..=n).map(|i| real(node(i) + c)).collect(),
        Phi::Grid(v) => {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
            v.clone()
        }
    };
    if d.iter().all(|&x| x == ZERO) {
        return Err(Error::InvalidModel("sampled symbol vanishes identically".into()));
    }
    for &x in &d {
        crate::scalar::check_finite(x)?;
    }
    Ok(MatrixOperator::diagonal(&d))
}

/// Named diagonal operators on ℓ².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperDiagonal {
    /// `(x₁, 2x₂, 3x₃, …)`.
    StableN,
    /// `(x₁, x₂/2, x₃/3, …)`.
    InverseOfStableN,
    /// `(x₂, 0, 2x₄, 0, 3x₆, …)` up to unitary equivalence: its modulus
    /// has entries `0, 1, 0, 2, 0, 3, …`.
    ShiftedWeighted,
    /// `(x₁, 2x₂, x₃/3, 4x₄, x₅/5, …)`.
    MixedUnstable,
    /// `(0, 2x₂, 3x₃, …)`.
    KernelPlusN,
}

impl PaperDiagonal {
    pub const ALL: [PaperDiagonal; 5] = [
        PaperDiagonal::StableN,
        PaperDiagonal::InverseOfStableN,
        PaperDiagonal::ShiftedWeighted,
        PaperDiagonal::MixedUnstable,
        PaperDiagonal::KernelPlusN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PaperDiagonal::StableN => "stable_n",
            PaperDiagonal::InverseOfStableN => "inverse_of_stable_n",
            PaperDiagonal::ShiftedWeighted => "shifted_weighted",
            PaperDiagonal::MixedUnstable => "mixed_unstable",
            PaperDiagonal::KernelPlusN => "kernel_plus_n",
        }
    }
}

impl fmt::Display for PaperDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PaperDiagonal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PaperDiagonal::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::InvalidModel(format!("unknown diagonal `{s}`")))
    }
}

pub fn paper_diagonal(name: PaperDiagonal) -> DiagonalOperator {
    let (head, tail): (&[f64], TailRule) = match name {
        PaperDiagonal::StableN => (&[], TailRule::power(1.0, 1.0)),
        PaperDiagonal::InverseOfStableN => (&[], TailRule::power(1.0, -1.0)),
        PaperDiagonal::ShiftedWeighted => (&[], TailRule::Cyclic(alloc::vec![TailRule::Zero, TailRule::power(0.5, 1.0)])),
        PaperDiagonal::MixedUnstable => {
            (&[1.0], TailRule::Cyclic(alloc::vec![TailRule::power(1.0, -1.0), TailRule::power(1.0, 1.0)]))
        }
        PaperDiagonal::KernelPlusN => (&[0.0, 2.0, 3.0], TailRule::power(1.0, 1.0)),
    };
    DiagonalOperator::from_reals(head, tail).expect("named diagonals are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OperatorModel;
    use crate::stability::{gamma, stability_report};
    use crate::tolerance::ToleranceConfig;

    #[test]
    fn basis_values() {
        assert_eq!(bernstein_basis(1, 0, 0.25).unwrap(), 0.75);
        assert_eq!(bernstein_basis(2, 1, 0.5).unwrap(), 0.5);
        assert!(bernstein_basis(2, 3, 0.5).is_err());
        assert!(bernstein_basis(2, 1, 1.5).is_err());
        let total: f64 = (0..=80).map(|k| bernstein_basis(80, k, 0.3).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nodal_matrices() {
        let m = bernstein_nodal_matrix(1, &[0.0, 1.0]).unwrap();
        assert_eq!(m, MatrixOperator::identity(2).unwrap());
        let m = bernstein_nodal_matrix(2, &bernstein_nodes(2)).unwrap();
        let rows: Vec<f64> = m.entries().iter().map(|z| z.re).collect();
        assert_eq!(rows, alloc::vec![1.0, 0.0, 0.0, 0.25, 0.5, 0.25, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn szasz_normalization() {
        let spec = SzaszSpec::new(3, 1.0).unwrap();
        for x in [0.0, 0.1, 2.0, 10.0] {
            assert!((szasz_apply(&spec, |_| 1.0, x, 1e-14).unwrap() - 1.0).abs() < 1e-13);
            assert_eq!(szasz_apply(&spec, |_| 0.0, x, 1e-14).unwrap(), 0.0);
        }
    }

    #[test]
    fn szasz_minimal_index() {
        assert_eq!(szasz_min_j(10.0), 20);
        assert_eq!(szasz_min_j(1.0), 1);
        assert_eq!(szasz_min_j(5.0), 6);
        assert_eq!(szasz_min_j(20.0), 71);
    }

    #[test]
    fn multiplication_examples() {
        let tol = ToleranceConfig::default();
        let m: OperatorModel = multiplication_sampled(&Phi::IdentityOn01, 9).unwrap().into();
        assert_eq!(gamma(&m, &tol).unwrap().0, 0.1);
        let m: OperatorModel = multiplication_sampled(&Phi::Shifted(1.0), 50).unwrap().into();
        assert!(gamma(&m, &tol).unwrap().0 >= 1.0);
    }

    #[test]
    fn named_diagonals() {
        let tol = ToleranceConfig::default();
        let r = |d| stability_report(&paper_diagonal(d).into(), &tol).unwrap();
        assert_eq!((r(PaperDiagonal::StableN).gamma, r(PaperDiagonal::StableN).stable), (1.0, true));
        assert!(!r(PaperDiagonal::InverseOfStableN).stable);
        assert_eq!(r(PaperDiagonal::ShiftedWeighted).gamma, 1.0);
        assert!(!r(PaperDiagonal::MixedUnstable).stable);
        assert_eq!(r(PaperDiagonal::KernelPlusN).spectral_floor, 4.0);
        assert_eq!("mixed_unstable".parse::<PaperDiagonal>().unwrap(), PaperDiagonal::MixedUnstable);
    }
}
