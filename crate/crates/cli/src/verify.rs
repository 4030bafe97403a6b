//! Seeded property suites for the stability theorems.

use std::path::PathBuf;
use std::str::FromStr;

use hus_core::blockmat::{closed_range_equivalence, factorization_check};
use hus_core::calculus::{
    add_coercive, add_orthogonal_ranges, add_with_bound, bounded_transform, defect_transform, diagonal_pseudo_inverse,
    direct_sum, is_bounded, power_op, pseudo_inverse, relative_bound, scale, sqrt_op,
};
use hus_core::scalar::{modulus, real};
use hus_core::stability::gamma;
use hus_core::zoo::{szasz_instability_witness, SzaszSpec};
use hus_core::{
    BlockMatrix, Complement, DiagonalOperator, Error, KernelDim, MatrixOperator, OperatorModel, Scalar, TailRule, ToleranceConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::draw;
use crate::error::CliError;
use crate::report::{Report, Section};
use crate::spec::{describe_diagonal, join_scalars, OperatorSpecFile, Subject, DEFAULT_SZASZ_N};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_DRAWS: usize = 1000;
/// Indices compared when two kernels are checked entry by entry.
const WINDOW: usize = 300;
/// Truncation sizes used by the factorization suites.
pub const FACTORIZATION_DIMS: [usize; 3] = [4, 16, 64];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    SumBound,
    DirectSum,
    PinvDuality,
    Defect,
    BoundedTransform,
    SqrtLadder,
    Power,
    SchurEquiv,
    QuadEquiv,
    SzaszWitness,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::SumBound,
        Theorem::DirectSum,
        Theorem::PinvDuality,
        Theorem::Defect,
        Theorem::BoundedTransform,
        Theorem::SqrtLadder,
        Theorem::Power,
        Theorem::SchurEquiv,
        Theorem::QuadEquiv,
        Theorem::SzaszWitness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::SumBound => "sum_bound",
            Theorem::DirectSum => "direct_sum",
            Theorem::PinvDuality => "pinv_duality",
            Theorem::Defect => "defect",
            Theorem::BoundedTransform => "bounded_transform",
            Theorem::SqrtLadder => "sqrt_ladder",
            Theorem::Power => "power",
            Theorem::SchurEquiv => "schur_equiv",
            Theorem::QuadEquiv => "quad_equiv",
            Theorem::SzaszWitness => "szasz_witness",
        }
    }

    /// Number of spec files a given-operator run takes, `None` for any.
    fn arity(self) -> Option<usize> {
        match self {
            Theorem::SumBound | Theorem::DirectSum => Some(2),
            Theorem::SzaszWitness => Some(1),
            _ => None,
        }
    }
}

impl FromStr for Theorem {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Theorem::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| {
            let names: Vec<_> = Theorem::ALL.iter().map(|t| t.name()).collect();
            CliError::Usage(format!("unknown theorem `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub draws: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, draws: DEFAULT_DRAWS }
    }
}

/// A named check tallied over many cases, keeping the first failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Suite {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, cases: 0, failures: 0, counterexample: None }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    /// Records a case whose evaluation raised an unexpected error.
    fn outcome(&mut self, result: Result<bool, Error>, describe: impl FnOnce() -> String) {
        match result {
            Ok(ok) => self.check(ok, describe),
            Err(e) => self.check(false, || format!("{}: {e}", describe())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn section(&self) -> Section {
        let mut s = Section::new(format!("suite.{}", self.name));
        s.count("cases", self.cases).count("failures", self.failures).text("verdict", verdict(self.passed()));
        if let Some(c) = &self.counterexample {
            s.text("counterexample", c.clone());
        }
        s
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

/// Agreement to within `ulps` units in the last place of the larger value.
fn close(x: f64, y: f64, ulps: f64) -> bool {
    x == y || (x - y).abs() <= ulps * f64::EPSILON * x.abs().max(y.abs())
}

fn secondary(draws: usize) -> usize {
    (draws / 5).max(1)
}

fn describe(op: &OperatorModel) -> String {
    match op {
        OperatorModel::Diagonal(d) => describe_diagonal(d),
        OperatorModel::Matrix(m) => {
            let rows: Vec<String> = (0..m.rows())
                .map(|i| join_scalars(&(0..m.cols()).map(|j| m.get(i, j)).collect::<Vec<_>>(), ", "))
                .collect();
            format!("rows [{}]", rows.join("; "))
        }
        OperatorModel::Block(b) => {
            let [a, bb, c, e] = b.blocks();
            format!("A {}; B {}; C {}; E {}", describe(a), describe(bb), describe(c), describe(e))
        }
    }
}

/// γ, with the zero operator counted as γ = 0.
fn gamma_or_zero(op: &OperatorModel, tol: &ToleranceConfig) -> Result<f64, Error> {
    match gamma(op, tol) {
        Ok((g, _)) => Ok(g),
        Err(Error::NumericallyZero) => Ok(0.0),
        Err(e) => Err(e),
    }
}

fn diag_gamma(d: &DiagonalOperator) -> f64 {
    d.inf_nonzero_modulus().0
}

fn same_kernel(x: &DiagonalOperator, y: &DiagonalOperator) -> bool {
    let (kx, ky) = (x.kernel_support(), y.kernel_support());
    kx.dim == ky.dim && (1..=WINDOW).all(|n| kx.contains(n) == ky.contains(n))
}

/// Runs a theorem's suites, on random draws when `specs` is empty and on
/// the given operators otherwise.
pub fn run_verify(theorem: Theorem, specs: &[(OperatorSpecFile, PathBuf)], opts: &VerifyOptions) -> Result<Report, CliError> {
    if opts.draws == 0 {
        return Err(CliError::Usage("--draws must be positive".into()));
    }
    let tol = match specs.first() {
        Some((s, _)) => s.tolerances.apply(ToleranceConfig::default()),
        None => ToleranceConfig::default(),
    };
    tol.validate()?;
    let suites = if specs.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        random_suites(theorem, &mut rng, opts.draws, &tol)
    } else {
        if let Some(n) = theorem.arity() {
            if specs.len() != n {
                return Err(CliError::Usage(format!("{} takes {n} spec file(s), got {}", theorem.name(), specs.len())));
            }
        }
        let subjects = specs.iter().map(|(s, base)| s.build(base)).collect::<Result<Vec<_>, _>>()?;
        given_suites(theorem, &subjects, &tol)?
    };
    let mut subject = Section::new("subject");
    subject.text("kind", "theorem").text("name", theorem.name());
    let mut report = Report::new(subject, tol);
    let pass = suites.iter().all(Suite::passed);
    let mut head = Section::new("verify");
    head.text("theorem", theorem.name())
        .text("mode", if specs.is_empty() { "random" } else { "given" })
        .count("seed", opts.seed as usize)
        .count("draws", opts.draws)
        .text("verdict", verdict(pass));
    report.extra(head);
    for s in &suites {
        report.extra(s.section());
    }
    report.failed = !pass;
    Ok(report)
}

fn random_suites(theorem: Theorem, rng: &mut ChaCha8Rng, draws: usize, tol: &ToleranceConfig) -> Vec<Suite> {
    match theorem {
        Theorem::SumBound => vec![
            bounded_sums(rng, draws, tol),
            orthogonal_sums(rng, secondary(draws), tol),
            coercive_sums(rng, secondary(draws), tol),
        ],
        Theorem::DirectSum => {
            let mut diag = Suite::new("diagonal");
            for _ in 0..draws {
                let (t, s) = (draw::diagonal(rng).into(), draw::diagonal(rng).into());
                direct_sum_case(&mut diag, &t, &s, tol);
            }
            let mut dense = Suite::new("matrix");
            for _ in 0..secondary(draws) {
                let (t, s) = (draw::matrix(rng, 8).into(), draw::matrix(rng, 8).into());
                direct_sum_case(&mut dense, &t, &s, tol);
            }
            vec![diag, dense]
        }
        Theorem::PinvDuality => {
            let mut penrose = Suite::new("penrose");
            for _ in 0..draws {
                penrose_case(&mut penrose, &draw::matrix(rng, 8), tol);
            }
            let mut duality = Suite::new("duality");
            for _ in 0..draws {
                duality_case(&mut duality, &draw::diagonal(rng));
            }
            let mut reciprocal = Suite::new("reciprocal");
            while reciprocal.cases < secondary(draws) {
                let d = draw::bounded_diagonal(rng);
                if d.kernel_support().dim == KernelDim::Finite(0) {
                    reciprocal_case(&mut reciprocal, &d);
                }
            }
            vec![penrose, duality, reciprocal]
        }
        Theorem::Defect => {
            let mut suite = Suite::new("defect");
            for _ in 0..draws {
                defect_case(&mut suite, &draw::diagonal(rng));
            }
            vec![suite]
        }
        Theorem::BoundedTransform => {
            let mut suite = Suite::new("bounded_transform");
            for _ in 0..draws {
                bounded_transform_case(&mut suite, &draw::diagonal(rng));
            }
            vec![suite]
        }
        Theorem::SqrtLadder => {
            let mut ladder = Suite::new("ladder");
            for i in 0..draws {
                let op = draw::nonneg_diagonal(rng, false).into();
                ladder_case(&mut ladder, &op, 1 + (i % 6) as u32, tol);
            }
            let mut psd = Suite::new("psd");
            for _ in 0..secondary(draws) {
                let m = draw::matrix(rng, 8);
                let a = m.mul(&m.adjoint()).expect("conformable");
                psd_case(&mut psd, &a, tol);
            }
            vec![ladder, psd]
        }
        Theorem::Power => {
            let mut suite = Suite::new("power");
            for i in 0..draws {
                power_case(&mut suite, &draw::diagonal(rng), 1 + (i % 4) as u32);
            }
            vec![suite]
        }
        Theorem::SchurEquiv | Theorem::QuadEquiv => {
            let pair = complements(theorem);
            let mut equivalence = Suite::new("equivalence");
            for i in 0..draws {
                let m = family_draw(rng, i, theorem, tol);
                for which in pair {
                    equivalence_case(&mut equivalence, &m, which, tol);
                }
            }
            let mut factorization = Suite::new("factorization");
            for i in 0..draws {
                let m = draw::block_of(rng, draw::invertible_block);
                let mu = real(*[0.0, 0.25, -0.25].get(rng.random_range(0..3)).expect("in range"));
                let dim = FACTORIZATION_DIMS[i % FACTORIZATION_DIMS.len()];
                for which in pair {
                    factorization_case(&mut factorization, &m, mu, which, dim, tol);
                }
            }
            vec![equivalence, factorization]
        }
        Theorem::SzaszWitness => {
            let spec = SzaszSpec::new(1, DEFAULT_SZASZ_N).expect("valid parameters");
            vec![szasz_case(&spec, tol)]
        }
    }
}

fn given_suites(theorem: Theorem, subjects: &[Subject], tol: &ToleranceConfig) -> Result<Vec<Suite>, CliError> {
    if theorem == Theorem::SzaszWitness {
        return match &subjects[0] {
            Subject::Szasz(spec) => Ok(vec![szasz_case(spec, tol)]),
            Subject::Model(_) => Err(unsupported("szasz_witness needs a `kind: zoo` / `name: szasz` spec")),
        };
    }
    let models = subjects
        .iter()
        .map(|s| match s {
            Subject::Model(m) => Ok(m),
            Subject::Szasz(_) => Err(unsupported("Szász operators are only used by szasz_witness")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut suite = Suite::new("given");
    match theorem {
        Theorem::SumBound => {
            let (t, s) = (models[0], models[1]);
            let (sum, cert) = add_with_bound(s, t, tol)?;
            let (g_sum, g_t) = (gamma_or_zero(&sum, tol)?, gamma_or_zero(t, tol)?);
            suite.check(g_sum >= (1.0 - cert.b) * g_t * (1.0 - 1e-12), || sum_counterexample(t, s, cert.b, g_sum));
        }
        Theorem::DirectSum => {
            let (t, s) = (models[0], models[1]);
            let g = gamma_or_zero(&direct_sum(t, s)?, tol)?;
            let (gt, gs) = (gamma_or_zero(t, tol)?, gamma_or_zero(s, tol)?);
            suite.check(direct_sum_holds(g, gt, gs, t), || format!("T {}; S {}", describe(t), describe(s)));
        }
        Theorem::PinvDuality => {
            for m in &models {
                match m {
                    OperatorModel::Diagonal(d) => {
                        duality_case(&mut suite, d);
                        if d.sup_modulus().is_finite() {
                            reciprocal_case(&mut suite, d);
                        }
                    }
                    OperatorModel::Matrix(x) => penrose_case(&mut suite, x, tol),
                    OperatorModel::Block(_) => return Err(unsupported("pseudo-inverses of block operators")),
                }
            }
        }
        Theorem::Defect | Theorem::BoundedTransform | Theorem::Power => {
            for m in &models {
                let d = m.as_diagonal().ok_or_else(|| unsupported("this suite needs diagonal operators"))?;
                match theorem {
                    Theorem::Defect => defect_case(&mut suite, d),
                    Theorem::BoundedTransform => bounded_transform_case(&mut suite, d),
                    _ => (1..=4).for_each(|n| power_case(&mut suite, d, n)),
                }
            }
        }
        Theorem::SqrtLadder => {
            for m in &models {
                match m {
                    OperatorModel::Matrix(a) => psd_case(&mut suite, a, tol),
                    _ => (1..=6).for_each(|k| ladder_case(&mut suite, m, k, tol)),
                }
            }
        }
        Theorem::SchurEquiv | Theorem::QuadEquiv => {
            for m in &models {
                let b = m.as_block().ok_or_else(|| unsupported("equivalence suites need block operators"))?;
                for which in complements(theorem) {
                    let eq = closed_range_equivalence(b, which, tol)?;
                    suite.check(eq.consistent, || format!("{which}: {eq:?}"));
                    let dims = if b.is_diagonal_regime() { &FACTORIZATION_DIMS[..] } else { &FACTORIZATION_DIMS[..1] };
                    for &dim in dims {
                        let ok = factorization_check(b, b.mu(), which, dim, tol)?;
                        suite.check(ok, || format!("{which} factorization mismatch at dim {dim}"));
                    }
                }
            }
        }
        Theorem::SzaszWitness => unreachable!("handled above"),
    }
    Ok(vec![suite])
}

fn unsupported(what: &str) -> CliError {
    Error::UnsupportedModel(what.into()).into()
}

fn complements(theorem: Theorem) -> [Complement; 2] {
    if theorem == Theorem::SchurEquiv {
        [Complement::Schur2, Complement::Schur1]
    } else {
        [Complement::Quad2, Complement::Quad1]
    }
}

fn sum_counterexample(t: &OperatorModel, s: &OperatorModel, b: f64, g_sum: f64) -> String {
    format!("T {}; S {}; b = {b}; gamma(S+T) = {g_sum}", describe(t), describe(s))
}

/// Pairs with a certified relative bound, rescaling `S` when `b ≥ 1`.
fn bounded_sums(rng: &mut ChaCha8Rng, cases: usize, tol: &ToleranceConfig) -> Suite {
    let mut suite = Suite::new("bounded");
    while suite.cases < cases {
        let t: OperatorModel = draw::diagonal(rng).into();
        let s: OperatorModel = draw::diagonal(rng).into();
        let b = match relative_bound(&s, &t, tol) {
            Ok(cert) => cert.b,
            Err(Error::Incomparable) => continue,
            Err(e) => {
                suite.check(false, || format!("{}: {e}", sum_counterexample(&t, &s, f64::NAN, f64::NAN)));
                continue;
            }
        };
        let s = if b >= 1.0 {
            let target = rng.random_range(0.05..0.95);
            scale(real(target / b), &s).expect("finite nonzero factor")
        } else {
            s
        };
        let result = add_with_bound(&s, &t, tol).and_then(|(sum, cert)| {
            let g_sum = gamma_or_zero(&sum, tol)?;
            Ok((g_sum >= (1.0 - cert.b) * gamma_or_zero(&t, tol)? * (1.0 - 1e-12), cert.b, g_sum))
        });
        match result {
            Ok((ok, b, g_sum)) => suite.check(ok, || sum_counterexample(&t, &s, b, g_sum)),
            Err(e) => suite.check(false, || format!("{}: {e}", sum_counterexample(&t, &s, b, f64::NAN))),
        }
    }
    suite
}

/// `S` on odd indices, `T` on even ones.
fn orthogonal_sums(rng: &mut ChaCha8Rng, cases: usize, tol: &ToleranceConfig) -> Suite {
    let mut suite = Suite::new("orthogonal");
    while suite.cases < cases {
        let len = rng.random_range(0..4);
        let (mut hs, mut ht) = (vec![0.0; len], vec![0.0; len]);
        for i in 0..len {
            let slot = if i % 2 == 0 { &mut hs[i] } else { &mut ht[i] };
            *slot = draw::coefficient(rng);
        }
        // Cyclic phases follow the global index, matching the head pattern.
        let tail_s = TailRule::Cyclic(vec![draw::simple_rule(rng), TailRule::Zero]);
        let tail_t = TailRule::Cyclic(vec![TailRule::Zero, draw::simple_rule(rng)]);
        let (Ok(s), Ok(t)) = (DiagonalOperator::from_reals(&hs, tail_s), DiagonalOperator::from_reals(&ht, tail_t)) else {
            continue;
        };
        let result = add_orthogonal_ranges(&s, &t).and_then(|sum| {
            let g = gamma_or_zero(&sum.into(), tol)?;
            Ok(g == diag_gamma(&s).min(diag_gamma(&t)))
        });
        suite.outcome(result, || format!("S {}; T {}", describe_diagonal(&s), describe_diagonal(&t)));
    }
    suite
}

/// Nonnegative `S` with `T = S + a + W`, `W ≥ 0` bounded.
fn coercive_sums(rng: &mut ChaCha8Rng, cases: usize, tol: &ToleranceConfig) -> Suite {
    let mut suite = Suite::new("coercive");
    for _ in 0..cases {
        let s = draw::nonneg_diagonal(rng, true);
        let w = draw::nonneg_diagonal(rng, true);
        let a = rng.random_range(1..=4) as f64 / 2.0;
        let shift = DiagonalOperator::from_reals(&[], TailRule::constant(a)).expect("nonzero");
        let add = |x: &DiagonalOperator, y: &DiagonalOperator| {
            DiagonalOperator::zip_with(x, y, |p, q| Ok(p + q), |p, q| p.add(q))
        };
        let result = add(&s, &shift).and_then(|x| add(&x, &w)).and_then(|t| {
            let sum = add_coercive(&s, &t, a)?;
            Ok(gamma_or_zero(&sum.into(), tol)? >= a)
        });
        suite.outcome(result, || format!("S {}; W {}; a = {a}", describe_diagonal(&s), describe_diagonal(&w)));
    }
    suite
}

fn direct_sum_holds(g: f64, gt: f64, gs: f64, t: &OperatorModel) -> bool {
    let expected = gt.min(gs);
    match t {
        OperatorModel::Diagonal(_) => g == expected,
        _ => (g - expected).abs() <= 1e-10 * expected.max(1.0),
    }
}

fn direct_sum_case(suite: &mut Suite, t: &OperatorModel, s: &OperatorModel, tol: &ToleranceConfig) {
    let result = (|| {
        let g = gamma_or_zero(&direct_sum(t, s)?, tol)?;
        Ok(direct_sum_holds(g, gamma_or_zero(t, tol)?, gamma_or_zero(s, tol)?, t))
    })();
    suite.outcome(result, || format!("T {}; S {}", describe(t), describe(s)));
}

/// The four Penrose identities to `1e-8`, relative to the norms involved.
fn penrose_case(suite: &mut Suite, m: &MatrixOperator, tol: &ToleranceConfig) {
    let result = (|| {
        let p = pseudo_inverse(&m.clone().into(), tol)?;
        let p = p.as_matrix().expect("matrix pseudo-inverse");
        let (nm, np) = (m.norm()?, p.norm()?);
        let eps = 1e-8 * (nm * np).max(1.0);
        let (mp, pm) = (m.mul(p)?, p.mul(m)?);
        Ok(mp.mul(m)?.max_abs_diff(m)? <= eps * nm
            && pm.mul(p)?.max_abs_diff(p)? <= eps * np
            && mp.adjoint().max_abs_diff(&mp)? <= eps
            && pm.adjoint().max_abs_diff(&pm)? <= eps)
    })();
    suite.outcome(result, || describe(&m.clone().into()));
}

/// `T†` is stable exactly when `T` is bounded, and the other way round.
fn duality_case(suite: &mut Suite, d: &DiagonalOperator) {
    let result = (|| {
        let p = diagonal_pseudo_inverse(d)?;
        let bounded = is_bounded(&d.clone().into())?;
        Ok((diag_gamma(&p) > 0.0) == bounded && (diag_gamma(d) > 0.0) == p.sup_modulus().is_finite())
    })();
    suite.outcome(result, || describe_diagonal(d));
}

/// `γ(T†) · ‖T‖ = 1`.
fn reciprocal_case(suite: &mut Suite, d: &DiagonalOperator) {
    let result = diagonal_pseudo_inverse(d).map(|p| close(diag_gamma(&p) * d.sup_modulus(), 1.0, 4.0));
    suite.outcome(result, || describe_diagonal(d));
}

fn defect_case(suite: &mut Suite, d: &DiagonalOperator) {
    let result = (|| {
        let c = defect_transform(d)?;
        Ok((diag_gamma(&c) > 0.0) == is_bounded(&d.clone().into())? && c.sup_modulus() <= 1.0)
    })();
    suite.outcome(result, || describe_diagonal(d));
}

fn bounded_transform_case(suite: &mut Suite, d: &DiagonalOperator) {
    let result = bounded_transform(d).map(|z| (diag_gamma(&z) > 0.0) == (diag_gamma(d) > 0.0) && z.sup_modulus() <= 1.0);
    suite.outcome(result, || describe_diagonal(d));
}

/// `γ(T^{1/2ᵏ}) = γ(T)^{1/2ᵏ}`.
fn ladder_case(suite: &mut Suite, op: &OperatorModel, k: u32, tol: &ToleranceConfig) {
    let result = (|| {
        let g = gamma_or_zero(op, tol)?;
        let mut root = op.clone();
        for _ in 0..k {
            root = sqrt_op(&root, tol)?;
        }
        let gr = gamma_or_zero(&root, tol)?;
        Ok(close(gr, g.powf(1.0 / 2f64.powi(k as i32)), 8.0) && (gr > 0.0) == (g > 0.0))
    })();
    suite.outcome(result, || format!("{}; k = {k}", describe(op)));
}

/// `R = A^{1/2}` squares back to `A` and has `γ(R)² = γ(A)`.
fn psd_case(suite: &mut Suite, a: &MatrixOperator, tol: &ToleranceConfig) {
    let result = (|| {
        let op: OperatorModel = a.clone().into();
        let r = sqrt_op(&op, tol)?;
        let rm = r.as_matrix().expect("matrix root");
        let na = a.norm()?;
        let (g, gr) = (gamma_or_zero(&op, tol)?, gamma_or_zero(&r, tol)?);
        Ok(rm.mul(rm)?.max_abs_diff(a)? <= 1e-8 * na.max(1.0) && (gr * gr - g).abs() <= 1e-8 * na.max(1.0))
    })();
    suite.outcome(result, || describe(&a.clone().into()));
}

/// `Tⁿ` keeps the kernel and has `γ(Tⁿ) = γ(T)ⁿ`.
fn power_case(suite: &mut Suite, d: &DiagonalOperator, n: u32) {
    let result = power_op(&d.clone().into(), n).map(|p| {
        let p = p.as_diagonal().expect("diagonal power");
        same_kernel(d, p) && close(diag_gamma(p), diag_gamma(d).powi(n as i32), 8.0)
    });
    suite.outcome(result, || format!("{}; n = {n}", describe_diagonal(d)));
}

/// Generic draws alternate with the exact-cancellation and vanishing-tail
/// families. Generic draws are redrawn until one complement of the pair
/// satisfies its hypotheses.
fn family_draw(rng: &mut ChaCha8Rng, i: usize, theorem: Theorem, tol: &ToleranceConfig) -> BlockMatrix {
    let base = match i % 3 {
        0 => loop {
            let m = draw::block_of(rng, draw::invertible_block);
            if complements(theorem).iter().any(|&w| closed_range_equivalence(&m, w, tol).is_ok()) {
                return m;
            }
        },
        1 => draw::cancelling_block(rng),
        _ => draw::vanishing_block(rng),
    };
    // The families are built around S₂; move them onto the pair under test.
    let base = if theorem == Theorem::QuadEquiv { draw::rows_exchanged(&base) } else { base };
    if rng.random_bool(0.5) {
        base.swapped()
    } else {
        base
    }
}

fn equivalence_case(suite: &mut Suite, m: &BlockMatrix, which: Complement, tol: &ToleranceConfig) {
    match closed_range_equivalence(m, which, tol) {
        // Only one complement of each family member satisfies the hypotheses.
        Err(Error::HypothesisFails(_)) => {}
        result => suite.outcome(result.map(|eq| eq.consistent), || format!("{which}: {}", describe(&m.clone().into()))),
    }
}

fn factorization_case(suite: &mut Suite, m: &BlockMatrix, mu: Scalar, which: Complement, dim: usize, tol: &ToleranceConfig) {
    let result = factorization_check(m, mu, which, dim, tol);
    suite.outcome(result, || format!("{which} at dim {dim}, mu = {}: {}", modulus(mu), describe(&m.clone().into())));
}

/// The refutation of a candidate constant `N` for the Szász operator.
fn szasz_case(spec: &SzaszSpec, tol: &ToleranceConfig) -> Suite {
    let mut suite = Suite::new("szasz");
    let result = szasz_instability_witness(spec, tol.grid_points).map(|w| {
        let k = spec.hus_candidate_n + 1.0;
        let peak = |j: u64| k * hus_core::zoo::ln_poisson_peak(j).exp();
        let minimal = peak(w.j) <= 1.0 && (w.j == 0 || peak(w.j - 1) > 1.0);
        minimal && w.sup_norm <= 1.0 + 1e-9 && (w.sup_norm - w.predicted_sup).abs() <= 1e-6 && w.kernel_gap == k
    });
    suite.outcome(result, || format!("n = {}, N = {}", spec.n, spec.hus_candidate_n));
    suite
}
