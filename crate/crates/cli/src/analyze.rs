//! `analyze` and `witness`.

use std::path::Path;

use hus_core::blockmat::{closed_range_equivalence, complement};
use hus_core::stability::{gamma, gamma_convergence_table, hus_witness, spectral_floor_check, stability_report};
use hus_core::zoo::szasz_instability_witness;
use hus_core::{BlockMatrix, Complement, Error, OperatorModel, Scalar, ToleranceConfig};

use crate::error::CliError;
use crate::report::{Report, Section};
use crate::spec::{join_scalars, OperatorSpecFile, SpecBody, Subject};

/// Truncation sizes tabulated for diagonal models.
pub const DEFAULT_DIMS: [usize; 4] = [4, 16, 64, 256];

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub dims: Option<Vec<usize>>,
    pub rank_tol: Option<f64>,
}

/// Spec overrides on top of the defaults, then command-line overrides.
pub fn effective_tolerance(spec: &OperatorSpecFile, rank_tol: Option<f64>) -> Result<ToleranceConfig, CliError> {
    let mut tol = spec.tolerances.apply(ToleranceConfig::default());
    if let Some(r) = rank_tol {
        tol.rank_tol = r;
    }
    tol.validate()?;
    Ok(tol)
}

fn subject_section(spec: &OperatorSpecFile, subject: &Subject) -> Section {
    let mut s = Section::new("subject");
    s.text("kind", spec.kind());
    if let SpecBody::Zoo(z) = &spec.body {
        s.text("name", z.name());
    }
    if let Subject::Model(m) = subject {
        s.text("model", m.kind());
    }
    s
}

pub fn run_analyze(spec: &OperatorSpecFile, base: &Path, opts: &AnalyzeOptions) -> Result<Report, CliError> {
    let tol = effective_tolerance(spec, opts.rank_tol)?;
    let subject = spec.build(base)?;
    let mut report = Report::new(subject_section(spec, &subject), tol);
    let model = match subject {
        Subject::Model(m) => m,
        Subject::Szasz(s) => {
            let w = szasz_instability_witness(&s, tol.grid_points)?;
            let mut sec = Section::new("szasz");
            sec.count("n", s.n as usize)
                .real("N", s.hus_candidate_n)
                .count("j", w.j as usize)
                .real("peak", w.hat.peak)
                .real("sup_norm", w.sup_norm)
                .real("predicted_sup", w.predicted_sup)
                .real("kernel_gap", w.kernel_gap);
            report.extra(sec);
            return Ok(report);
        }
    };
    let stability = stability_report(&model, &tol)?;
    let mut operator = Section::new("operator");
    match &model {
        OperatorModel::Diagonal(d) => {
            operator.real("sup_modulus", d.sup_modulus());
        }
        OperatorModel::Matrix(m) => {
            operator.count("rows", m.rows()).count("cols", m.cols()).real("norm", m.norm()?);
        }
        OperatorModel::Block(_) => {}
    }
    report.extra(operator);
    let mut floor = Section::new("floor");
    if stability.stable && stability.spectral_floor.is_finite() && stability.spectral_floor > 0.0 {
        floor.real("r", stability.spectral_floor).flag("holds", spectral_floor_check(&model, stability.spectral_floor, &tol)?);
    }
    report.extra(floor);
    if let OperatorModel::Diagonal(d) = &model {
        let dims = opts.dims.as_deref().unwrap_or(&DEFAULT_DIMS);
        let mut table = Section::new("convergence");
        for (n, g) in gamma_convergence_table(d, dims, &tol)? {
            table.real(format!("{n}.gamma"), g);
        }
        report.extra(table);
    }
    if let OperatorModel::Block(m) = &model {
        report.extra(complement_section(m, &tol)?);
    }
    report.stability = Some(stability);
    Ok(report)
}

fn complement_section(m: &BlockMatrix, tol: &ToleranceConfig) -> Result<Section, CliError> {
    let mut sec = Section::new("complement");
    for which in Complement::ALL {
        let name = which.name();
        match complement(m, which, m.mu(), tol) {
            Ok(c) if c.is_zero() => {
                sec.flag(format!("{name}.zero"), true);
            }
            Ok(c) => {
                let (g, _) = gamma(&c, tol)?;
                sec.real(format!("{name}.gamma"), g).flag(format!("{name}.stable"), g > 0.0);
            }
            Err(e @ (Error::NotInvertible(_) | Error::UnsupportedModel(_))) => {
                sec.text(format!("{name}.error"), e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
        match closed_range_equivalence(m, which, tol) {
            Ok(eq) => {
                sec.text(format!("{name}.equivalence"), if eq.consistent { "consistent" } else { "inconsistent" });
            }
            Err(e @ (Error::HypothesisFails(_) | Error::NotInvertible(_))) => {
                sec.text(format!("{name}.equivalence"), e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(sec)
}

/// Nearest kernel vector to `x` together with the stability inequality.
pub fn run_witness(spec: &OperatorSpecFile, base: &Path, x: &[Scalar], rank_tol: Option<f64>) -> Result<Report, CliError> {
    let tol = effective_tolerance(spec, rank_tol)?;
    let subject = spec.build(base)?;
    let mut report = Report::new(subject_section(spec, &subject), tol);
    let Subject::Model(model) = subject else {
        return Err(Error::UnsupportedModel("witnesses need an operator model".into()).into());
    };
    let w = hus_witness(&model, x, &tol)?;
    let mut sec = Section::new("witness");
    sec.text("x", join_scalars(x, ","))
        .text("x0", join_scalars(&w.x0, ","))
        .real("distance", w.distance)
        .real("bound", w.bound)
        .flag("holds", w.distance <= w.bound * (1.0 + 1e-9));
    report.stability = Some(stability_report(&model, &tol)?);
    report.extra(sec);
    Ok(report)
}
