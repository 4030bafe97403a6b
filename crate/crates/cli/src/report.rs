//! Reports and their text renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use hus_core::{KernelDim, StabilityReport, ToleranceConfig};

use crate::spec::format_real;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Count(u64),
    Flag(bool),
    Text(String),
    Kernel(KernelDim),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Real(x) => format_real(*x),
            Value::Count(n) => n.to_string(),
            Value::Flag(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::Kernel(KernelDim::Finite(n)) => n.to_string(),
            Value::Kernel(KernelDim::Infinite) => "inf".into(),
        }
    }
}

/// Named group of `key = value` lines; keys may themselves be dotted.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, Value)>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section { name: name.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: Value) -> &mut Self {
        self.entries.push((key.into(), value));
        self
    }

    pub fn real(&mut self, key: impl Into<String>, x: f64) -> &mut Self {
        self.push(key, Value::Real(x))
    }

    pub fn count(&mut self, key: impl Into<String>, n: usize) -> &mut Self {
        self.push(key, Value::Count(n as u64))
    }

    pub fn flag(&mut self, key: impl Into<String>, b: bool) -> &mut Self {
        self.push(key, Value::Flag(b))
    }

    pub fn text(&mut self, key: impl Into<String>, s: impl Into<String>) -> &mut Self {
        self.push(key, Value::Text(s.into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub subject: Section,
    pub tolerance: ToleranceConfig,
    pub stability: Option<StabilityReport>,
    pub extras: Vec<Section>,
    /// Set when a property suite found a counterexample.
    pub failed: bool,
}

impl Report {
    pub fn new(subject: Section, tolerance: ToleranceConfig) -> Self {
        Report { subject, tolerance, stability: None, extras: Vec::new(), failed: false }
    }

    /// Appends a section unless it has no entries.
    pub fn extra(&mut self, section: Section) {
        if !section.entries.is_empty() {
            self.extras.push(section);
        }
    }

    /// Value of a dotted key, as rendered.
    pub fn lookup(&self, key: &str) -> Option<String> {
        self.lines().into_iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn sections(&self) -> Vec<Section> {
        let mut tolerance = Section::new("tolerance");
        let t = &self.tolerance;
        tolerance.real("rank_tol", t.rank_tol).real("psd_tol", t.psd_tol).count("grid_points", t.grid_points).real("match_tol", t.match_tol);
        let mut out = vec![self.subject.clone(), tolerance];
        if let Some(s) = &self.stability {
            let mut sec = Section::new("stability");
            sec.real("gamma", s.gamma)
                .flag("gamma_attained", s.gamma_attained)
                .real("hus_constant", s.hus_constant)
                .flag("stable", s.stable)
                .real("spectral_floor", s.spectral_floor)
                .push("kernel_dim", Value::Kernel(s.kernel_dim));
            out.push(sec);
        }
        out.extend(self.extras.iter().filter(|s| !s.entries.is_empty()).cloned());
        out
    }

    fn lines(&self) -> Vec<(String, String)> {
        self.sections()
            .iter()
            .flat_map(|s| s.entries.iter().map(move |(k, v)| (format!("{}.{k}", s.name), v.render())))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    KeyValue,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "human" => Ok(Format::Human),
            "keyvalue" => Ok(Format::KeyValue),
            _ => Err(format!("unknown format `{s}` (expected human or keyvalue)")),
        }
    }
}

pub fn render_report(r: &Report, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::KeyValue => {
            for (k, v) in r.lines() {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        Format::Human => {
            let sections = r.sections();
            let width = sections.iter().flat_map(|s| &s.entries).map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for s in &sections {
                let _ = writeln!(out, "{}", s.name);
                for (k, v) in &s.entries {
                    let _ = writeln!(out, "  {k:<width$}  {}", v.render());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut subject = Section::new("subject");
        subject.text("kind", "diagonal");
        let mut r = Report::new(subject, ToleranceConfig::default());
        r.stability = Some(StabilityReport {
            gamma: 0.0,
            gamma_attained: false,
            hus_constant: f64::INFINITY,
            stable: false,
            spectral_floor: 0.0,
            kernel_dim: KernelDim::Infinite,
        });
        r
    }

    #[test]
    fn keyvalue_lines() {
        let text = render_report(&sample(), Format::KeyValue);
        assert!(text.contains("stability.hus_constant = inf\n"));
        assert!(text.contains("stability.kernel_dim = inf\n"));
        assert!(text.starts_with("subject.kind = diagonal\ntolerance.rank_tol = 1e-10\n"));
    }

    #[test]
    fn empty_sections_are_dropped() {
        let mut r = sample();
        r.extra(Section::new("witness"));
        assert!(r.extras.is_empty());
        let text = render_report(&r, Format::Human);
        assert!(!text.contains("witness"));
        assert!(text.contains("\n  hus_constant    inf\n"));
    }
}
