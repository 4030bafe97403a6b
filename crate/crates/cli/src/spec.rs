//! Line-oriented operator spec files.
//!
//! ```text
//! # comments run to the end of the line
//! kind: diagonal
//! entries: 0, 2, 3
//! tail: power coeff=1 exponent=1
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hus_core::scalar::real;
use hus_core::zoo::{bernstein_nodal_matrix, bernstein_nodes, multiplication_sampled, paper_diagonal, PaperDiagonal, Phi, SzaszSpec};
use hus_core::{BlockMatrix, DiagonalOperator, MatrixOperator, OperatorModel, Scalar, TailRule, ToleranceConfig};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

type Parsed<T> = Result<T, ParseError>;

/// Tolerance fields a spec file may override.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ToleranceOverrides {
    pub rank_tol: Option<f64>,
    pub psd_tol: Option<f64>,
    pub grid_points: Option<usize>,
    pub match_tol: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, mut tol: ToleranceConfig) -> ToleranceConfig {
        tol.rank_tol = self.rank_tol.unwrap_or(tol.rank_tol);
        tol.psd_tol = self.psd_tol.unwrap_or(tol.psd_tol);
        tol.grid_points = self.grid_points.unwrap_or(tol.grid_points);
        tol.match_tol = self.match_tol.unwrap_or(tol.match_tol);
        tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZooSpec {
    Diagonal(PaperDiagonal),
    /// Nodal matrix of `B_n`; nodes default to `k/n`.
    Bernstein { n: u32, nodes: Option<Vec<f64>> },
    /// `M_n` with the candidate constant `N` to refute.
    Szasz { n: u32, big_n: f64 },
    Multiplication { phi: Phi, dim: usize },
}

impl ZooSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ZooSpec::Diagonal(d) => d.name(),
            ZooSpec::Bernstein { .. } => "bernstein",
            ZooSpec::Szasz { .. } => "szasz",
            ZooSpec::Multiplication { .. } => "multiplication",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecBody {
    Diagonal { entries: Vec<Scalar>, tail: TailRule },
    Matrix { rows: Vec<Vec<Scalar>> },
    /// Sub-spec paths for `A`, `B`, `C`, `E`, relative to the spec file.
    Block { files: [String; 4], mu: Scalar },
    Zoo(ZooSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpecFile {
    pub body: SpecBody,
    pub tolerances: ToleranceOverrides,
}

/// What a spec file denotes once sub-specs are loaded.
#[derive(Debug, Clone, PartialEq)]
pub enum Subject {
    Model(OperatorModel),
    Szasz(SzaszSpec),
}

impl OperatorSpecFile {
    pub fn kind(&self) -> &'static str {
        match &self.body {
            SpecBody::Diagonal { .. } => "diagonal",
            SpecBody::Matrix { .. } => "matrix",
            SpecBody::Block { .. } => "block",
            SpecBody::Zoo(_) => "zoo",
        }
    }

    /// Builds the operator, resolving block sub-specs against `base`.
    pub fn build(&self, base: &Path) -> Result<Subject, CliError> {
        self.build_at_depth(base, 0)
    }

    fn build_at_depth(&self, base: &Path, depth: usize) -> Result<Subject, CliError> {
        let model: OperatorModel = match &self.body {
            SpecBody::Diagonal { entries, tail } => DiagonalOperator::new(entries.clone(), tail.clone())?.into(),
            SpecBody::Matrix { rows } => MatrixOperator::from_rows(rows.clone())?.into(),
            SpecBody::Block { files, mu } => {
                if depth >= MAX_BLOCK_DEPTH {
                    return Err(CliError::Usage(format!("block specs nest deeper than {MAX_BLOCK_DEPTH} levels")));
                }
                let mut blocks = Vec::with_capacity(4);
                for file in files {
                    let path = base.join(file);
                    let sub = load(&path)?;
                    let dir = path.parent().unwrap_or(Path::new("."));
                    match sub.build_at_depth(dir, depth + 1)? {
                        Subject::Model(m) => blocks.push(m),
                        Subject::Szasz(_) => {
                            return Err(hus_core::Error::UnsupportedModel("Szász operators cannot be blocks".into()).into())
                        }
                    }
                }
                let [a, b, c, e]: [OperatorModel; 4] = blocks.try_into().expect("four blocks");
                BlockMatrix::new(a, b, c, e)?.with_mu(*mu).into()
            }
            SpecBody::Zoo(z) => match z {
                ZooSpec::Diagonal(d) => paper_diagonal(*d).into(),
                ZooSpec::Bernstein { n, nodes } => {
                    let nodes = nodes.clone().unwrap_or_else(|| bernstein_nodes(*n));
                    bernstein_nodal_matrix(*n, &nodes)?.into()
                }
                ZooSpec::Szasz { n, big_n } => return Ok(Subject::Szasz(SzaszSpec::new(*n, *big_n)?)),
                ZooSpec::Multiplication { phi, dim } => multiplication_sampled(phi, *dim)?.into(),
            },
        };
        Ok(Subject::Model(model))
    }

    /// Canonical text; `parse_spec(&s.render())` gives back `s`.
    pub fn render(&self) -> String {
        let mut out = format!("kind: {}\n", self.kind());
        match &self.body {
            SpecBody::Diagonal { entries, tail } => {
                if !entries.is_empty() {
                    let _ = writeln!(out, "entries: {}", join_scalars(entries, ", "));
                }
                let _ = writeln!(out, "tail: {}", render_tail(tail));
            }
            SpecBody::Matrix { rows } => {
                for row in rows {
                    let _ = writeln!(out, "rows: {}", join_scalars(row, ", "));
                }
            }
            SpecBody::Block { files, mu } => {
                for (key, file) in BLOCK_KEYS.iter().zip(files) {
                    let _ = writeln!(out, "{key}: {file}");
                }
                let _ = writeln!(out, "mu: {}", format_scalar(*mu));
            }
            SpecBody::Zoo(z) => {
                let _ = writeln!(out, "name: {}", z.name());
                match z {
                    ZooSpec::Diagonal(_) => {}
                    ZooSpec::Bernstein { n, nodes } => {
                        let _ = writeln!(out, "n: {n}");
                        if let Some(nodes) = nodes {
                            let _ = writeln!(out, "nodes: {}", join_reals(nodes));
                        }
                    }
                    ZooSpec::Szasz { n, big_n } => {
                        let _ = writeln!(out, "n: {n}\nN: {}", format_real(*big_n));
                    }
                    ZooSpec::Multiplication { phi, dim } => {
                        let _ = writeln!(out, "phi: {}\ndim: {dim}", render_phi(phi));
                    }
                }
            }
        }
        let t = &self.tolerances;
        for (key, value) in [("rank_tol", t.rank_tol), ("psd_tol", t.psd_tol), ("match_tol", t.match_tol)] {
            if let Some(v) = value {
                let _ = writeln!(out, "{key}: {}", format_real(v));
            }
        }
        if let Some(g) = t.grid_points {
            let _ = writeln!(out, "grid_points: {g}");
        }
        out
    }
}

const MAX_BLOCK_DEPTH: usize = 8;
const BLOCK_KEYS: [&str; 4] = ["a.file", "b.file", "c.file", "e.file"];
const TOLERANCE_KEYS: [&str; 4] = ["rank_tol", "psd_tol", "match_tol", "grid_points"];

/// Reads and parses a spec file.
pub fn load(path: &Path) -> Result<OperatorSpecFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_spec(&text).map_err(|error| CliError::Parse { path: Some(path.to_path_buf()), error })
}

/// Directory against which a spec's relative paths resolve.
pub fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

struct Fields<'a> {
    entries: Vec<Entry<'a>>,
    last_line: usize,
}

impl<'a> Fields<'a> {
    fn get(&self, key: &str) -> Option<&Entry<'a>> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn all(&self, key: &str) -> impl Iterator<Item = &Entry<'a>> {
        let key = key.to_owned();
        self.entries.iter().filter(move |e| e.key == key)
    }

    fn require(&self, key: &str, kind_line: usize) -> Parsed<&Entry<'a>> {
        self.get(key).ok_or_else(|| ParseError::new(kind_line, format!("missing `{key}:`")))
    }
}

fn split_lines(text: &str) -> Parsed<Fields<'_>> {
    let mut entries: Vec<Entry<'_>> = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) =
            content.split_once(':').ok_or_else(|| ParseError::new(line, format!("expected `key: value`, found `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(ParseError::new(line, "empty key"));
        }
        if key != "rows" && !seen.insert(key) {
            return Err(ParseError::new(line, format!("duplicate key `{key}`")));
        }
        entries.push(Entry { line, key, value });
    }
    Ok(Fields { entries, last_line })
}

/// Parses spec text into a spec file description.
pub fn parse_spec(text: &str) -> Parsed<OperatorSpecFile> {
    let fields = split_lines(text)?;
    let kind = fields.get("kind").ok_or_else(|| ParseError::new(fields.last_line.max(1), "missing `kind:`"))?;
    let allowed: &[&str] = match kind.value {
        "diagonal" => &["entries", "tail"],
        "matrix" => &["rows"],
        "block" => &["a.file", "b.file", "c.file", "e.file", "mu"],
        "zoo" => &["name", "n", "N", "nodes", "phi", "dim"],
        other => return Err(ParseError::new(kind.line, format!("unknown kind `{other}`"))),
    };
    for e in &fields.entries {
        if e.key != "kind" && !allowed.contains(&e.key) && !TOLERANCE_KEYS.contains(&e.key) {
            return Err(ParseError::new(e.line, format!("unknown key `{}` for kind {}", e.key, kind.value)));
        }
    }
    let body = match kind.value {
        "diagonal" => parse_diagonal(&fields, kind.line)?,
        "matrix" => parse_matrix(&fields, kind.line)?,
        "block" => parse_block(&fields, kind.line)?,
        _ => SpecBody::Zoo(parse_zoo(&fields, kind.line)?),
    };
    Ok(OperatorSpecFile { body, tolerances: parse_tolerances(&fields)? })
}

fn parse_tolerances(fields: &Fields<'_>) -> Parsed<ToleranceOverrides> {
    let positive = |key: &str| -> Parsed<Option<f64>> {
        fields
            .get(key)
            .map(|e| {
                let v = parse_real(e.value).map_err(|m| ParseError::new(e.line, m))?;
                if v > 0.0 {
                    Ok(v)
                } else {
                    Err(ParseError::new(e.line, format!("`{key}` must be positive")))
                }
            })
            .transpose()
    };
    let grid_points = fields
        .get("grid_points")
        .map(|e| match parse_count(e.value) {
            Ok(g) if g >= 2 => Ok(g),
            Ok(_) => Err(ParseError::new(e.line, "`grid_points` must be at least 2")),
            Err(m) => Err(ParseError::new(e.line, m)),
        })
        .transpose()?;
    Ok(ToleranceOverrides { rank_tol: positive("rank_tol")?, psd_tol: positive("psd_tol")?, grid_points, match_tol: positive("match_tol")? })
}

fn parse_diagonal(fields: &Fields<'_>, kind_line: usize) -> Parsed<SpecBody> {
    let entries = match fields.get("entries") {
        Some(e) if !e.value.is_empty() => parse_list(e.value, parse_scalar).map_err(|m| ParseError::new(e.line, m))?,
        _ => Vec::new(),
    };
    let tail = match fields.get("tail") {
        Some(e) => parse_tail(e.value).map_err(|m| ParseError::new(e.line, m))?,
        None if !entries.is_empty() => TailRule::Zero,
        None => return Err(ParseError::new(kind_line, "missing `tail:`")),
    };
    Ok(SpecBody::Diagonal { entries, tail })
}

fn parse_matrix(fields: &Fields<'_>, kind_line: usize) -> Parsed<SpecBody> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for e in fields.all("rows") {
        let row = parse_list(e.value, parse_scalar).map_err(|m| ParseError::new(e.line, m))?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(ParseError::new(e.line, format!("row has {} entries, expected {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::new(kind_line, "missing `rows:`"));
    }
    Ok(SpecBody::Matrix { rows })
}

fn parse_block(fields: &Fields<'_>, kind_line: usize) -> Parsed<SpecBody> {
    let mut files: [String; 4] = Default::default();
    for (slot, key) in files.iter_mut().zip(BLOCK_KEYS) {
        let e = fields.require(key, kind_line)?;
        if e.value.is_empty() {
            return Err(ParseError::new(e.line, format!("`{key}` needs a path")));
        }
        *slot = e.value.to_owned();
    }
    let mu = match fields.get("mu") {
        Some(e) => parse_scalar(e.value).map_err(|m| ParseError::new(e.line, m))?,
        None => real(0.0),
    };
    Ok(SpecBody::Block { files, mu })
}

fn parse_zoo(fields: &Fields<'_>, kind_line: usize) -> Parsed<ZooSpec> {
    let name = fields.require("name", kind_line)?;
    let params: &[&str] = match name.value {
        "bernstein" => &["n", "nodes"],
        "szasz" => &["n", "N"],
        "multiplication" => &["phi", "dim"],
        _ => &[],
    };
    for e in &fields.entries {
        if ["n", "N", "nodes", "phi", "dim"].contains(&e.key) && !params.contains(&e.key) {
            return Err(ParseError::new(e.line, format!("`{}` is not a parameter of {}", e.key, name.value)));
        }
    }
    let positive_int = |key: &str| -> Parsed<Option<u32>> {
        fields
            .get(key)
            .map(|e| match parse_count(e.value) {
                Ok(v) if v >= 1 && v <= u32::MAX as usize => Ok(v as u32),
                Ok(_) => Err(ParseError::new(e.line, format!("`{key}` must be a positive integer"))),
                Err(m) => Err(ParseError::new(e.line, m)),
            })
            .transpose()
    };
    Ok(match name.value {
        "bernstein" => {
            let n = positive_int("n")?.ok_or_else(|| ParseError::new(name.line, "missing `n:`"))?;
            let nodes = fields.get("nodes").map(|e| parse_list(e.value, parse_real).map_err(at(e.line))).transpose()?;
            ZooSpec::Bernstein { n, nodes }
        }
        "szasz" => {
            let n = positive_int("n")?.unwrap_or(1);
            let big_n = match fields.get("N") {
                Some(e) => parse_real(e.value).map_err(at(e.line))?,
                None => DEFAULT_SZASZ_N,
            };
            ZooSpec::Szasz { n, big_n }
        }
        "multiplication" => {
            let phi_entry = fields.require("phi", name.line)?;
            let phi = parse_phi(phi_entry.value).map_err(at(phi_entry.line))?;
            let dim_entry = fields.require("dim", name.line)?;
            let dim = parse_count(dim_entry.value).map_err(at(dim_entry.line))?;
            ZooSpec::Multiplication { phi, dim }
        }
        other => ZooSpec::Diagonal(other.parse().map_err(|_| ParseError::new(name.line, format!("unknown zoo name `{other}`")))?),
    })
}

fn at(line: usize) -> impl Fn(String) -> ParseError {
    move |m| ParseError::new(line, m)
}

/// Candidate constant refuted by a default Szász spec.
pub const DEFAULT_SZASZ_N: f64 = 10.0;

fn parse_phi(s: &str) -> Result<Phi, String> {
    let (head, rest) = s.split_once(char::is_whitespace).map(|(h, r)| (h, r.trim())).unwrap_or((s, ""));
    match head {
        "identity" if rest.is_empty() => Ok(Phi::IdentityOn01),
        "shifted" => Ok(Phi::Shifted(parse_real(rest)?)),
        "grid" => Ok(Phi::Grid(parse_list(rest, parse_scalar)?)),
        _ => Err(format!("expected `identity`, `shifted <c>` or `grid <values>`, found `{s}`")),
    }
}

fn render_phi(phi: &Phi) -> String {
    match phi {
        Phi::IdentityOn01 => "identity".into(),
        Phi::Shifted(c) => format!("shifted {}", format_real(*c)),
        Phi::Grid(v) => format!("grid {}", join_scalars(v, ", ")),
    }
}

/// Parses the `tail:` mini-grammar.
pub fn parse_tail(s: &str) -> Result<TailRule, String> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("cyclic") {
        let inner = inner.trim();
        let inner = inner
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| format!("cyclic rules need `[rule; rule; …]`, found `{inner}`"))?;
        let rules = inner.split(';').map(parse_simple_tail).collect::<Result<Vec<_>, _>>()?;
        return Ok(TailRule::Cyclic(rules));
    }
    parse_simple_tail(s)
}

fn parse_simple_tail(s: &str) -> Result<TailRule, String> {
    let mut words = s.split_whitespace();
    let rule = match words.next() {
        Some("zero") => TailRule::Zero,
        Some("constant") => TailRule::Constant(parse_scalar(words.next().ok_or("`constant` needs a value")?)?),
        Some("power") => {
            let (mut coeff, mut exponent) = (None, None);
            for w in words.by_ref() {
                let (k, v) = w.split_once('=').ok_or_else(|| format!("expected `key=value`, found `{w}`"))?;
                let slot_taken = match k {
                    "coeff" => coeff.replace(parse_scalar(v)?).is_some(),
                    "exponent" => exponent.replace(parse_real(v)?).is_some(),
                    _ => return Err(format!("unknown power parameter `{k}`")),
                };
                if slot_taken {
                    return Err(format!("duplicate power parameter `{k}`"));
                }
            }
            TailRule::Power(coeff.ok_or("`power` needs coeff=")?, exponent.ok_or("`power` needs exponent=")?)
        }
        Some("cyclic") => return Err("cyclic rules cannot nest".into()),
        Some(other) => return Err(format!("unknown tail rule `{other}`")),
        None => return Err("empty tail rule".into()),
    };
    match words.next() {
        Some(extra) => Err(format!("unexpected `{extra}` after tail rule")),
        None => Ok(rule),
    }
}

pub fn render_tail(rule: &TailRule) -> String {
    match rule {
        TailRule::Zero => "zero".into(),
        TailRule::Constant(c) => format!("constant {}", format_scalar(*c)),
        TailRule::Power(c, p) => format!("power coeff={} exponent={}", format_scalar(*c), format_real(*p)),
        TailRule::Cyclic(rules) => {
            format!("cyclic [{}]", rules.iter().map(render_tail).collect::<Vec<_>>().join("; "))
        }
    }
}

/// Head entries and tail of a diagonal in spec notation, when its tail is
/// still expressible as a rule.
pub fn describe_diagonal(d: &DiagonalOperator) -> String {
    let tail = d.tail_rule().map(|r| render_tail(&r)).unwrap_or_else(|| "symbolic".into());
    format!("entries [{}] tail {}", join_scalars(d.head(), ", "), tail)
}

fn parse_list<T>(s: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    if s.trim().is_empty() {
        return Err("empty list".into());
    }
    s.split(',').map(|x| item(x.trim())).collect()
}

fn parse_count(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("malformed integer `{}`", s.trim()))
}

/// A finite real number.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(format!("non-finite number `{s}`")),
        Err(_) => Err(format!("malformed number `{s}`")),
    }
}

/// A finite scalar written `a`, `bi` or `a+bi` (no spaces).
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    let malformed = || format!("malformed number `{s}`");
    let Some(body) = s.strip_suffix('i') else {
        return Ok(real(parse_real(s).map_err(|_| malformed())?));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => parse_real(t).map_err(|_| malformed()),
        }
    };
    match split {
        Some(k) => Ok(Scalar::new(parse_real(&body[..k]).map_err(|_| malformed())?, imag(&body[k..])?)),
        None => Ok(Scalar::new(0.0, imag(body)?)),
    }
}

/// Shortest text that reads back to the same `f64`; `inf` for `+∞`.
pub fn format_real(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn format_scalar(z: Scalar) -> String {
    if z.im == 0.0 {
        return format_real(z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", format_real(z.re), format_real(z.im.abs()))
}

pub fn join_scalars(v: &[Scalar], sep: &str) -> String {
    v.iter().map(|&z| format_scalar(z)).collect::<Vec<_>>().join(sep)
}

fn join_reals(v: &[f64]) -> String {
    v.iter().map(|&x| format_real(x)).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("3").unwrap(), real(3.0));
        assert_eq!(parse_scalar("1.5-0.5i").unwrap(), Scalar::new(1.5, -0.5));
        assert_eq!(parse_scalar("-2i").unwrap(), Scalar::new(0.0, -2.0));
        assert_eq!(parse_scalar("i").unwrap(), Scalar::new(0.0, 1.0));
        assert_eq!(parse_scalar("1e-3+2e+2i").unwrap(), Scalar::new(1e-3, 200.0));
        assert!(parse_scalar("zebra").is_err());
        assert!(parse_scalar("inf").is_err());
        assert_eq!(format_scalar(Scalar::new(1.0, -2.0)), "1-2i");
        assert_eq!(format_real(2.0), "2");
        assert_eq!(format_real(1e-10), "1e-10");
        assert_eq!(format_real(f64::INFINITY), "inf");
    }

    #[test]
    fn tails() {
        let rule = parse_tail("cyclic [power coeff=1 exponent=-1; power exponent=1 coeff=1]").unwrap();
        assert_eq!(rule, TailRule::Cyclic(vec![TailRule::power(1.0, -1.0), TailRule::power(1.0, 1.0)]));
        assert_eq!(parse_tail(&render_tail(&rule)).unwrap(), rule);
        assert!(parse_tail("cyclic [cyclic [zero]]").is_err());
        assert!(parse_tail("power coeff=1").is_err());
        assert!(parse_tail("constant 1 2").is_err());
    }

    #[test]
    fn duplicate_and_unknown_keys() {
        assert_eq!(parse_spec("kind: matrix\nrows: 1\nkind: matrix").unwrap_err().line, 3);
        assert_eq!(parse_spec("kind: diagonal\ntail: zero\ncolor: red").unwrap_err().line, 3);
        assert_eq!(parse_spec("kind: tensor").unwrap_err().line, 1);
        assert_eq!(parse_spec("# nothing\n\n").unwrap_err().message, "missing `kind:`");
        assert_eq!(parse_spec("kind: zoo\nname: szasz\nphi: identity").unwrap_err().line, 3);
    }
}
