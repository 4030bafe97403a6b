//! Spec files, reports and the `hus` command-line surface.

pub mod analyze;
pub mod draw;
pub mod error;
pub mod report;
pub mod spec;
pub mod verify;

pub use analyze::{run_analyze, run_witness, AnalyzeOptions};
pub use error::CliError;
pub use report::{render_report, Format, Report, Section, Value};
pub use spec::{load, parse_spec, OperatorSpecFile, ParseError, SpecBody, Subject, ZooSpec};
pub use verify::{run_verify, Theorem, VerifyOptions};
