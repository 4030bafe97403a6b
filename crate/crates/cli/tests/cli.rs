use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use hus_cli::error::{EXIT_COUNTEREXAMPLE, EXIT_HYPOTHESIS, EXIT_NUMERIC, EXIT_OK, EXIT_PARSE};
use hus_cli::spec::ToleranceOverrides;
use hus_cli::{draw, parse_spec, render_report, run_verify, CliError, Format, OperatorSpecFile, SpecBody, Theorem, VerifyOptions, ZooSpec};
use hus_core::scalar::real;
use hus_core::zoo::{PaperDiagonal, Phi};
use hus_core::{Error, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hus")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> u8 {
    out.status.code().expect("exited normally") as u8
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8")
}

/// A fresh scratch directory holding the given files.
fn scratch(files: &[(&str, &str)]) -> PathBuf {
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("hus-cli-{}-{}", std::process::id(), NEXT.fetch_add(1, Ordering::Relaxed)));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, text) in files {
        std::fs::write(dir.join(name), text).unwrap();
    }
    dir
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

fn round_trips(spec: &OperatorSpecFile) {
    let text = spec.render();
    let back = parse_spec(&text).unwrap_or_else(|e| panic!("{e} in\n{text}"));
    assert_eq!(&back, spec, "{text}");
    assert_eq!(back.build(Path::new(".")).unwrap(), spec.build(Path::new(".")).unwrap());
}

fn zoo(z: ZooSpec) -> OperatorSpecFile {
    OperatorSpecFile { body: SpecBody::Zoo(z), tolerances: ToleranceOverrides::default() }
}

#[test]
fn zoo_specs_round_trip() {
    for d in PaperDiagonal::ALL {
        round_trips(&zoo(ZooSpec::Diagonal(d)));
    }
    round_trips(&zoo(ZooSpec::Bernstein { n: 6, nodes: None }));
    round_trips(&zoo(ZooSpec::Bernstein { n: 2, nodes: Some(vec![0.0, 0.3, 1.0]) }));
    round_trips(&zoo(ZooSpec::Szasz { n: 3, big_n: 20.0 }));
    for phi in [Phi::IdentityOn01, Phi::Shifted(1.5), Phi::Grid(vec![real(1.0), Scalar::new(0.5, -2.0), real(-3.0)])] {
        round_trips(&zoo(ZooSpec::Multiplication { phi, dim: 3 }));
    }
}

#[test]
fn random_specs_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..300 {
        let d = draw::diagonal(&mut rng);
        let tail = d.tail_rule().expect("drawn diagonals keep their rule");
        let mut spec = OperatorSpecFile {
            body: SpecBody::Diagonal { entries: d.head().to_vec(), tail },
            tolerances: ToleranceOverrides::default(),
        };
        if i % 3 == 0 {
            spec.tolerances.rank_tol = Some(1e-9 / (1 + i) as f64);
            spec.tolerances.grid_points = Some(11 + i);
        }
        round_trips(&spec);

        let m = draw::matrix(&mut rng, 6);
        let rows = (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect();
        round_trips(&OperatorSpecFile { body: SpecBody::Matrix { rows }, tolerances: ToleranceOverrides::default() });
    }
}

#[test]
fn block_specs_round_trip() {
    let spec = OperatorSpecFile {
        body: SpecBody::Block {
            files: ["a.spec".into(), "sub/b.spec".into(), "c.spec".into(), "e.spec".into()],
            mu: Scalar::new(0.25, -1.0),
        },
        tolerances: ToleranceOverrides { match_tol: Some(1e-8), ..Default::default() },
    };
    assert_eq!(parse_spec(&spec.render()).unwrap(), spec);
}

#[test]
fn verify_reports_are_reproducible() {
    let opts = VerifyOptions { seed: 9, draws: 40 };
    for theorem in Theorem::ALL {
        let a = render_report(&run_verify(theorem, &[], &opts).unwrap(), Format::KeyValue);
        let b = render_report(&run_verify(theorem, &[], &opts).unwrap(), Format::KeyValue);
        assert_eq!(a, b, "{}", theorem.name());
    }
    let first = stdout(&hus(&["verify", "power", "--seed", "3", "--draws", "50", "--format", "keyvalue"]));
    let second = stdout(&hus(&["verify", "power", "--seed", "3", "--draws", "50", "--format", "keyvalue"]));
    assert_eq!(first, second);
    assert!(first.contains("verify.seed = 3\n"));
}

#[test]
fn analyze_kernel_plus_n() {
    let dir = scratch(&[("k.spec", "kind: diagonal\nentries: 0, 2, 3\ntail: power coeff=1 exponent=1\n")]);
    let out = hus(&["analyze", &path(&dir, "k.spec"), "--format", "keyvalue"]);
    assert_eq!(code(&out), EXIT_OK);
    let text = stdout(&out);
    assert!(text.contains("stability.gamma = 2\n"), "{text}");
    assert!(text.contains("stability.spectral_floor = 4\n"), "{text}");
    assert!(text.contains("floor.holds = true\n"), "{text}");
}

#[test]
fn unstable_constant_is_inf() {
    let dir = scratch(&[("u.spec", "kind: zoo\nname: inverse_of_stable_n\n")]);
    let out = hus(&["analyze", &path(&dir, "u.spec"), "--format", "keyvalue"]);
    assert_eq!(code(&out), EXIT_OK);
    assert!(stdout(&out).contains("stability.hus_constant = inf\n"));
    assert!(stdout(&out).contains("stability.stable = false\n"));
}

#[test]
fn identity_matrix_has_gamma_one() {
    let dir = scratch(&[("i.spec", "kind: matrix\nrows: 1, 0, 0\nrows: 0, 1, 0\nrows: 0, 0, 1\n")]);
    let out = hus(&["analyze", &path(&dir, "i.spec"), "--format", "keyvalue"]);
    assert_eq!(code(&out), EXIT_OK);
    assert!(stdout(&out).contains("stability.gamma = 1\n"));
}

#[test]
fn human_format_groups_sections() {
    let dir = scratch(&[("m.spec", "kind: zoo\nname: mixed_unstable\n")]);
    let text = stdout(&hus(&["analyze", &path(&dir, "m.spec")]));
    assert!(text.lines().any(|l| l.trim_end() == "stability"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("  gamma") && l.trim_end().ends_with(" 0")), "{text}");
}

#[test]
fn witness_reports_the_inequality() {
    let dir = scratch(&[("k.spec", "kind: diagonal\nentries: 0, 2, 3\ntail: power coeff=1 exponent=1\n")]);
    let out = hus(&["witness", &path(&dir, "k.spec"), "--x", "1,-1,2i", "--format", "keyvalue"]);
    assert_eq!(code(&out), EXIT_OK, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("witness.x0 = 1,0,0\n"), "{text}");
    assert!(text.contains("witness.holds = true\n"), "{text}");
}

#[test]
fn malformed_numbers_exit_one_with_the_line() {
    let dir = scratch(&[("bad.spec", "kind: diagonal\nentries: zebra\n")]);
    let out = hus(&["analyze", &path(&dir, "bad.spec")]);
    assert_eq!(code(&out), EXIT_PARSE);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn parse_errors_carry_line_numbers() {
    let err = |text: &str| parse_spec(text).unwrap_err().line;
    assert_eq!(err("kind: diagonal\nentries: zebra"), 2);
    assert_eq!(err("kind: diagonal\n# note\ntail: zero\ntail: zero\n"), 4);
    assert_eq!(err("kind: diagonal\ntail: zero\ncolour: red\n"), 3);
    assert_eq!(err("kind: tensor\n"), 1);
    assert_eq!(err("kind: diagonal\ntail: power coeff=1\n"), 2);
}

#[test]
fn usage_and_io_errors_exit_one() {
    assert_eq!(code(&hus(&["analyze", "/nonexistent/hus/spec"])), EXIT_PARSE);
    assert_eq!(code(&hus(&["verify", "no_such_theorem"])), EXIT_PARSE);
    assert_eq!(code(&hus(&["verify", "power", "--draws", "0"])), EXIT_PARSE);
    assert_eq!(code(&hus(&["frobnicate"])), EXIT_PARSE);
    assert_eq!(code(&hus(&["--help"])), EXIT_OK);
}

#[test]
fn violated_domination_exits_two_naming_it() {
    let dir = scratch(&[
        ("a.spec", "kind: diagonal\ntail: constant 1\n"),
        ("c.spec", "kind: diagonal\ntail: power coeff=1 exponent=1\n"),
        ("block.spec", "kind: block\na.file: a.spec\nb.file: a.spec\nc.file: c.spec\ne.file: a.spec\n"),
    ]);
    let out = hus(&["verify", "schur_equiv", "--spec", &path(&dir, "block.spec")]);
    assert_eq!(code(&out), EXIT_HYPOTHESIS);
    assert!(stderr(&out).contains("‖Cx‖ ≤ a‖Ax‖"), "{}", stderr(&out));
}

#[test]
fn zero_operator_is_rejected() {
    let dir = scratch(&[("z.spec", "kind: diagonal\nentries: 0, 0\n")]);
    assert_eq!(code(&hus(&["analyze", &path(&dir, "z.spec")])), EXIT_HYPOTHESIS);
}

#[test]
fn numeric_failures_map_to_three() {
    assert_eq!(CliError::from(Error::NumericallyZero).exit_code(), EXIT_NUMERIC);
    assert_eq!(CliError::from(Error::NonConvergent("series".into())).exit_code(), EXIT_NUMERIC);
}

#[test]
fn counterexamples_exit_four_with_the_report() {
    let dir = scratch(&[
        ("a.spec", "kind: diagonal\ntail: constant 3\n"),
        ("b.spec", "kind: diagonal\ntail: constant 1\n"),
        ("c.spec", "kind: diagonal\ntail: power coeff=0.7 exponent=-1\n"),
        ("block.spec", "kind: block\na.file: a.spec\nb.file: b.spec\nc.file: c.spec\ne.file: a.spec\nmu: 0.3\nmatch_tol: 1e-300\n"),
    ]);
    let out = hus(&["verify", "schur_equiv", "--spec", &path(&dir, "block.spec"), "--format", "keyvalue"]);
    assert_eq!(code(&out), EXIT_COUNTEREXAMPLE);
    let text = stdout(&out);
    assert!(text.contains("verify.verdict = fail\n"), "{text}");
    assert!(text.contains("suite.given.counterexample = "), "{text}");
}

#[test]
fn zoo_list_names_everything() {
    let out = hus(&["zoo", "list"]);
    assert_eq!(code(&out), EXIT_OK);
    let text = stdout(&out);
    for name in ["stable_n", "inverse_of_stable_n", "shifted_weighted", "mixed_unstable", "kernel_plus_n", "bernstein", "szasz", "multiplication"] {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(name)), "{name}");
    }
}
