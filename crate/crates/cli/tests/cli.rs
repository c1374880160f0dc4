use std::fs;
use std::process::{Command, Output};

fn su11(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su11")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn algebra_verify_passes() {
    let o = su11(&["algebra", "verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6, "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn commutator_prints_canonical_form() {
    let o = su11(&["algebra", "commutator", "D", "x^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2*x");
}

#[test]
fn parse_errors_exit_with_two() {
    let o = su11(&["algebra", "commutator", "x*(", "D"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(su11(&["ladder", "verify", "--system", "nope", "--dim", "3", "--l", "0"]).status.code(), Some(2));
    assert_eq!(su11(&["spectrum"]).status.code(), Some(2));
}

#[test]
fn invalid_system_parameters_exit_with_two() {
    let o = su11(&["ladder", "verify", "--system", "oscillator", "--dim", "1", "--l", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn factorize_reports_zero_residuals() {
    let o = su11(&["factorize", "--system", "hydrogen"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Upper") && text.contains("Lower"), "{text}");
    assert!(text.contains("identity residual:  0"), "{text}");
}

#[test]
fn ladder_verify_passes_and_fails_on_tolerance() {
    let args = ["ladder", "verify", "--system", "mie", "--dim", "3", "--l", "1", "--B", "1", "--nmax", "3"];
    let o = su11(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 2 + 8);

    let mut strict = args.to_vec();
    strict.extend(["--tol", "1e-300"]);
    assert_eq!(su11(&strict).status.code(), Some(1));
}

#[test]
fn spectrum_matches_levels() {
    let o = su11(&["spectrum", "--system", "oscillator", "--dim", "3", "--l", "1", "--points", "800"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn suite_from_config_writes_each_format() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("suite.toml");
    fs::write(
        &config,
        "[[case]]\nkind = \"pseudo_harmonic\"\nN = 3\nell = 0\nB = 1.0\nnmax = 3\ngrid = { points = 400 }\n",
    )
    .unwrap();
    for (format, marker) in [("json", "\"summary\""), ("csv", "id,check,kind"), ("markdown", "# Verification report")] {
        let out = dir.path().join(format!("report.{format}"));
        let o = su11(&[
            "suite",
            "run",
            "--config",
            config.to_str().unwrap(),
            "--format",
            format,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let text = fs::read_to_string(&out).unwrap();
        assert!(text.contains(marker), "{format}: {text}");
    }
}

#[test]
fn suite_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    fs::write(&config, "[[case]]\nkind = \"hydrogen\"\nN = 1\nell = 0\n").unwrap();
    assert_eq!(su11(&["suite", "run", "--config", config.to_str().unwrap()]).status.code(), Some(2));
}
