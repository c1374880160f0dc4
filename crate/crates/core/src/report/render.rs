use std::fmt::Write as _;

use super::suite::{by_check, CheckResult, Format, Report};

pub const CSV_HEADER: [&str; 11] =
    ["id", "check", "kind", "N", "ell", "n", "predicted", "measured", "residual", "tolerance", "pass"];

/// Serialize a finished report. The output depends only on the report.
pub fn render_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Csv => render_csv(report),
        Format::Markdown => render_markdown(report).into_bytes(),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v:?}")).unwrap_or_default()
}

fn render_csv(report: &Report) -> Vec<u8> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for c in &report.cases {
        writer
            .write_record([
                c.id.clone(),
                c.check.to_string(),
                c.inputs.kind.to_string(),
                c.inputs.dim.to_string(),
                c.inputs.ell.to_string(),
                c.inputs.n.map(|n| n.to_string()).unwrap_or_default(),
                opt(c.predicted),
                opt(c.measured),
                opt(c.residual),
                format!("{:?}", c.tolerance),
                c.pass.to_string(),
            ])
            .expect("in-memory write");
    }
    writer.into_inner().expect("in-memory flush")
}

fn num(v: Option<f64>) -> String {
    match v {
        Some(v) if v == 0.0 || (1e-3..1e4).contains(&v.abs()) => format!("{v:.6}"),
        Some(v) => format!("{v:.3e}"),
        None => "-".into(),
    }
}

fn row(out: &mut String, c: &CheckResult) {
    let n = c.inputs.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
    let _ = writeln!(
        out,
        "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
        c.inputs.kind,
        c.inputs.dim,
        c.inputs.ell,
        n,
        num(c.predicted),
        num(c.measured),
        num(c.residual),
        num(Some(c.tolerance)),
        if c.pass { "pass" } else { "**FAIL**" }
    );
}

fn render_markdown(report: &Report) -> String {
    let mut out = String::new();
    let verdict = if report.pass() { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "# Verification report\n");
    let _ = writeln!(out, "Tool version {}. {} checks passed, {} failed: **{verdict}**.\n", report.version, report.summary.passed, report.summary.failed);
    for (check, rows) in by_check(report) {
        let passed = rows.iter().filter(|c| c.pass).count();
        let _ = writeln!(out, "## {} (`{check}`)\n", check.label());
        let _ = writeln!(out, "{passed} of {} cases pass.\n", rows.len());
        let _ = writeln!(out, "| kind | N | l | n | predicted | measured | residual | tolerance | result |");
        let _ = writeln!(out, "|---|---|---|---|---|---|---|---|---|");
        for c in rows {
            row(&mut out, c);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::suite::{run_suite, CaseConfig, Check, SuiteConfig};
    use crate::systems::SystemKind;

    fn report() -> Report {
        let cases = [SystemKind::Oscillator, SystemKind::Hydrogen, SystemKind::Mie]
            .into_iter()
            .map(|kind| {
                let mut c = CaseConfig::new(kind, 3, 0);
                c.nmax = 2;
                c.checks = vec![Check::Ladder, Check::Adjoint];
                c
            })
            .collect();
        run_suite(&SuiteConfig { format: None, cases }).unwrap()
    }

    #[test]
    fn csv_has_one_row_per_case_and_check() {
        let text = String::from_utf8(render_report(&report(), Format::Csv)).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = report();
        let b = report();
        for format in [Format::Json, Format::Csv, Format::Markdown] {
            assert_eq!(render_report(&a, format), render_report(&a, format));
            assert_eq!(render_report(&a, format), render_report(&b, format));
        }
    }

    #[test]
    fn json_ladder_details_carry_the_schema() {
        let json: serde_json::Value = serde_json::from_slice(&render_report(&report(), Format::Json)).unwrap();
        for key in ["version", "config", "cases", "summary"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        let case = &json["cases"][0];
        for key in ["id", "check", "inputs", "predicted", "measured", "residual", "tolerance", "pass"] {
            assert!(case.get(key).is_some(), "{key}");
        }
        let ladder = &case["details"]["data"][0];
        for key in ["kind", "N", "ell", "n", "direction", "predicted", "measured", "residual", "pass"] {
            assert!(ladder.get(key).is_some(), "{key}");
        }
    }
}
