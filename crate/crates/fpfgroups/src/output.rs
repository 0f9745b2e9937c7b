//! Report and table rendering: plain text, CSV and structured JSON.
//!
//! Timing lives in its own line, row or key so that two runs can be
//! compared after dropping it.

use std::fmt::Write as _;
use std::time::Duration;

use clap::ValueEnum;
use fpfgroups_core::report::{Measure, Status, VerificationReport};
use fpfgroups_core::suite::ExponentRow;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const TOOL: &str = "fpfgroups";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Structured,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Csv => "csv",
            Format::Structured => "json",
        }
    }
}

fn overall(r: &VerificationReport) -> &'static str {
    if r.count(Status::Finding) > 0 {
        "finding"
    } else if r.count(Status::Fail) > 0 {
        "fail"
    } else {
        "pass"
    }
}

fn measure_json(m: &Measure) -> Value {
    match m {
        Measure::Int(v) => json!(v),
        Measure::Ints(v) => json!(v),
        Measure::Bool(b) => json!(b),
        Measure::Text(s) => json!(s),
        Measure::Absent => Value::Null,
    }
}

fn timing_json(t: Option<Duration>) -> Value {
    match t {
        Some(d) => json!({ "elapsed_ms": d.as_millis() as u64 }),
        None => Value::Null,
    }
}

pub fn report_json(r: &VerificationReport, timing: Option<Duration>) -> Value {
    let mut measured = Map::new();
    for (k, v) in &r.measured {
        measured.insert(k.clone(), measure_json(v));
    }
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "status": c.status.as_str(), "details": c.details }))
        .collect();
    json!({
        "tool": TOOL,
        "version": VERSION,
        "subject": r.subject,
        "status": overall(r),
        "summary": {
            "pass": r.count(Status::Pass),
            "fail": r.count(Status::Fail),
            "skipped": r.count(Status::Skipped),
            "finding": r.count(Status::Finding),
        },
        "checks": checks,
        "measured": Value::Object(measured),
        "timing": timing_json(timing),
    })
}

fn report_text(r: &VerificationReport, timing: Option<Duration>) -> String {
    let mut s = String::new();
    writeln!(s, "subject: {}", r.subject).unwrap();
    writeln!(s, "tool: {TOOL} {VERSION}").unwrap();
    writeln!(
        s,
        "status: {} ({} pass, {} fail, {} skipped, {} finding)",
        overall(r),
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::Skipped),
        r.count(Status::Finding)
    )
    .unwrap();
    if !r.checks.is_empty() {
        writeln!(s, "checks:").unwrap();
        for c in &r.checks {
            writeln!(s, "  [{}] {}: {}", c.status, c.name, c.details).unwrap();
        }
    }
    if !r.measured.is_empty() {
        writeln!(s, "measured:").unwrap();
        for (k, v) in &r.measured {
            writeln!(s, "  {k} = {v}").unwrap();
        }
    }
    if let Some(t) = timing {
        writeln!(s, "timing: {} ms", t.as_millis()).unwrap();
    }
    s
}

fn csv_string(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn report_rows(r: &VerificationReport) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for c in &r.checks {
        rows.push(vec![r.subject.clone(), "check".into(), c.name.clone(), c.status.to_string(), c.details.clone()]);
    }
    for (k, v) in &r.measured {
        rows.push(vec![r.subject.clone(), "measure".into(), k.clone(), String::new(), v.to_string()]);
    }
    rows
}

fn header() -> Vec<String> {
    ["subject", "kind", "name", "status", "value"].iter().map(|s| s.to_string()).collect()
}

fn timing_row(subject: &str, t: Duration) -> Vec<String> {
    vec![subject.into(), "timing".into(), "elapsed_ms".into(), String::new(), t.as_millis().to_string()]
}

pub fn render_report(r: &VerificationReport, format: Format, timing: Option<Duration>) -> String {
    match format {
        Format::Text => report_text(r, timing),
        Format::Csv => {
            let mut rows = vec![header()];
            rows.extend(report_rows(r));
            rows.extend(timing.map(|t| timing_row(&r.subject, t)));
            csv_string(rows)
        }
        Format::Structured => pretty(&report_json(r, timing)),
    }
}

/// Several reports in one document, in the given order.
pub fn render_reports(reports: &[(VerificationReport, Duration)], format: Format, timed: bool) -> String {
    let t = |d: &Duration| timed.then_some(*d);
    match format {
        Format::Text => {
            let mut s = String::new();
            for (i, (r, d)) in reports.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                s.push_str(&report_text(r, t(d)));
            }
            s.push_str(&summary_text(reports.iter().map(|(r, _)| r)));
            s
        }
        Format::Csv => {
            let mut rows = vec![header()];
            for (r, d) in reports {
                rows.extend(report_rows(r));
                rows.extend(t(d).map(|d| timing_row(&r.subject, d)));
            }
            csv_string(rows)
        }
        Format::Structured => {
            let list: Vec<Value> = reports.iter().map(|(r, d)| report_json(r, t(d))).collect();
            pretty(&json!({ "tool": TOOL, "version": VERSION, "reports": list }))
        }
    }
}

pub fn summary_text<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> String {
    let mut s = String::from("summary:\n");
    let mut n = 0;
    for r in reports {
        n += 1;
        writeln!(
            s,
            "  {} {} ({} pass, {} fail, {} skipped, {} finding)",
            overall(r),
            r.subject,
            r.count(Status::Pass),
            r.count(Status::Fail),
            r.count(Status::Skipped),
            r.count(Status::Finding)
        )
        .unwrap();
    }
    if n == 0 {
        s.push_str("  no fixtures selected\n");
    }
    s
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct RowJson<'a> {
    family: &'a str,
    param: u32,
    fixture: &'a str,
    acting_type: &'a str,
    theorem: &'a str,
    order: usize,
    e: u64,
    exp_g: u64,
    exp_derived: u64,
    component_exps: [u64; 3],
    q2_e_max: u64,
    q2_e_lcm: u64,
    nilpotent: bool,
    derived_nilpotent: bool,
}

const TABLE_HEADER: [&str; 14] = [
    "family",
    "param",
    "fixture",
    "acting",
    "theorem",
    "order",
    "e",
    "exp_G",
    "exp_G'",
    "exp_G1",
    "exp_G2",
    "exp_G3",
    "q2_e_max",
    "q2_e_lcm",
];

fn table_cells(family: &str, param: u32, row: &ExponentRow) -> Vec<String> {
    vec![
        family.to_string(),
        param.to_string(),
        row.fixture.clone(),
        row.acting_type.name().to_string(),
        row.theorem.to_string(),
        row.order.to_string(),
        row.e.to_string(),
        row.exp_g.to_string(),
        row.exp_derived.to_string(),
        row.component_exps[0].to_string(),
        row.component_exps[1].to_string(),
        row.component_exps[2].to_string(),
        row.q2_max.to_string(),
        row.q2_lcm.to_string(),
    ]
}

pub fn render_exponent_table(family: &str, rows: &[(u32, ExponentRow)], format: Format) -> String {
    match format {
        Format::Text => {
            let mut cells = vec![TABLE_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
            cells.extend(rows.iter().map(|(p, r)| table_cells(family, *p, r)));
            let widths: Vec<usize> =
                (0..TABLE_HEADER.len()).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
            let mut s = String::new();
            for r in &cells {
                let line: Vec<String> = r.iter().zip(&widths).map(|(x, w)| format!("{x:<w$}")).collect();
                writeln!(s, "{}", line.join("  ").trim_end()).unwrap();
            }
            s
        }
        Format::Csv => {
            let mut all = vec![TABLE_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
            all.extend(rows.iter().map(|(p, r)| table_cells(family, *p, r)));
            csv_string(all)
        }
        Format::Structured => {
            let list: Vec<RowJson<'_>> = rows
                .iter()
                .map(|(p, r)| RowJson {
                    family,
                    param: *p,
                    fixture: &r.fixture,
                    acting_type: r.acting_type.name(),
                    theorem: r.theorem,
                    order: r.order,
                    e: r.e,
                    exp_g: r.exp_g,
                    exp_derived: r.exp_derived,
                    component_exps: r.component_exps,
                    q2_e_max: r.q2_max,
                    q2_e_lcm: r.q2_lcm,
                    nilpotent: r.nilpotent,
                    derived_nilpotent: r.derived_nilpotent,
                })
                .collect();
            pretty(&json!({ "tool": TOOL, "version": VERSION, "rows": list }))
        }
    }
}

/// Drops timing from rendered output: `timing:` lines, `timing` CSV rows and
/// `timing` JSON keys.
pub fn strip_timing(text: &str, format: Format) -> String {
    match format {
        Format::Structured => match serde_json::from_str::<Value>(text) {
            Ok(mut v) => {
                remove_timing(&mut v);
                pretty(&v)
            }
            Err(_) => text.to_string(),
        },
        Format::Text => text.lines().filter(|l| !l.starts_with("timing:")).map(|l| format!("{l}\n")).collect(),
        Format::Csv => text.lines().filter(|l| !l.split(',').nth(1).is_some_and(|k| k == "timing")).map(|l| format!("{l}\n")).collect(),
    }
}

fn remove_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("timing");
            m.values_mut().for_each(remove_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(remove_timing),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new("demo");
        r.check("a", true, "fine, with a comma");
        r.skip("b", "n/a");
        r.measure("profile", vec![2u64, 1]);
        r.measure("class", Option::<usize>::None);
        r
    }

    #[test]
    fn text_and_timing() {
        let r = sample();
        let t1 = render_report(&r, Format::Text, Some(Duration::from_millis(5)));
        let t2 = render_report(&r, Format::Text, Some(Duration::from_millis(99)));
        assert_ne!(t1, t2);
        assert_eq!(strip_timing(&t1, Format::Text), strip_timing(&t2, Format::Text));
        assert!(t1.contains("  profile = (2,1)"));
        assert!(t1.contains("status: pass (1 pass, 0 fail, 1 skipped, 0 finding)"));
    }

    #[test]
    fn csv_quotes_and_strips() {
        let r = sample();
        let c = render_report(&r, Format::Csv, Some(Duration::from_millis(7)));
        assert!(c.contains("\"fine, with a comma\""));
        let stripped = strip_timing(&c, Format::Csv);
        assert!(!stripped.contains("elapsed_ms"));
        assert_eq!(stripped.lines().count(), 5);
    }

    #[test]
    fn structured_keeps_order() {
        let r = sample();
        let s = render_report(&r, Format::Structured, Some(Duration::from_millis(3)));
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["measured"]["profile"], json!([2, 1]));
        assert_eq!(v["measured"]["class"], Value::Null);
        assert_eq!(v["timing"]["elapsed_ms"], 3);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys[0], "tool");
        assert!(!strip_timing(&s, Format::Structured).contains("elapsed_ms"));
    }
}
