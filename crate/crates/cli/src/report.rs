//! Report assembly: every subcommand produces one `Outcome` carrying a
//! human text rendering, a machine document, and the number of refuted
//! verdicts. The machine document holds only verdict data (ids, digests,
//! witnesses, counts), never timing, so a rerun with the same inputs is
//! byte identical.

use bowtie_core::verify::{Counterexample, InstanceSpec, StatementReport, SweepReport};
use bowtie_core::{Verdict, Witness};
use serde_json::{json, Value};

pub struct Outcome {
    pub text: String,
    pub machine: Value,
    pub failures: u64,
}

impl Outcome {
    pub fn new(command: &str, text: String, body: Value, failures: u64) -> Self {
        let mut doc = json!({
            "format": "bowtie.report.v1",
            "command": command,
            "holds": failures == 0,
        });
        if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
            doc.extend(body);
        }
        Outcome {
            text,
            machine: doc,
            failures,
        }
    }
}

/// Stable 64-bit content digest of a serialized instance description.
pub fn digest_spec(spec: &InstanceSpec) -> String {
    let json = serde_json::to_string(spec).expect("instance specs serialize");
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in json.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

pub fn witness_value(w: &Witness) -> Value {
    let roles: Vec<&str> = w.0.iter().map(|&(role, _)| role).collect();
    json!({ "roles": roles, "indices": w.indices() })
}

pub fn verdict_value(v: &Verdict, rendered: Option<String>) -> Value {
    json!({
        "holds": v.holds,
        "witness": v.witness.as_ref().map(witness_value),
        "witness_text": rendered,
    })
}

pub fn yes_no(holds: bool) -> &'static str {
    if holds {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned column layout with a two-space gutter.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: Vec<S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<S: Into<String>>(&mut self, cells: Vec<S>) {
        let cells: Vec<String> = cells.into_iter().map(Into::into).collect();
        assert_eq!(cells.len(), self.header.len(), "ragged table row");
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let emit = |out: &mut String, cells: &[String]| {
            let mut line = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                if i + 1 < cells.len() {
                    for _ in cell.len()..*w {
                        line.push(' ');
                    }
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        };
        emit(&mut out, &self.header);
        for row in &self.rows {
            emit(&mut out, row);
        }
        out
    }
}

fn counterexample_value(c: &Counterexample) -> Value {
    json!({
        "statement": c.statement.as_str(),
        "digest": digest_spec(&c.instance),
        "instance": serde_json::to_value(&c.instance).expect("instance specs serialize"),
        "detail": c.detail,
        "witness": c.witness.as_ref().map(witness_value),
    })
}

fn statement_value(s: &StatementReport) -> Value {
    json!({
        "statement": s.id.as_str(),
        "description": s.id.description(),
        "instances": s.instances,
        "cases": s.cases,
        "hypotheses_met": s.hypotheses_met,
        "confirmed": s.confirmed,
        "refuted": s.counterexamples.len(),
        "iterations": s.iters,
        "counterexamples": s.counterexamples.iter().map(counterexample_value).collect::<Vec<_>>(),
    })
}

pub fn sweep_value(report: &SweepReport) -> Value {
    json!({
        "instances": report.instances,
        "counterexamples": report.total_counterexamples(),
        "statements": report.statements.iter().map(statement_value).collect::<Vec<_>>(),
    })
}

pub fn sweep_text(report: &SweepReport, heading: &str) -> String {
    let mut out = format!(
        "{heading}: {} instances, {} statements, {} counterexamples\n",
        report.instances,
        report.statements.len(),
        report.total_counterexamples()
    );
    let mut table = Table::new(vec![
        "statement",
        "cases",
        "met",
        "confirmed",
        "refuted",
        "iterations",
    ]);
    for s in &report.statements {
        table.row(vec![
            s.id.as_str().to_string(),
            s.cases.to_string(),
            s.hypotheses_met.to_string(),
            s.confirmed.to_string(),
            s.counterexamples.len().to_string(),
            s.iters.to_string(),
        ]);
    }
    out.push_str(&table.render());
    for s in &report.statements {
        for c in &s.counterexamples {
            out.push_str(&format!(
                "counterexample {} on instance {} ({}):\n  {}\n",
                c.statement.as_str(),
                digest_spec(&c.instance),
                c.instance.label(),
                c.detail
            ));
        }
    }
    out
}
