use clap::ValueEnum;
use hyperchroma::harness::{overall_status, VerificationReport, SCHEMA_VERSION};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[value(name = "md")]
    Markdown,
    Csv,
    Json,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn markdown(&self) -> String {
        let esc = |s: &str| s.replace('|', "\\|").replace('\n', " ");
        let mut out = format!("| {} |\n", self.headers.join(" | "));
        out.push_str(&format!("|{}\n", "---|".repeat(self.headers.len())));
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| esc(c)).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}

/// A command result in all three renderings.
pub struct Document {
    pub json: Value,
    pub table: Table,
    pub markdown: String,
}

impl Document {
    /// A titled key/value document.
    pub fn simple(title: &str, json: Value, table: Table) -> Self {
        let markdown = format!("## {title}\n\n{}", table.markdown());
        Document {
            json,
            table,
            markdown,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => self.markdown.clone(),
            Format::Csv => self.table.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json serializes");
                s.push('\n');
                s
            }
        }
    }
}

pub fn reports_document(reports: &[VerificationReport], seed: Option<u64>) -> Document {
    let status = overall_status(reports);
    let mut j = json!({
        "schemaVersion": SCHEMA_VERSION,
        "status": status,
        "reports": reports,
    });
    if let Some(seed) = seed {
        j["seed"] = json!(seed);
    }
    let mut table = Table::new(&[
        "instance", "claim", "k", "check", "passed", "detail", "status",
    ]);
    let mut md = format!("# Verification: {status}\n\n");
    for r in reports {
        md.push_str(&format!(
            "## {} on `{}`: {}\n\n",
            r.claim, r.instance, r.status
        ));
        let mut t = Table::new(&["check", "k", "passed", "detail"]);
        for c in &r.checks {
            let k = c.k.map(|k| k.to_string()).unwrap_or_default();
            table.row(vec![
                r.instance.clone(),
                r.claim.to_string(),
                k.clone(),
                c.name.clone(),
                c.passed.to_string(),
                c.detail.clone(),
                r.status.to_string(),
            ]);
            t.row(vec![
                c.name.clone(),
                k,
                c.passed.to_string(),
                c.detail.clone(),
            ]);
        }
        if r.checks.is_empty() {
            table.row(vec![
                r.instance.clone(),
                r.claim.to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                r.status.to_string(),
            ]);
        } else {
            md.push_str(&t.markdown());
            md.push('\n');
        }
        for n in &r.notes {
            md.push_str(&format!("- {n}\n"));
        }
        if !r.notes.is_empty() {
            md.push('\n');
        }
    }
    Document {
        json: j,
        table,
        markdown: md,
    }
}
