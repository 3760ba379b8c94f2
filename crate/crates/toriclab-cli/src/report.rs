//! Output plumbing shared by the subcommands: one-line JSON, CSV with
//! minimal quoting, and key/value text for people. Machine output never
//! includes timing, so identical inputs give byte-identical stdout.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub passed: bool,
}

impl VerificationReport {
    /// Sorts cases by name and records whether every one passed.
    pub fn new(suite: &str, seed: u64, mut cases: Vec<CaseResult>) -> VerificationReport {
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = cases.iter().all(|c| c.passed);
        VerificationReport { suite: suite.to_string(), seed, cases, passed }
    }
}

/// Quotes a CSV field only when it contains a comma, quote, or newline.
pub fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

pub fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("report serializes"));
}

/// Key/value rows as aligned-enough human text, one `key: value` per line.
pub fn print_kv_human(rows: &[(&str, String)]) {
    for (key, value) in rows {
        println!("{key}: {value}");
    }
}

/// The same key/value rows as a two-column CSV table.
pub fn print_kv_csv(rows: &[(&str, String)]) {
    println!("key,value");
    for (key, value) in rows {
        println!("{},{}", csv_field(key), csv_field(value));
    }
}

pub fn print_verification(report: &VerificationReport, format: Format) {
    match format {
        Format::Json => print_json(report),
        Format::Csv => {
            println!("suite,seed,name,passed,detail");
            for c in &report.cases {
                println!(
                    "{},{},{},{},{}",
                    csv_field(&report.suite),
                    report.seed,
                    csv_field(&c.name),
                    c.passed,
                    csv_field(&c.detail)
                );
            }
        }
        Format::Human => {
            println!("suite: {}", report.suite);
            println!("seed: {}", report.seed);
            for c in &report.cases {
                let tag = if c.passed { "ok  " } else { "FAIL" };
                println!("{tag} {} ({})", c.name, c.detail);
            }
            let good = report.cases.iter().filter(|c| c.passed).count();
            println!("passed {good} of {} cases", report.cases.len());
        }
    }
}
