//! `toriclab`: lattice polytopes, Minkowski lengths, and toric codes from
//! the command line.
//!
//! Exit codes: 0 on success, 1 when a budget stops a computation or a
//! verification suite fails, 2 for unusable input. Machine output (`--json`,
//! `--csv`) is byte-identical across runs and thread counts; timing goes to
//! stderr only.

mod recognize;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use toriclab::ffield::FieldSpec;
use toriclab::minklen::{
    enumerate_maximal_decompositions, minkowski_length, MinkError, SearchBudget,
};
use toriclab::polytope::parse_polytope;
use toriclab::toric::{
    build_code, min_distance_exhaustive, predicted_min_dist_special_quad,
    predicted_min_dist_staircase, predicted_min_dist_zonotope, CodeReport, ToricError,
    DEFAULT_STEP_BUDGET,
};

use recognize::{recognize, Shape};
use report::{csv_field, print_json, print_kv_csv, print_kv_human, print_verification, Format};

#[derive(Parser)]
#[command(
    name = "toriclab",
    version,
    about = "Lattice polytopes, Minkowski lengths, and toric codes over small fields"
)]
struct Cli {
    /// One-line JSON on stdout instead of human text
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// CSV on stdout instead of human text
    #[arg(long, global = true)]
    csv: bool,

    /// Settings file with key=value lines; keys: budget, seed, threads
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Step budget for exhaustive distance scans
    /// [precedence: this flag, then TORICLAB_BUDGET, then the config file]
    #[arg(long, global = true, value_name = "STEPS")]
    budget: Option<u64>,

    /// Seed for the randomized parts of verification suites
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,

    /// Worker threads for the distance scan; 0 keeps the rayon default
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a polytope and report combinatorics plus Minkowski length
    Poly {
        /// Polytope expression, e.g. "zono:1,0,1" or "verts:(0,0);(2,1);(1,2)"
        #[arg(long, value_name = "EXPR")]
        poly: String,

        /// Also list every maximal zonotope decomposition
        #[arg(long)]
        decompositions: bool,

        /// Refuse polytopes with more lattice points than this
        #[arg(long, value_name = "N", default_value_t = 120)]
        max_points: usize,

        /// Refuse searches with more candidate directions than this
        #[arg(long, value_name = "N", default_value_t = 64)]
        max_directions: usize,
    },

    /// Build the toric code of a polytope and compute its minimum distance
    Code {
        /// Polytope expression defining the monomial basis
        #[arg(long, value_name = "EXPR")]
        poly: String,

        /// Field size, a prime power up to 64
        #[arg(long)]
        q: u32,

        /// exhaustive scans every codeword; predict uses the closed forms
        #[arg(long, value_enum, default_value_t = Method::Exhaustive)]
        method: Method,
    },

    /// Describe a finite field F_q
    Field {
        /// Field size, a prime power up to 64
        #[arg(long)]
        q: u32,
    },

    /// Run a verification suite; any failed case exits with code 1
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exhaustive,
    Predict,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Minkowski,
    Mindist,
    Staircase,
    Vandermonde,
    Boundary,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn refused(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn mink_failure(e: MinkError) -> Failure {
    match e {
        MinkError::TooManyLatticePoints { .. } | MinkError::TooManyDirections { .. } => {
            refused(e.to_string())
        }
        _ => usage(e.to_string()),
    }
}

fn toric_failure(e: ToricError) -> Failure {
    match e {
        ToricError::BudgetExceeded { .. } => refused(e.to_string()),
        _ => usage(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Settings {
    budget: u64,
    seed: u64,
    threads: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { budget: DEFAULT_STEP_BUDGET, seed: 0, threads: 0 }
    }
}

fn parse_setting<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, Failure> {
    value.parse().map_err(|_| usage(format!("{key} wants a nonnegative integer, got '{value}'")))
}

fn apply_config_text(text: &str, settings: &mut Settings) -> Result<(), Failure> {
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(usage(format!("config line {}: expected key=value, got '{line}'", index + 1)));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "budget" => settings.budget = parse_setting(key, value)?,
            "seed" => settings.seed = parse_setting(key, value)?,
            "threads" => settings.threads = parse_setting(key, value)?,
            _ => return Err(usage(format!("config line {}: unknown key '{key}'", index + 1))),
        }
    }
    Ok(())
}

/// Defaults, then the config file, then TORICLAB_BUDGET, then flags, so
/// later sources win.
fn resolve_settings(cli: &Cli) -> Result<Settings, Failure> {
    let mut settings = Settings::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        apply_config_text(&text, &mut settings)?;
    }
    if let Ok(value) = std::env::var("TORICLAB_BUDGET") {
        settings.budget = parse_setting("TORICLAB_BUDGET", value.trim())?;
    }
    if let Some(budget) = cli.budget {
        settings.budget = budget;
    }
    if let Some(seed) = cli.seed {
        settings.seed = seed;
    }
    if let Some(threads) = cli.threads {
        settings.threads = threads;
    }
    Ok(settings)
}

#[derive(Serialize)]
struct PolyReport {
    polytope: String,
    vertices: Vec<(i64, i64)>,
    dim: u8,
    lattice_points: usize,
    boundary_points: usize,
    area2: i64,
    minkowski_length: u64,
    witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    decompositions: Option<Vec<String>>,
}

fn run_poly(
    expr: &str,
    decompositions: bool,
    max_points: usize,
    max_directions: usize,
    format: Format,
) -> Result<ExitCode, Failure> {
    let p = parse_polytope(expr).map_err(|e| usage(e.to_string()))?;
    let budget = SearchBudget { max_lattice_points: max_points, max_directions };
    let (length, witness) = minkowski_length(&p, &budget).map_err(mink_failure)?;
    let decomps = if decompositions {
        let all = enumerate_maximal_decompositions(&p, &budget).map_err(mink_failure)?;
        Some(all.iter().map(|d| d.to_string()).collect::<Vec<_>>())
    } else {
        None
    };
    let report = PolyReport {
        polytope: expr.trim().to_string(),
        vertices: p.vertices().to_vec(),
        dim: p.dim(),
        lattice_points: p.lattice_points().len(),
        boundary_points: p.boundary_lattice_points().len(),
        area2: p.area2(),
        minkowski_length: length,
        witness: witness.to_string(),
        decompositions: decomps,
    };
    match format {
        Format::Json => print_json(&report),
        Format::Csv => print_kv_csv(&poly_rows(&report, " | ")),
        Format::Human => {
            print_kv_human(&poly_rows(&report, "\n    "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn poly_rows<'a>(report: &'a PolyReport, sep: &str) -> Vec<(&'a str, String)> {
    let verts = report
        .vertices
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect::<Vec<_>>()
        .join(";");
    let mut rows = vec![
        ("polytope", report.polytope.clone()),
        ("vertices", verts),
        ("dim", report.dim.to_string()),
        ("lattice_points", report.lattice_points.to_string()),
        ("boundary_points", report.boundary_points.to_string()),
        ("area2", report.area2.to_string()),
        ("minkowski_length", report.minkowski_length.to_string()),
        ("witness", report.witness.clone()),
    ];
    if let Some(decomps) = &report.decompositions {
        let joined = if decomps.is_empty() {
            "none".to_string()
        } else if sep.starts_with('\n') {
            format!("{sep}{}", decomps.join(sep))
        } else {
            decomps.join(sep)
        };
        rows.push(("decompositions", joined));
    }
    rows
}

fn print_code_report(report: &CodeReport, format: Format) {
    match format {
        Format::Json => print_json(report),
        Format::Csv => {
            println!("polytope,q,n,k,d,method,hypothesis_satisfied,steps");
            let hyp = match report.hypothesis_satisfied {
                Some(true) => "true",
                Some(false) => "false",
                None => "",
            };
            println!(
                "{},{},{},{},{},{},{},{}",
                csv_field(&report.polytope),
                report.q,
                report.n,
                report.k,
                report.d,
                csv_field(&report.method),
                hyp,
                report.steps
            );
        }
        Format::Human => {
            let mut rows = vec![
                ("polytope", report.polytope.clone()),
                ("q", report.q.to_string()),
                ("n", report.n.to_string()),
                ("k", report.k.to_string()),
                ("d", report.d.to_string()),
                ("method", report.method.clone()),
            ];
            if let Some(h) = report.hypothesis_satisfied {
                rows.push(("hypothesis_satisfied", h.to_string()));
            }
            rows.push(("steps", report.steps.to_string()));
            print_kv_human(&rows);
        }
    }
}

fn run_code(
    expr: &str,
    q: u32,
    method: Method,
    settings: &Settings,
    format: Format,
) -> Result<ExitCode, Failure> {
    let p = parse_polytope(expr).map_err(|e| usage(e.to_string()))?;
    let code = build_code(&p, q).map_err(toric_failure)?;
    let report = match method {
        Method::Exhaustive => {
            let start = Instant::now();
            let res = min_distance_exhaustive(&code, settings.budget).map_err(toric_failure)?;
            eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
            CodeReport {
                polytope: expr.trim().to_string(),
                q,
                n: code.n() as u32,
                k: code.k() as u32,
                d: res.d as i64,
                method: "exhaustive".into(),
                hypothesis_satisfied: None,
                steps: res.steps,
            }
        }
        Method::Predict => {
            let shape = recognize(&p).ok_or_else(|| {
                usage("no closed-form distance is known for this polytope; use --method exhaustive")
            })?;
            let pred = match shape {
                Shape::Staircase { l } => predicted_min_dist_staircase(l, q),
                Shape::Zonotope { m, n, l } => predicted_min_dist_zonotope(m, n, l, q),
                Shape::SpecialQuad { m, n, l, s } => predicted_min_dist_special_quad(m, n, l, s, q),
            }
            .map_err(toric_failure)?;
            CodeReport {
                polytope: expr.trim().to_string(),
                q,
                n: code.n() as u32,
                k: code.k() as u32,
                d: pred.d,
                method: "predicted".into(),
                hypothesis_satisfied: Some(pred.hypothesis_satisfied),
                steps: 0,
            }
        }
    };
    print_code_report(&report, format);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FieldReport {
    q: u32,
    p: u32,
    e: u32,
    /// Modulus coefficients, constant term first; [0, 1] means the prime
    /// field with modulus x.
    modulus: Vec<u32>,
    units: u32,
}

fn run_field(q: u32, format: Format) -> Result<ExitCode, Failure> {
    let field = FieldSpec::new(q).map_err(|e| usage(e.to_string()))?;
    let report = FieldReport {
        q,
        p: field.p(),
        e: field.extension_degree(),
        modulus: field.modulus().to_vec(),
        units: q - 1,
    };
    let modulus = report
        .modulus
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let rows = vec![
        ("q", report.q.to_string()),
        ("p", report.p.to_string()),
        ("e", report.e.to_string()),
        ("modulus", modulus),
        ("units", report.units.to_string()),
    ];
    match format {
        Format::Json => print_json(&report),
        Format::Csv => print_kv_csv(&rows),
        Format::Human => print_kv_human(&rows),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(suite: Suite, settings: &Settings, format: Format) -> Result<ExitCode, Failure> {
    let start = Instant::now();
    let report = match suite {
        Suite::Minkowski => suites::minkowski(settings.seed),
        Suite::Mindist => suites::mindist(settings.seed, settings.budget),
        Suite::Staircase => suites::staircase(settings.seed),
        Suite::Vandermonde => suites::vandermonde(settings.seed),
        Suite::Boundary => suites::boundary(settings.seed),
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    print_verification(&report, format);
    if report.passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn run(cli: &Cli, format: Format) -> Result<ExitCode, Failure> {
    let settings = resolve_settings(cli)?;
    if settings.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(settings.threads).build_global();
    }
    match &cli.command {
        Command::Poly { poly, decompositions, max_points, max_directions } => {
            run_poly(poly, *decompositions, *max_points, *max_directions, format)
        }
        Command::Code { poly, q, method } => run_code(poly, *q, *method, &settings, format),
        Command::Field { q } => run_field(*q, format),
        Command::Verify { suite } => run_verify(*suite, &settings, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Human
    };
    match run(&cli, format) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text_sets_all_keys() {
        let mut s = Settings::default();
        apply_config_text("# comment\n\nbudget = 42\nseed=7\nthreads = 3\n", &mut s).unwrap();
        assert_eq!(s, Settings { budget: 42, seed: 7, threads: 3 });
    }

    #[test]
    fn config_text_rejects_junk() {
        let mut s = Settings::default();
        assert_eq!(apply_config_text("budget", &mut s).unwrap_err().code, 2);
        assert_eq!(apply_config_text("color=red", &mut s).unwrap_err().code, 2);
        assert_eq!(apply_config_text("budget=many", &mut s).unwrap_err().code, 2);
        assert_eq!(s, Settings::default());
    }
}
