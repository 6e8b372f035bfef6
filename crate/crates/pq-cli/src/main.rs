//! `pqeis`: coefficient tables, verification suites and winding certificates
//! for weight-two Eisenstein series on `Γ0(pq)`.

mod report;
mod suites;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pq_eisenstein::boundary::{boundary_symbol_sum, SIGMA};
use pq_eisenstein::eisenstein::{coefficient_table, element_from_table, RepresentativeRule};
use pq_eisenstein::homology::{rational_presentation, reduce, winding_element, winding_multiple};
use pq_eisenstein::{Error, Level, Series};
use serde_json::{json, Value};

use report::{boundary_terms, render_csv, render_json, rational_value, Entry, Meta, Report};
use suites::{Settings, Status, Suite};

#[derive(Parser, Debug)]
#[command(name = "pqeis", version, about = "Eisenstein series coefficients and boundaries on Γ0(pq)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the coefficient table of one series.
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = SeriesArg::Pq)]
        series: SeriesArg,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance for numeric periods and pairings.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Emit the winding element and its boundary certificate.
    Winding {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesArg {
    P,
    Q,
    Pq,
}

impl From<SeriesArg> for Series {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::P => Series::P,
            SeriesArg::Q => Series::Q,
            SeriesArg::Pq => Series::PQ,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Outcome of a command, mapped to the exit code.
enum Failure {
    Usage(String),
    Math(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn level(common: &Common) -> Result<Level, Failure> {
    Level::new(common.p, common.q).map_err(|e| Failure::Usage(e.to_string()))
}

fn math(e: Error) -> Failure {
    match e {
        Error::InvalidLevel(_) => Failure::Usage(e.to_string()),
        other => Failure::Math(other.to_string()),
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Table { common, series } => table(&common, series.into()),
        Command::Verify { common, suite, seed, tol } => verify(&common, suite, seed, tol),
        Command::Winding { common } => winding(&common),
    }
}

fn table(common: &Common, series: Series) -> Result<(), Failure> {
    let l = level(common)?;
    let rows = coefficient_table(series, &l, RepresentativeRule::default()).map_err(math)?;
    let entries: Vec<Entry> = rows.iter().map(Entry::from).collect();
    if common.format == Format::Csv {
        return emit(common, &render_csv(&entries));
    }
    let element = element_from_table(&rows, &l);
    let mut meta = Meta::new("table", &l);
    meta.series = Some(series.label().to_string());
    meta.modulus = Some(series.modulus(&l));
    let mut certificates = BTreeMap::new();
    let oracle_classes = rows.iter().filter(|r| r.source.label() != "formula").count();
    certificates.insert("oracle_classes".to_string(), json!(oracle_classes));
    let report = Report {
        meta,
        entries,
        boundary: boundary_terms(&boundary_symbol_sum(&element), &l),
        certificates,
    };
    emit(common, &render_json(&report))
}

fn verify(common: &Common, suite: Suite, seed: u64, tol: f64) -> Result<(), Failure> {
    let l = level(common)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
    }
    let settings = Settings { level: l.clone(), seed, tol };
    let checks = suites::run(suite, &settings);
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    let text = match common.format {
        Format::Json => {
            let mut meta = Meta::new("verify", &l);
            meta.seed = Some(seed);
            meta.tol = Some(tol);
            let mut certificates = BTreeMap::new();
            certificates.insert("suite".to_string(), json!(suite.label()));
            certificates.insert("checks".to_string(), serde_json::to_value(&checks).expect("serializable"));
            certificates.insert("passed".to_string(), json!(passed));
            certificates.insert("failed".to_string(), json!(failed));
            render_json(&Report { meta, entries: Vec::new(), boundary: Vec::new(), certificates })
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "check", "status", "detail"]).expect("in-memory write");
            for c in &checks {
                let status = serde_json::to_value(c.status).expect("serializable");
                w.write_record([c.suite, &c.name, status.as_str().unwrap_or(""), &c.detail]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    };
    // Human-readable lines go to stderr so stdout carries only the report.
    for c in &checks {
        eprintln!("{c}");
    }
    emit(common, &text)?;
    if failed > 0 {
        Err(Failure::Math(format!("{failed} of {} checks failed", passed + failed)))
    } else {
        Ok(())
    }
}

fn winding(common: &Common) -> Result<(), Failure> {
    let l = level(common)?;
    let w = winding_element(&l).map_err(math)?;
    let b = boundary_symbol_sum(&w);
    let pres = rational_presentation(&l);
    let coords = reduce(&w, &pres).map_err(math)?;
    let reduced_boundary = pres.boundary(&coords);
    let (nu, n) = winding_multiple(&l);

    let entries: Vec<Entry> = w
        .iter()
        .map(|(g, k)| Entry {
            c: g.c,
            d: g.d,
            coefficient: rational_value(k),
            source: "formula",
            case: "winding".to_string(),
            estimate: None,
            bound: None,
        })
        .collect();
    if common.format == Format::Csv {
        emit(common, &render_csv(&entries))?;
    } else {
        let mut meta = Meta::new("winding", &l);
        meta.nu = Some(nu);
        meta.n = Some(n);
        let mut certificates = BTreeMap::new();
        certificates.insert("boundary_is_zero".to_string(), json!(b.is_zero()));
        certificates.insert("reduced_boundary_is_zero".to_string(), json!(reduced_boundary.is_zero()));
        certificates.insert("homology_dimension".to_string(), json!(pres.dimension()));
        let coord_values: Vec<Value> = coords.iter().map(rational_value).collect();
        certificates.insert("coordinates".to_string(), Value::from(coord_values));
        certificates.insert(
            "basis".to_string(),
            Value::from(pres.basis().iter().map(|g| json!([g.c, g.d])).collect::<Vec<_>>()),
        );
        certificates.insert("sigma".to_string(), json!(SIGMA));
        let report = Report { meta, entries, boundary: boundary_terms(&b, &l), certificates };
        emit(common, &render_json(&report))?;
    }
    if b.is_zero() && reduced_boundary.is_zero() {
        Ok(())
    } else {
        Err(Failure::Math(format!("winding boundary is not zero: {}", b.render(&l))))
    }
}
