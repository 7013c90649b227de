//! Command-line front end: enumeration, verification, and inspection.
//!
//! Exit codes are a fixed contract for CI use: 0 success, 1 usage or parse
//! errors, 2 enumeration truncation, 3 I/O problems.

use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use tfd_core::catalog::{attach_golden_labels, golden_catalog, TFDRecord};
use tfd_core::certificate::{check_certificate, prove_empty_case_ii_xk};
use tfd_core::curves::enumerate_decompositions;
use tfd_core::enumerator::{enumerate_all, enumerate_family};
use tfd_core::exceptional::exceptional_set;
use tfd_core::family::FamilyLabel;
use tfd_core::invariants;
use tfd_core::lattice::{CohClass, SurfaceModel};
use tfd_core::verify::verify;
use tfd_core::Error;

#[derive(Parser)]
#[command(name = "tfd", version, about = "Classify topological fixed point data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the classification, optionally restricted to one family.
    Enumerate {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Worker threads for the family scans.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Re-derive everything and compare against the golden tables.
    Verify {
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Recompute the invariants of a record stored as JSON.
    Invariants {
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Print the exceptional classes of a surface.
    Exceptional { surface: String },
    /// Decompose a class into disjoint realizable components.
    Decompose { surface: String, class: String },
    /// Print (or export) the infeasibility certificates.
    Certificate {
        /// Restrict to one k in 2..=8.
        #[arg(long)]
        k: Option<u8>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::EnumerationTruncated(_) => 2,
                Error::Io(_) | Error::GoldenData(_) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Enumerate {
            family,
            format,
            jobs,
        } => cmd_enumerate(family, format, jobs),
        Command::Verify { jobs } => cmd_verify(jobs),
        Command::Invariants { input } => cmd_invariants(&input),
        Command::Exceptional { surface } => cmd_exceptional(&surface),
        Command::Decompose { surface, class } => cmd_decompose(&surface, &class),
        Command::Certificate { k, json } => cmd_certificate(k, json),
    }
}

fn cmd_enumerate(
    family: Option<String>,
    format: OutputFormat,
    jobs: Option<usize>,
) -> Result<ExitCode, Error> {
    let mut records = match family {
        Some(name) => {
            let label: FamilyLabel = name.parse()?;
            enumerate_family(label)?.records
        }
        None => enumerate_all(jobs)?.records,
    };
    if let Ok(golden) = golden_catalog() {
        attach_golden_labels(&mut records, &golden);
        tfd_core::catalog::sort_canonically(&mut records);
    }
    emit(&records, format)?;
    Ok(ExitCode::SUCCESS)
}

fn emit(records: &[TFDRecord], format: OutputFormat) -> Result<(), Error> {
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(records)?);
        }
        OutputFormat::Csv => {
            println!("label,m0,omega0,euler,fixed_components,b2,c1_cubed");
            for r in records {
                println!(
                    "{},{},{},{},{},{},{}",
                    r.label,
                    r.surface0,
                    r.omega0,
                    r.path.slices[0].euler,
                    fixed_components(r),
                    r.b2,
                    r.c1_cubed
                );
            }
        }
        OutputFormat::Markdown => {
            println!("| label | M0 | omega0 | e | fixed components | b2 | c1^3 |");
            println!("|---|---|---|---|---|---|---|");
            for r in records {
                println!(
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    r.label,
                    r.surface0,
                    r.omega0,
                    r.path.slices[0].euler,
                    fixed_components(r),
                    r.b2,
                    r.c1_cubed
                );
            }
        }
    }
    Ok(())
}

fn fixed_components(r: &TFDRecord) -> String {
    let mut parts = Vec::new();
    let min_level = r.path.crit_values[0];
    parts.push(format!("Z{}={}", min_level, r.extremum_name(false)));
    if r.m_isolated > 0 {
        parts.push(format!("Z-1={}pt", r.m_isolated));
    }
    for (cls, genus) in &r.z0_components {
        let kind = match genus {
            0 => "S2".to_string(),
            1 => "T2".to_string(),
            g => format!("Sigma{g}"),
        };
        parts.push(format!("Z0={kind}({cls})"));
    }
    parts.push(format!("Z1={}", r.extremum_name(true)));
    parts.join("; ")
}

fn cmd_verify(jobs: Option<usize>) -> Result<ExitCode, Error> {
    let report = verify(jobs)?;
    println!("{}", report.summary());
    for f in &report.flagged {
        println!("midpoint-flagged: {f}");
    }
    if report.passed() && report.flagged.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for label in &report.diff.missing {
            println!("missing: {label}");
        }
        for key in &report.diff.extra {
            println!("extra: {key}");
        }
        for m in &report.diff.field_mismatches {
            println!(
                "mismatch in {}: {} golden={} computed={}",
                m.label, m.field, m.golden, m.computed
            );
        }
        Ok(ExitCode::FAILURE)
    }
}

fn cmd_invariants(input: &std::path::Path) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(input)?;
    let record: TFDRecord = serde_json::from_str(&text)?;
    let report = invariants::report(&record.path)?;
    println!("record {}", record.label);
    println!(
        "  b2:       stored {:>4}  recomputed {:>4}",
        record.b2, report.b2
    );
    println!(
        "  c1^3:     stored {:>4}  recomputed {:>4}",
        record.c1_cubed, report.c1_cubed
    );
    println!(
        "  vol(Zmin) {:>4}  vol(Zmax) {:>4}",
        report.vol_min, report.vol_max
    );
    if !report.vol_z0.is_empty() {
        println!("  vol(Z0)   {:?}", report.vol_z0);
    }
    if record.b2 == report.b2 && record.c1_cubed == report.c1_cubed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

fn cmd_exceptional(surface: &str) -> Result<ExitCode, Error> {
    let surface: SurfaceModel = surface.parse()?;
    let set = exceptional_set(surface)?;
    for c in &set.classes {
        println!("{c}");
    }
    println!("count: {}", set.classes.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_decompose(surface: &str, class: &str) -> Result<ExitCode, Error> {
    let surface: SurfaceModel = surface.parse()?;
    let target = CohClass::parse(surface, class)?;
    let decs = enumerate_decompositions(surface, &target)?;
    if decs.is_empty() {
        println!("no admissible decomposition");
        return Ok(ExitCode::SUCCESS);
    }
    for dec in &decs {
        let parts: Vec<String> = dec
            .parts
            .iter()
            .map(|p| format!("{} (genus {}, volume {})", p.cls, p.genus, p.volume))
            .collect();
        println!("{}", parts.join(" + "));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_certificate(k: Option<u8>, json: bool) -> Result<ExitCode, Error> {
    let ks: Vec<u8> = match k {
        Some(k) => vec![k],
        None => (2..=8).collect(),
    };
    let mut certs = Vec::new();
    for k in ks {
        let cert = prove_empty_case_ii_xk(k)?;
        if !check_certificate(&cert)? {
            eprintln!("certificate for k = {k} failed its own check");
            return Ok(ExitCode::FAILURE);
        }
        certs.push(cert);
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&certs)?);
    } else {
        for cert in &certs {
            println!(
                "k = {}: {} constraints, contradiction 0 >= 1 certified",
                cert.k,
                cert.constraints.len()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}
