use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use superq::liealg::algebra_to_json;
use superq_cli::report::{report, Skip};
use superq_cli::session::{load_algebra, session_field};
use superq_cli::verify::{verify, CHECKS};
use superq_cli::{exit_code, CliError, CliResult};

/// Structure reports and verification suites for Lie superalgebras.
///
/// The scalar field is Q unless SUPERQ_FIELD holds minimal polynomial
/// coefficients, low to high (`SUPERQ_FIELD=2,0,1` for Q[t]/(t^2 + 2)).
#[derive(Parser)]
#[command(name = "superq", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print an algebra as canonical JSON.
    Construct {
        spec: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Full structure report for a family spec or an algebra JSON file.
    Report {
        spec: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Comma-separated sections to leave out: structure, dercoh, rootsys, repn.
        #[arg(long, default_value = "")]
        skip: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a verification suite over its default instances or the given ones.
    Verify {
        check: Option<String>,
        /// Instance to run instead of the defaults; repeatable.
        #[arg(long = "algebra")]
        algebras: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the suite as JSON instead of one line per instance.
        #[arg(long)]
        json: bool,
        /// List the available checks.
        #[arg(long)]
        list: bool,
    },
    /// Read an algebra JSON file and write it back in canonical form.
    Convert { input: PathBuf, output: PathBuf },
}

fn write_out(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.cmd {
        Cmd::Construct { spec, json } => {
            let (g, _) = load_algebra(&spec, &session_field()?)?;
            write_out(json.as_ref(), &(serde_json::to_string_pretty(&algebra_to_json(&g)).expect("json") + "\n"))?;
            Ok(0)
        }
        Cmd::Report { spec, json, skip, seed } => {
            let skip = Skip::parse(&skip).map_err(|e| CliError::Core(superq::Error::Parse(e)))?;
            let (g, src) = load_algebra(&spec, &session_field()?)?;
            let r = report(&g, src, skip, seed);
            write_out(json.as_ref(), &r.to_json())?;
            if !r.validation.ok {
                eprintln!("validation failed: {} violations", r.validation.jacobi.len() + r.validation.antisymmetry.len() + r.validation.parity.len());
            }
            if let Some(p) = &r.extension_needed {
                eprintln!("extension needed: adjoin a root of {p}");
            }
            Ok(r.exit_code())
        }
        Cmd::Verify { check, algebras, seed, json, list } => {
            if list || check.is_none() {
                for c in CHECKS {
                    println!("{:<16} {}", c.id, c.description);
                }
                return Ok(if list { 0 } else { 2 });
            }
            let insts = (!algebras.is_empty()).then_some(algebras);
            let suite = verify(check.as_deref().unwrap(), insts, &session_field()?, seed)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&suite).expect("json"));
            } else {
                for v in &suite.instances {
                    println!("{} {:<20} {}", if v.pass { "pass" } else { "FAIL" }, v.instance, v.witness);
                }
                println!("{}: {} passed, {} failed", suite.check, suite.passed, suite.failed);
            }
            Ok(if suite.all_pass() { 0 } else { 1 })
        }
        Cmd::Convert { input, output } => {
            let (g, _) = load_algebra(&input.to_string_lossy(), &session_field()?)?;
            write_out(Some(&output), &(serde_json::to_string_pretty(&algebra_to_json(&g)).expect("json") + "\n"))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
