use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dompoly::batch::run_batch;
use dompoly::bistritz::count_outside_int;
use dompoly::bounds::BoundSet;
use dompoly::census::{
    render_csv, render_text, run_census, run_census_checkpointed, CensusSpec, Family,
};
use dompoly::dominance::{decide_with, Algorithm, DecideOptions};
use dompoly::factor::is_irreducible_primitive_part;
use dompoly::oracle::{certified_roots, dominant_from_cluster};
use dompoly::sample::PolySampler;
use dompoly::{parse_poly, Error, IntPolynomial};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;

/// Decide whether integer polynomials have a dominant root, and count them
/// over coefficient boxes.
///
/// Polynomials are written as comma-separated integer coefficients from the
/// leading one down, e.g. `1,0,-2` for X^2 - 2.
#[derive(Parser)]
#[command(name = "dompoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Auto,
    Simple,
    Efficient,
    Irreducible,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Auto => Algorithm::Auto,
            AlgorithmArg::Simple => Algorithm::Simple,
            AlgorithmArg::Efficient => Algorithm::Efficient,
            AlgorithmArg::Irreducible => Algorithm::Irreducible,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Monic,
    General,
    Both,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Monic => Family::Monic,
            FamilyArg::General => Family::General,
            FamilyArg::Both => Family::Both,
        }
    }
}

#[derive(clap::Args)]
struct DecideArgs {
    /// Force one decision procedure instead of the automatic dispatch.
    #[arg(long, value_enum, default_value = "auto")]
    algorithm: AlgorithmArg,
    /// Skip the sign-pattern shortcuts.
    #[arg(long)]
    no_filters: bool,
}

impl DecideArgs {
    fn options(&self) -> DecideOptions {
        DecideOptions {
            algorithm: self.algorithm.into(),
            filters: !self.no_filters,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide dominance of one polynomial and print the verdict as JSON.
    Test {
        poly: String,
        #[command(flatten)]
        decide: DecideArgs,
        /// Also report the numeric root oracle's answer.
        #[arg(long)]
        oracle: bool,
    },
    /// Count roots outside the unit circle and print the report as JSON.
    Stability { poly: String },
    /// Print the root bounds and separation constants as JSON.
    Bounds { poly: String },
    /// Count dominant polynomials over a coefficient box.
    Census {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        height: u32,
        #[arg(long, value_enum, default_value = "both")]
        family: FamilyArg,
        /// Number of work chunks.
        #[arg(long, default_value_t = 1)]
        chunks: usize,
        /// Checkpoint file; an existing one for the same run is resumed.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Run even when the box exceeds the size cap.
        #[arg(long)]
        allow_large: bool,
        /// Enumerate the whole half box instead of one member per sign orbit.
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long)]
        no_filters: bool,
        /// Print the full report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Decide every line of a file (or stdin for `-`), writing JSON lines.
    Batch {
        path: PathBuf,
        #[command(flatten)]
        decide: DecideArgs,
    },
    /// Print seeded random polynomials, one per line.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        min_degree: usize,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[arg(long, default_value_t = 100)]
        height: i64,
    },
}

enum Failure {
    /// Stdout was closed by the reader; not an error.
    Closed,
    Parse(String),
    Cap(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Other(e.to_string())
        }
    }
}

fn poly_arg(text: &str) -> Result<IntPolynomial, Failure> {
    parse_poly(text).map_err(|e| Failure::Parse(format!("{text:?}: {e}")))
}

fn print_json(value: &impl serde::Serialize) -> io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(io::stdout().lock(), "{text}")
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Test {
            poly,
            decide,
            oracle,
        } => {
            let f = poly_arg(&poly)?;
            let verdict = decide_with(&f, &decide.options())?;
            let mut out = json!({ "input": f.to_string(), "verdict": verdict });
            if oracle {
                let cluster = certified_roots(&f)?;
                out["oracle"] = json!({
                    "dominant": dominant_from_cluster(&cluster),
                    "precision_bits": cluster.precision_bits,
                });
            }
            print_json(&out)?;
        }
        Command::Stability { poly } => {
            let f = poly_arg(&poly)?;
            print_json(&count_outside_int(&f)?)?;
        }
        Command::Bounds { poly } => {
            let f = poly_arg(&poly)?;
            let irreducible = !f.constant_term().eq(&0.into())
                && is_irreducible_primitive_part(&f)?.is_irreducible();
            print_json(&BoundSet::compute(&f, irreducible)?)?;
        }
        Command::Census {
            degree,
            height,
            family,
            chunks,
            resume,
            csv,
            allow_large,
            no_symmetry,
            no_filters,
            json,
        } => {
            let spec = CensusSpec {
                symmetry_reduction: !no_symmetry,
                chunk_count: chunks,
                filters: !no_filters,
                allow_large,
                ..CensusSpec::new(degree, height, family.into())
            };
            let report = match resume {
                Some(path) => run_census_checkpointed(&spec, &path)?,
                None => run_census(&spec)?,
            };
            if let Some(path) = csv {
                fs::write(path, render_csv(std::slice::from_ref(&report)))?;
            }
            if json {
                print_json(&report)?;
            } else {
                let mut stdout = io::stdout().lock();
                write!(stdout, "{}", render_text(std::slice::from_ref(&report)))?;
                writeln!(
                    stdout,
                    "decided {} of {} vectors in {:.2}s, digest {:016x}",
                    report.decided, report.visited, report.wall_seconds, report.digest
                )?;
            }
        }
        Command::Batch { path, decide } => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(&path)?
            };
            let mut stdout = io::stdout().lock();
            for record in run_batch(&text, &decide.options()) {
                writeln!(stdout, "{}", record.to_json())?;
            }
        }
        Command::Random {
            seed,
            count,
            min_degree,
            max_degree,
            height,
        } => {
            if min_degree > max_degree || height < 1 {
                return Err(Failure::Other("need min-degree <= max-degree and height >= 1".into()));
            }
            let mut stdout = io::stdout().lock();
            for f in PolySampler::new(seed, min_degree..=max_degree, height).take(count) {
                writeln!(stdout, "{f}")?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Parse(m) => (EXIT_PARSE, m),
                Failure::Cap(m) => (EXIT_CAP, m),
                Failure::Other(m) => (EXIT_FAILURE, m),
                Failure::Closed => unreachable!(),
            };
            eprintln!("dompoly: {message}");
            ExitCode::from(code)
        }
    }
}
