use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cmcubics_cli::commands::{self, Outcome, Override};
use cmcubics_cli::{document, run_report, CliError, Document, FieldSpec};
use cmcubics_core::{CaseLabel, MonomialOrder};

/// Exact computations with Cohen-Macaulay points of twisted cubics.
#[derive(Parser)]
#[command(name = "cmcubics", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Monomial order for printed bases and Hilbert series: lex, grevlex or elim:k.
    #[arg(long, global = true, default_value = "grevlex", value_parser = parse_order)]
    order: MonomialOrder,
    /// Coefficient field: Q, GF<p>, GF(p) or Qt. Overrides the field of input files.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis of an ideal file.
    Groebner { file: PathBuf },
    /// Kernel of a ring map restricted to an ideal (the scheme-theoretic image).
    Image {
        file: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Hilbert polynomial, degree, genus and regularity index.
    Hilbert { file: PathBuf },
    /// Type of a plane cubic at a singular point.
    Classify {
        file: PathBuf,
        /// Point as a,b,c,d; defaults to a `point` line in the file.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Also build the CM point over the cubic.
        #[arg(long)]
        reconstruct: bool,
    },
    /// First-order embedded deformations of an ideal.
    Deform {
        #[arg(required_unless_present = "tangent_cm")]
        file: Option<PathBuf>,
        /// Tangent space at the triple-line point instead.
        #[arg(long, conflicts_with = "file")]
        tangent_cm: bool,
    },
    /// One-parameter families over Q(t).
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Verification of CM points.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Runs every check and prints the aggregate report.
    Report,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Fiber at t = c.
    Fiber {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Generic image under a map, with excluded parameter values.
    Image {
        file: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Compares Hilbert polynomials of the generic fiber and sample fibers.
    Probe {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "0,1,-2")]
        samples: String,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The nine catalog points.
    Catalog {
        /// Replace a catalog curve by a file, as CASE=FILE.
        #[arg(long = "override", value_name = "CASE=FILE")]
        overrides: Vec<String>,
    },
    /// A curve ideal with a map and a point.
    Point {
        file: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    s.parse()
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn load(path: &Path, field: Option<FieldSpec>) -> Result<Document, CliError> {
    document::read(path)?.with_field_flag(field)
}

fn parse_override(spec: &str, field: Option<FieldSpec>) -> Result<Override, CliError> {
    let (case, file) =
        spec.split_once('=').ok_or_else(|| CliError::Usage(format!("override `{spec}` is not CASE=FILE")))?;
    Ok(Override { label: case.parse::<CaseLabel>()?, curve: load(Path::new(file), field)? })
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let Global { order, field, .. } = cli.global;
    let base = field.unwrap_or_default();
    match cli.command {
        Command::Groebner { file } => commands::groebner(&load(&file, field)?, order),
        Command::Image { file, map } => commands::image(&load(&file, field)?, &load(&map, field)?, order),
        Command::Hilbert { file } => commands::hilbert(&load(&file, field)?, order),
        Command::Classify { file, point, reconstruct } => {
            commands::classify(&load(&file, field)?, point.as_deref(), reconstruct)
        }
        Command::Deform { tangent_cm: true, .. } => commands::deform_tangent(base),
        Command::Deform { file, .. } => {
            let file = file.ok_or_else(|| CliError::Usage("deform needs a file or --tangent-cm".into()))?;
            commands::deform(&load(&file, field)?)
        }
        Command::Family(FamilyCommand::Fiber { file, at }) => commands::family_fiber(&load(&file, field)?, &at),
        Command::Family(FamilyCommand::Image { file, map }) => {
            commands::family_image(&load(&file, field)?, &load(&map, field)?)
        }
        Command::Family(FamilyCommand::Probe { file, samples }) => {
            commands::family_probe(&load(&file, field)?, &samples)
        }
        Command::Verify(VerifyCommand::Catalog { overrides }) => {
            let overrides = overrides.iter().map(|o| parse_override(o, field)).collect::<Result<Vec<_>, _>>()?;
            commands::verify_catalog(base, &overrides)
        }
        Command::Verify(VerifyCommand::Point { file, map, point }) => {
            commands::verify_point(&load(&file, field)?, &load(&map, field)?, point.as_deref())
        }
        Command::Report => {
            let report = run_report(base)?;
            Ok(Outcome {
                text: report.to_text(),
                json: serde_json::to_value(&report).expect("report serializes"),
                passed: report.passed,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.global.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json serializes"));
            } else {
                print!("{}", out.text);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
