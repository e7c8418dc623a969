use clap::{Parser, Subcommand, ValueEnum};
use hochschild_cli::{demo, parse_spec, run_job, CheckName, JobSpec, SpecError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hhcalc", version, about = "Hochschild cohomology of rank one smash products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Overrides the job's max_degree.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Comma-separated subset of bg,ext_d,bar,adjoint,ring,chainmaps,gamma,hopf_hochschild.
    #[arg(long, value_delimiter = ',', global = true)]
    checks: Option<Vec<CheckName>>,
    /// Include wall-clock timings in JSON output.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions and ring structure.
    Compute { spec: PathBuf },
    /// All cross-checks requested by the spec.
    Verify { spec: PathBuf },
    /// A built-in example, E1 to E5.
    Demo { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

fn load(path: &PathBuf) -> Result<JobSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_spec(&text).map_err(|e| e.to_string())
}

fn prepare(cli: &Cli) -> Result<JobSpec, String> {
    let (spec, default_checks) = match &cli.command {
        Command::Compute { spec } => (load(spec)?, Some(vec![CheckName::Bg, CheckName::Ring])),
        Command::Verify { spec } => (load(spec)?, None),
        Command::Demo { name } => (demo(name).map_err(|e| e.to_string())?, None),
    };
    let mut spec = spec;
    if let Some(m) = cli.max_degree {
        spec = spec.with_max_degree(m).map_err(|e: SpecError| e.to_string())?;
    }
    if let Some(checks) = cli.checks.clone().or(default_checks) {
        spec = spec.with_checks(checks).map_err(|e| e.to_string())?;
    }
    Ok(spec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = match prepare(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = run_job(&spec);
    match cli.format {
        Format::Json => println!("{}", report.to_json(cli.timings)),
        Format::Table => print!("{}", report.to_table()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
