use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use gamma_sym::cli::{self, Document, Format, RunConfig};
use gamma_sym::{Error, Result};

/// Graded so(n), invariant metrics and curvature at the origin.
#[derive(Debug, Parser)]
#[command(name = "gamma-sym", version)]
struct Args {
    /// grade, metrics, reductive, curvature, lorentz, geodesic or report
    command: String,
    /// Matrix size of so(n)
    #[arg(long)]
    n: usize,
    /// Block sizes r1,r2,r3,r4 summing to n
    #[arg(long)]
    partition: String,
    /// Rational family parameters (geodesic: coordinates on the m basis)
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
    /// json, csv (curvature only) or text
    #[arg(long, default_value = "json")]
    format: String,
    /// Output file; for `report`, a directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated times for `geodesic`
    #[arg(long, allow_hyphen_values = true)]
    t_samples: Option<String>,
    /// 1-based m-basis generator for `geodesic`
    #[arg(long, default_value_t = 1)]
    generator: usize,
    /// Curvature of a named connection instead of the sectional formula
    #[arg(long)]
    connection: Option<String>,
}

fn config(args: Args) -> Result<RunConfig> {
    let mut config = RunConfig::new(&args.command, args.n, cli::parse_partition(&args.partition)?);
    config.parameter_values = args.params.as_deref().map(cli::parse_params).transpose()?;
    config.output_format = args.format.parse::<Format>()?;
    config.output_path = args.out;
    if let Some(t) = &args.t_samples {
        config.t_samples = cli::parse_samples(t)?;
    }
    config.generator = args.generator;
    config.connection = args.connection;
    Ok(config)
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("GAMMA_SYM_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().map_err(|_| {
        Error::Config(format!(
            "GAMMA_SYM_THREADS must be a nonnegative integer, got '{value}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}

fn write(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

fn emit(command: &str, out: Option<&Path>, documents: &[Document]) -> Result<()> {
    match out {
        Some(dir) if command == "report" => {
            fs::create_dir_all(dir).map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))?;
            for d in documents {
                write(&dir.join(d.file_name()), &d.content)?;
            }
            Ok(())
        }
        Some(path) => {
            let joined: String = documents.iter().map(|d| d.content.as_str()).collect();
            write(path, &joined)
        }
        None => {
            for d in documents {
                if documents.len() > 1 {
                    println!("== {} ==", d.file_name());
                }
                print!("{}", d.content);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = configure_threads().and_then(|_| config(args)).and_then(|config| {
        let command = config.command.clone();
        let out = config.output_path.clone();
        let documents = cli::run(config)?;
        emit(&command, out.as_deref(), &documents)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
