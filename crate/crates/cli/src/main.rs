use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use poincare_core::frontend::{
    cmd_classify, cmd_cohomology, cmd_gen, cmd_split, cmd_verify, FrontendError, ResultDocument, SplitOptions,
    VerifyOptions,
};
use poincare_core::oracles::{DEFAULT_PANELS, DEFAULT_POINTS, DEFAULT_TOLERANCE};
use poincare_core::WilliamsonType;

/// Exact Poincaré decompositions for Williamson-type model systems.
///
/// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 cocycle violation,
/// 5 tolerance exceeded.
#[derive(Parser)]
#[command(name = "poincare", version)]
struct Cli {
    /// Print the result document as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose g_i = f_i + X_i(G) for a problem file.
    Split {
        /// Problem file, or `-` for stdin.
        file: PathBuf,
        /// Highest data degree for which the elimination oracle runs.
        #[arg(long, default_value_t = 8)]
        degree: u32,
        #[command(flatten)]
        oracle: OracleFlag,
    },
    /// Detect the Williamson type of a family of quadratics.
    Classify { file: PathBuf },
    /// Check a 1-cochain and exhibit it as a coboundary modulo the commutant.
    Cohomology { file: PathBuf },
    /// Quadrature cross-checks along the model flows.
    Verify {
        file: PathBuf,
        /// Simpson panel count (even).
        #[arg(long, default_value_t = DEFAULT_PANELS)]
        panels: usize,
        /// Tolerance for averages; flow-integral checks use at least 1e-6.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Number of sample points per check.
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
    },
    /// Emit a random forward-generated problem file with its ground truth.
    Gen {
        /// Williamson type, e.g. `(1,1,0)@2`.
        #[arg(long = "type")]
        wtype: String,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct OracleFlag {
    /// Cross-check with the elimination solver (default).
    #[arg(long, overrides_with = "no_oracle")]
    oracle: bool,
    /// Skip the elimination solver.
    #[arg(long = "no-oracle")]
    no_oracle: bool,
}

fn read_input(path: &PathBuf) -> Result<String, FrontendError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| FrontendError::Io(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| FrontendError::Io(format!("{}: {e}", path.display())))
}

fn with_input(command: &str, path: &PathBuf, run: impl FnOnce(&str) -> ResultDocument) -> ResultDocument {
    match read_input(path) {
        Ok(text) => run(&text),
        Err(e) => ResultDocument::new(command).fail(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let doc = match &cli.command {
        Command::Split { file, degree, oracle } => {
            let options = SplitOptions {
                oracle: !oracle.no_oracle,
                oracle_degree: *degree,
            };
            with_input("split", file, |t| cmd_split(t, &options))
        }
        Command::Classify { file } => with_input("classify", file, cmd_classify),
        Command::Cohomology { file } => with_input("cohomology", file, cmd_cohomology),
        Command::Verify {
            file,
            panels,
            tolerance,
            points,
        } => {
            let options = VerifyOptions {
                panels: *panels,
                tolerance: *tolerance,
                points: *points,
            };
            with_input("verify", file, |t| cmd_verify(t, &options))
        }
        Command::Gen { wtype, degree, seed } => {
            let generated = wtype
                .parse::<WilliamsonType>()
                .map_err(|e| FrontendError::Validation(e.to_string()))
                .and_then(|t| cmd_gen(t, *degree, *seed));
            match generated {
                Ok(text) => {
                    print!("{text}");
                    return ExitCode::SUCCESS;
                }
                Err(e) => ResultDocument::new("gen").fail(e),
            }
        }
    };
    if cli.json {
        print!("{}", doc.render_json());
    } else {
        print!("{}", doc.render_text());
    }
    if let Some(e) = &doc.error {
        eprintln!("error {}: {e}", e.code());
    }
    ExitCode::from(doc.exit_code() as u8)
}
