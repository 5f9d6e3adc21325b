use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use orthoqkd::harness::{
    attack_demo, emit, mor_check_pair, simulate, OutputFormat, SimulationConfig,
};
use orthoqkd::{EnsembleKind, Error};

#[derive(Parser)]
#[command(
    name = "orthoqkd",
    version,
    about = "Orthogonal-state QKD and double-CNOT eavesdropping simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Ensemble {
    Cabello,
    Nonmax,
}

#[derive(Clone, Copy, ValueEnum)]
enum Attack {
    None,
    DoubleCnot,
    InterceptResend,
}

impl Attack {
    fn name(self) -> &'static str {
        match self {
            Attack::None => "none",
            Attack::DoubleCnot => "double-cnot",
            Attack::InterceptResend => "intercept-resend",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Seeded Monte-Carlo run of many protocol rounds.
    Simulate {
        #[arg(long, default_value_t = 10_000)]
        rounds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "double-cnot")]
        attack: Attack,
        #[arg(long, value_enum, default_value = "cabello")]
        ensemble: Ensemble,
        /// Radians; required with --ensemble nonmax.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Radians; required with --ensemble nonmax.
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit the no-cloning criterion for the pair psi(alpha), phi(beta).
    MorCheck {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Step-by-step double-CNOT attack on one four-state symbol.
    AttackDemo {
        #[arg(long)]
        symbol: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Simulate {
            rounds,
            seed,
            attack,
            ensemble,
            alpha,
            beta,
            format,
            out,
        } => {
            let ensemble = match (ensemble, alpha, beta) {
                (Ensemble::Cabello, None, None) => EnsembleKind::Cabello,
                (Ensemble::Cabello, _, _) => {
                    return Err(Error::Config(
                        "--alpha/--beta only apply to --ensemble nonmax".into(),
                    ))
                }
                (Ensemble::Nonmax, Some(alpha), Some(beta)) => EnsembleKind::NonMax { alpha, beta },
                (Ensemble::Nonmax, _, _) => {
                    return Err(Error::Config(
                        "--ensemble nonmax needs --alpha and --beta".into(),
                    ))
                }
            };
            let config = SimulationConfig {
                rounds,
                seed,
                attack_name: attack.name().to_owned(),
                ensemble,
                output_format: format.into(),
                output_path: out,
            };
            let report = simulate(&config)?;
            emit(
                &report.render(config.output_format)?,
                config.output_path.as_deref(),
            )
        }
        Command::MorCheck {
            alpha,
            beta,
            format,
            out,
        } => {
            let result = mor_check_pair(alpha, beta)?;
            emit(&result.render(format.into())?, out.as_deref())
        }
        Command::AttackDemo {
            symbol,
            seed,
            format,
            out,
        } => {
            let trace = attack_demo(symbol, seed)?;
            emit(&trace.render(format.into())?, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("orthoqkd: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
