mod commands;
mod input;
mod selftest;

use clap::{Parser, Subcommand, ValueEnum};
use input::ParseError;
use polarkit::ErrorKind;
use serde_json::Value;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "polarkit", version, about = "Lorentz-group numerics for polarization optics")]
struct Cli {
    /// Numerical tolerance for domain checks
    #[arg(long, global = true, env = "POLARKIT_TOL")]
    tol: Option<f64>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TransitMode {
    PureBoost,
    BoostRotation,
    General,
    Rotation,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum PolarOrder {
    RotationFirst,
    BoostFirst,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Basis {
    Isotropic,
    Real,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Model {
    Standard,
    Alt,
}

#[derive(Subcommand)]
enum Command {
    /// Two-axis factorization U1(a) U2(b) U1(a') of a unit quaternion
    Factor2 {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        quaternion: String,
    },
    /// Three-axis factorization U1(a) U2(b) U3(c) of a unit quaternion
    Factor3 {
        #[arg(long)]
        order: String,
        #[arg(long)]
        quaternion: String,
    },
    /// Any of the twelve factorizations, chosen by label
    Factor {
        #[arg(long, alias = "scheme")]
        order: String,
        #[arg(long)]
        quaternion: String,
    },
    /// Boost Stokes vectors along an axis
    Boost {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        axis: String,
        #[arg(long, conflicts_with = "csv", required_unless_present = "csv")]
        stokes: Option<String>,
        /// CSV file with one Stokes vector per row
        #[arg(long)]
        csv: Option<String>,
    },
    /// Rotate Stokes vectors about an axis
    Rotate {
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long)]
        axis: String,
        #[arg(long, conflicts_with = "csv", required_unless_present = "csv")]
        stokes: Option<String>,
        #[arg(long)]
        csv: Option<String>,
    },
    /// Polar decomposition of a spinor element k
    Decompose {
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value_t = PolarOrder::Both)]
        order: PolarOrder,
    },
    /// Thomas rotation of two composed boosts (first, then second)
    Thomas {
        #[arg(long, allow_hyphen_values = true)]
        beta1: f64,
        #[arg(long)]
        axis1: String,
        #[arg(long, allow_hyphen_values = true)]
        beta2: f64,
        #[arg(long)]
        axis2: String,
    },
    /// Element of the stationary subgroup of a Stokes vector
    Stationary {
        #[arg(long)]
        stokes: String,
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        scale: f64,
    },
    /// Solve L S = S' for each pair
    Transit {
        /// CSV with rows S0,S1,S2,S3,S0',S1',S2',S3'
        #[arg(long, required_unless_present = "from", conflicts_with = "from")]
        pairs: Option<String>,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, value_enum, default_value_t = TransitMode::PureBoost)]
        mode: TransitMode,
        /// [M+, M-, N+, N-] for the general mode
        #[arg(long)]
        params: Option<String>,
        /// Move general-mode parameters onto the constraint surface first
        #[arg(long)]
        project: bool,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
    },
    /// Least-squares Mueller matrix from Stokes pairs
    Fit {
        #[arg(long)]
        pairs: String,
    },
    /// Lorentz matrices between the real and isotropic bases
    Convert {
        #[arg(long, value_enum)]
        basis: Basis,
        /// Matrix in the real basis
        #[arg(long, group = "src")]
        lorentz: Option<String>,
        /// Matrix in the isotropic basis
        #[arg(long, group = "src")]
        isotropic: Option<String>,
        /// Spinor element k
        #[arg(long, group = "src")]
        spinor: Option<String>,
        /// Also recover the spinor (a, b, c, d) from the matrix
        #[arg(long)]
        recover: bool,
    },
    /// Jones spinors from Stokes vectors and back
    Jones {
        #[arg(long, group = "src")]
        stokes: Option<String>,
        #[arg(long, group = "src")]
        spinor: Option<String>,
        /// {"xi": [..], "eta": [..]}
        #[arg(long, group = "src")]
        bispinor: Option<String>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, value_enum, default_value_t = Model::Standard)]
        model: Model,
    },
    /// Randomized invariant checks
    Selftest {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

pub enum CliError {
    Parse(ParseError),
    Lib(polarkit::Error),
    /// A batch finished with failing rows; the document is still printed.
    Partial(Value, ErrorKind),
    SelfTest(Value),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<polarkit::Error> for CliError {
    fn from(e: polarkit::Error) -> Self {
        CliError::Lib(e)
    }
}

fn code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Domain => 3,
        ErrorKind::Constraint => 4,
    }
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", polarkit::json::to_string_17(v)),
        Format::Table => print!("{}", table(v, "")),
    }
}

/// Flattens a document into `path  value` lines.
fn table(v: &Value, prefix: &str) -> String {
    let flat = |v: &Value| polarkit::json::to_string_17(v).replace('\n', " ").split_whitespace().collect::<Vec<_>>().join(" ");
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| table(x, &if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }))
            .collect(),
        Value::Array(a) if a.iter().any(Value::is_object) => a
            .iter()
            .enumerate()
            .map(|(i, x)| table(x, &format!("{prefix}[{i}]")))
            .collect(),
        _ => format!("{prefix:<24} {}\n", flat(v)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = cli.tol.unwrap_or(polarkit::DEFAULT_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        eprintln!("error: tolerance must be positive, got {tol}");
        return ExitCode::from(2);
    }
    let res = match cli.cmd {
        Command::Factor2 { scheme, quaternion } => commands::factor(&scheme, &quaternion, Some(true), tol),
        Command::Factor3 { order, quaternion } => commands::factor(&order, &quaternion, Some(false), tol),
        Command::Factor { order, quaternion } => commands::factor(&order, &quaternion, None, tol),
        Command::Boost { beta, axis, stokes, csv } => commands::boost(beta, &axis, stokes.as_deref(), csv.as_deref(), tol),
        Command::Rotate { phi, axis, stokes, csv } => commands::rotate(phi, &axis, stokes.as_deref(), csv.as_deref(), tol),
        Command::Decompose { k, order } => commands::decompose(&k, order, tol),
        Command::Thomas { beta1, axis1, beta2, axis2 } => commands::thomas(beta1, &axis1, beta2, &axis2, tol),
        Command::Stationary { stokes, n, scale } => commands::stationary(&stokes, &n, scale, tol),
        Command::Transit { pairs, from, to, mode, params, project, alpha } => {
            commands::transit(pairs.as_deref(), from.as_deref(), to.as_deref(), mode, params.as_deref(), project, alpha, tol)
        }
        Command::Fit { pairs } => commands::fit(&pairs, tol),
        Command::Convert { basis, lorentz, isotropic, spinor, recover } => {
            commands::convert(basis, lorentz.as_deref(), isotropic.as_deref(), spinor.as_deref(), recover, tol)
        }
        Command::Jones { stokes, spinor, bispinor, gamma, model } => {
            commands::jones(stokes.as_deref(), spinor.as_deref(), bispinor.as_deref(), gamma, model, tol)
        }
        Command::Selftest { seed, samples } => selftest::run(seed, samples, tol),
    };
    match res {
        Ok(v) => {
            emit(&v, cli.format);
            ExitCode::SUCCESS
        }
        Err(CliError::Parse(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            if let polarkit::Error::UnderDetermined { null_directions, .. } = &e {
                let dirs: Vec<Value> = null_directions.iter().map(|d| polarkit::json::real_array(d)).collect();
                eprintln!("null directions: {}", polarkit::json::to_string_17(&Value::Array(dirs)));
            }
            ExitCode::from(code(e.kind()))
        }
        Err(CliError::Partial(v, kind)) => {
            emit(&v, cli.format);
            eprintln!("error: some rows failed");
            ExitCode::from(code(kind))
        }
        Err(CliError::SelfTest(v)) => {
            emit(&v, cli.format);
            eprintln!("error: self-test failed");
            ExitCode::from(1)
        }
    }
}
