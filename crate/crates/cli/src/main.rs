//! `coxcount`: point counts, congruence checks and Chow certificates from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a congruence fails, 2 on
//! usage or input errors.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use render::Format;

#[derive(Debug, Parser)]
#[command(name = "coxcount", version, about = "Exact point counting on toric varieties and Chow-ring certificates")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Describe a finite field: modulus, generator, elements.
    FieldInfo {
        #[arg(long)]
        field: String,
    },
    /// Builtin and file-based fans.
    Fan {
        #[command(subcommand)]
        action: FanAction,
    },
    /// Count the zeros of one polynomial on the affine cone and on the toric variety.
    Count(CountArgs),
    /// Run a congruence check on one polynomial or a seeded batch.
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Type-IV quintic instances.
    Quintic {
        #[command(subcommand)]
        action: QuinticAction,
    },
    /// Non-vanishing certificates in the Chow ring.
    Chow {
        #[command(subcommand)]
        action: ChowAction,
    },
}

#[derive(Debug, Args, Clone)]
pub struct ModelArgs {
    /// Builtin name: projective(d), weighted(a0,...,ad), blowup_p2, blowup_p4_line.
    #[arg(long, conflicts_with = "fan_file")]
    pub fan: Option<String>,
    /// Fan in the `dim` / `ray` / `cone` text format.
    #[arg(long)]
    pub fan_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum FanAction {
    /// List the builtin fans.
    List,
    /// Rays, cones, primitive collections and the derived grading.
    Info {
        #[command(flatten)]
        model: ModelArgs,
        /// Also count the exceptional set over this field.
        #[arg(long)]
        field: Option<String>,
    },
    /// Validate a fan and report its grading.
    Check {
        #[command(flatten)]
        model: ModelArgs,
    },
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub field: String,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Polynomial in x0, x1, ...; `t` is the extension generator.
    #[arg(long)]
    pub poly: String,
    /// Count torus orbits directly instead of dividing by |G(F_q)|.
    #[arg(long)]
    pub orbits: bool,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    #[arg(long)]
    pub field: String,
    #[command(flatten)]
    pub model: ModelArgs,
    /// A single polynomial to check.
    #[arg(long, conflicts_with_all = ["batch", "degree"])]
    pub poly: Option<String>,
    /// Degree of the random polynomials, e.g. `5,2`.
    #[arg(long)]
    pub degree: Option<String>,
    #[arg(long)]
    pub batch: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EsnaultArgs {
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, conflicts_with = "instance")]
    pub batch: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON file with one instance, a list, or a report with `instances` / `failures`.
    #[arg(long)]
    pub instance: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum VerifyCheck {
    /// p divides N when some degree component is below the generator total.
    Cw(BatchArgs),
    /// q^mu divides N.
    Ax(BatchArgs),
    /// #X(F_q) = 1 mod q for strict transforms of type-IV quintics.
    Esnault(EsnaultArgs),
}

#[derive(Debug, Subcommand)]
enum QuinticAction {
    /// Draw seeded instances.
    Random {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        batch: usize,
        /// Redraw until P3 is nonzero.
        #[arg(long)]
        p3_nonzero: bool,
    },
    /// Print the polynomials of stored instances.
    Show {
        #[arg(long)]
        instance: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum ChowAction {
    /// Certificate for one (s, c).
    Certify {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        c: u32,
        /// Exponent of the hyperplane class; defaults to 5s+c+1.
        #[arg(long = "E")]
        e: Option<u32>,
        /// Also sweep s = 0..=S for the least nonzero certificate.
        #[arg(long)]
        sweep: Option<u32>,
    },
    /// Certificates for s = 0..=S.
    Sweep {
        #[arg(long)]
        c: u32,
        #[arg(long = "sweep", alias = "s-max")]
        s_max: u32,
    },
}

/// Failure that ends the run with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// A finished command: the report and whether every check passed.
pub struct Outcome {
    pub report: serde_json::Value,
    pub pass: bool,
}

fn dispatch(command: Command) -> Result<Outcome, InputError> {
    match command {
        Command::FieldInfo { field } => commands::field_info(&field),
        Command::Fan { action } => match action {
            FanAction::List => commands::fan_list(),
            FanAction::Info { model, field } => commands::fan_info(&model, field.as_deref()),
            FanAction::Check { model } => commands::fan_check(&model),
        },
        Command::Count(args) => commands::count(&args),
        Command::Verify { check } => match check {
            VerifyCheck::Cw(args) => commands::verify_graded(&args, commands::Graded::Cw),
            VerifyCheck::Ax(args) => commands::verify_graded(&args, commands::Graded::Ax),
            VerifyCheck::Esnault(args) => commands::verify_esnault(&args),
        },
        Command::Quintic { action } => match action {
            QuinticAction::Random { field, seed, batch, p3_nonzero } => commands::quintic_random(&field, seed, batch, p3_nonzero),
            QuinticAction::Show { instance } => commands::quintic_show(&instance),
        },
        Command::Chow { action } => match action {
            ChowAction::Certify { s, c, e, sweep } => commands::chow_certify(s, c, e, sweep),
            ChowAction::Sweep { c, s_max } => commands::chow_sweep(c, s_max),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match dispatch(cli.command) {
        Ok(o) => o,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = render::render(&outcome.report, cli.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
