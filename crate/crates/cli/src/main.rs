//! `dtl`: command-line front end for the divisor tensor pairing.

mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "dtl", version, about = "Tensor pairing of codimension-1 cycles, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Most terms any single expansion may store. Overrides DTL_TERM_CAP.
    #[arg(long, global = true)]
    term_cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f (x) g for an x polynomial f and a y polynomial g.
    Tensor {
        f: String,
        g: String,
        /// Use the full expansion instead of the factored evaluation.
        #[arg(long)]
        naive: bool,
    },
    /// The multilinear pairing on explicit slots.
    Psi {
        /// An x slot; give it once per row (deg of the y slots times).
        #[arg(long = "x", required = true)]
        xs: Vec<String>,
        /// A y slot; give it once per column.
        #[arg(long = "y", required = true)]
        ys: Vec<String>,
    },
    /// Pairing of cycles such as `2*[x0] + -1*[x1]`.
    CycleTensor {
        eta: String,
        xi: String,
        /// Reduced pairing against two fixed hyperplanes.
        #[arg(long)]
        reduced: bool,
        /// Left basepoint hyperplane (default x0).
        #[arg(long, requires = "reduced")]
        eta0: Option<String>,
        /// Right basepoint hyperplane (default y0).
        #[arg(long, requires = "reduced")]
        xi0: Option<String>,
    },
    /// Seeded property suites.
    Verify(VerifyArgs),
    /// Chern class of E (x) L for a rank-r bundle E and a line bundle L.
    Chern {
        #[arg(required_unless_present = "verify")]
        rank: Option<usize>,
        #[arg(required_unless_present = "verify")]
        index: Option<usize>,
        /// Compare the closed formula with the splitting-principle expansion.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 5, requires = "verify")]
        max_rank: usize,
    },
    /// Replays the degree-4 obstruction to a higher-codimension pairing.
    Obstruction {
        /// Test this (a, b) instead of the forced solution.
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        ab: Option<Vec<String>>,
        /// Number of generators i2..i_{2n} on the left factor.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: u32,
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    #[arg(long, default_value_t = 4)]
    max_vars: u32,
    #[arg(long, default_value_t = 4)]
    max_terms: u32,
    #[arg(long, default_value_t = 9)]
    coefficient_bound: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    BiadditivityLeft,
    BiadditivityRight,
    LinearLemma,
    Fastpath,
    Stabilization,
    Degree,
    Chern,
    All,
}

fn term_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("DTL_TERM_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("DTL_TERM_CAP must be a positive integer, got {v:?}"))),
        Err(_) => Ok(dtl_core::poly::DEFAULT_TERM_CAP),
    }
}

fn run(cli: Cli) -> Result<commands::Output, Failure> {
    let cap = term_cap(cli.term_cap)?;
    if cap == 0 {
        return Err(Failure::usage("the term cap must be positive".into()));
    }
    let fmt = cli.format;
    match cli.command {
        Command::Tensor { f, g, naive } => commands::tensor(&f, &g, naive, cap, fmt),
        Command::Psi { xs, ys } => commands::psi(&xs, &ys, cap, fmt),
        Command::CycleTensor {
            eta,
            xi,
            reduced,
            eta0,
            xi0,
        } => commands::cycle_tensor(&eta, &xi, reduced, eta0.as_deref(), xi0.as_deref(), cap, fmt),
        Command::Verify(args) => commands::verify(&args, cap, fmt),
        Command::Chern {
            rank,
            index,
            verify,
            max_rank,
        } => match (verify, rank, index) {
            (true, _, _) => commands::chern_verify(max_rank, fmt),
            (false, Some(r), Some(i)) => commands::chern(r, i, fmt),
            _ => Err(Failure::usage("chern needs RANK and INDEX, or --verify".into())),
        },
        Command::Obstruction { ab, n } => commands::obstruction(ab.as_deref(), n, fmt),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => commands::EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
