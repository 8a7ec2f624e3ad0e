//! The `lambda-lab` command line. [`run`] parses arguments, dispatches to
//! the library and returns the process exit code:
//! 0 for success or a positive verdict, 1 for a negative verdict, 2 for
//! usage and input errors, 3 when a search was inconclusive.

mod commands;
pub mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{parse_output, Config, PRIMES_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lambda-lab",
    version,
    about = "Adams operations on truncated polynomial rings"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// JSON config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Active primes are those up to this bound (at least 7).
    #[arg(long, global = true)]
    primes_upto: Option<u64>,
    /// Range [-N, N] tried for coefficients the equations leave free.
    #[arg(long, global = true)]
    search_bound: Option<u64>,
    /// Output format: text or json.
    #[arg(long, global = true, value_parser = parse_output)]
    output: Option<config::OutputFormat>,
    /// Largest i for the product polynomials P_i.
    #[arg(long, global = true)]
    universal_max_i: Option<usize>,
    /// Largest i*j for the composite polynomials P_{i,j}.
    #[arg(long, global = true)]
    universal_max_ij: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check commutation and the Frobenius congruence for a family file.
    Validate { file: PathBuf },
    /// Decide whether two families are isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// Normal form of a one-variable family (n = 2, 3, 4) and the map to it.
    Normalize { file: PathBuf },
    /// Class data and realizability filters for a one-variable family.
    Classify { file: PathBuf },
    /// List every class: `--n 3 --b RULE` or `--n 4 --case 2`.
    Enumerate {
        #[arg(long)]
        n: u32,
        /// Rule for b_p, a polynomial in p.
        #[arg(long)]
        b: Option<String>,
        /// Denominator of the b rule.
        #[arg(long, default_value = "1")]
        den: String,
        #[arg(long)]
        case: Option<u32>,
        /// Also write each family to DIR/class-NNN.json.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Number of classes on Z[x]/(x^3) with the given b_p.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "1")]
        den: String,
    },
    /// Conjugate an extension of R by an isomorphism R -> S and check the
    /// Frobenius congruence.
    Conjc {
        r: PathBuf,
        r_tilde: PathBuf,
        /// Target family S; found with `iso` when --sigma is absent.
        #[arg(long)]
        s: Option<PathBuf>,
        /// Isomorphism as JSON, e.g. '{"u": 1, "coeffs": ["0", "3"]}'.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Emit a universal polynomial: Q_k, P_i or P_{i,j}.
    Universal {
        #[arg(long, conflicts_with_all = ["p", "pij"])]
        q: Option<usize>,
        #[arg(long, conflicts_with = "pij")]
        p: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        pij: Option<Vec<usize>>,
    },
    /// Build psi^p(x_i) = (1 + x_i)^{b_{p,i}} - 1 for p >= N.
    Existence {
        /// Input file with "ring", optional primes, and a "b" table.
        file: Option<PathBuf>,
        /// Truncations, e.g. 3,4 or 3,inf.
        #[arg(long, value_delimiter = ',')]
        trunc: Vec<String>,
        /// Working cap for unbounded variables.
        #[arg(long, default_value_t = 8)]
        cap: u32,
        /// Rule for b_{p,i}, one per finite variable or one for all.
        #[arg(long)]
        b: Vec<String>,
    },
}

/// Runs the command line with `LAMBDA_LAB_PRIMES` taken from the process
/// environment, writing to stdout and stderr.
pub fn run(argv: Vec<String>) -> i32 {
    let env = std::env::var(PRIMES_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, env.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with(argv: Vec<String>, env_primes: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let config = match build_config(&cli.global, env_primes) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_INPUT;
        }
    };
    match commands::dispatch(&cli.command, &config) {
        Ok(outcome) => {
            let _ = outcome.write(out, config.output);
            outcome.code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn build_config(g: &GlobalArgs, env_primes: Option<&str>) -> Result<Config, String> {
    let mut c = Config::default();
    if let Some(path) = &g.config {
        c.merge_file(path)?;
    }
    c.merge_env(env_primes)?;
    if let Some(v) = g.primes_upto {
        c.primes_upto = v;
    }
    if let Some(v) = g.search_bound {
        c.search_bound = v;
    }
    if let Some(v) = g.output {
        c.output = v;
    }
    if let Some(v) = g.universal_max_i {
        c.universal_cap.max_i = v;
    }
    if let Some(v) = g.universal_max_ij {
        c.universal_cap.max_ij = v;
    }
    c.check()?;
    Ok(c)
}
