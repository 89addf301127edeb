use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kstar::star::StarKind;
use kstar_cli::{cmd_star, cmd_verify, CliError, Report, StarRequest, Suite, VerifyRequest};

#[derive(Parser)]
#[command(name = "kstar", version, about = "Exact kappa-Minkowski star products")]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate f * g (or the commutator) as an exact theta-series.
    Star {
        /// moyal, wv, kappa, su2, jordanian or jordanian-rs.
        #[arg(long, short = 'p')]
        product: StarKind,
        #[arg(short = 'd', long = "dim", env = "KSTAR_DIM")]
        d: Option<usize>,
        /// Truncate after theta^N.
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        commutator: bool,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Run a verification suite.
    Verify {
        /// reduction, lemma2, associativity, realizations, wedge, measure,
        /// obstruction, fock or su2-reduction.
        suite: Suite,
        #[arg(short = 'd', long = "dim", env = "KSTAR_DIM")]
        d: Option<usize>,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        /// Fock occupation cutoff M.
        #[arg(long)]
        cutoff: Option<u32>,
        /// Highest theta-order for the wedge suite.
        #[arg(long)]
        order: Option<u32>,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Star { product, d, order, commutator, f, g } => {
            cmd_star(&StarRequest { product, d, f, g, order, commutator })
        }
        Command::Verify { suite, d, degree, seed, samples, cutoff, order } => {
            cmd_verify(&VerifyRequest { suite, d, degree, seed, samples, cutoff, order })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(r) => {
            print!("{}", if json { r.to_json() } else { r.to_text() });
            ExitCode::from(if r.passed() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
