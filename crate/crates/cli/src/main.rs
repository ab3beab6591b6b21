mod commands;
mod table;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::Outcome;

/// Exact computations in the Hopf algebra of packed words.
#[derive(Debug, Parser)]
#[command(name = "wmat", version, about)]
struct Cli {
    /// Worker threads for parallel work (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Pretty,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// Packed words by length n and supremum k.
    Dnk,
    /// Packed words by length.
    Dn,
    /// Irreducible packed words by length.
    In,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pack a word: close the gaps between nonzero letters.
    Pack {
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Shifted concatenation of two packed words.
    Mul {
        u: String,
        v: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Coproduct of a packed word.
    Coproduct {
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Antipode of a packed word.
    Antipode {
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Factor a packed word into irreducibles.
    Factor {
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List or count the packed words of length n.
    Enumerate {
        n: usize,
        /// Only words with this supremum.
        #[arg(long)]
        sup: Option<usize>,
        /// Only irreducible words.
        #[arg(long)]
        irreducible: bool,
        /// Print the count instead of the words.
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tables of counts.
    Table {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = TableKind::Dnk)]
        kind: TableKind,
        #[arg(long, value_enum, default_value_t = TableFormat::Pretty)]
        format: TableFormat,
    },
    /// Basis of the primitive elements of grade n.
    Primitives {
        n: usize,
        /// Allow grades above 5.
        #[arg(long, value_name = "CAP")]
        max_grade_override: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the Hopf algebra laws exhaustively on short words and on
    /// seeded random words up to the given length.
    Verify {
        #[arg(long, default_value_t = 7)]
        max_len: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, env = "WMAT_SEED", default_value_t = 42)]
        seed: u64,
        /// Comma-separated: coassoc, counit, bialgebra, antipode,
        /// pack-morphism, factorization, or all.
        #[arg(long, default_value = "all")]
        laws: String,
        /// Longest word used for the antipode identities.
        #[arg(long, default_value_t = 6)]
        antipode_max_len: usize,
        /// Include per-law wall-clock times in the report.
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = BufWriter::new(io::stdout());
    let result = run(&cli, &mut out).and_then(|o| {
        out.flush()?;
        Ok(o)
    });
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<io::Error>()
        .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

#[cfg(feature = "parallel")]
fn run(cli: &Cli, out: &mut (impl Write + Send)) -> anyhow::Result<Outcome> {
    let exec = if cli.sequential {
        wmat_core::Exec::Sequential
    } else {
        wmat_core::Exec::Parallel
    };
    match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            pool.install(|| commands::dispatch(&cli.command, exec, out))
        }
        None => commands::dispatch(&cli.command, exec, out),
    }
}

#[cfg(not(feature = "parallel"))]
fn run(cli: &Cli, out: &mut (impl Write + Send)) -> anyhow::Result<Outcome> {
    // no pool to size without the parallel feature
    let _ = cli.threads;
    commands::dispatch(&cli.command, wmat_core::Exec::Sequential, out)
}
