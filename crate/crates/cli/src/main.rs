use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use stallings::bench::{bench, write_csv, BenchConfig};
use stallings::engine::{decide_identity, reduce_with, EngineOptions};
use stallings::gen::{generate, GenMode, GenProfile};
use stallings::rewriting::{Replayer, TraceReader, TraceWriter};
use stallings::Word;

#[derive(Parser)]
#[command(name = "stallings", version, about = "Reduce null-homotopic words in Stallings' group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated null-homotopic word.
    Gen {
        #[arg(long)]
        mode: GenMode,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Reduce the word in a file to the empty word and write the trace.
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Replay a trace file and report its cost and end word.
    Verify {
        #[arg(long)]
        trace: PathBuf,
    },
    /// Decide whether a word represents the identity.
    Decide {
        #[arg(long)]
        word: String,
    },
    /// Reduce generated words of several lengths and fit the growth rate.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[arg(long)]
        seeds: u64,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value = "commutator_heavy")]
        mode: GenMode,
    },
}

fn read_word(path: &PathBuf) -> Result<Word> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let text = text.trim();
    Word::parse(text).with_context(|| format!("parsing word in {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { mode, n, seed } => {
            let w = generate(&GenProfile::new(mode, seed), n)?;
            println!("{w}");
        }
        Command::Reduce { input, trace } => {
            let w = read_word(&input)?;
            let out = File::create(&trace).with_context(|| format!("creating {}", trace.display()))?;
            let writer = TraceWriter::new(BufWriter::new(out), &w)?;
            let (report, writer) = reduce_with(&w, writer, EngineOptions::checked())?;
            writer.finish()?.flush()?;
            if !report.audit.is_clean() {
                bail!("cost bound violated:\n{}", report.audit);
            }
            println!(
                "n={} cost={} bound={} max_len={}",
                report.n, report.cost, report.bound, report.max_boundary_len
            );
        }
        Command::Verify { trace } => {
            let file = File::open(&trace).with_context(|| format!("opening {}", trace.display()))?;
            let reader = TraceReader::new(BufReader::new(file))?;
            let mut replayer = Replayer::new(reader.start());
            for mv in reader {
                replayer.step(&mv?)?;
            }
            let report = replayer.finish()?;
            println!(
                "empty={} cost={} moves={} max_len={} end={}",
                report.end.is_empty(),
                report.cost,
                report.moves,
                report.max_len,
                report.end
            );
        }
        Command::Decide { word } => {
            let w = Word::parse(&word)?;
            println!("{}", decide_identity(&w));
        }
        Command::Bench {
            lengths,
            seeds,
            csv,
            mode,
        } => {
            let mut config = BenchConfig::new(lengths, seeds);
            config.mode = mode;
            let summary = bench(&config)?;
            let out = File::create(&csv).with_context(|| format!("creating {}", csv.display()))?;
            write_csv(&summary.rows, BufWriter::new(out))?;
            match summary.slope {
                Some(s) => println!("slope={s:.4}"),
                None => println!("slope=undefined"),
            }
            println!("max_cost_over_bound={:.6}", summary.max_ratio);
            if !summary.audit.is_clean() {
                bail!("cost bound violated:\n{}", summary.audit);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
