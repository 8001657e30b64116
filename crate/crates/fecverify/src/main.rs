//! `fecverify`: run errata checks, list the registry, simulate BER curves.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fecverify::ber::{parse_code, run_parallel};
use fecverify::formats::write_ber_csv;
use fecverify::registry::list_errata;
use fecverify::report::{exit_code, to_json, to_text};
use fecverify::{verify_all, HarnessError};
use fecverify_core::sim::{ChannelKind, SimConfig, Simulator};

#[derive(Parser)]
#[command(name = "fecverify", version, about = "Errata checks and BER simulation for FEC codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Channel {
    Awgn,
    Bsc,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks bound to the registry.
    Verify {
        /// Category name or glob over record/check ids, e.g. "p195*".
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Include per-check runtimes.
        #[arg(long)]
        timing: bool,
    },
    /// List registry records in page order.
    List {
        #[arg(long)]
        category: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Simulate a BER curve and write it as CSV.
    Ber {
        /// uncoded, hamming74, conv75 or conv75:N.
        #[arg(long)]
        code: String,
        #[arg(long, value_enum)]
        channel: Channel,
        /// Comma-separated Eb/N0 values in dB (awgn) or crossover probabilities (bsc).
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        points: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Maximum frames per point.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Stop a point after this many frame errors; 0 disables early stopping.
        #[arg(long, default_value_t = 100)]
        frame_errors: u64,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<u8, HarnessError> {
    match cli.command {
        Command::Verify {
            filter,
            format,
            threads,
            timing,
        } => {
            let results = verify_all(filter.as_deref(), threads)?;
            match format {
                Format::Text => print!("{}", to_text(&results, timing)),
                Format::Json => println!("{}", to_json(&results, timing)),
            }
            Ok(exit_code(&results) as u8)
        }
        Command::List { category, format } => {
            let recs = list_errata(category.as_deref())?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&recs).expect("records serialize")),
                Format::Text => {
                    for r in recs {
                        println!("{:>5}  {:<18}  {:<16}  {}", r.page, r.id, r.category.as_str(), r.summary);
                    }
                }
            }
            Ok(0)
        }
        Command::Ber {
            code,
            channel,
            points,
            seed,
            trials,
            frame_errors,
            threads,
            out,
        } => {
            let channel = match channel {
                Channel::Awgn => ChannelKind::Awgn,
                Channel::Bsc => ChannelKind::Bsc,
            };
            let mut cfg = SimConfig::new(channel, parse_code(&code)?, points, trials, seed);
            cfg.target_frame_errors = (frame_errors > 0).then_some(frame_errors);
            let sim = Simulator::new(cfg)?;
            let rows = run_parallel(&sim, threads)?;
            write_ber_csv(&rows, BufWriter::new(File::create(&out)?))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
