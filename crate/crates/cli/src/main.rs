use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use singinv::sections::NumericParams;
use singinv::verify::{corpus_run, emit_corpus, emit_report, run_check, Check, CorpusConfig, Format, VerifyOptions};

/// Exact singularity invariants and checks of the inequalities between them.
///
/// Exit status: 0 every verdict holds, 1 invalid input, 2 an exact verdict fails,
/// 3 only numeric verdicts fail, 4 the probe found a potential counterexample.
#[derive(Parser)]
#[command(name = "singinv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for planes, multi-starts and corpora.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Relative tolerance for verdicts with a numeric side.
    #[arg(long, global = true, default_value_t = 0.05)]
    tolerance: f64,
    /// Degree budget for generated corpus ideals.
    #[arg(long, global = true, default_value_t = 4)]
    budget: u32,
    /// Permit the nondegenerate-assumed monomialization (flagged in the verdicts).
    #[arg(long, global = true)]
    nondegenerate: bool,
    /// Radii used by the numeric estimator.
    #[arg(long, global = true, default_value_t = 6)]
    radii: usize,
    /// Largest radius for the numeric estimator; the others shrink by sqrt(10).
    #[arg(long = "first-radius", global = true, default_value_t = 1e-4)]
    first_radius: f64,
    /// Multi-starts per radius for the numeric estimator.
    #[arg(long, global = true, default_value_t = 64)]
    starts: usize,
    /// Independent start sets for the numeric estimator.
    #[arg(long = "numeric-seeds", global = true, default_value_t = 2)]
    numeric_seeds: usize,
    /// Worker threads for corpus runs (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Record wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant bundle of a polynomial, or of an ideal given as `g1; g2; ...`.
    Compute { input: String },
    /// Polar-invariant sum against lct(m*J_f).
    VerifyMain { poly: String },
    /// lct against the Lelong chain and the sectional Lojasiewicz bounds.
    VerifyChain { ideal: String },
    /// lct(f) against lct(m*J_f).
    VerifyLct { poly: String },
    /// lct against lct_1 + e_1/e_2 for a plane monomial ideal.
    ProbePham { ideal: String },
    /// Chain verdicts (and the probe in two variables) on a seeded random corpus.
    Corpus {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: usize,
    },
}

impl Common {
    fn numeric(&self) -> NumericParams {
        NumericParams {
            radii: self.radii,
            first_radius: self.first_radius,
            starts: self.starts,
            seeds: self.numeric_seeds,
            ..NumericParams::default()
        }
    }

    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            seed: self.seed,
            tolerance: self.tolerance,
            numeric: self.numeric(),
            nondegenerate: self.nondegenerate,
            timings: self.timings,
        }
    }

    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            Format::Text
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let common = &cli.common;
    let (input, check) = match &cli.command {
        Command::Corpus { dim, count } => {
            let config = CorpusConfig {
                budget: common.budget,
                tolerance: common.tolerance,
                numeric: common.numeric(),
                workers: common.workers,
                timings: common.timings,
                ..CorpusConfig::new(*dim, *count, common.seed)
            };
            let report = corpus_run(&config)?;
            print!("{}", emit_corpus(&report, common.format()));
            return Ok(report.exit_code());
        }
        Command::Compute { input } => (input, Check::Compute),
        Command::VerifyMain { poly } => (poly, Check::Main),
        Command::VerifyChain { ideal } => (ideal, Check::Chain),
        Command::VerifyLct { poly } => (poly, Check::LctDominates),
        Command::ProbePham { ideal } => (ideal, Check::Probe),
    };
    let report = run_check(input, check, &common.options())?;
    print!("{}", emit_report(&report, common.format()));
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
