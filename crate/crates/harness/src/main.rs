use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ollga_core::analysis::{ParentShape, SamplingMode, Threshold};
use ollga_harness::spec::{parse_family, parse_list};
use ollga_harness::{landscape, sweep, verify, Algorithm, LandscapeConfig, PolicySpec, SweepConfig, VerifyGrid};

#[derive(Parser)]
#[command(
    name = "ollga",
    version,
    about = "Runtime sweeps, lambda landscapes and bound checks for the permutation (1+(lambda,lambda)) GA"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Independent runs per problem size; raw rows plus a per-size summary.
    Sweep {
        /// rls, ea or ollga
        #[arg(long)]
        algo: Algorithm,
        /// static:<l>, log, adjust:<F>,<lmin>,<lmax> or theory:<c1>,<c2>
        #[arg(long)]
        policy: Option<PolicySpec>,
        /// Comma-separated problem sizes.
        #[arg(long, default_value = "16,32,64,128,256,512,1024,2048")]
        sizes: String,
        #[arg(long, default_value_t = 100)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Evaluation cap per run is this times n^2 ln n.
        #[arg(long, default_value_t = sweep::DEFAULT_BUDGET_MULT)]
        budget_mult: f64,
        /// exchange, reverse or jump
        #[arg(long, default_value = "exchange")]
        family: String,
        /// Average over runs that hit the budget as well.
        #[arg(long)]
        include_unfinished: bool,
        #[arg(long)]
        out: PathBuf,
        /// Summary CSV path (default: <out stem>.summary.csv next to --out).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Per-distance cost of static lambda over a multiplicative lattice.
    Landscape {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda_min: f64,
        #[arg(long)]
        lambda_max: f64,
        #[arg(long, default_value_t = 1.05)]
        step: f64,
        #[arg(long, default_value_t = 200)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = sweep::DEFAULT_BUDGET_MULT)]
        budget_mult: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte-Carlo estimates of good-iteration probabilities against the bounds.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        tau: i32,
        #[arg(long)]
        n: String,
        /// Parent fitness: integers, or relative tokens such as 0.4n, n/2, sqrt, n-3, n-cbrt.
        #[arg(long)]
        f: String,
        #[arg(long)]
        lambda: String,
        /// Omit to pair ell with lambda.
        #[arg(long)]
        ell: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Mode::Proof)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Parent::Cycle)]
        parent: Parent,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Mutations drawn with replacement.
    Proof,
    /// Distinct mutations, as in the algorithm.
    Algo,
}

#[derive(Clone, Copy, ValueEnum)]
enum Parent {
    Cycle,
    Random,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn summary_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "sweep".into());
    out.with_file_name(format!("{stem}.summary.csv"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sweep { algo, policy, sizes, runs, seed, budget_mult, family, include_unfinished, out, summary } => {
            let mut cfg = SweepConfig::new(algo, policy, parse_list(&sizes)?, runs, seed);
            cfg.family = parse_family(&family)?;
            cfg.budget_mult = budget_mult;
            cfg.include_unfinished = include_unfinished;
            cfg.threads = cli.threads;
            let result = sweep::run_sweep(&cfg)?;
            sweep::write_raw(&cfg, &result, create(&out)?)?;
            let summary = summary.unwrap_or_else(|| summary_path(&out));
            sweep::write_summary(&cfg, &result, create(&summary)?)?;
            for s in &result.summaries {
                match s.stat {
                    Some(st) => {
                        eprintln!("n={:<6} runs={:<4} evals/n^2 = {:.4} +- {:.4}", s.n, s.runs, st.mean, st.std)
                    }
                    None => eprintln!("n={:<6} no finished runs", s.n),
                }
                if s.unfinished > 0 {
                    eprintln!("n={:<6} {} run(s) hit the budget", s.n, s.unfinished);
                }
            }
        }
        Command::Landscape { n, lambda_min, lambda_max, step, runs, seed, budget_mult, out } => {
            let mut cfg = LandscapeConfig::new(n, lambda_min, lambda_max, runs, seed);
            cfg.step = step;
            cfg.budget_mult = budget_mult;
            cfg.threads = cli.threads;
            let rows = landscape::run_landscape(&cfg)?;
            landscape::write_rows(&rows, create(&out)?)?;
            eprintln!("{} rows over {} lambda values", rows.len(), cfg.lattice().len());
        }
        Command::Verify { tau, n, f, lambda, ell, trials, mode, parent, seed, out } => {
            let grid = VerifyGrid {
                tau: Threshold::try_from(tau)?,
                sizes: parse_list(&n)?,
                fitness: parse_list(&f)?,
                lambdas: parse_list(&lambda)?,
                ells: ell.as_deref().map(parse_list).transpose()?,
                mode: match mode {
                    Mode::Proof => SamplingMode::WithReplacement,
                    Mode::Algo => SamplingMode::WithoutReplacement,
                },
                shape: match parent {
                    Parent::Cycle => ParentShape::Cycle,
                    Parent::Random => ParentShape::RandomAtDistance,
                },
                trials,
                seed,
                threads: cli.threads,
            };
            let rows = verify::run_verify(&grid)?;
            verify::write_rows(&rows, create(&out)?)?;
            let failed = verify::failures(&rows);
            let skipped = rows.iter().filter(|r| matches!(r.verdict, verify::Verdict::Skipped(_))).count();
            let dominance: u64 = rows.iter().map(|r| r.dominance_violations).sum();
            eprintln!("{} rows: {failed} failed, {skipped} skipped, {dominance} dominance violations", rows.len());
            if failed > 0 || dominance > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
