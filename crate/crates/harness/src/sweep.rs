//! Runtime sweeps: many independent runs per problem size, one CSV row each.

use std::io::Write;

use ollga_core::algorithms::{ollga_run, opl_ea_run, rls_run_from, RunOptions, RunResult};
use ollga_core::rng::derive_seed;
use ollga_core::{HamProblem, MutationFamily, MutationKind, Permutation, RandomSource};
use rayon::prelude::*;

use crate::error::{config, Result};
use crate::spec::{Algorithm, PolicySpec};
use crate::stats::{summarize, SummaryStat};
use crate::thread_pool;

pub const RAW_HEADER: [&str; 8] = ["algo", "policy", "n", "run", "seed", "evaluations", "iterations", "finished"];
pub const SUMMARY_HEADER: [&str; 6] = ["algo", "policy", "n", "runs", "mean_evals_over_n2", "std_evals_over_n2"];

pub const DEFAULT_BUDGET_MULT: f64 = 50.0;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub algorithm: Algorithm,
    /// Required for the GA, ignored by RLS and the EA.
    pub policy: Option<PolicySpec>,
    pub family: MutationKind,
    pub sizes: Vec<usize>,
    pub runs: u64,
    pub seed: u64,
    /// Evaluation cap is `budget_mult · n² · ln n`.
    pub budget_mult: f64,
    /// Also average over runs that hit the budget.
    pub include_unfinished: bool,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
}

impl SweepConfig {
    pub fn new(algorithm: Algorithm, policy: Option<PolicySpec>, sizes: Vec<usize>, runs: u64, seed: u64) -> Self {
        SweepConfig {
            algorithm,
            policy,
            family: MutationKind::Exchange,
            sizes,
            runs,
            seed,
            budget_mult: DEFAULT_BUDGET_MULT,
            include_unfinished: false,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(config("runs must be at least 1"));
        }
        if self.sizes.is_empty() {
            return Err(config("no problem sizes given"));
        }
        if let Some(&n) = self.sizes.iter().find(|&&n| n < 2) {
            return Err(config(format!("problem size {n} is below 2")));
        }
        if !(self.budget_mult > 0.0 && self.budget_mult.is_finite()) {
            return Err(config("budget multiplier must be positive"));
        }
        match (self.algorithm, &self.policy) {
            (Algorithm::Ollga, None) => Err(config("the GA needs a lambda policy")),
            (Algorithm::Ollga, Some(p)) => self.sizes.iter().try_for_each(|&n| p.build(n).map(drop)),
            _ => Ok(()),
        }
    }

    pub fn budget(&self, n: usize) -> u64 {
        let n = n as f64;
        (self.budget_mult * n * n * n.ln()).ceil().max(1.0) as u64
    }

    pub fn policy_label(&self) -> String {
        match (self.algorithm, &self.policy) {
            (Algorithm::Ollga, Some(p)) => p.to_string(),
            _ => "none".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub run: u64,
    pub result: RunResult,
}

impl SweepRecord {
    pub fn evals_over_n2(&self) -> f64 {
        self.result.evaluations as f64 / (self.n as f64 * self.n as f64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    pub n: usize,
    /// Runs that entered the statistic.
    pub runs: usize,
    pub unfinished: usize,
    /// Of evaluations / n²; `None` when no run qualified.
    pub stat: Option<SummaryStat>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutput {
    pub records: Vec<SweepRecord>,
    pub summaries: Vec<SweepSummary>,
}

/// One run, seeded with `derive_seed(seed, run)`.
pub fn run_single(cfg: &SweepConfig, n: usize, run: u64) -> Result<RunResult> {
    let problem = HamProblem::identity(n)?;
    let family = MutationFamily::new(cfg.family, n)?;
    let mut rng = RandomSource::derive(cfg.seed, run);
    let options = RunOptions::with_budget(cfg.budget(n));
    let result = match cfg.algorithm {
        Algorithm::Rls => {
            let start = Permutation::random(n, &mut rng)?;
            rls_run_from(&problem, &family, start, &mut rng, options)?
        }
        Algorithm::Ea => opl_ea_run(&problem, &family, &mut rng, options)?,
        Algorithm::Ollga => {
            let spec = cfg.policy.as_ref().ok_or_else(|| config("the GA needs a lambda policy"))?;
            ollga_run(&problem, &family, &spec.build(n)?, &mut rng, options)?
        }
    };
    debug_assert_eq!(result.seed, derive_seed(cfg.seed, run));
    Ok(result)
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let tasks: Vec<(usize, u64)> = cfg.sizes.iter().flat_map(|&n| (0..cfg.runs).map(move |r| (n, r))).collect();
    let records = thread_pool(cfg.threads)?.install(|| {
        tasks
            .par_iter()
            .map(|&(n, run)| run_single(cfg, n, run).map(|result| SweepRecord { n, run, result }))
            .collect::<Result<Vec<_>>>()
    })?;
    let summaries = cfg.sizes.iter().map(|&n| summarize_size(&records, n, cfg.include_unfinished)).collect();
    Ok(SweepOutput { records, summaries })
}

fn summarize_size(records: &[SweepRecord], n: usize, include_unfinished: bool) -> SweepSummary {
    let at_n = records.iter().filter(|r| r.n == n);
    let unfinished = at_n.clone().filter(|r| !r.result.finished).count();
    let values: Vec<f64> =
        at_n.filter(|r| include_unfinished || r.result.finished).map(SweepRecord::evals_over_n2).collect();
    SweepSummary { n, runs: values.len(), unfinished, stat: summarize(&values).ok() }
}

pub fn write_raw<W: Write>(cfg: &SweepConfig, out: &SweepOutput, w: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(RAW_HEADER)?;
    let (algo, policy) = (cfg.algorithm.to_string(), cfg.policy_label());
    for r in &out.records {
        csv.write_record([
            algo.clone(),
            policy.clone(),
            r.n.to_string(),
            r.run.to_string(),
            r.result.seed.to_string(),
            r.result.evaluations.to_string(),
            r.result.iterations.to_string(),
            r.result.finished.to_string(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_summary<W: Write>(cfg: &SweepConfig, out: &SweepOutput, w: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(SUMMARY_HEADER)?;
    let (algo, policy) = (cfg.algorithm.to_string(), cfg.policy_label());
    for s in &out.summaries {
        let (mean, std) = match s.stat {
            Some(st) => (st.mean.to_string(), st.std.to_string()),
            None => (String::new(), String::new()),
        };
        csv.write_record([algo.clone(), policy.clone(), s.n.to_string(), s.runs.to_string(), mean, std])?;
    }
    csv.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(algorithm: Algorithm, policy: Option<&str>) -> SweepConfig {
        SweepConfig::new(algorithm, policy.map(|p| p.parse().unwrap()), vec![8, 16], 5, 42)
    }

    #[test]
    fn validation() {
        assert!(cfg(Algorithm::Ollga, None).validate().is_err());
        assert!(cfg(Algorithm::Ollga, Some("log")).validate().is_ok());
        assert!(cfg(Algorithm::Ollga, Some("static:0.5")).validate().is_err());
        let mut c = cfg(Algorithm::Rls, None);
        c.runs = 0;
        assert!(c.validate().is_err());
        c.runs = 1;
        c.sizes = vec![1];
        assert!(c.validate().is_err());
        c.sizes.clear();
        assert!(c.validate().is_err());
    }

    #[test]
    fn budget_formula() {
        let c = cfg(Algorithm::Rls, None);
        assert_eq!(c.budget(16), (50.0 * 256.0 * 16f64.ln()).ceil() as u64);
    }

    #[test]
    fn rows_ordered_and_seeded_per_run() {
        let c = cfg(Algorithm::Ollga, Some("static:3"));
        let out = run_sweep(&c).unwrap();
        assert_eq!(out.records.len(), 10);
        for (k, r) in out.records.iter().enumerate() {
            assert_eq!((r.n, r.run), (c.sizes[k / 5], k as u64 % 5));
            assert_eq!(r.result.seed, derive_seed(42, r.run));
            assert!(r.result.finished);
        }
        assert_eq!(out.summaries[0].runs, 5);
    }

    #[test]
    fn single_run_summary_is_the_run() {
        let mut c = cfg(Algorithm::Ea, None);
        c.runs = 1;
        let out = run_sweep(&c).unwrap();
        let s = out.summaries[1].stat.unwrap();
        assert_eq!(s.mean, out.records[1].evals_over_n2());
        assert_eq!(s.std, 0.0);
    }

    #[test]
    fn tiny_budget_flags_runs() {
        let mut c = cfg(Algorithm::Rls, None);
        c.budget_mult = 1e-6;
        let out = run_sweep(&c).unwrap();
        assert!(out.records.iter().all(|r| !r.result.finished));
        assert_eq!(out.summaries[0].runs, 0);
        assert!(out.summaries[0].stat.is_none());
        c.include_unfinished = true;
        assert_eq!(run_sweep(&c).unwrap().summaries[0].runs, 5);
    }

    #[test]
    fn csv_is_deterministic_across_thread_counts() {
        let render = |threads| {
            let mut c = cfg(Algorithm::Ollga, Some("adjust:1.5,1,n"));
            c.threads = Some(threads);
            let out = run_sweep(&c).unwrap();
            let (mut raw, mut sum) = (Vec::new(), Vec::new());
            write_raw(&c, &out, &mut raw).unwrap();
            write_summary(&c, &out, &mut sum).unwrap();
            (raw, sum)
        };
        let a = render(1);
        assert_eq!(a, render(3));
        let text = String::from_utf8(a.0).unwrap();
        assert!(text.starts_with("algo,policy,n,run,seed,evaluations,iterations,finished\n"));
        assert!(text.lines().nth(1).unwrap().starts_with("ollga,\"adjust:1.5,1,n\",8,0,"));
        assert!(String::from_utf8(a.1)
            .unwrap()
            .starts_with("algo,policy,n,runs,mean_evals_over_n2,std_evals_over_n2\n"));
    }
}
