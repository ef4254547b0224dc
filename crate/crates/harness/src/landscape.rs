//! Per-distance cost of static-λ runs over a multiplicative λ lattice.

use std::io::Write;

use ollga_core::algorithms::{ollga_run, LambdaPolicy, RunOptions};
use ollga_core::{HamProblem, MutationFamily, RandomSource};
use rayon::prelude::*;

use crate::error::{config, Result};
use crate::sweep::DEFAULT_BUDGET_MULT;
use crate::thread_pool;

pub const HEADER: [&str; 7] =
    ["n", "lambda", "distance", "samples", "mean_evals_to_improve", "improve_prob", "rel_perf"];

#[derive(Clone, Debug, PartialEq)]
pub struct LandscapeConfig {
    pub n: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub step: f64,
    pub runs: u64,
    pub seed: u64,
    pub budget_mult: f64,
    pub threads: Option<usize>,
}

impl LandscapeConfig {
    pub fn new(n: usize, lambda_min: f64, lambda_max: f64, runs: u64, seed: u64) -> Self {
        LandscapeConfig {
            n,
            lambda_min,
            lambda_max,
            step: 1.05,
            runs,
            seed,
            budget_mult: DEFAULT_BUDGET_MULT,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(config("n must be at least 2"));
        }
        if !(self.step > 1.0 && self.step.is_finite()) {
            return Err(config("lattice step must exceed 1"));
        }
        if !(self.lambda_min >= 1.0 && self.lambda_min <= self.lambda_max && self.lambda_max.is_finite()) {
            return Err(config("need 1 <= lambda_min <= lambda_max"));
        }
        if self.runs == 0 {
            return Err(config("runs must be at least 1"));
        }
        if !(self.budget_mult > 0.0 && self.budget_mult.is_finite()) {
            return Err(config("budget multiplier must be positive"));
        }
        Ok(())
    }

    /// `λ_min · step^k` for every `k` that stays within `λ_max`.
    pub fn lattice(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut k = 0;
        loop {
            let lambda = self.lambda_min * self.step.powi(k);
            if lambda > self.lambda_max * (1.0 + 1e-12) {
                return out;
            }
            out.push(lambda);
            k += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LandscapeRow {
    pub n: usize,
    pub lambda: f64,
    pub distance: usize,
    /// Runs whose parent sat at this distance at least once.
    pub samples: u64,
    /// Mean over those runs of the evaluations spent at this distance.
    pub mean_evals_to_improve: f64,
    /// Fraction of iterations started at this distance that improved.
    pub improve_prob: f64,
    /// Best mean at this distance over all λ divided by this mean; 1 for the best λ.
    pub rel_perf: f64,
}

#[derive(Clone, Copy, Default)]
struct LevelTotals {
    samples: u64,
    evaluations: u64,
    iterations: u64,
    improvements: u64,
}

/// Rows ordered by λ, then distance. Unvisited levels get no row.
pub fn run_landscape(cfg: &LandscapeConfig) -> Result<Vec<LandscapeRow>> {
    cfg.validate()?;
    let n = cfg.n;
    let problem = HamProblem::identity(n)?;
    let family = MutationFamily::exchange(n)?;
    let budget = (cfg.budget_mult * (n * n) as f64 * (n as f64).ln()).ceil().max(1.0) as u64;
    let lattice = cfg.lattice();
    let tasks: Vec<(usize, u64)> = (0..lattice.len()).flat_map(|l| (0..cfg.runs).map(move |r| (l, r))).collect();

    // Common random numbers: run r uses the same stream for every λ.
    let per_run = thread_pool(cfg.threads)?.install(|| {
        tasks
            .par_iter()
            .map(|&(l, run)| {
                let policy = LambdaPolicy::fixed(lattice[l])?;
                let mut rng = RandomSource::derive(cfg.seed, run);
                let options = RunOptions::with_budget(budget).recording_levels();
                let result = ollga_run(&problem, &family, &policy, &mut rng, options)?;
                Ok(result.per_level.unwrap_or_default())
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut totals = vec![vec![LevelTotals::default(); n + 1]; lattice.len()];
    for (&(l, _), levels) in tasks.iter().zip(&per_run) {
        for (d, cost) in levels.iter().enumerate() {
            if cost.iterations > 0 {
                let t = &mut totals[l][d];
                t.samples += 1;
                t.evaluations += cost.evaluations;
                t.iterations += cost.iterations;
                t.improvements += cost.improvements;
            }
        }
    }

    let mean = |t: &LevelTotals| t.evaluations as f64 / t.samples as f64;
    let best: Vec<f64> = (0..=n)
        .map(|d| totals.iter().map(|per_l| &per_l[d]).filter(|t| t.samples > 0).map(mean).fold(f64::INFINITY, f64::min))
        .collect();

    let mut rows = Vec::new();
    for (l, &lambda) in lattice.iter().enumerate() {
        for d in 0..=n {
            let t = &totals[l][d];
            if t.samples == 0 {
                continue;
            }
            let m = mean(t);
            rows.push(LandscapeRow {
                n,
                lambda,
                distance: d,
                samples: t.samples,
                mean_evals_to_improve: m,
                improve_prob: t.improvements as f64 / t.iterations as f64,
                rel_perf: best[d] / m,
            });
        }
    }
    Ok(rows)
}

/// The λ with the highest relative performance at distance `d`, if any row exists.
pub fn argmax_lambda(rows: &[LandscapeRow], d: usize) -> Option<f64> {
    rows.iter().filter(|r| r.distance == d).max_by(|a, b| a.rel_perf.total_cmp(&b.rel_perf)).map(|r| r.lambda)
}

pub fn write_rows<W: Write>(rows: &[LandscapeRow], w: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(HEADER)?;
    for r in rows {
        csv.write_record([
            r.n.to_string(),
            r.lambda.to_string(),
            r.distance.to_string(),
            r.samples.to_string(),
            r.mean_evals_to_improve.to_string(),
            r.improve_prob.to_string(),
            r.rel_perf.to_string(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}
