//! Monte-Carlo check of the good-iteration lower bounds over a parameter grid.

use std::io::Write;

use ollga_core::analysis::{
    estimate_good_probability, good_iteration_bound, IterationModel, ParentShape, SamplingMode, Threshold,
};
use ollga_core::RandomSource;
use rayon::prelude::*;

use crate::error::{config, Result};
use crate::spec::FitnessToken;
use crate::thread_pool;

pub const HEADER: [&str; 10] = ["tau", "n", "f", "lambda", "ell", "mode", "bound", "estimate", "halfwidth", "pass"];

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyGrid {
    pub tau: Threshold,
    pub sizes: Vec<usize>,
    pub fitness: Vec<FitnessToken>,
    pub lambdas: Vec<usize>,
    /// `None` pairs `ℓ = λ`; otherwise the full cross product.
    pub ells: Option<Vec<usize>>,
    pub mode: SamplingMode,
    pub shape: ParentShape,
    pub trials: u64,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl VerifyGrid {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.fitness.is_empty() || self.lambdas.is_empty() {
            return Err(config("empty verification grid"));
        }
        if self.ells.as_ref().is_some_and(Vec::is_empty) {
            return Err(config("empty ell list"));
        }
        if self.trials == 0 {
            return Err(config("trials must be at least 1"));
        }
        Ok(())
    }

    fn points(&self) -> Vec<(usize, Option<usize>, usize, usize, String)> {
        let mut out = Vec::new();
        for &n in &self.sizes {
            for (k, &token) in self.fitness.iter().enumerate() {
                let f = token.resolve(n);
                for &lambda in &self.lambdas {
                    let ells = self.ells.clone().unwrap_or_else(|| vec![lambda]);
                    for ell in ells {
                        out.push((n, f, lambda, ell, format!("fitness token #{k}")));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyRow {
    pub tau: Threshold,
    pub n: usize,
    /// `None` when the fitness token does not resolve for this `n`.
    pub f: Option<usize>,
    pub lambda: usize,
    pub ell: usize,
    pub mode: SamplingMode,
    pub bound: Option<f64>,
    pub estimate: Option<f64>,
    pub half_width: Option<f64>,
    pub dominance_violations: u64,
    pub verdict: Verdict,
}

pub fn mode_label(mode: SamplingMode) -> &'static str {
    match mode {
        SamplingMode::WithReplacement => "proof",
        SamplingMode::WithoutReplacement => "algo",
    }
}

pub fn run_verify(grid: &VerifyGrid) -> Result<Vec<VerifyRow>> {
    grid.validate()?;
    let points = grid.points();
    thread_pool(grid.threads)?.install(|| {
        points
            .par_iter()
            .enumerate()
            .map(|(idx, (n, f, lambda, ell, token))| {
                let mut row = VerifyRow {
                    tau: grid.tau,
                    n: *n,
                    f: *f,
                    lambda: *lambda,
                    ell: *ell,
                    mode: grid.mode,
                    bound: None,
                    estimate: None,
                    half_width: None,
                    dominance_violations: 0,
                    verdict: Verdict::Fail,
                };
                let Some(f) = *f else {
                    row.verdict = Verdict::Skipped(format!("{token} is out of range"));
                    return Ok(row);
                };
                let checked = IterationModel::new(*n, f, *lambda, *ell, grid.mode)
                    .and_then(|model| good_iteration_bound(&model, grid.tau).map(|b| (model, b)));
                let (model, bound) = match checked {
                    Ok(v) => v,
                    Err(e) => {
                        row.verdict = Verdict::Skipped(e.to_string());
                        return Ok(row);
                    }
                };
                let mut rng = RandomSource::derive(grid.seed, idx as u64);
                let est = match estimate_good_probability(&model, grid.tau, grid.trials, grid.shape, &mut rng) {
                    Ok(est) => est,
                    Err(e) => {
                        row.verdict = Verdict::Skipped(e.to_string());
                        return Ok(row);
                    }
                };
                row.bound = Some(bound);
                row.estimate = Some(est.estimate);
                row.half_width = Some(est.half_width);
                row.dominance_violations = est.dominance_violations;
                row.verdict = if est.estimate + est.half_width >= bound { Verdict::Pass } else { Verdict::Fail };
                Ok(row)
            })
            .collect()
    })
}

pub fn failures(rows: &[VerifyRow]) -> usize {
    rows.iter().filter(|r| r.verdict == Verdict::Fail).count()
}

pub fn write_rows<W: Write>(rows: &[VerifyRow], w: W) -> Result<()> {
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(HEADER)?;
    for r in rows {
        let pass = match &r.verdict {
            Verdict::Pass => "pass".to_string(),
            Verdict::Fail => "fail".to_string(),
            Verdict::Skipped(reason) => format!("skipped: {reason}"),
        };
        csv.write_record([
            r.tau.to_string(),
            r.n.to_string(),
            r.f.map(|f| f.to_string()).unwrap_or_default(),
            r.lambda.to_string(),
            r.ell.to_string(),
            mode_label(r.mode).to_string(),
            opt(r.bound),
            opt(r.estimate),
            opt(r.half_width),
            pass,
        ])?;
    }
    csv.flush()?;
    Ok(())
}
