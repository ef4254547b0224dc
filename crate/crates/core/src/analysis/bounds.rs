use core::fmt;

use crate::mutation::mutation_space_size;
use crate::{Error, MutationKind, Result};

/// Fitness threshold τ separating the good mutant from the others.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Threshold {
    MinusTwo,
    MinusOne,
    Zero,
}

impl Threshold {
    pub const ALL: [Threshold; 3] = [Threshold::Zero, Threshold::MinusOne, Threshold::MinusTwo];

    pub fn value(self) -> i32 {
        match self {
            Threshold::Zero => 0,
            Threshold::MinusOne => -1,
            Threshold::MinusTwo => -2,
        }
    }
}

impl TryFrom<i32> for Threshold {
    type Error = Error;

    fn try_from(v: i32) -> Result<Self> {
        match v {
            0 => Ok(Threshold::Zero),
            -1 => Ok(Threshold::MinusOne),
            -2 => Ok(Threshold::MinusTwo),
            _ => Err(Error::InvalidParameter("threshold must be 0, -1 or -2")),
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// How the `ℓ` mutations of one mutant are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SamplingMode {
    /// Independent uniform draws; the independence structure the bounds assume.
    WithReplacement,
    /// Distinct mutations in random order, as the algorithm does.
    WithoutReplacement,
}

/// One iteration's shape: `λ` mutants of `ℓ` exchanges each, parent fitness `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IterationModel {
    pub n: usize,
    pub f: usize,
    pub lambda: usize,
    pub ell: usize,
    pub mode: SamplingMode,
}

impl IterationModel {
    pub fn new(n: usize, f: usize, lambda: usize, ell: usize, mode: SamplingMode) -> Result<Self> {
        let m = mutation_space_size(MutationKind::Exchange, n)?;
        if f >= n {
            return Err(Error::InvalidFitness { value: f, n });
        }
        if lambda == 0 {
            return Err(Error::InvalidParameter("lambda must be at least 1"));
        }
        if ell == 0 || ell as u64 > m {
            return Err(Error::CountOutOfRange { count: ell as u64, max: m });
        }
        Ok(IterationModel { n, f, lambda, ell, mode })
    }

    fn reals(&self) -> (f64, f64, f64, f64) {
        (self.n as f64, self.f as f64, self.lambda as f64, self.ell as f64)
    }
}

fn clamp_probability(p: f64) -> f64 {
    if p.is_nan() {
        0.0
    } else {
        p.clamp(0.0, 1.0)
    }
}

/// Lower bound for τ = 0:
/// `(λℓ/n) · exp(-2ℓ(λ-1)/(n-3) - 2ℓ·M/(n-M))` with `M = min{n, f+2ℓ+1}`.
///
/// Zero once `M` reaches `n`.
pub fn bound_tau0(model: &IterationModel) -> Result<f64> {
    if model.n < 4 {
        return Err(Error::InvalidSize { n: model.n, min: 4 });
    }
    let (n, f, lambda, ell) = model.reals();
    let reach = n.min(f + 2.0 * ell + 1.0);
    if n - reach <= 0.0 {
        return Ok(0.0);
    }
    let exponent = -2.0 * ell * (lambda - 1.0) / (n - 3.0) - 2.0 * ell * reach / (n - reach);
    Ok(clamp_probability(lambda * ell / n * libm::exp(exponent)))
}

/// Lower bound for τ = -1 (requires `f >= 3`):
///
/// `λℓ/(n+f-3) · ((f+1)/(n-1)·(2-f/n) - 4ℓ/(n-1))^((λ-1)ℓ)
///  · (1 - (2ℓ(n+f-3) + (f-2)(f-3)) / (n(n-1)))^ℓ`
///
/// A negative base makes the bound 0, except under a zero exponent.
pub fn bound_tau1(model: &IterationModel) -> Result<f64> {
    if model.f < 3 {
        return Err(Error::PreconditionViolated("the tau = -1 bound needs f >= 3"));
    }
    let (n, f, lambda, ell) = model.reals();
    let lead = lambda * ell / (n + f - 3.0);

    let others_exponent = (model.lambda - 1) * model.ell;
    let others = if others_exponent == 0 {
        1.0
    } else {
        let base = (f + 1.0) / (n - 1.0) * (2.0 - f / n) - 4.0 * ell / (n - 1.0);
        if base < 0.0 {
            return Ok(0.0);
        }
        libm::pow(base, others_exponent as f64)
    };

    let base = 1.0 - (2.0 * ell * (n + f - 3.0) + (f - 2.0) * (f - 3.0)) / (n * (n - 1.0));
    if base < 0.0 {
        return Ok(0.0);
    }
    Ok(clamp_probability(lead * others * libm::pow(base, ell)))
}

/// Lower bound for τ = -2 (requires `f >= 3`, `n >= 4`):
///
/// `λℓ·max{1, (n-f) - 2(ℓ-1)} / (n(n-1))
///  · exp(-2(ℓ-1)(2n-3)/((n-2)(n-3)) - 2(λ-1)ℓ·M/(n-1-2M))`
/// with `M = min{n, (n-f) + 2(ℓ-1)}`.
///
/// Zero when `n - 1 <= 2M` and `λ > 1`; for `λ = 1` the second exponent term
/// vanishes and the guard does not apply.
pub fn bound_tau2(model: &IterationModel) -> Result<f64> {
    if model.n < 4 {
        return Err(Error::InvalidSize { n: model.n, min: 4 });
    }
    if model.f < 3 {
        return Err(Error::PreconditionViolated("the tau = -2 bound needs f >= 3"));
    }
    let (n, f, lambda, ell) = model.reals();
    let distance = n - f;
    let lead = lambda * ell * (distance - 2.0 * (ell - 1.0)).max(1.0) / (n * (n - 1.0));
    let mut exponent = -2.0 * (ell - 1.0) * (2.0 * n - 3.0) / ((n - 2.0) * (n - 3.0));
    if model.lambda > 1 {
        let reach = n.min(distance + 2.0 * (ell - 1.0));
        if n - 1.0 <= 2.0 * reach {
            return Ok(0.0);
        }
        exponent -= 2.0 * (lambda - 1.0) * ell * reach / (n - 1.0 - 2.0 * reach);
    }
    Ok(clamp_probability(lead * libm::exp(exponent)))
}

pub fn good_iteration_bound(model: &IterationModel, tau: Threshold) -> Result<f64> {
    match tau {
        Threshold::Zero => bound_tau0(model),
        Threshold::MinusOne => bound_tau1(model),
        Threshold::MinusTwo => bound_tau2(model),
    }
}

/// The `(λ, ℓ)` on `[1, max_lambda] x [1, max_ell]` maximizing the bound
/// for τ at `(n, f)`, with the bound value. Ties keep the smallest `λℓ`.
pub fn maximize_bound(
    n: usize,
    f: usize,
    tau: Threshold,
    max_lambda: usize,
    max_ell: usize,
) -> Result<(usize, usize, f64)> {
    let mut best = (1, 1, -1.0);
    for lambda in 1..=max_lambda {
        for ell in 1..=max_ell {
            let model = IterationModel::new(n, f, lambda, ell, SamplingMode::WithReplacement)?;
            let value = good_iteration_bound(&model, tau)?;
            if value > best.2 {
                best = (lambda, ell, value);
            }
        }
    }
    Ok(best)
}
