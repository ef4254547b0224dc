use crate::{Error, Result};

/// How λ is chosen for each iteration of the (1+(λ,λ)) GA.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaPolicy {
    /// A fixed λ for the whole run.
    Static { lambda: f64 },
    /// `λ = 2 ln(n + 1)`, fixed for the run.
    StaticLog,
    /// One-fifth rule: divide by `factor` after an improvement, multiply by
    /// `factor^(1/4)` otherwise, clamped to `[min, max]`.
    SelfAdjusting { factor: f64, min: f64, max: f64, current: f64 },
    /// Fitness-dependent five-regime schedule, see [`lambda_schedule_theoretical`].
    Theoretical { c1: f64, c2: f64 },
}

impl LambdaPolicy {
    pub fn fixed(lambda: f64) -> Result<Self> {
        if !(lambda >= 1.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter("static lambda must be a finite value >= 1"));
        }
        Ok(LambdaPolicy::Static { lambda })
    }

    /// Starts at `min`.
    pub fn self_adjusting(factor: f64, min: f64, max: f64) -> Result<Self> {
        if !(factor > 1.0 && factor < 2.0) {
            return Err(Error::InvalidParameter("update factor must lie in (1, 2)"));
        }
        if !(min >= 1.0 && min <= max && max.is_finite()) {
            return Err(Error::InvalidParameter("need 1 <= lambda_min <= lambda_max < inf"));
        }
        Ok(LambdaPolicy::SelfAdjusting { factor, min, max, current: min })
    }

    pub fn theoretical(c1: f64, c2: f64) -> Result<Self> {
        if !(0.0 < c1 && c1 < 0.5 && 0.5 < c2 && c2 < 1.0) {
            return Err(Error::InvalidParameter("need 0 < c1 < 1/2 < c2 < 1"));
        }
        Ok(LambdaPolicy::Theoretical { c1, c2 })
    }

    /// λ to use at problem size `n` and parent fitness `f`.
    pub fn lambda(&self, n: usize, f: usize) -> Result<f64> {
        Ok(match *self {
            LambdaPolicy::Static { lambda } => lambda,
            LambdaPolicy::StaticLog => log_lambda(n),
            LambdaPolicy::SelfAdjusting { current, .. } => current,
            LambdaPolicy::Theoretical { c1, c2 } => lambda_schedule_theoretical(n, f, c1, c2)?,
        })
    }

    /// Feeds back whether the last iteration strictly improved the parent.
    pub fn update(&mut self, improved: bool) {
        if let LambdaPolicy::SelfAdjusting { factor, min, max, current } = self {
            let next = if improved { *current / *factor } else { *current * libm::pow(*factor, 0.25) };
            *current = next.clamp(*min, *max);
        }
    }
}

/// `2 ln(n + 1)`.
pub(crate) fn log_lambda(n: usize) -> f64 {
    2.0 * libm::log(n as f64 + 1.0)
}

pub fn lambda_policy_update(policy: &LambdaPolicy, improved: bool) -> LambdaPolicy {
    let mut next = policy.clone();
    next.update(improved);
    next
}

/// Fitness-dependent λ with unit leading constants:
///
/// | fitness                          | λ               |
/// |----------------------------------|-----------------|
/// | `f <= √n`                        | `√n`            |
/// | `√n < f < c1·n`                  | `n / f`         |
/// | `c1·n <= f <= c2·n`              | `1`             |
/// | `c2·n < f < n - n^(1/3)`         | `√(n / (n-f))`  |
/// | `f >= n - n^(1/3)`               | `(2n/3)^(1/3)`  |
pub fn lambda_schedule_theoretical(n: usize, f: usize, c1: f64, c2: f64) -> Result<f64> {
    if f >= n {
        return Err(Error::PreconditionViolated("schedule is defined for f < n only"));
    }
    let (nf, ff) = (n as f64, f as f64);
    let sqrt_n = libm::sqrt(nf);
    Ok(if ff <= sqrt_n {
        sqrt_n
    } else if ff < c1 * nf {
        nf / ff
    } else if ff <= c2 * nf {
        1.0
    } else if ff < nf - libm::cbrt(nf) {
        libm::sqrt(nf / (nf - ff))
    } else {
        libm::cbrt(2.0 * nf / 3.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn one_fifth_rule_examples() {
        let p = LambdaPolicy::SelfAdjusting { factor: 1.5, min: 1.0, max: 100.0, current: 4.0 };
        let up = lambda_policy_update(&p, true);
        assert!(close(up.lambda(10, 0).unwrap(), 8.0 / 3.0, 1e-12));
        let down = lambda_policy_update(&p, false);
        assert!(close(down.lambda(10, 0).unwrap(), 4.426_727_678, 1e-8));
        let top = LambdaPolicy::SelfAdjusting { factor: 1.5, min: 1.0, max: 4.0, current: 4.0 };
        assert_eq!(lambda_policy_update(&top, false).lambda(10, 0).unwrap(), 4.0);
        let bottom = LambdaPolicy::SelfAdjusting { factor: 1.5, min: 1.0, max: 4.0, current: 1.2 };
        assert_eq!(lambda_policy_update(&bottom, true).lambda(10, 0).unwrap(), 1.0);
    }

    #[test]
    fn static_policies_ignore_updates() {
        let p = LambdaPolicy::fixed(10.0).unwrap();
        assert_eq!(lambda_policy_update(&p, true), p);
        let l = LambdaPolicy::StaticLog;
        assert!(close(l.lambda(256, 7).unwrap(), 2.0 * 257f64.ln(), 1e-12));
        assert_eq!(lambda_policy_update(&l, false), l);
    }

    #[test]
    fn constructors_validate() {
        assert!(LambdaPolicy::fixed(0.5).is_err());
        assert!(LambdaPolicy::self_adjusting(2.0, 1.0, 10.0).is_err());
        assert!(LambdaPolicy::self_adjusting(1.5, 5.0, 2.0).is_err());
        assert!(LambdaPolicy::theoretical(0.5, 0.6).is_err());
        assert!(LambdaPolicy::theoretical(0.4, 1.0).is_err());
        assert_eq!(LambdaPolicy::self_adjusting(1.5, 1.0, 8.0).unwrap().lambda(8, 0).unwrap(), 1.0);
    }

    #[test]
    fn theoretical_schedule_examples() {
        assert!(close(lambda_schedule_theoretical(10_000, 50, 0.4, 0.6).unwrap(), 100.0, 1e-12));
        assert_eq!(lambda_schedule_theoretical(10_000, 5000, 0.4, 0.6).unwrap(), 1.0);
        let last = lambda_schedule_theoretical(10_000, 9999, 0.4, 0.6).unwrap();
        assert!(close(last, (20_000.0f64 / 3.0).cbrt(), 1e-12));
        assert!(close(last, 18.82, 0.01));
        assert!(lambda_schedule_theoretical(100, 100, 0.4, 0.6).is_err());
    }

    #[test]
    fn theoretical_schedule_regime_edges() {
        let n = 10_000;
        // f = √n belongs to the first regime, f = 101 to the second.
        assert_eq!(lambda_schedule_theoretical(n, 100, 0.4, 0.6).unwrap(), 100.0);
        assert!(close(lambda_schedule_theoretical(n, 101, 0.4, 0.6).unwrap(), 10_000.0 / 101.0, 1e-12));
        assert!(close(lambda_schedule_theoretical(n, 3999, 0.4, 0.6).unwrap(), 10_000.0 / 3999.0, 1e-12));
        assert_eq!(lambda_schedule_theoretical(n, 4000, 0.4, 0.6).unwrap(), 1.0);
        assert_eq!(lambda_schedule_theoretical(n, 6000, 0.4, 0.6).unwrap(), 1.0);
        assert!(close(lambda_schedule_theoretical(n, 6001, 0.4, 0.6).unwrap(), (10_000.0f64 / 3999.0).sqrt(), 1e-12));
        // n - n^(1/3) = 9978.46...
        assert!(close(lambda_schedule_theoretical(n, 9978, 0.4, 0.6).unwrap(), (10_000.0f64 / 22.0).sqrt(), 1e-12));
        assert!(close(lambda_schedule_theoretical(n, 9979, 0.4, 0.6).unwrap(), (20_000.0f64 / 3.0).cbrt(), 1e-12));
    }

    #[test]
    fn theoretical_schedule_is_at_least_one() {
        for n in 2..300 {
            for f in 0..n {
                assert!(lambda_schedule_theoretical(n, f, 0.4, 0.6).unwrap() >= 1.0, "n={n} f={f}");
            }
        }
    }
}
