//! Null law of the correlation statistic and threshold selection.
//!
//! For an inactive user `j`, the single-user statistic
//! `rho(j) = |a_j' y|^2 / (||a_j||^2 ||y||^2)` is the squared correlation
//! between an `m`-dimensional complex Gaussian codeword and an independent
//! received vector. Writing it as a ratio of chi-squared parts with 2 and
//! `2(m-1)` degrees of freedom gives a Beta law (shape parameters 1 and
//! `m - 1`), whose tail for large `m` is approximately `exp(-mu m)`. The
//! threshold for a desired false-alarm probability can therefore be chosen
//! either by the closed approximation `mu = -ln(pfa) / m` or by inverting the
//! exact Beta tail.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub mod betainc;

/// Distribution of the correlation statistic for an inactive user at `m`
/// degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NullModel {
    m: usize,
}

impl NullModel {
    pub fn new(m: usize) -> Result<NullModel> {
        if m < 2 {
            return Err(Error::invalid(format!(
                "null model needs m >= 2 degrees of freedom, got {m}"
            )));
        }
        Ok(NullModel { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn alpha(&self) -> f64 {
        1.0
    }

    fn beta(&self) -> f64 {
        (self.m - 1) as f64
    }

    /// CDF at `x`, via the regularized incomplete beta function.
    pub fn cdf(&self, x: f64) -> f64 {
        betainc::betainc_reg(self.alpha(), self.beta(), x.clamp(0.0, 1.0))
    }

    /// Survival function at `x`, computed through the mirrored incomplete
    /// beta to avoid cancellation in `1 - cdf` deep in the tail.
    pub fn tail(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        betainc::betainc_reg(self.beta(), self.alpha(), 1.0 - x)
    }

    /// Density at `x`: `(m - 1) (1 - x)^(m - 2)`.
    pub fn pdf(&self, x: f64) -> f64 {
        if !(0.0..=1.0).contains(&x) {
            return 0.0;
        }
        let b = self.beta();
        b * (1.0 - x).powf(b - 1.0)
    }
}

/// How to map a false-alarm target to a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMode {
    /// The closed approximation `mu = -ln(pfa) / m`.
    #[default]
    Approx,
    /// Invert the exact Beta tail by bisection to 1e-12.
    Exact,
}

/// Threshold such that an inactive user exceeds it with probability `pfa`.
pub fn threshold_from_pfa(pfa: f64, m: usize, mode: ThresholdMode) -> Result<f64> {
    if !(pfa > 0.0 && pfa < 1.0) {
        return Err(Error::invalid(format!("pfa must lie in (0, 1), got {pfa}")));
    }
    if m < 2 {
        return Err(Error::invalid(format!("threshold needs m >= 2, got {m}")));
    }
    match mode {
        ThresholdMode::Approx => {
            let mu = -pfa.ln() / m as f64;
            if mu >= 1.0 {
                return Err(Error::invalid(format!(
                    "m = {m} is too small for pfa = {pfa}: approximate threshold {mu} >= 1"
                )));
            }
            Ok(mu)
        }
        ThresholdMode::Exact => {
            let null = NullModel::new(m)?;
            // tail is strictly decreasing from 1 at 0 to 0 at 1.
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                if null.tail(mid) > pfa {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(0.5 * (lo + hi))
        }
    }
}

/// Exact probability that an inactive user's statistic exceeds `mu`.
pub fn null_tail(mu: f64, m: usize) -> Result<f64> {
    Ok(NullModel::new(m)?.tail(mu))
}

/// The large-`m` tail approximation `exp(-mu m)`.
pub fn null_tail_approx(mu: f64, m: usize) -> f64 {
    (-mu * m as f64).exp()
}
