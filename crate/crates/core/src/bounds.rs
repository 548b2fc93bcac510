//! Closed-form scaling laws on the number of measurements.
//!
//! These calculators evaluate, at finite parameters, the sufficient and
//! necessary measurement counts known for each detector family, plus the
//! sum-rate to coordinated-capacity ratio. All logarithms are natural. Where
//! a law carries an unspecified constant it is taken as an explicit input
//! (default 1) — the results are meaningful up to that constant.
//!
//! Each law exists in its full in-text form; the `*_simplified` variants are
//! the looser leading-term forms obtained by bounding the cross term
//! `L(lambda, n)` by `4 ln(n (1 - lambda))`.

use crate::{Error, Result};

/// Common inputs for the ML and single-user laws.
#[derive(Debug, Clone, Copy)]
pub struct ScalingInputs {
    /// Number of users.
    pub n: usize,
    /// Activity ratio in (0, 1).
    pub lambda: f64,
    /// Total SNR, linear scale.
    pub snr: f64,
    /// Minimum-to-average power ratio in (0, 1].
    pub mar: f64,
    /// Slack parameter; the laws are stated for any positive slack and the
    /// boundary value 0 gives the leading-term figure.
    pub delta: f64,
    /// Stand-in for the laws' unspecified constants.
    pub c_const: f64,
}

impl ScalingInputs {
    pub fn new(n: usize, lambda: f64, snr: f64, mar: f64) -> Result<ScalingInputs> {
        let s = ScalingInputs {
            n,
            lambda,
            snr,
            mar,
            delta: 0.0,
            c_const: 1.0,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_delta(mut self, delta: f64) -> Result<ScalingInputs> {
        self.delta = delta;
        self.validate()?;
        Ok(self)
    }

    pub fn with_c_const(mut self, c: f64) -> Result<ScalingInputs> {
        self.c_const = c;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return Err(Error::invalid(format!(
                "lambda must lie in (0, 1), got {}",
                self.lambda
            )));
        }
        if !(self.snr > 0.0) {
            return Err(Error::invalid(format!("snr must be positive, got {}", self.snr)));
        }
        if !(self.mar > 0.0 && self.mar <= 1.0) {
            return Err(Error::invalid(format!(
                "mar must lie in (0, 1], got {}",
                self.mar
            )));
        }
        if self.delta < 0.0 {
            return Err(Error::invalid("delta must be nonnegative"));
        }
        if self.c_const < 0.0 {
            return Err(Error::invalid("constant must be nonnegative"));
        }
        Ok(())
    }
}

fn ln_inactive(lambda: f64, n: usize) -> Result<f64> {
    let arg = n as f64 * (1.0 - lambda);
    if arg <= 1.0 {
        return Err(Error::invalid(format!(
            "n (1 - lambda) must exceed 1, got {arg}"
        )));
    }
    Ok(arg.ln())
}

fn ln_active(lambda: f64, n: usize) -> Result<f64> {
    let arg = n as f64 * lambda;
    if arg <= 1.0 {
        return Err(Error::invalid(format!("n lambda must exceed 1, got {arg}")));
    }
    Ok(arg.ln())
}

/// The cross-term factor
/// `L(lambda, n) = (sqrt(ln(n (1-lambda))) + sqrt(ln(n lambda)))^2`.
///
/// For `lambda` in (0, 1/2) it is sandwiched between `ln((1-lambda) n)` and
/// `4 ln((1-lambda) n)`.
pub fn l_factor(lambda: f64, n: usize) -> Result<f64> {
    let a = ln_inactive(lambda, n)?;
    let b = ln_active(lambda, n)?;
    let s = a.sqrt() + b.sqrt();
    Ok(s * s)
}

/// Measurements below which ML detection must fail:
/// `(1 - delta) lambda n ln(n (1-lambda)) / (mar snr) + lambda n`.
pub fn ml_necessary_m(inputs: &ScalingInputs) -> Result<f64> {
    inputs.validate()?;
    let k = inputs.lambda * inputs.n as f64;
    let log_term = ln_inactive(inputs.lambda, inputs.n)?;
    Ok((1.0 - inputs.delta) * k * log_term / (inputs.mar * inputs.snr) + k)
}

/// Measurements sufficient for ML detection, up to the unspecified constant:
/// `C max{ lambda n ln(n (1-lambda)) / (mar snr), lambda n ln(1/lambda) }`.
pub fn ml_sufficient_m(inputs: &ScalingInputs) -> Result<f64> {
    inputs.validate()?;
    let k = inputs.lambda * inputs.n as f64;
    let noise_branch = k * ln_inactive(inputs.lambda, inputs.n)? / (inputs.mar * inputs.snr);
    let combinatorial_branch = k * (1.0 / inputs.lambda).ln();
    Ok(inputs.c_const * noise_branch.max(combinatorial_branch))
}

/// Measurements sufficient for single-user (correlation) detection:
/// `(1 + delta) L(lambda, n) (1 + snr) lambda n / (snr mar)`.
pub fn sud_sufficient_m(inputs: &ScalingInputs) -> Result<f64> {
    inputs.validate()?;
    let k = inputs.lambda * inputs.n as f64;
    let l = l_factor(inputs.lambda, inputs.n)?;
    Ok((1.0 + inputs.delta) * l * (1.0 + inputs.snr) * k / (inputs.snr * inputs.mar))
}

/// The looser single-user law with `L` replaced by `4 ln(n (1-lambda))`.
pub fn sud_sufficient_m_simplified(inputs: &ScalingInputs) -> Result<f64> {
    inputs.validate()?;
    let k = inputs.lambda * inputs.n as f64;
    let log_term = ln_inactive(inputs.lambda, inputs.n)?;
    Ok((1.0 + inputs.delta) * 4.0 * log_term * (1.0 + inputs.snr) * k / (inputs.snr * inputs.mar))
}

/// Lasso's high-SNR boundary: `lambda n ln(n (1-lambda)) + lambda n + 1`.
pub fn lasso_m(lambda: f64, n: usize) -> Result<f64> {
    let k = lambda * n as f64;
    Ok(k * ln_inactive(lambda, n)? + k + 1.0)
}

/// OMP's noiseless sufficiency: `2 lambda n ln(n) + C lambda n`.
pub fn omp_m(lambda: f64, n: usize, c_const: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid("lambda must lie in (0, 1)"));
    }
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if c_const < 0.0 {
        return Err(Error::invalid("constant must be nonnegative"));
    }
    let k = lambda * n as f64;
    Ok(2.0 * k * (n as f64).ln() + c_const * k)
}

/// Sequential detection sufficiency at a given minimum SINR `gamma`:
/// `(1 + delta) L(lambda, n) / gamma + lambda n`.
pub fn seqomp_m(lambda: f64, n: usize, gamma: f64, delta: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::invalid("gamma must be positive"));
    }
    if delta < 0.0 {
        return Err(Error::invalid("delta must be nonnegative"));
    }
    let k = lambda * n as f64;
    Ok((1.0 + delta) * l_factor(lambda, n)? / gamma + k)
}

/// Sequential detection with exponential power shaping:
/// `(1 + delta) L(lambda, n) lambda n / ln(1 + snr) + lambda n`.
pub fn seqomp_shaped_m(lambda: f64, n: usize, snr: f64, delta: f64) -> Result<f64> {
    if !(snr > 0.0) {
        return Err(Error::invalid("snr must be positive"));
    }
    if delta < 0.0 {
        return Err(Error::invalid("delta must be nonnegative"));
    }
    let k = lambda * n as f64;
    Ok((1.0 + delta) * l_factor(lambda, n)? * k / snr.ln_1p() + k)
}

/// The shaped law with `L` replaced by `4 ln(n (1-lambda))`; with
/// `snr = lambda n` this approaches `5 lambda n` as `n` grows.
pub fn seqomp_shaped_m_simplified(lambda: f64, n: usize, snr: f64, delta: f64) -> Result<f64> {
    if !(snr > 0.0) {
        return Err(Error::invalid("snr must be positive"));
    }
    if delta < 0.0 {
        return Err(Error::invalid("delta must be nonnegative"));
    }
    let k = lambda * n as f64;
    Ok((1.0 + delta) * 4.0 * ln_inactive(lambda, n)? * k / snr.ln_1p() + k)
}

/// Binary entropy in nats.
pub fn binary_entropy_nats(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid("lambda must lie in (0, 1)"));
    }
    Ok(-lambda * lambda.ln() - (1.0 - lambda) * (1.0 - lambda).ln())
}

/// Sum rate of on-off signalling versus coordinated single-user capacity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumRate {
    /// `R = n h(lambda)` in nats.
    pub rate_nats: f64,
    /// `C = m ln(1 + snr)` in nats.
    pub capacity_nats: f64,
    /// `R / C`.
    pub ratio: f64,
}

impl SumRate {
    pub fn rate_bits(&self) -> f64 {
        self.rate_nats / std::f64::consts::LN_2
    }

    pub fn capacity_bits(&self) -> f64 {
        self.capacity_nats / std::f64::consts::LN_2
    }
}

/// Computes `R = n h(lambda)`, `C = m ln(1 + snr)`, and their ratio.
pub fn sum_rate_ratio(n: usize, lambda: f64, snr: f64, m: f64) -> Result<SumRate> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if !(snr > 0.0) {
        return Err(Error::invalid("snr must be positive"));
    }
    if !(m >= 1.0) {
        return Err(Error::invalid("m must be at least 1"));
    }
    let rate = n as f64 * binary_entropy_nats(lambda)?;
    let capacity = m * snr.ln_1p();
    Ok(SumRate {
        rate_nats: rate,
        capacity_nats: capacity,
        ratio: rate / capacity,
    })
}
