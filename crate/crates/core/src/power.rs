//! Receive power profiles and SINR figures for sequential detection.
//!
//! A power profile assigns each user `j` a conditional receive power `p_j`
//! (the power it arrives with *given* that it is active). With activity
//! probability `lambda`, the total average SNR is `lambda * sum_j p_j`, and
//! every constructor here enforces that constraint exactly.
//!
//! When users are detected and cancelled in index order, the user at
//! position `l` sees residual interference `sigma2(l) = 1 + lambda *
//! sum_{j>l} p_j` (unit noise power plus the average energy of the not yet
//! cancelled users), so its SINR is `p_l / sigma2(l)`. Three profiles are
//! provided:
//!
//! - **constant** — every user at the same power;
//! - **exponential** — the profile that equalizes (and thereby maximizes)
//!   the per-position SINR, exponentially decreasing in the index;
//! - **robust** — the exponential family tempered by a leakage fraction
//!   `theta`, modelling that a `theta` fraction of already-passed users'
//!   energy stays uncancelled; `theta = 0` recovers the exponential profile
//!   and `theta = 1` the constant one.

use crate::{Error, Result};

/// Deterministic per-user conditional receive powers, largest first.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerProfile {
    powers: Vec<f64>,
    activity_probability: f64,
    total_snr: f64,
}

const PROFILE_TOL: f64 = 1e-9;

fn check_common(n: usize, lambda: f64, snr: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("profile needs at least one user"));
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid(format!(
            "activity probability must lie in (0, 1), got {lambda}"
        )));
    }
    if !(snr > 0.0) || !snr.is_finite() {
        return Err(Error::invalid(format!("snr must be positive, got {snr}")));
    }
    Ok(())
}

impl PowerProfile {
    /// Builds a profile from explicit powers, validating the SNR constraint.
    pub fn from_parts(powers: Vec<f64>, lambda: f64, snr: f64) -> Result<PowerProfile> {
        check_common(powers.len(), lambda, snr)?;
        if powers.iter().any(|&p| !(p > 0.0) || !p.is_finite()) {
            return Err(Error::invalid("all powers must be positive and finite"));
        }
        let total = lambda * powers.iter().sum::<f64>();
        if (total - snr).abs() > PROFILE_TOL * snr {
            return Err(Error::invalid(format!(
                "lambda * sum(p) = {total} does not match snr = {snr}"
            )));
        }
        Ok(PowerProfile {
            powers,
            activity_probability: lambda,
            total_snr: snr,
        })
    }

    /// Equal power for every user: `p_j = snr / (lambda n)`.
    pub fn constant(n: usize, lambda: f64, snr: f64) -> Result<PowerProfile> {
        check_common(n, lambda, snr)?;
        let p = snr / (lambda * n as f64);
        Ok(PowerProfile {
            powers: vec![p; n],
            activity_probability: lambda,
            total_snr: snr,
        })
    }

    /// The SINR-equalizing profile `p_j = gamma (1 + lambda gamma)^(n-1-j)`
    /// with `gamma = [(1 + snr)^(1/n) - 1] / lambda`.
    ///
    /// Solves `p_j = gamma * (1 + lambda * sum_{i>j} p_i)` for every `j`
    /// together with the total-SNR constraint, so all positions see the same
    /// SINR `gamma`.
    pub fn exponential(n: usize, lambda: f64, snr: f64) -> Result<PowerProfile> {
        check_common(n, lambda, snr)?;
        let gamma = optimal_sinr(n, lambda, snr);
        let ratio = 1.0 + lambda * gamma;
        Ok(PowerProfile {
            powers: geometric_descending(n, gamma, ratio),
            activity_probability: lambda,
            total_snr: snr,
        })
    }

    /// Leakage-robust profile for leakage fraction `theta` in `[0, 1]`.
    ///
    /// Solves `p_j = gamma * (1 + theta lambda sum_{i<j} p_i +
    /// lambda sum_{i>j} p_i)` together with the total-SNR constraint. The
    /// solution is geometric with per-index ratio
    /// `r = ((1 + snr) / (1 + theta snr))^(1/n)`, SINR
    /// `gamma = (r - 1) / (lambda (1 - theta r))`, and last-user power
    /// `(r - 1)(1 + theta snr) / (lambda (1 - theta))`. At `theta = 1` the
    /// equations degenerate to the constant profile, which is returned as the
    /// analytic limit.
    pub fn robust(n: usize, lambda: f64, snr: f64, theta: f64) -> Result<PowerProfile> {
        check_common(n, lambda, snr)?;
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::invalid(format!(
                "leakage fraction must lie in [0, 1], got {theta}"
            )));
        }
        if theta == 1.0 {
            return PowerProfile::constant(n, lambda, snr);
        }
        let ratio = robust_ratio(n, snr, theta);
        let last = (ratio - 1.0) * (1.0 + theta * snr) / (lambda * (1.0 - theta));
        Ok(PowerProfile {
            powers: geometric_descending(n, last, ratio),
            activity_probability: lambda,
            total_snr: snr,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.powers.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn powers(&self) -> &[f64] {
        &self.powers
    }

    pub fn activity_probability(&self) -> f64 {
        self.activity_probability
    }

    pub fn total_snr(&self) -> f64 {
        self.total_snr
    }

    /// Residual interference-plus-noise power at each position:
    /// `sigma2(l) = 1 + lambda * sum_{j>l} p_j`, via one reverse sweep.
    pub fn residual_powers(&self) -> Vec<f64> {
        let n = self.powers.len();
        let mut out = vec![0.0; n];
        let mut tail = 0.0;
        for l in (0..n).rev() {
            out[l] = 1.0 + self.activity_probability * tail;
            tail += self.powers[l];
        }
        out
    }

    /// Minimum over positions of `p_l / sigma2(l)`.
    pub fn min_sinr(&self) -> f64 {
        self.powers
            .iter()
            .zip(self.residual_powers())
            .map(|(p, s)| p / s)
            .fold(f64::INFINITY, f64::min)
    }

    /// Diagnostic from the sufficiency analysis of sequential detection:
    /// `max_{i<n-1} ln(n) * sigma2(i)^-4 * sum_{j>i} p_j^2`.
    ///
    /// This is an asymptotic smallness condition; the raw value is reported
    /// and never used to gate behavior.
    pub fn technical_condition(&self) -> Result<f64> {
        let n = self.powers.len();
        if n < 2 {
            return Err(Error::invalid(
                "technical condition needs at least two users",
            ));
        }
        let sigma2 = self.residual_powers();
        let logn = (n as f64).ln();
        let mut tail_sq = 0.0;
        let mut best = 0.0f64;
        for i in (0..n - 1).rev() {
            tail_sq += self.powers[i + 1] * self.powers[i + 1];
            // sigma2 holds the residual power sigma^2, so its square is the
            // inverse-fourth-power weight.
            let v = logn * tail_sq / (sigma2[i] * sigma2[i]);
            best = best.max(v);
        }
        Ok(best)
    }

    /// Two-column CSV rendering (`user,power`), full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("user,power\n");
        for (j, p) in self.powers.iter().enumerate() {
            out.push_str(&format!("{j},{p}\n"));
        }
        out
    }
}

fn geometric_descending(n: usize, last: f64, ratio: f64) -> Vec<f64> {
    let mut powers = vec![0.0; n];
    let mut p = last;
    for j in (0..n).rev() {
        powers[j] = p;
        p *= ratio;
    }
    powers
}

/// SINR of the constant profile: `snr / (lambda (n + (n-1) snr))`.
pub fn constant_sinr(n: usize, lambda: f64, snr: f64) -> f64 {
    snr / (lambda * (n as f64 + (n as f64 - 1.0) * snr))
}

/// SINR of the exponential profile: `[(1 + snr)^(1/n) - 1] / lambda`.
pub fn optimal_sinr(n: usize, lambda: f64, snr: f64) -> f64 {
    (snr.ln_1p() / n as f64).exp_m1() / lambda
}

/// SINR of the robust profile at leakage `theta`; `theta = 1` yields the
/// constant-profile SINR as the analytic limit.
pub fn robust_sinr(n: usize, lambda: f64, snr: f64, theta: f64) -> f64 {
    if theta == 1.0 {
        return constant_sinr(n, lambda, snr);
    }
    let ratio = robust_ratio(n, snr, theta);
    (ratio - 1.0) / (lambda * (1.0 - theta * ratio))
}

/// Large-n SINR gain of exponential over constant shaping:
/// `(1 + snr) ln(1 + snr) / snr`.
pub fn sinr_gain_ratio(snr: f64) -> f64 {
    (1.0 + snr) * snr.ln_1p() / snr
}

fn robust_ratio(n: usize, snr: f64, theta: f64) -> f64 {
    ((snr.ln_1p() - (theta * snr).ln_1p()) / n as f64).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fixed_point_error(profile: &PowerProfile, gamma: f64, theta: f64) -> f64 {
        let p = profile.powers();
        let lambda = profile.activity_probability();
        let n = p.len();
        let mut worst = 0.0f64;
        for l in 0..n {
            let before: f64 = p[..l].iter().sum();
            let after: f64 = p[l + 1..].iter().sum();
            let rhs = gamma * (1.0 + theta * lambda * before + lambda * after);
            worst = worst.max((p[l] - rhs).abs() / p[l]);
        }
        worst
    }

    #[test]
    fn constant_profile_values() {
        let prof = PowerProfile::constant(100, 0.1, 100.0).unwrap();
        assert!(prof.powers().iter().all(|&p| p == 10.0));
        let prof = PowerProfile::constant(1, 0.5, 2.0).unwrap();
        assert_eq!(prof.powers(), &[4.0]);
    }

    #[test]
    fn constructors_reject_bad_domains() {
        assert!(PowerProfile::constant(0, 0.1, 1.0).is_err());
        assert!(PowerProfile::constant(4, 0.0, 1.0).is_err());
        assert!(PowerProfile::constant(4, 1.0, 1.0).is_err());
        assert!(PowerProfile::constant(4, 0.1, 0.0).is_err());
        assert!(PowerProfile::exponential(4, 0.1, -1.0).is_err());
        assert!(PowerProfile::robust(4, 0.1, 1.0, -0.01).is_err());
        assert!(PowerProfile::robust(4, 0.1, 1.0, 1.01).is_err());
    }

    #[test]
    fn snr_constraint_holds_for_all_constructors() {
        for (n, lambda, snr) in [(1, 0.5, 2.0), (10, 0.1, 10.0), (100, 0.1, 100.0), (1000, 0.3, 31.6)] {
            for prof in [
                PowerProfile::constant(n, lambda, snr).unwrap(),
                PowerProfile::exponential(n, lambda, snr).unwrap(),
                PowerProfile::robust(n, lambda, snr, 0.1).unwrap(),
                PowerProfile::robust(n, lambda, snr, 0.7).unwrap(),
            ] {
                let total = lambda * prof.powers().iter().sum::<f64>();
                assert_relative_eq!(total, snr, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn exponential_single_user_reduces_to_snr_over_lambda() {
        let prof = PowerProfile::exponential(1, 0.5, 2.0).unwrap();
        assert_relative_eq!(prof.powers()[0], 4.0, max_relative = 1e-12);
        assert_relative_eq!(prof.min_sinr(), 4.0, max_relative = 1e-12);
    }

    #[test]
    fn exponential_fixed_point_at_several_sizes() {
        for n in [10, 100, 1000] {
            let prof = PowerProfile::exponential(n, 0.1, 100.0).unwrap();
            let gamma = optimal_sinr(n, 0.1, 100.0);
            assert!(fixed_point_error(&prof, gamma, 0.0) < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn robust_fixed_point_at_several_sizes() {
        for n in [10, 100, 1000] {
            for theta in [0.05, 0.1, 0.5, 0.9] {
                let prof = PowerProfile::robust(n, 0.1, 100.0, theta).unwrap();
                let gamma = robust_sinr(n, 0.1, 100.0, theta);
                assert!(
                    fixed_point_error(&prof, gamma, theta) < 1e-9,
                    "n = {n}, theta = {theta}"
                );
            }
        }
    }

    #[test]
    fn robust_limits_match_exponential_and_constant() {
        let n = 100;
        let (lambda, snr) = (0.1, 100.0);
        let exp = PowerProfile::exponential(n, lambda, snr).unwrap();
        let zero = PowerProfile::robust(n, lambda, snr, 0.0).unwrap();
        for (a, b) in exp.powers().iter().zip(zero.powers()) {
            assert_relative_eq!(a, b, max_relative = 1e-9);
        }
        let cons = PowerProfile::constant(n, lambda, snr).unwrap();
        let one = PowerProfile::robust(n, lambda, snr, 1.0).unwrap();
        for (a, b) in cons.powers().iter().zip(one.powers()) {
            assert_relative_eq!(a, b, max_relative = 1e-9);
        }
    }

    #[test]
    fn robust_spread_sits_between_limits() {
        let n = 100;
        let (lambda, snr) = (0.1, 100.0);
        let spread = |prof: &PowerProfile| prof.powers()[0] / prof.powers()[n - 1];
        let s0 = spread(&PowerProfile::robust(n, lambda, snr, 0.0).unwrap());
        let s01 = spread(&PowerProfile::robust(n, lambda, snr, 0.1).unwrap());
        let s1 = spread(&PowerProfile::robust(n, lambda, snr, 1.0).unwrap());
        assert!(s1 < s01 && s01 < s0, "spreads {s1} {s01} {s0}");
        let total =
            0.1 * PowerProfile::robust(n, lambda, snr, 0.1).unwrap().powers().iter().sum::<f64>();
        assert_relative_eq!(total, snr, max_relative = 1e-9);
    }

    #[test]
    fn min_sinr_matches_closed_forms() {
        let n = 100;
        let (lambda, snr) = (0.1, 100.0);
        let cons = PowerProfile::constant(n, lambda, snr).unwrap();
        assert_relative_eq!(
            cons.min_sinr(),
            constant_sinr(n, lambda, snr),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            cons.min_sinr(),
            snr / (lambda * (n as f64 + (n as f64 - 1.0) * snr)),
            max_relative = 1e-12
        );
        let exp = PowerProfile::exponential(n, lambda, snr).unwrap();
        assert_relative_eq!(exp.min_sinr(), optimal_sinr(n, lambda, snr), max_relative = 1e-9);
        // n = 1: no interference, SINR is the power itself.
        let single = PowerProfile::constant(1, 0.25, 3.0).unwrap();
        assert_relative_eq!(single.min_sinr(), single.powers()[0], max_relative = 1e-12);
    }

    #[test]
    fn min_sinr_agrees_with_quadratic_oracle() {
        let prof = PowerProfile::robust(50, 0.2, 30.0, 0.2).unwrap();
        let p = prof.powers();
        let lambda = prof.activity_probability();
        let oracle = (0..p.len())
            .map(|l| {
                let interference: f64 = p[l + 1..].iter().sum();
                p[l] / (1.0 + lambda * interference)
            })
            .fold(f64::INFINITY, f64::min);
        assert_relative_eq!(prof.min_sinr(), oracle, max_relative = 1e-12);
    }

    #[test]
    fn exponential_maximizes_min_sinr() {
        let n = 60;
        let (lambda, snr) = (0.15, 40.0);
        let exp = PowerProfile::exponential(n, lambda, snr).unwrap().min_sinr();
        let cons = PowerProfile::constant(n, lambda, snr).unwrap().min_sinr();
        let rob = PowerProfile::robust(n, lambda, snr, 0.3).unwrap().min_sinr();
        assert!(exp > rob && rob > cons, "{exp} {rob} {cons}");
    }

    #[test]
    fn robust_sinr_is_monotone_in_theta() {
        let n = 100;
        let (lambda, snr) = (0.1, 100.0);
        let mut prev = f64::INFINITY;
        for k in 0..=20 {
            let theta = k as f64 / 20.0;
            let g = robust_sinr(n, lambda, snr, theta);
            assert!(g <= prev + 1e-12, "gamma grew at theta = {theta}");
            prev = g;
        }
        assert_relative_eq!(
            robust_sinr(n, lambda, snr, 0.0),
            optimal_sinr(n, lambda, snr),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            robust_sinr(n, lambda, snr, 1.0),
            constant_sinr(n, lambda, snr),
            max_relative = 1e-12
        );
    }

    #[test]
    fn gain_ratio_matches_quoted_values() {
        // 10 dB and 20 dB gains of exponential over constant shaping.
        assert!((sinr_gain_ratio(10.0) - 2.6).abs() < 0.1);
        assert!((sinr_gain_ratio(100.0) - 4.7).abs() < 0.1);
    }

    #[test]
    fn technical_condition_hand_value() {
        // n = 2, p = (1, 1), lambda = 0.5: sigma2(0) = 1.5,
        // value = ln(2) / 1.5^2 * 1.
        let prof = PowerProfile::from_parts(vec![1.0, 1.0], 0.5, 1.0).unwrap();
        assert_relative_eq!(
            prof.technical_condition().unwrap(),
            2.0f64.ln() / 2.25,
            max_relative = 1e-12
        );
    }

    #[test]
    fn technical_condition_decreases_with_n() {
        let vals: Vec<f64> = [100, 1000, 10_000]
            .iter()
            .map(|&n| {
                PowerProfile::constant(n, 0.1, 10.0)
                    .unwrap()
                    .technical_condition()
                    .unwrap()
            })
            .collect();
        assert!(vals[0] > vals[1] && vals[1] > vals[2], "{vals:?}");
    }

    #[test]
    fn technical_condition_edge_cases() {
        let single = PowerProfile::constant(1, 0.5, 1.0).unwrap();
        assert!(single.technical_condition().is_err());
        // A vanishing last power contributes nothing at the last position.
        let lambda = 0.5;
        let p = vec![1.0, 1e-12];
        let snr = lambda * (1.0 + 1e-12);
        let prof = PowerProfile::from_parts(p, lambda, snr).unwrap();
        let sigma2_last = 1.0 + lambda * 1e-12;
        let last_term = 2.0f64.ln() * 1e-24 / sigma2_last.powi(4);
        assert!(last_term < 1e-20);
        assert!(prof.technical_condition().unwrap() < 1e-19);
    }

    #[test]
    fn from_parts_enforces_invariants() {
        assert!(PowerProfile::from_parts(vec![1.0, -1.0], 0.5, 0.0).is_err());
        assert!(PowerProfile::from_parts(vec![1.0, 1.0], 0.5, 2.0).is_err());
        assert!(PowerProfile::from_parts(vec![1.0, 1.0], 0.5, 1.0).is_ok());
    }

    #[test]
    fn csv_rendering_round_trips() {
        let prof = PowerProfile::constant(2, 0.5, 1.0).unwrap();
        let csv = prof.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("user,power"));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "0");
        assert_eq!(row[1].parse::<f64>().unwrap(), prof.powers()[0]);
    }
}
