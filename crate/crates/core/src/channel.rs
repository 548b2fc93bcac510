//! Random codebooks, channel instances, and scalar figures of merit.
//!
//! The received vector is `y = A x + w`, where the codebook `A` is an
//! `m x n` matrix of i.i.d. complex Gaussians with per-entry variance `1/m`,
//! `x` is the modulation vector (nonzero exactly on the active users), and
//! the noise `w` has i.i.d. entries of variance `1/m` so that the expected
//! noise energy is one. Users are indexed from 0.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{norm_sq, CMatrix};
use crate::power::PowerProfile;
use crate::rng::{self, tag};
use crate::{Error, Result};

/// An `m x n` matrix of per-user codewords (one column per user).
///
/// Entries are i.i.d. complex Gaussian with variance `1/m` (real and
/// imaginary parts each of variance `1/(2m)`), so each column has unit
/// expected energy.
#[derive(Debug, Clone)]
pub struct Codebook {
    mat: CMatrix,
}

impl Codebook {
    /// Generates the codebook deterministically from `(m, n, seed)`.
    pub fn generate(m: usize, n: usize, seed: u64) -> Result<Codebook> {
        if m == 0 || n == 0 {
            return Err(Error::invalid(format!(
                "codebook dimensions must be positive, got {m} x {n}"
            )));
        }
        let mut stream = rng::stream(seed, tag::CODEBOOK, 0);
        let sd = (0.5 / m as f64).sqrt();
        let mut data = Vec::with_capacity(m * n);
        for _ in 0..m * n {
            let re: f64 = StandardNormal.sample(&mut stream);
            let im: f64 = StandardNormal.sample(&mut stream);
            data.push(Complex64::new(sd * re, sd * im));
        }
        Ok(Codebook {
            mat: CMatrix::from_data(m, n, data),
        })
    }

    /// Wraps an explicit matrix as a codebook (columns are codewords).
    pub fn from_matrix(mat: CMatrix) -> Codebook {
        assert!(mat.rows() > 0 && mat.cols() > 0);
        Codebook { mat }
    }

    /// Number of degrees of freedom (rows).
    #[inline]
    pub fn m(&self) -> usize {
        self.mat.rows()
    }

    /// Number of users (columns).
    #[inline]
    pub fn n(&self) -> usize {
        self.mat.cols()
    }

    /// Codeword of user `j`.
    #[inline]
    pub fn column(&self, j: usize) -> &[Complex64] {
        self.mat.col(j)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }
}

/// How the modulation vector is populated.
#[derive(Debug, Clone)]
pub enum ActivityModel {
    /// A fixed support with fixed complex symbols on it.
    Deterministic {
        support: Vec<usize>,
        symbols: Vec<Complex64>,
    },
    /// Each user is independently active with the profile's activity
    /// probability; an active user `j` transmits `sqrt(p_j) * exp(i phi)`
    /// with phase uniform on the circle.
    Bernoulli { profile: PowerProfile },
}

impl ActivityModel {
    fn validate(&self, n: usize) -> Result<()> {
        match self {
            ActivityModel::Deterministic { support, symbols } => {
                if support.len() != symbols.len() {
                    return Err(Error::invalid(
                        "deterministic support and symbols differ in length",
                    ));
                }
                for (&j, s) in support.iter().zip(symbols.iter()) {
                    if j >= n {
                        return Err(Error::invalid(format!(
                            "support index {j} out of range for n = {n}"
                        )));
                    }
                    if s.norm_sqr() == 0.0 {
                        return Err(Error::invalid(format!(
                            "deterministic symbol for user {j} is zero"
                        )));
                    }
                }
                let mut sorted = support.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != support.len() {
                    return Err(Error::invalid("support contains duplicate indices"));
                }
                Ok(())
            }
            ActivityModel::Bernoulli { profile } => {
                if profile.len() != n {
                    return Err(Error::invalid(format!(
                        "profile has {} users, codebook has {n}",
                        profile.len()
                    )));
                }
                Ok(())
            }
        }
    }
}

/// One realized draw of the channel: `y = A x + w`.
#[derive(Debug, Clone)]
pub struct ChannelInstance {
    codebook: Codebook,
    x: Vec<Complex64>,
    w: Vec<Complex64>,
    y: Vec<Complex64>,
    true_active: Vec<usize>,
}

impl ChannelInstance {
    pub fn codebook(&self) -> &Codebook {
        &self.codebook
    }

    /// Modulation vector (length `n`).
    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    /// Noise vector (length `m`, all zeros when drawn noiseless).
    pub fn w(&self) -> &[Complex64] {
        &self.w
    }

    /// Received vector (length `m`).
    pub fn y(&self) -> &[Complex64] {
        &self.y
    }

    /// Sorted indices of the truly active users.
    pub fn true_active(&self) -> &[usize] {
        &self.true_active
    }
}

/// Draws one channel instance as a pure function of its arguments.
///
/// With `noise_on = false` the noise vector is exactly zero, so `y = A x`.
pub fn draw_instance(
    codebook: Codebook,
    model: &ActivityModel,
    noise_on: bool,
    seed: u64,
) -> Result<ChannelInstance> {
    let (m, n) = (codebook.m(), codebook.n());
    model.validate(n)?;

    let mut x = vec![Complex64::new(0.0, 0.0); n];
    match model {
        ActivityModel::Deterministic { support, symbols } => {
            for (&j, &s) in support.iter().zip(symbols.iter()) {
                x[j] = s;
            }
        }
        ActivityModel::Bernoulli { profile } => {
            let lambda = profile.activity_probability();
            let mut activity = rng::stream(seed, tag::ACTIVITY, 0);
            let mut phase = rng::stream(seed, tag::PHASE, 0);
            for (j, xj) in x.iter_mut().enumerate() {
                let active = activity.random::<f64>() < lambda;
                let phi = phase.random::<f64>() * std::f64::consts::TAU;
                if active {
                    let amp = profile.powers()[j].sqrt();
                    *xj = Complex64::from_polar(amp, phi);
                }
            }
        }
    }

    let mut y = codebook.matrix().mul_vec(&x);
    let mut w = vec![Complex64::new(0.0, 0.0); m];
    if noise_on {
        let mut noise = rng::stream(seed, tag::NOISE, 0);
        let sd = (0.5 / m as f64).sqrt();
        for wi in w.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut noise);
            let im: f64 = StandardNormal.sample(&mut noise);
            *wi = Complex64::new(sd * re, sd * im);
        }
        for (yi, wi) in y.iter_mut().zip(w.iter()) {
            *yi += wi;
        }
    }

    let true_active = x
        .iter()
        .enumerate()
        .filter(|(_, xj)| xj.norm_sqr() != 0.0)
        .map(|(j, _)| j)
        .collect();

    Ok(ChannelInstance {
        codebook,
        x,
        w,
        y,
        true_active,
    })
}

/// Total SNR of a modulation vector: its squared Euclidean norm.
pub fn snr_of(x: &[Complex64]) -> f64 {
    norm_sq(x)
}

/// Minimum-to-average ratio over the active entries, in `(0, 1]`.
///
/// Equals 1 exactly when all active magnitudes are equal.
pub fn mar_of(x: &[Complex64]) -> Result<f64> {
    let (min, _, count) = active_stats(x)?;
    let avg = norm_sq(x) / count as f64;
    Ok(min / avg)
}

/// SNR contribution of the weakest active user: `min_j |x_j|^2`.
///
/// Satisfies `snr_min * |I_true| = snr * mar` exactly.
pub fn snr_min_of(x: &[Complex64]) -> Result<f64> {
    let (min, _, _) = active_stats(x)?;
    Ok(min)
}

fn active_stats(x: &[Complex64]) -> Result<(f64, f64, usize)> {
    let mut min = f64::INFINITY;
    let mut max: f64 = 0.0;
    let mut count = 0usize;
    for xj in x {
        let p = xj.norm_sqr();
        if p != 0.0 {
            min = min.min(p);
            max = max.max(p);
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::invalid(
            "modulation vector is all-zero; active-set statistics undefined",
        ));
    }
    Ok((min, max, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::PowerProfile;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn codebook_is_deterministic_in_seed() {
        let a = Codebook::generate(4, 8, 1).unwrap();
        let b = Codebook::generate(4, 8, 1).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        let c = Codebook::generate(4, 8, 2).unwrap();
        assert_ne!(a.matrix(), c.matrix());
    }

    #[test]
    fn codebook_rejects_zero_dimension() {
        assert!(Codebook::generate(0, 4, 0).is_err());
        assert!(Codebook::generate(4, 0, 0).is_err());
    }

    #[test]
    fn codebook_entry_energy_matches_law_of_large_numbers() {
        // m * |entry|^2 has mean 1 and unit variance, so the sample mean over
        // mn entries should fall within 3 / sqrt(mn) of 1.
        let (m, n) = (256, 512);
        let cb = Codebook::generate(m, n, 7).unwrap();
        let mean = cb
            .matrix()
            .data()
            .iter()
            .map(|z| m as f64 * z.norm_sqr())
            .sum::<f64>()
            / (m * n) as f64;
        let sigma = 1.0 / ((m * n) as f64).sqrt();
        assert!((mean - 1.0).abs() < 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn column_norms_concentrate() {
        let (m, n) = (64, 512);
        let cb = Codebook::generate(m, n, 11).unwrap();
        let outside = (0..n)
            .filter(|&j| {
                let e = norm_sq(cb.column(j));
                !(0.5..=1.5).contains(&e)
            })
            .count();
        assert!(
            (outside as f64) < 0.01 * n as f64,
            "{outside} of {n} columns outside [0.5, 1.5]"
        );
    }

    #[test]
    fn empty_support_noiseless_gives_zero_output() {
        let cb = Codebook::generate(8, 5, 3).unwrap();
        let model = ActivityModel::Deterministic {
            support: vec![],
            symbols: vec![],
        };
        let inst = draw_instance(cb, &model, false, 0).unwrap();
        assert!(inst.true_active().is_empty());
        assert!(inst.y().iter().all(|z| z.norm_sqr() == 0.0));
    }

    #[test]
    fn single_column_instance_is_scaled_codeword() {
        let cb = Codebook::generate(6, 5, 9).unwrap();
        let col = cb.column(2).to_vec();
        let model = ActivityModel::Deterministic {
            support: vec![2],
            symbols: vec![c(2.0, 0.0)],
        };
        let inst = draw_instance(cb, &model, false, 0).unwrap();
        assert_eq!(inst.true_active(), &[2]);
        for (yi, ai) in inst.y().iter().zip(col.iter()) {
            assert_eq!(*yi, c(2.0, 0.0) * ai);
        }
    }

    #[test]
    fn noiseless_instance_reconstructs_exactly() {
        let cb = Codebook::generate(16, 12, 21).unwrap();
        let profile = PowerProfile::constant(12, 0.3, 5.0).unwrap();
        let model = ActivityModel::Bernoulli { profile };
        let inst = draw_instance(cb, &model, false, 4).unwrap();
        let recon = inst.codebook().matrix().mul_vec(inst.x());
        let err: f64 = inst
            .y()
            .iter()
            .zip(recon.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let scale = norm_sq(inst.y()).max(1e-300);
        assert!(err / scale < 1e-24);
    }

    #[test]
    fn draw_is_pure_in_its_seed() {
        let profile = PowerProfile::constant(10, 0.2, 4.0).unwrap();
        let model = ActivityModel::Bernoulli { profile };
        let a = draw_instance(Codebook::generate(8, 10, 5).unwrap(), &model, true, 17).unwrap();
        let b = draw_instance(Codebook::generate(8, 10, 5).unwrap(), &model, true, 17).unwrap();
        assert_eq!(a.x(), b.x());
        assert_eq!(a.y(), b.y());
        assert_eq!(a.true_active(), b.true_active());
    }

    #[test]
    fn bernoulli_active_count_matches_binomial_mean() {
        let n = 100;
        let lambda = 0.1;
        let trials = 10_000;
        let cb = Codebook::generate(2, n, 1).unwrap();
        let profile = PowerProfile::constant(n, lambda, 1.0).unwrap();
        let model = ActivityModel::Bernoulli { profile };
        let mut total = 0usize;
        for t in 0..trials {
            let inst = draw_instance(cb.clone(), &model, false, t as u64).unwrap();
            total += inst.true_active().len();
        }
        let mean = total as f64 / trials as f64;
        let sigma = (n as f64 * lambda * (1.0 - lambda) / trials as f64).sqrt();
        assert!(
            (mean - n as f64 * lambda).abs() < 3.0 * sigma,
            "mean {mean}, sigma {sigma}"
        );
    }

    #[test]
    fn bernoulli_mean_snr_matches_profile_total() {
        let n = 50;
        let lambda = 0.2;
        let snr = 8.0;
        let profile = PowerProfile::exponential(n, lambda, snr).unwrap();
        // Per-draw variance of ||x||^2 = sum_j p_j^2 lambda (1 - lambda).
        let var: f64 = profile
            .powers()
            .iter()
            .map(|p| p * p * lambda * (1.0 - lambda))
            .sum();
        let model = ActivityModel::Bernoulli { profile };
        let cb = Codebook::generate(2, n, 2).unwrap();
        let trials = 20_000;
        let mut total = 0.0;
        for t in 0..trials {
            let inst = draw_instance(cb.clone(), &model, false, t as u64).unwrap();
            total += snr_of(inst.x());
        }
        let mean = total / trials as f64;
        let sigma = (var / trials as f64).sqrt();
        assert!((mean - snr).abs() < 3.0 * sigma, "mean {mean}, sigma {sigma}");
    }

    #[test]
    fn snr_of_simple_vectors() {
        assert_eq!(snr_of(&[]), 0.0);
        assert_eq!(snr_of(&[c(0.0, 0.0); 3]), 0.0);
        assert_eq!(snr_of(&[c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]), 2.0);
    }

    #[test]
    fn mar_of_equal_magnitudes_is_one() {
        let x = [c(0.5, 0.0), c(0.0, -0.5), c(0.0, 0.0)];
        assert_relative_eq!(mar_of(&x).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn mar_of_unequal_magnitudes() {
        // active magnitudes 1 and 2: min = 1, avg = 2.5, MAR = 0.4
        let x = [c(1.0, 0.0), c(0.0, 2.0)];
        assert_relative_eq!(mar_of(&x).unwrap(), 0.4, max_relative = 1e-12);
    }

    #[test]
    fn all_zero_vector_is_rejected() {
        let x = [c(0.0, 0.0); 4];
        assert!(mar_of(&x).is_err());
        assert!(snr_min_of(&x).is_err());
    }

    #[test]
    fn snr_min_single_entry() {
        let x = [c(0.0, 0.0), c(3.0, 0.0)];
        assert_eq!(snr_min_of(&x).unwrap(), 9.0);
    }

    #[test]
    fn snr_min_identity() {
        // magnitudes {1, 2}: snr = 5, mar = 0.4, |I| = 2 -> snr_min = 1
        let x = [c(1.0, 0.0), c(2.0, 0.0)];
        let snr = snr_of(&x);
        let mar = mar_of(&x).unwrap();
        let k = 2.0;
        assert_relative_eq!(snr_min_of(&x).unwrap(), snr * mar / k, max_relative = 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let cb = Codebook::generate(4, 6, 0).unwrap();
        let profile = PowerProfile::constant(5, 0.5, 1.0).unwrap();
        let model = ActivityModel::Bernoulli { profile };
        assert!(draw_instance(cb, &model, true, 0).is_err());
        let cb = Codebook::generate(4, 6, 0).unwrap();
        let model = ActivityModel::Deterministic {
            support: vec![6],
            symbols: vec![c(1.0, 0.0)],
        };
        assert!(draw_instance(cb, &model, true, 0).is_err());
    }
}
