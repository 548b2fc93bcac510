//! Rate-estimate intervals and goodness-of-fit helpers.

/// Half-width of the Wilson 95% score interval for `successes / trials`.
///
/// Wilson intervals stay valid near 0 and 1, where the rates of interest
/// (around 1%) live.
pub fn wilson_halfwidth(successes: u64, trials: u64) -> f64 {
    if trials == 0 {
        return f64::NAN;
    }
    let z = 1.959_963_984_540_054; // 97.5% normal quantile
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt()
}

/// Two-sided Kolmogorov-Smirnov statistic of `samples` against the CDF `cdf`.
///
/// `samples` need not be sorted; a sorted copy is made internally.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, x) in sorted.iter().enumerate() {
        let f = cdf(*x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((f - lo).abs()).max((hi - f).abs());
    }
    d
}

/// Asymptotic p-value for a KS statistic `d` on `n` samples.
///
/// Uses the Kolmogorov survival series with the standard small-sample
/// correction `sqrt(n) + 0.12 + 0.11 / sqrt(n)`.
pub fn ks_pvalue(d: f64, n: usize) -> f64 {
    let sqrt_n = (n as f64).sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    kolmogorov_sf(lambda)
}

fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = sign * (-2.0 * (k as f64) * (k as f64) * lambda * lambda).exp();
        sum += term;
        sign = -sign;
        if term.abs() < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}
