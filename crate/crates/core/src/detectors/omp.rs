//! Orthogonal matching pursuit over all remaining users per iteration.

use num_complex::Complex64;

use crate::channel::Codebook;
use crate::linalg::{dotc, norm_sq, sub_scaled};
use crate::{Error, Result};

use super::{correlation_statistic, DetectionResult};

/// Stopping rule for [`omp_detect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OmpStop {
    /// Stop when the best remaining statistic drops to `mu` or below.
    Threshold(f64),
    /// Select exactly `k` users (capped at the space dimension).
    KnownK(usize),
    /// Stop after at most this many selections.
    MaxIters(usize),
}

/// Greedy selection of the user whose projected codeword correlates best
/// with the projected received vector; the selected codeword is then
/// projected out of everything and the scan repeats.
///
/// The reported statistics hold, for selected users, the statistic at the
/// iteration they were picked, and for unselected users the value from the
/// final scan.
pub fn omp_detect(y: &[Complex64], codebook: &Codebook, stop: OmpStop) -> Result<DetectionResult> {
    let (m, n) = (codebook.m(), codebook.n());
    if y.len() != m {
        return Err(Error::invalid(format!(
            "received vector has length {}, codebook has m = {m}",
            y.len()
        )));
    }
    let cap = match stop {
        OmpStop::Threshold(mu) => {
            if !(mu > 0.0 && mu <= 1.0) {
                return Err(Error::invalid(format!(
                    "threshold must lie in (0, 1], got {mu}"
                )));
            }
            m.min(n)
        }
        OmpStop::KnownK(k) => k.min(m).min(n),
        OmpStop::MaxIters(t) => t.min(m).min(n),
    };

    let y_scale = norm_sq(y);
    let col_scales: Vec<f64> = (0..n).map(|j| norm_sq(codebook.column(j))).collect();
    // Projected copies of every column and of y, updated in place as
    // codewords are accepted.
    let mut pa: Vec<Vec<Complex64>> = (0..n).map(|j| codebook.column(j).to_vec()).collect();
    let mut py = y.to_vec();
    let mut selected_mask = vec![false; n];
    let mut selected = Vec::new();
    let mut stats = vec![0.0; n];

    while selected.len() < cap {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..n {
            if selected_mask[j] {
                continue;
            }
            let rho = correlation_statistic(&pa[j], &py, col_scales[j], y_scale);
            stats[j] = rho;
            if best.map_or(true, |(_, b)| rho > b) {
                best = Some((j, rho));
            }
        }
        let Some((jmax, rho_max)) = best else { break };
        if let OmpStop::Threshold(mu) = stop {
            if rho_max <= mu {
                break;
            }
        }

        // Normalize the winning projected codeword; if it has been fully
        // cancelled, nothing outside the current span is left to select.
        let norm = norm_sq(&pa[jmax]);
        if norm <= super::DEGENERATE_REL * col_scales[jmax] {
            if matches!(stop, OmpStop::Threshold(_)) {
                break;
            }
            // A known-count rule still has to emit a deterministic choice.
            selected_mask[jmax] = true;
            selected.push(jmax);
            continue;
        }
        let inv = norm.sqrt().recip();
        let q: Vec<Complex64> = pa[jmax].iter().map(|z| z * inv).collect();
        selected_mask[jmax] = true;
        selected.push(jmax);

        let coeff = dotc(&q, &py);
        sub_scaled(&mut py, coeff, &q);
        for (j, col) in pa.iter_mut().enumerate() {
            if !selected_mask[j] {
                let coeff = dotc(&q, col);
                sub_scaled(col, coeff, &q);
            }
        }
    }

    let iterations = selected.len();
    Ok(DetectionResult::new(
        selected,
        Some(stats),
        iterations,
        true,
    ))
}
