//! Single-user correlation detection.

use num_complex::Complex64;

use crate::channel::Codebook;
use crate::linalg::{dotc, norm_sq};
use crate::{Error, Result};

use super::DetectionResult;

/// Thresholds the squared normalized correlation of each codeword with the
/// received vector: user `j` is declared active when
/// `|a_j' y|^2 / (||a_j||^2 ||y||^2) > mu`.
///
/// A zero received vector yields an empty set with all statistics 0.
pub fn sud_detect(y: &[Complex64], codebook: &Codebook, mu: f64) -> Result<DetectionResult> {
    if y.len() != codebook.m() {
        return Err(Error::invalid(format!(
            "received vector has length {}, codebook has m = {}",
            y.len(),
            codebook.m()
        )));
    }
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::invalid(format!(
            "threshold must lie in (0, 1], got {mu}"
        )));
    }
    let n = codebook.n();
    let energy = norm_sq(y);
    let mut stats = vec![0.0; n];
    let mut active = Vec::new();
    if energy > 0.0 {
        for (j, rho) in stats.iter_mut().enumerate() {
            let col = codebook.column(j);
            let na = norm_sq(col);
            if na > 0.0 {
                *rho = dotc(col, y).norm_sqr() / (na * energy);
            }
            if *rho > mu {
                active.push(j);
            }
        }
    }
    Ok(DetectionResult::new(active, Some(stats), 0, true))
}
