//! Sequential orthogonal matching pursuit.

use num_complex::Complex64;

use crate::channel::Codebook;
use crate::linalg::{dotc, norm_sq, sub_scaled};
use crate::{Error, Result};

use super::{correlation_statistic, DetectionResult, OrthoBasis};

/// Single-pass detection in the given user order.
///
/// At each position the candidate codeword and the received vector are
/// projected onto the orthogonal complement of the codewords accepted so far,
/// and the user is accepted when the squared normalized correlation of the
/// projections exceeds `mu`. The pass visits users in `order` (a permutation
/// of `0..n`); the result is reported in natural index space.
///
/// Once the accepted set reaches the space dimension `m`, every remaining
/// statistic is 0 by construction and no further user can be accepted.
pub fn seqomp_detect(
    y: &[Complex64],
    codebook: &Codebook,
    mu: f64,
    order: &[usize],
) -> Result<DetectionResult> {
    let (m, n) = (codebook.m(), codebook.n());
    if y.len() != m {
        return Err(Error::invalid(format!(
            "received vector has length {}, codebook has m = {m}",
            y.len()
        )));
    }
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::invalid(format!(
            "threshold must lie in (0, 1], got {mu}"
        )));
    }
    check_permutation(order, n)?;

    let y_scale = norm_sq(y);
    let mut basis = OrthoBasis::new(m);
    let mut py = y.to_vec();
    let mut stats = vec![0.0; n];
    let mut active = Vec::new();

    for &j in order {
        if basis.len() == m {
            break; // remaining statistics stay 0
        }
        let col = codebook.column(j);
        let pa = basis.projected(col);
        let rho = correlation_statistic(&pa, &py, norm_sq(col), y_scale);
        stats[j] = rho;
        if rho > mu && basis.insert(&pa) {
            active.push(j);
            if let Some(q) = basis.last() {
                let coeff = dotc(q, &py);
                sub_scaled(&mut py, coeff, q);
            }
        }
    }

    let accepted = active.len();
    Ok(DetectionResult::new(active, Some(stats), accepted, true))
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::invalid(format!(
            "order has length {}, expected {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &j in order {
        if j >= n || seen[j] {
            return Err(Error::invalid("order is not a permutation"));
        }
        seen[j] = true;
    }
    Ok(())
}
