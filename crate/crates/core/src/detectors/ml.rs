//! Exhaustive maximum-likelihood subset search.

use num_complex::Complex64;

use crate::channel::Codebook;
use crate::linalg::dotc;
use crate::{Error, Result};

use super::{DetectionResult, OrthoBasis};

const SUBSET_GUARD: f64 = 1e6;

/// Finds the `k`-subset of codewords whose span captures the most energy of
/// `y` (equivalently, minimizes the residual after projecting `y` onto the
/// subset's span). Ties go to the lexicographically smallest subset.
///
/// Guarded to instances with at most `1e6` candidate subsets.
pub fn ml_detect(y: &[Complex64], codebook: &Codebook, k: usize) -> Result<DetectionResult> {
    let (m, n) = (codebook.m(), codebook.n());
    if y.len() != m {
        return Err(Error::invalid(format!(
            "received vector has length {}, codebook has m = {m}",
            y.len()
        )));
    }
    if k > m {
        return Err(Error::invalid(format!(
            "active count k = {k} exceeds the space dimension m = {m}"
        )));
    }
    if k > n {
        return Err(Error::invalid(format!(
            "active count k = {k} exceeds the number of users n = {n}"
        )));
    }
    if k == 0 {
        return Ok(DetectionResult::new(Vec::new(), None, 0, true));
    }
    let count = binomial(n, k);
    if !(count <= SUBSET_GUARD) {
        return Err(Error::invalid(format!(
            "C({n}, {k}) = {count:.3e} subsets exceed the search guard of {SUBSET_GUARD:.0e}"
        )));
    }

    let mut best_energy = f64::NEG_INFINITY;
    let mut best: Vec<usize> = Vec::new();
    let mut examined = 0usize;
    // Lexicographic enumeration; strict improvement keeps the smallest
    // subset on ties.
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        examined += 1;
        let energy = projected_energy(y, codebook, &subset);
        if energy > best_energy {
            best_energy = energy;
            best = subset.clone();
        }
        if !advance(&mut subset, n) {
            break;
        }
    }
    Ok(DetectionResult::new(best, None, examined, true))
}

/// Energy of `y` inside the span of the given columns, via an orthonormal
/// basis of the subset.
fn projected_energy(y: &[Complex64], codebook: &Codebook, subset: &[usize]) -> f64 {
    let mut basis = OrthoBasis::new(codebook.m());
    for &j in subset {
        basis.insert(codebook.column(j));
    }
    let mut energy = 0.0;
    for i in 0..basis.len() {
        energy += dotc(basis.column(i), y).norm_sqr();
    }
    energy
}

/// Advances `subset` to the next combination in lexicographic order.
fn advance(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - (k - i) {
            subset[i] += 1;
            for t in i + 1..k {
                subset[t] = subset[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
        if acc > 1e18 {
            return f64::INFINITY;
        }
    }
    acc
}
