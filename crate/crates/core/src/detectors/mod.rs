//! Active-set detectors.
//!
//! Five estimators of the active user set from `y = A x + w`:
//!
//! - [`sud_detect`] — single-user correlation thresholding;
//! - [`seqomp_detect`] — one pass over the users in a given order, projecting
//!   out each accepted codeword (successive interference cancellation);
//! - [`omp_detect`] — standard orthogonal matching pursuit over all
//!   not-yet-selected users per iteration;
//! - [`lasso_detect`] — complex l1-penalized least squares by proximal
//!   gradient descent;
//! - [`ml_detect`] — exhaustive maximum-energy subspace search for a known
//!   active count.
//!
//! All correlation statistics are squared normalized correlations, hence lie
//! in `[0, 1]`. Degenerate inputs (zero received vector, fully projected-out
//! codewords) yield a statistic of 0 rather than an error, which keeps Monte
//! Carlo loops total.

use num_complex::Complex64;

use crate::linalg::{dotc, norm_sq, sub_scaled};

mod lasso;
mod ml;
mod omp;
mod seqomp;
mod sud;

pub use lasso::{lasso_detect, lasso_solve, LassoSolution};
pub use ml::ml_detect;
pub use omp::{omp_detect, OmpStop};
pub use seqomp::seqomp_detect;
pub use sud::sud_detect;

/// Relative scale below which a projected norm counts as fully cancelled.
pub(crate) const DEGENERATE_REL: f64 = 1e-20;

/// Outcome of a detection run.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionResult {
    active: Vec<usize>,
    statistics: Option<Vec<f64>>,
    iterations: usize,
    converged: bool,
}

impl DetectionResult {
    pub(crate) fn new(
        mut active: Vec<usize>,
        statistics: Option<Vec<f64>>,
        iterations: usize,
        converged: bool,
    ) -> DetectionResult {
        active.sort_unstable();
        DetectionResult {
            active,
            statistics,
            iterations,
            converged,
        }
    }

    /// Estimated active set, sorted ascending.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn is_active(&self, j: usize) -> bool {
        self.active.binary_search(&j).is_ok()
    }

    /// Per-user decision statistic, when the detector defines one.
    ///
    /// Correlation detectors store the squared normalized correlation; the
    /// lasso stores recovered magnitudes.
    pub fn statistics(&self) -> Option<&[f64]> {
        self.statistics.as_deref()
    }

    /// Number of greedy selections (or solver iterations for the lasso).
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// False only when an iterative solver hit its iteration cap.
    pub fn converged(&self) -> bool {
        self.converged
    }
}

/// Growing orthonormal basis of detected codeword directions.
///
/// Maintains the projection onto the orthogonal complement of the accepted
/// codewords: `project_out` subtracts the component of a vector inside the
/// span. Insertion runs modified Gram-Schmidt twice for numerical stability.
#[derive(Debug, Clone)]
pub struct OrthoBasis {
    dim: usize,
    cols: Vec<Vec<Complex64>>,
}

impl OrthoBasis {
    pub fn new(dim: usize) -> OrthoBasis {
        OrthoBasis {
            dim,
            cols: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn last(&self) -> Option<&[Complex64]> {
        self.cols.last().map(|c| c.as_slice())
    }

    pub(crate) fn column(&self, i: usize) -> &[Complex64] {
        &self.cols[i]
    }

    /// Subtracts from `v` its component in the span of the basis.
    pub fn project_out(&self, v: &mut [Complex64]) {
        assert_eq!(v.len(), self.dim);
        for q in &self.cols {
            let coeff = dotc(q, v);
            sub_scaled(v, coeff, q);
        }
    }

    /// Returns `v` projected onto the orthogonal complement of the span.
    pub fn projected(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = v.to_vec();
        self.project_out(&mut out);
        out
    }

    /// Orthogonalizes `v` against the basis and appends the normalized
    /// residual. Returns false (and leaves the basis unchanged) when `v` lies
    /// in the span up to roundoff, or when the basis already fills the space.
    pub fn insert(&mut self, v: &[Complex64]) -> bool {
        assert_eq!(v.len(), self.dim);
        if self.cols.len() >= self.dim {
            return false;
        }
        let scale = norm_sq(v);
        if scale <= 0.0 {
            return false;
        }
        let mut w = v.to_vec();
        self.project_out(&mut w);
        // Second pass removes the roundoff left by the first.
        self.project_out(&mut w);
        let residual = norm_sq(&w);
        if residual <= DEGENERATE_REL * scale {
            return false;
        }
        let inv = residual.sqrt().recip();
        for z in w.iter_mut() {
            *z *= inv;
        }
        self.cols.push(w);
        true
    }
}

/// Squared normalized correlation `|a' y|^2 / (||a||^2 ||y||^2)` with
/// degenerate norms mapped to 0.
///
/// `a_scale` and `y_scale` are the unprojected squared norms used to decide
/// degeneracy relative to the original problem scale.
pub(crate) fn correlation_statistic(
    a: &[Complex64],
    y: &[Complex64],
    a_scale: f64,
    y_scale: f64,
) -> f64 {
    let na = norm_sq(a);
    let ny = norm_sq(y);
    if na <= DEGENERATE_REL * a_scale.max(f64::MIN_POSITIVE)
        || ny <= DEGENERATE_REL * y_scale.max(f64::MIN_POSITIVE)
    {
        return 0.0;
    }
    let rho = dotc(a, y).norm_sqr() / (na * ny);
    debug_assert!(rho <= 1.0 + 1e-9, "correlation statistic {rho} above 1");
    rho
}
