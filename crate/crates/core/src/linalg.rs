//! Small dense complex linear algebra helpers.
//!
//! The detectors only need column dot products, norms, and rank-one updates,
//! so a column-major matrix over `Complex64` plus a few slice routines is all
//! that is kept here.

use num_complex::Complex64;

/// Hermitian inner product `sum_i conj(a_i) * b_i`.
#[inline]
pub fn dotc(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x.conj() * y;
    }
    acc
}

/// Squared Euclidean norm.
#[inline]
pub fn norm_sq(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// In-place `y -= alpha * x`.
#[inline]
pub fn sub_scaled(y: &mut [Complex64], alpha: Complex64, x: &[Complex64]) {
    debug_assert_eq!(y.len(), x.len());
    for (yi, xi) in y.iter_mut().zip(x.iter()) {
        *yi -= alpha * xi;
    }
}

/// Column-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> CMatrix {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<Complex64>) -> CMatrix {
        assert_eq!(data.len(), rows * cols);
        CMatrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Matrix-vector product `A x`.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.norm_sqr() == 0.0 {
                continue;
            }
            let col = self.col(j);
            for (yi, aij) in y.iter_mut().zip(col.iter()) {
                *yi += xj * aij;
            }
        }
        y
    }
}
