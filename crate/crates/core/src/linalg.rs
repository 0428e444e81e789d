//! Dense complex Hermitian matrices and an `LDL^H` log-determinant.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// A dense Hermitian matrix, stored in full row-major form.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    /// Diagonal entry `i` (always real).
    pub fn diag(&self, i: usize) -> f64 {
        self.data[i * (self.n + 1)].re
    }

    /// `H H^*` for a row-major `rows x cols` matrix `h`.
    pub fn outer_gram(h: &[Complex64], rows: usize, cols: usize) -> Self {
        assert_eq!(h.len(), rows * cols);
        let mut g = Self::zeros(rows);
        for i in 0..rows {
            let hi = &h[i * cols..(i + 1) * cols];
            g.data[i * rows + i] = Complex64::new(hi.iter().map(|z| z.norm_sqr()).sum(), 0.0);
            for j in 0..i {
                let hj = &h[j * cols..(j + 1) * cols];
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, b) in hi.iter().zip(hj) {
                    acc += a * b.conj();
                }
                g.data[i * rows + j] = acc;
                g.data[j * rows + i] = acc.conj();
            }
        }
        g
    }

    /// `H^* H` for a row-major `rows x cols` matrix `h`.
    pub fn inner_gram(h: &[Complex64], rows: usize, cols: usize) -> Self {
        assert_eq!(h.len(), rows * cols);
        let mut g = Self::zeros(cols);
        for row in h.chunks_exact(cols.max(1)).take(rows) {
            for i in 0..cols {
                let ci = row[i].conj();
                for (j, &rj) in row[..=i].iter().enumerate() {
                    g.data[i * cols + j] += ci * rj;
                }
            }
        }
        for i in 0..cols {
            g.data[i * cols + i].im = 0.0;
            for j in 0..i {
                g.data[j * cols + i] = g.data[i * cols + j].conj();
            }
        }
        g
    }
}

/// `ln det(I + c G)` for Hermitian positive semidefinite `G` and `c >= 0`.
///
/// Uses a square-root-free `LDL^H` factorization and returns `sum ln D_i`.
/// The first pivot is exactly `1 + c G_00` and every later pivot is
/// `1 + c G_ii` minus a nonnegative correction, so in floating point each
/// term is at most `ln(1 + c G_ii)`.
pub fn log_det_identity_plus(g: &HermitianMatrix, c: f64) -> Result<f64> {
    Ok(ldl_pivots(g, c)?.iter().map(|d| d.ln()).sum())
}

/// The pivots `D_i` of `I + c G = L D L^H`.
pub fn ldl_pivots(g: &HermitianMatrix, c: f64) -> Result<Vec<f64>> {
    let n = g.n;
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    let mut d = vec![0.0; n];
    for j in 0..n {
        let mut correction = 0.0;
        for k in 0..j {
            correction += l[j * n + k].norm_sqr() * d[k];
        }
        let pivot = (1.0 + c * g.diag(j)) - correction;
        if !(pivot > 0.0 && pivot.is_finite()) {
            return Err(Error::NotPositiveDefinite {
                pivot: j,
                value: pivot,
            });
        }
        d[j] = pivot;
        for i in j + 1..n {
            let mut acc = g.get(i, j) * c;
            for k in 0..j {
                acc -= l[i * n + k] * l[j * n + k].conj() * d[k];
            }
            l[i * n + j] = acc / pivot;
        }
    }
    Ok(d)
}
