use num_complex::Complex64;

use super::{VectorFunction, ONE};
use crate::error::Result;
use crate::linalg::ComplexMatrix;

/// The antisymmetric difference matrix `(□a)_ij = a_i − a_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxMatrix(ComplexMatrix);

impl BoxMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}

/// Boxing of a vector.
pub fn box_vector(a: &[Complex64]) -> BoxMatrix {
    let d = a.len();
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = a[i] - a[j];
        }
    }
    BoxMatrix(m)
}

impl VectorFunction {
    /// The polyproduct `f ⊛ g`:
    /// `(f⊛g)_i(w) = f_i g_i − w Σ_{j≠i} σ_ij (f_i − f_j)(g_i − g_j)`.
    pub fn polyprod(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let sigma = self.ctx.sigma();
        let d = self.d();
        let values = self
            .samples
            .points()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(&w, (f, g))| {
                (0..d)
                    .map(|i| {
                        let coupling: Complex64 = (0..d)
                            .filter(|&j| j != i)
                            .map(|j| sigma[(i, j)] * (f[i] - f[j]) * (g[i] - g[j]))
                            .sum();
                        f[i] * g[i] - w * coupling
                    })
                    .collect()
            })
            .collect();
        Ok(self.with_values(values))
    }

    /// The polyproduct in its matrix form `f∘g − w (L ∘ □f ∘ □g) ℓ`.
    pub fn polyprod_boxed(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let lmat = self.ctx.lmat();
        let ell = self.ctx.ell();
        let d = self.d();
        let values = self
            .samples
            .points()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(&w, (f, g))| {
                let bf = box_vector(f);
                let bg = box_vector(g);
                let mut h = ComplexMatrix::zeros(d, d);
                for i in 0..d {
                    for j in 0..d {
                        h[(i, j)] = lmat[(i, j)] * bf.0[(i, j)] * bg.0[(i, j)];
                    }
                }
                let correction = h.mul_vec(ell).expect("square by construction");
                (0..d).map(|i| f[i] * g[i] - w * correction[i]).collect()
            })
            .collect();
        Ok(self.with_values(values))
    }

    /// `f^n` by repeated squaring; `f^0 = 𝟙`.
    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::unit(self.ctx.clone(), self.samples.clone());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.polyprod(&base).expect("same space");
            }
            e >>= 1;
            if e > 0 {
                base = base.polyprod(&base).expect("same space");
            }
        }
        result
    }

    /// The multiplication matrix `B_f(w_i)` with `(f⊛g)(w_i) = B_f(w_i) g(w_i)`.
    pub fn mult_matrix(&self, i: usize) -> ComplexMatrix {
        let w = self.samples.points()[i];
        let f = &self.values[i];
        let sigma = self.ctx.sigma();
        let d = self.d();
        let mut b = ComplexMatrix::zeros(d, d);
        for r in 0..d {
            let mut diag = f[r];
            for j in 0..d {
                if j != r {
                    let off = w * sigma[(r, j)] * (f[r] - f[j]);
                    b[(r, j)] = off;
                    diag -= off;
                }
            }
            b[(r, r)] = diag;
        }
        b
    }

    /// `|f|_M = max_w |f(w)|_∞`.
    pub fn sup_norm(&self) -> f64 {
        self.max_abs()
    }

    /// The operator norm `sup_{|g|_M ≤ 1} |f⊛g|_M`.
    ///
    /// On a finite sample set the supremum decouples per sample, giving the
    /// largest induced ∞-norm of `B_f(w)`.
    pub fn op_norm(&self) -> f64 {
        (0..self.samples.len())
            .map(|i| self.mult_matrix(i).norm_inf())
            .fold(0.0, f64::max)
    }

    /// Upper constant `C` with `‖f‖ ≤ C |f|_M` for this context and sample set.
    pub fn norm_equivalence_constant(&self) -> f64 {
        let sigma = self.ctx.sigma();
        let d = self.d();
        self.samples
            .points()
            .iter()
            .map(|w| {
                let row = (0..d)
                    .map(|i| (0..d).map(|j| sigma[(i, j)].norm()).sum::<f64>())
                    .fold(0.0, f64::max);
                1.0 + 4.0 * w.norm() * row
            })
            .fold(1.0, f64::max)
    }

    /// `true` when every entry is below `threshold`.
    pub fn is_zero_within(&self, threshold: f64) -> bool {
        self.max_abs() <= threshold
    }

    /// Returns the `𝟙`-relative deviation `|self − 𝟙|_M`.
    pub fn distance_to_unit(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|v| v.iter().map(|&x| (x - ONE).norm()))
            .fold(0.0, f64::max)
    }
}
