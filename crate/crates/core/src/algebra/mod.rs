//! The multicentric algebra `C_Λ(M)`: vector-valued functions on a finite
//! sample set `M`, multiplied with the polyproduct.

mod inverse;
mod product;
mod spectral;

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::poly::{fiber_is_critical, lagrange_basis, roots, Centers, Fiber, Polynomial};
use crate::tolerance::{scale_of, ToleranceConfig};

pub use inverse::ResolventReport;
pub use product::{box_vector, BoxMatrix};
pub use spectral::{CharacterReport, CharacteristicCoeffs, SpectrumSet};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative distance within which `p(z)` is matched to a sample of `M`.
pub const SAMPLE_MATCH_TOL: f64 = 1e-9;

/// Centers `Λ` together with everything the polyproduct needs.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraContext {
    tol: ToleranceConfig,
    centers: Centers,
    delta: Vec<Polynomial>,
    /// `L_ij = 1/(λ_i − λ_j)`, zero diagonal.
    lmat: ComplexMatrix,
    /// `ℓ_j = 1/p'(λ_j)`
    ell: Vec<Complex64>,
    /// `σ_ij = 1/(p'(λ_j)(λ_i − λ_j))`, zero diagonal.
    sigma: ComplexMatrix,
}

impl AlgebraContext {
    pub fn new(centers: Centers, tol: ToleranceConfig) -> Result<Self> {
        tol.validate()?;
        let d = centers.len();
        let lam = centers.lambdas();
        let ell: Vec<Complex64> = (0..d).map(|j| ONE / centers.dp_at_center(j)).collect();
        let mut lmat = ComplexMatrix::zeros(d, d);
        let mut sigma = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    lmat[(i, j)] = ONE / (lam[i] - lam[j]);
                    sigma[(i, j)] = ONE / (centers.dp_at_center(j) * (lam[i] - lam[j]));
                }
            }
        }
        let delta = lagrange_basis(&centers);
        Ok(Self {
            tol,
            centers,
            delta,
            lmat,
            ell,
            sigma,
        })
    }

    pub fn from_lambdas(lambdas: Vec<Complex64>, tol: ToleranceConfig) -> Result<Self> {
        let centers = Centers::new(lambdas, &tol)?;
        Self::new(centers, tol)
    }

    pub fn tol(&self) -> &ToleranceConfig {
        &self.tol
    }

    pub fn centers(&self) -> &Centers {
        &self.centers
    }

    /// Number of centers `d`.
    pub fn d(&self) -> usize {
        self.centers.len()
    }

    pub fn p(&self) -> &Polynomial {
        self.centers.poly()
    }

    pub fn delta(&self) -> &[Polynomial] {
        &self.delta
    }

    pub fn lmat(&self) -> &ComplexMatrix {
        &self.lmat
    }

    pub fn ell(&self) -> &[Complex64] {
        &self.ell
    }

    pub fn sigma(&self) -> &ComplexMatrix {
        &self.sigma
    }

    /// `(δ_1(z), ..., δ_d(z))`.
    pub fn basis_at(&self, z: Complex64) -> Vec<Complex64> {
        self.centers.basis_values(z)
    }

    /// `Σ_j δ_j(z) a_j`: the multicentric representation of a constant vector.
    pub fn represent(&self, a: &[Complex64], z: Complex64) -> Complex64 {
        self.basis_at(z).iter().zip(a).map(|(d, x)| d * x).sum()
    }

    /// The fiber `p^{-1}(w)`; at `w = 0` it is `Λ` itself, exactly.
    pub fn fiber(&self, w: Complex64) -> Result<Fiber> {
        if w == ZERO {
            return Ok(Fiber {
                w,
                points: self.centers.lambdas().to_vec(),
                critical: false,
            });
        }
        if self.d() == 1 {
            return Ok(Fiber {
                w,
                points: vec![self.centers.lambdas()[0] + w],
                critical: false,
            });
        }
        let shifted = self.p() - &Polynomial::constant(w);
        let points = roots(&shifted, &self.tol)?;
        let critical = fiber_is_critical(self.p(), &points, &self.tol);
        Ok(Fiber { w, points, critical })
    }

    /// Critical values `p(c)` for the critical points `c` of `p`.
    pub fn critical_values(&self) -> Result<Vec<Complex64>> {
        if self.d() < 2 {
            return Ok(Vec::new());
        }
        Ok(crate::poly::critical_points(self.p(), &self.tol)?
            .into_iter()
            .map(|c| self.p().eval(c))
            .collect())
    }
}

/// Finite discretization of the compact set `M`, with cached fibers.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    points: Vec<Complex64>,
    fibers: Vec<Fiber>,
}

impl SampleSet {
    pub fn new(ctx: &AlgebraContext, points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("the sample set must not be empty".into()));
        }
        for i in 0..points.len() {
            if !(points[i].re.is_finite() && points[i].im.is_finite()) {
                return Err(Error::InvalidInput("sample points must be finite".into()));
            }
            for j in 0..i {
                if points[i] == points[j] {
                    return Err(Error::InvalidInput(format!(
                        "duplicate sample point {}",
                        points[i]
                    )));
                }
            }
        }
        let fibers = points
            .iter()
            .map(|&w| ctx.fiber(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { points, fibers })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the sample matching `w` within `SAMPLE_MATCH_TOL · scale`.
    pub fn find(&self, w: Complex64) -> Option<usize> {
        let tol = SAMPLE_MATCH_TOL * scale_of([w.norm()]);
        self.points
            .iter()
            .enumerate()
            .map(|(i, &x)| (i, (x - w).norm()))
            .filter(|&(_, d)| d <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    }

    /// All points of `K = p^{-1}(M)`.
    pub fn fiber_points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.fibers.iter().flat_map(|f| f.points.iter().copied())
    }
}

/// An element of `C_Λ(M)`: the values `f(w_i) ∈ C^d` at every sample.
#[derive(Debug, Clone)]
pub struct VectorFunction {
    ctx: Arc<AlgebraContext>,
    samples: Arc<SampleSet>,
    values: Vec<Vec<Complex64>>,
}

impl PartialEq for VectorFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other) && self.values == other.values
    }
}

impl VectorFunction {
    /// `values[i]` is `f(w_i)`.
    pub fn new(ctx: Arc<AlgebraContext>, samples: Arc<SampleSet>, values: Vec<Vec<Complex64>>) -> Result<Self> {
        if values.len() != samples.len() {
            return Err(Error::DimensionMismatch {
                expected: samples.len(),
                found: values.len(),
            });
        }
        for v in &values {
            if v.len() != ctx.d() {
                return Err(Error::DimensionMismatch {
                    expected: ctx.d(),
                    found: v.len(),
                });
            }
            if v.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
                return Err(Error::InvalidInput("function values must be finite".into()));
            }
        }
        Ok(Self { ctx, samples, values })
    }

    /// `f(w) = a(w)` for a closure over the sample points.
    pub fn from_fn(
        ctx: Arc<AlgebraContext>,
        samples: Arc<SampleSet>,
        mut f: impl FnMut(Complex64) -> Vec<Complex64>,
    ) -> Result<Self> {
        let values = samples.points().iter().map(|&w| f(w)).collect();
        Self::new(ctx, samples, values)
    }

    /// The constant vector `a` at every sample.
    pub fn constant(ctx: Arc<AlgebraContext>, samples: Arc<SampleSet>, a: &[Complex64]) -> Result<Self> {
        let values = vec![a.to_vec(); samples.len()];
        Self::new(ctx, samples, values)
    }

    /// The unit `𝟙 = (1, ..., 1)`.
    pub fn unit(ctx: Arc<AlgebraContext>, samples: Arc<SampleSet>) -> Self {
        let d = ctx.d();
        let values = vec![vec![ONE; d]; samples.len()];
        Self { ctx, samples, values }
    }

    /// Reconstructs `f = L^{-1} φ` sample by sample from a scalar function
    /// given on the fibers.
    pub fn from_gelfand(
        ctx: Arc<AlgebraContext>,
        samples: Arc<SampleSet>,
        phi: impl Fn(Complex64) -> Complex64,
    ) -> Result<Self> {
        let values = samples
            .fibers()
            .iter()
            .map(|fib| {
                let pairs: Vec<(Complex64, Complex64)> = fib.points.iter().map(|&z| (z, phi(z))).collect();
                crate::transform::inverse_transform(&ctx, &pairs, fib.w)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, samples, values)
    }

    pub fn ctx(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn samples(&self) -> &Arc<SampleSet> {
        &self.samples
    }

    pub fn values(&self) -> &[Vec<Complex64>] {
        &self.values
    }

    /// `f(w_i)`.
    pub fn at(&self, i: usize) -> &[Complex64] {
        &self.values[i]
    }

    pub fn d(&self) -> usize {
        self.ctx.d()
    }

    pub(crate) fn same_space(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx)
            && (Arc::ptr_eq(&self.samples, &other.samples) || *self.samples == *other.samples)
    }

    pub(crate) fn check_space(&self, other: &Self) -> Result<()> {
        if self.same_space(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with_values(&self, values: Vec<Vec<Complex64>>) -> Self {
        Self {
            ctx: self.ctx.clone(),
            samples: self.samples.clone(),
            values,
        }
    }

    fn zip_map(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
            .collect();
        Ok(self.with_values(values))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.with_values(
            self.values
                .iter()
                .map(|v| v.iter().map(|&x| x * s).collect())
                .collect(),
        )
    }

    /// `λ𝟙 − f`.
    pub fn shift_from(&self, lambda: Complex64) -> Self {
        self.with_values(
            self.values
                .iter()
                .map(|v| v.iter().map(|&x| lambda - x).collect())
                .collect(),
        )
    }

    /// `f̂(z) = Σ_j δ_j(z) f_j(w_i)` for `z` in the fiber of sample `i`.
    pub fn gelfand_at_sample(&self, i: usize, z: Complex64) -> Complex64 {
        self.ctx.represent(&self.values[i], z)
    }

    /// `f̂` at every fiber point of sample `i`.
    pub fn fiber_values(&self, i: usize) -> Vec<Complex64> {
        self.samples.fibers()[i]
            .points
            .iter()
            .map(|&z| self.gelfand_at_sample(i, z))
            .collect()
    }

    /// Largest entry magnitude, used as a comparison scale.
    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|v| v.iter().map(|c| c.norm()))
            .fold(0.0, f64::max)
    }
}
