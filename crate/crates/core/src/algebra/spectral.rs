use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{AlgebraContext, SampleSet, VectorFunction, ONE, ZERO};
use crate::error::{Error, Result};
use crate::poly::{cluster_points, Polynomial};
use crate::tolerance::scale_of;

/// Spectrum of an element: all fiber values, and the same values clustered
/// into a set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSet {
    pub multiset: Vec<Complex64>,
    pub set: Vec<Complex64>,
}

/// Per sample, the coefficients `Φ_1..Φ_d` of
/// `π_f(λ, w) = λ^d − Φ_1 λ^{d−1} + ... + (−1)^d Φ_d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicCoeffs {
    pub w: Vec<Complex64>,
    pub phi: Vec<Vec<Complex64>>,
}

impl CharacteristicCoeffs {
    /// `π_f(λ, w_i)` from the stored coefficients.
    pub fn eval(&self, i: usize, lambda: Complex64) -> Complex64 {
        let phi = &self.phi[i];
        let d = phi.len();
        let mut acc = Complex64::new(1.0, 0.0);
        let mut sign = -1.0;
        for phi_k in phi.iter().take(d) {
            acc = acc * lambda + phi_k * sign;
            sign = -sign;
        }
        acc
    }

    /// `Φ_d(w_i)`, the product of the fiber values.
    pub fn product(&self, i: usize) -> Complex64 {
        self.phi[i].last().copied().unwrap_or(ONE)
    }
}

/// Characters living over one point `w0` of `M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterReport {
    pub w0: Complex64,
    /// One coefficient vector `η` per fiber point: `χ(a) = Σ η_j a_j`.
    pub etas: Vec<Vec<Complex64>>,
    /// Largest residual of the diagonal and off-diagonal character equations
    /// and of `Σ η_j = 1`.
    pub max_residual: f64,
}

/// Set semantics for a list of complex values: clusters within `radius`,
/// represented by their centroids.
pub fn dedup_values(values: &[Complex64], radius: f64) -> Vec<Complex64> {
    cluster_points(values, radius).into_iter().map(|(c, _)| c).collect()
}

impl VectorFunction {
    /// `σ(f) = { f̂(z) : z ∈ p^{-1}(M) }`.
    pub fn spectrum(&self) -> SpectrumSet {
        let multiset: Vec<Complex64> = (0..self.samples.len())
            .flat_map(|i| self.fiber_values(i))
            .collect();
        let radius = self.ctx.tol().eq_tol * scale_of(multiset.iter().map(|z| z.norm()));
        let set = dedup_values(&multiset, radius);
        SpectrumSet { multiset, set }
    }

    /// `max |f̂|` over `K`.
    pub fn spectral_radius(&self) -> f64 {
        self.spectrum().multiset.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖f^{2^k}‖^{1/2^k}` for `k = 0..=k_max`.
    ///
    /// The powers are renormalized after each squaring so that the sequence
    /// is computed in log space; a squared element whose norm drops below
    /// `1e-12` of its factors is treated as exactly zero. A radical element
    /// (`f̂ = 0` on `K` to `eq_tol`) is nilpotent of order at most `d`, so its
    /// powers with `2^k ≥ d` are reported as exactly zero.
    pub fn spectral_radius_iter(&self, k_max: usize) -> Result<Vec<f64>> {
        const NIL_THRESHOLD: f64 = 1e-12;
        let mut out = Vec::with_capacity(k_max + 1);
        let n0 = self.op_norm();
        if n0 == 0.0 {
            out.resize(k_max + 1, 0.0);
            return Ok(out);
        }
        let radical = self.spectral_radius() <= self.ctx.tol().eq_tol * n0;
        let d = self.d();
        let mut log_norm = n0.ln();
        let mut u = self.scale(Complex64::new(1.0 / n0, 0.0));
        out.push(n0);
        let mut zero = false;
        for k in 1..=k_max {
            if radical && (1usize << k.min(63)) >= d {
                zero = true;
            }
            if zero {
                out.push(0.0);
                continue;
            }
            let sq = u.polyprod(&u)?;
            let s = sq.op_norm();
            if !s.is_finite() {
                return Err(Error::Overflow { k });
            }
            if s <= NIL_THRESHOLD {
                zero = true;
                out.push(0.0);
                continue;
            }
            log_norm = 2.0 * log_norm + s.ln();
            u = sq.scale(Complex64::new(1.0 / s, 0.0));
            let v = (log_norm / 2f64.powi(k as i32)).exp();
            if !v.is_finite() {
                return Err(Error::Overflow { k });
            }
            out.push(v);
        }
        Ok(out)
    }

    /// The characteristic coefficients `Φ_k(w)` as elementary symmetric
    /// functions of the fiber values.
    pub fn characteristic(&self) -> CharacteristicCoeffs {
        let phi = (0..self.samples.len())
            .map(|i| {
                let vals = self.fiber_values(i);
                let poly = Polynomial::from_roots(&vals);
                let d = vals.len();
                let coeffs = poly.coeffs();
                (1..=d)
                    .map(|k| {
                        let c = coeffs.get(d - k).copied().unwrap_or(ZERO);
                        if k % 2 == 0 {
                            c
                        } else {
                            -c
                        }
                    })
                    .collect()
            })
            .collect();
        CharacteristicCoeffs {
            w: self.samples.points().to_vec(),
            phi,
        }
    }

    /// `σ([f])` in the quotient by the ideal of functions vanishing on `K0`:
    /// the values `f̂(z)`, `z ∈ K0`.
    pub fn quotient_spectrum(&self, k0: &[Complex64]) -> Result<Vec<Complex64>> {
        let vals = k0
            .iter()
            .map(|&z| crate::transform::gelfand_eval(self, z))
            .collect::<Result<Vec<_>>>()?;
        let radius = self.ctx.tol().eq_tol * scale_of(vals.iter().map(|z| z.norm()));
        Ok(dedup_values(&vals, radius))
    }
}

impl AlgebraContext {
    /// The characters over `w0 ∈ M`: `η^{(k)} = (δ_1(z_k), ..., δ_d(z_k))`
    /// for the fiber points `z_k`, each checked against the character
    /// equations.
    pub fn characters_at(&self, samples: &SampleSet, w0: Complex64) -> Result<CharacterReport> {
        let idx = samples.find(w0).ok_or(Error::SampleMiss { w: w0 })?;
        let fib = &samples.fibers()[idx];
        let w0 = fib.w;
        let etas: Vec<Vec<Complex64>> = fib.points.iter().map(|&z| self.basis_at(z)).collect();
        let max_residual = etas
            .iter()
            .map(|eta| self.character_residual(eta, w0))
            .fold(0.0, f64::max);
        Ok(CharacterReport {
            w0,
            etas,
            max_residual,
        })
    }

    /// Largest residual of
    /// `η_i² = η_i − w0 Σ_{j≠i}(σ_ij η_i + σ_ji η_j)`,
    /// `η_i η_j = w0 (σ_ij η_i + σ_ji η_j)` and `Σ η_i = 1`.
    pub fn character_residual(&self, eta: &[Complex64], w0: Complex64) -> f64 {
        let d = self.d();
        let s = self.sigma();
        let mut worst = (eta.iter().sum::<Complex64>() - ONE).norm();
        for i in 0..d {
            let coupling: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| s[(i, j)] * eta[i] + s[(j, i)] * eta[j])
                .sum();
            worst = worst.max((eta[i] * eta[i] - (eta[i] - w0 * coupling)).norm());
            for j in 0..d {
                if j != i {
                    let rhs = w0 * (s[(i, j)] * eta[i] + s[(j, i)] * eta[j]);
                    worst = worst.max((eta[i] * eta[j] - rhs).norm());
                }
            }
        }
        worst
    }

    /// A basis of the vectors `a` with `Σ_j δ_j(z) a_j = 0` on the whole fiber
    /// of `w0`; nonempty exactly when `w0` is a critical value.
    pub fn radical_basis_at(&self, w0: Complex64) -> Result<Vec<Vec<Complex64>>> {
        let fib = self.fiber(w0)?;
        let radius = self.tol().coalesce_radius() * scale_of(fib.points.iter().map(|z| z.norm()));
        let distinct: Vec<Complex64> = fib.clusters(radius).into_iter().map(|(c, _)| c).collect();
        let rows: Vec<Vec<Complex64>> = distinct.iter().map(|&z| self.basis_at(z)).collect();
        Ok(null_space(rows, self.d(), self.tol().eq_tol))
    }
}

/// Null space of a row-major matrix by reduction to row echelon form with
/// partial pivoting.
pub(crate) fn null_space(mut rows: Vec<Vec<Complex64>>, cols: usize, eq_tol: f64) -> Vec<Vec<Complex64>> {
    let scale = scale_of(rows.iter().flat_map(|r| r.iter().map(|c| c.norm())));
    let threshold = eq_tol * scale;
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r >= rows.len() {
            break;
        }
        let (p, mag) = (r..rows.len())
            .map(|i| (i, rows[i][col].norm()))
            .fold((r, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if mag <= threshold {
            continue;
        }
        rows.swap(r, p);
        let pv = rows[r][col];
        for x in rows[r].iter_mut() {
            *x /= pv;
        }
        for i in 0..rows.len() {
            if i != r {
                let factor = rows[i][col];
                if factor != ZERO {
                    for j in 0..cols {
                        let t = rows[r][j];
                        rows[i][j] -= factor * t;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![ZERO; cols];
            v[free] = ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][free];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::tolerance::ToleranceConfig;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn worked() -> VectorFunction {
        let ctx = Arc::new(
            AlgebraContext::from_lambdas(vec![c(1.0, 0.0), c(-1.0, 0.0)], ToleranceConfig::default()).unwrap(),
        );
        let m = Arc::new(SampleSet::new(&ctx, vec![c(3.0, 0.0)]).unwrap());
        VectorFunction::new(ctx, m, vec![vec![c(2.0, 0.0), c(0.0, 0.0)]]).unwrap()
    }

    fn sorted_re(v: &[Complex64]) -> Vec<f64> {
        let mut r: Vec<f64> = v.iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        r
    }

    #[test]
    fn spectrum_of_worked_example() {
        let s = worked().spectrum();
        let r = sorted_re(&s.set);
        assert_eq!(r.len(), 2);
        assert!((r[0] + 1.0).abs() < 1e-14 && (r[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn spectrum_of_constants() {
        let f = worked();
        let one = VectorFunction::unit(f.ctx().clone(), f.samples().clone());
        assert_eq!(one.spectrum().set.len(), 1);
        assert!((one.spectrum().set[0] - ONE).norm() < 1e-15);
        let a = VectorFunction::constant(f.ctx().clone(), f.samples().clone(), &[c(0.5, 2.0); 2]).unwrap();
        assert_eq!(a.spectrum().set.len(), 1);
        assert!((a.spectrum().set[0] - c(0.5, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn characteristic_of_worked_example() {
        let ch = worked().characteristic();
        assert!((ch.phi[0][0] - c(2.0, 0.0)).norm() < 1e-14);
        assert!((ch.phi[0][1] - c(-3.0, 0.0)).norm() < 1e-14);
        assert!(ch.eval(0, c(3.0, 0.0)).norm() < 1e-13);
        assert!(ch.eval(0, c(-1.0, 0.0)).norm() < 1e-13);
        assert!((ch.product(0) - c(-3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn characteristic_of_unit_is_binomial() {
        let ctx = Arc::new(
            AlgebraContext::from_lambdas(
                vec![c(1.0, 0.0), c(-1.0, 0.5), c(0.2, -1.0), c(0.0, 1.3)],
                ToleranceConfig::default(),
            )
            .unwrap(),
        );
        let m = Arc::new(SampleSet::new(&ctx, vec![c(0.7, 0.2), c(-2.0, 1.0)]).unwrap());
        let one = VectorFunction::unit(ctx, m);
        let ch = one.characteristic();
        for phi in ch.phi {
            for (k, want) in [4.0, 6.0, 4.0, 1.0].iter().enumerate() {
                assert!((phi[k] - c(*want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn spectral_radius_of_unit() {
        let f = worked();
        let one = VectorFunction::unit(f.ctx().clone(), f.samples().clone());
        for v in one.spectral_radius_iter(6).unwrap() {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn spectral_radius_decreases_toward_three() {
        let seq = worked().spectral_radius_iter(10).unwrap();
        assert_eq!(seq[0], 5.0);
        for w in seq.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert!((seq[10] - 3.0).abs() / 3.0 < 0.05);
        assert!(seq[10] >= 3.0 - 1e-9);
    }

    #[test]
    fn characters_of_worked_context() {
        let f = worked();
        let rep = f.ctx().characters_at(f.samples(), c(3.0, 0.0)).unwrap();
        assert!(rep.max_residual < 1e-12);
        let mut firsts = sorted_re(&rep.etas.iter().map(|e| e[0]).collect::<Vec<_>>());
        firsts.dedup();
        assert!((firsts[0] + 0.5).abs() < 1e-14 && (firsts[1] - 1.5).abs() < 1e-14);
        assert!(f.ctx().characters_at(f.samples(), c(4.0, 0.0)).is_err());
    }

    #[test]
    fn radical_at_critical_value() {
        let f = worked();
        let basis = f.ctx().radical_basis_at(c(-1.0, 0.0)).unwrap();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert!((v[0] + v[1]).norm() < 1e-12);
        assert!(f.ctx().radical_basis_at(c(3.0, 0.0)).unwrap().is_empty());
    }

    #[test]
    fn quotient_spectrum_subsets() {
        let f = worked();
        let q = f.quotient_spectrum(&[c(2.0, 0.0)]).unwrap();
        assert_eq!(q.len(), 1);
        assert!((q[0] - c(3.0, 0.0)).norm() < 1e-14);
        let all = f.quotient_spectrum(&[c(2.0, 0.0), c(-2.0, 0.0)]).unwrap();
        assert_eq!(sorted_re(&all).len(), 2);
        assert!(matches!(f.quotient_spectrum(&[c(5.0, 0.0)]), Err(Error::SampleMiss { .. })));
    }

    #[test]
    fn null_space_of_rank_one() {
        let rows = vec![vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]];
        let ns = null_space(rows, 2, 1e-12);
        assert_eq!(ns, vec![vec![c(-2.0, 0.0), c(1.0, 0.0)]]);
    }
}
