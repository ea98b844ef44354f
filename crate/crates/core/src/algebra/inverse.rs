use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{VectorFunction, ONE};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::tolerance::scale_of;

/// Outcome of the resolvent estimates at one `λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolventReport {
    pub lambda: Complex64,
    /// `‖(λ𝟙 − f)^{-1}‖`
    pub resolvent_norm: f64,
    /// `dist(λ, σ(f))`
    pub dist: f64,
    /// `max_w |(λ𝟙−f)^{-1}(w)|_∞ |π_f(λ,w)| / (|λ| + ‖f‖)^{d−1}`
    pub empirical_c: f64,
    /// `1/dist(λ, σ(f)) ≤ ‖(λ𝟙−f)^{-1}‖`, up to relative rounding.
    pub lower_bound_holds: bool,
}

impl VectorFunction {
    /// Smallest `|f̂(z)|` over `K` with a witness point.
    fn min_gelfand(&self) -> (f64, Complex64, Complex64) {
        let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for (i, fib) in self.samples.fibers().iter().enumerate() {
            for &z in &fib.points {
                let v = self.gelfand_at_sample(i, z);
                if v.norm() < best.0 {
                    best = (v.norm(), z, v);
                }
            }
        }
        best
    }

    /// The inverse `g` with `f ⊛ g = 𝟙`, solving `B_f(w) g(w) = 𝟙` per sample.
    pub fn invert(&self) -> Result<Self> {
        let tol = *self.ctx.tol();
        let (eta, witness, value) = self.min_gelfand();
        if eta <= tol.eq_tol * scale_of([self.max_abs()]) {
            return Err(Error::NotInvertible { witness, value });
        }
        let d = self.d();
        let rhs = vec![ONE; d];
        let mut values = Vec::with_capacity(self.samples.len());
        for i in 0..self.samples.len() {
            let b = self.mult_matrix(i);
            let g = solve(&b, &rhs, &tol).map_err(|_| Error::NotInvertible { witness, value })?;
            let r = b.mul_vec(&g)?;
            let resid = r.iter().map(|x| (x - ONE).norm()).fold(0.0, f64::max);
            let gmax = g.iter().map(|x| x.norm()).fold(0.0, f64::max);
            if resid > tol.eq_tol * scale_of([b.norm_inf() * gmax]) {
                return Err(Error::NotInvertible { witness, value });
            }
            values.push(g);
        }
        Ok(self.with_values(values))
    }

    /// Resolvent `(λ𝟙 − f)^{-1}` with the upper estimate constant and the
    /// distance lower bound.
    pub fn resolvent_bound_check(&self, lambda: Complex64) -> Result<ResolventReport> {
        let shifted = self.shift_from(lambda);
        let res = shifted.invert()?;
        let resolvent_norm = res.op_norm();
        let dist = self
            .spectrum()
            .multiset
            .iter()
            .map(|v| (lambda - v).norm())
            .fold(f64::INFINITY, f64::min);
        let ch = self.characteristic();
        let d = self.d() as i32;
        let denom = (lambda.norm() + self.op_norm()).powi(d - 1);
        let empirical_c = (0..self.samples.len())
            .map(|i| {
                let g = res.at(i).iter().map(|x| x.norm()).fold(0.0, f64::max);
                g * ch.eval(i, lambda).norm() / denom
            })
            .fold(0.0, f64::max);
        let lower = 1.0 / dist;
        let lower_bound_holds = lower <= resolvent_norm * (1.0 + 1e-10);
        Ok(ResolventReport {
            lambda,
            resolvent_norm,
            dist,
            empirical_c,
            lower_bound_holds,
        })
    }
}
