//! The multicentric representation `f ↦ f̂ = Σ δ_j f_j∘p` and its pointwise
//! inverse on noncritical fibers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraContext, VectorFunction};
use crate::error::{Error, Result};
use crate::poly::{cluster_points, Polynomial};
use crate::tolerance::scale_of;

/// A point `z` together with its image `w = p(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationPoint {
    pub z: Complex64,
    pub w: Complex64,
}

impl EvaluationPoint {
    pub fn new(p: &Polynomial, z: Complex64) -> Self {
        Self { z, w: p.eval(z) }
    }
}

/// Values of a scalar function on one fiber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiSamples {
    pub w: Complex64,
    pub values: Vec<PhiPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiPoint {
    pub z: Complex64,
    pub phi: Complex64,
}

impl PhiSamples {
    pub fn pairs(&self) -> Vec<(Complex64, Complex64)> {
        self.values.iter().map(|v| (v.z, v.phi)).collect()
    }
}

/// `f̂(z) = Σ_j δ_j(z) f_j(p(z))`; `p(z)` must match a sample of `M`.
pub fn gelfand_eval(f: &VectorFunction, z: Complex64) -> Result<Complex64> {
    let w = f.ctx().p().eval(z);
    let i = f.samples().find(w).ok_or(Error::SampleMiss { w })?;
    Ok(f.gelfand_at_sample(i, z))
}

/// Reconstructs `f(w) ∈ C^d` from `φ` on the full fiber of `w`:
/// `f_k(w) = Σ_j δ_j(λ_k; w) φ(z_j(w))`, where `δ_j(·; w)` is the Lagrange
/// basis on the fiber points.
pub fn inverse_transform(
    ctx: &AlgebraContext,
    phi: &[(Complex64, Complex64)],
    w: Complex64,
) -> Result<Vec<Complex64>> {
    let d = ctx.d();
    if phi.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: phi.len(),
        });
    }
    let tol = ctx.tol();
    let p = ctx.p();
    for &(z, _) in phi {
        let (v, mag) = p.eval_with_scale(z);
        if (v - w).norm() > tol.root_tol.sqrt() * scale_of([mag, w.norm()]) {
            return Err(Error::InvalidInput(format!("{z} is not in the fiber of w = {w}")));
        }
    }
    let pts: Vec<Complex64> = phi.iter().map(|&(z, _)| z).collect();
    let dp = p.derivative();
    let (min_dp, _) = pts
        .iter()
        .map(|&z| dp.eval_with_scale(z))
        .fold((f64::INFINITY, 0.0), |acc, (v, mag)| {
            let rel = v.norm() / scale_of([mag]);
            if rel < acc.0 {
                (rel, mag)
            } else {
                acc
            }
        });
    let radius = tol.coalesce_radius() * scale_of(pts.iter().map(|z| z.norm()));
    if min_dp <= tol.crit_tol || cluster_points(&pts, radius).len() < d {
        return Err(Error::CriticalValue { w, derivative: min_dp });
    }
    Ok(ctx
        .centers()
        .lambdas()
        .iter()
        .map(|&lk| {
            (0..d)
                .map(|j| {
                    let basis: Complex64 = (0..d)
                        .filter(|&m| m != j)
                        .map(|m| (lk - pts[m]) / (pts[j] - pts[m]))
                        .product();
                    basis * phi[j].1
                })
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::SampleSet;
    use crate::tolerance::ToleranceConfig;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn two_center() -> Arc<AlgebraContext> {
        Arc::new(AlgebraContext::from_lambdas(vec![c(1.0, 0.0), c(-1.0, 0.0)], ToleranceConfig::default()).unwrap())
    }

    #[test]
    fn gelfand_examples() {
        let ctx = two_center();
        let m = Arc::new(SampleSet::new(&ctx, vec![c(3.0, 0.0)]).unwrap());
        let one = VectorFunction::unit(ctx.clone(), m.clone());
        assert_eq!(gelfand_eval(&one, c(2.0, 0.0)).unwrap(), c(1.0, 0.0));
        let f = VectorFunction::new(ctx, m, vec![vec![c(2.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert_eq!(gelfand_eval(&f, c(2.0, 0.0)).unwrap(), c(3.0, 0.0));
        assert_eq!(gelfand_eval(&f, c(-2.0, 0.0)).unwrap(), c(-1.0, 0.0));
        assert!(matches!(gelfand_eval(&f, c(1.0, 0.0)), Err(Error::SampleMiss { .. })));
    }

    #[test]
    fn inverse_examples() {
        let ctx = two_center();
        let f = inverse_transform(&ctx, &[(c(2.0, 0.0), c(3.0, 0.0)), (c(-2.0, 0.0), c(-1.0, 0.0))], c(3.0, 0.0)).unwrap();
        assert!((f[0] - c(2.0, 0.0)).norm() < 1e-15);
        assert!(f[1].norm() < 1e-15);
        // order of the fiber points does not matter
        let g = inverse_transform(&ctx, &[(c(-2.0, 0.0), c(-1.0, 0.0)), (c(2.0, 0.0), c(3.0, 0.0))], c(3.0, 0.0)).unwrap();
        assert!((f[0] - g[0]).norm() < 1e-15 && (f[1] - g[1]).norm() < 1e-15);
        let k = c(0.3, -0.7);
        let h = inverse_transform(&ctx, &[(c(2.0, 0.0), k), (c(-2.0, 0.0), k)], c(3.0, 0.0)).unwrap();
        assert!((h[0] - k).norm() < 1e-15 && (h[1] - k).norm() < 1e-15);
    }

    #[test]
    fn inverse_refuses_critical_values() {
        let ctx = two_center();
        let err = inverse_transform(&ctx, &[(c(0.0, 0.0), c(1.0, 0.0)), (c(0.0, 0.0), c(1.0, 0.0))], c(-1.0, 0.0));
        assert!(matches!(err, Err(Error::CriticalValue { .. })));
    }

    #[test]
    fn inverse_rejects_foreign_points() {
        let ctx = two_center();
        let err = inverse_transform(&ctx, &[(c(2.0, 0.0), c(1.0, 0.0)), (c(-1.5, 0.0), c(1.0, 0.0))], c(3.0, 0.0));
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn round_trip_on_worked_example() {
        let ctx = two_center();
        let m = Arc::new(SampleSet::new(&ctx, vec![c(3.0, 0.0)]).unwrap());
        let f = VectorFunction::new(ctx.clone(), m.clone(), vec![vec![c(2.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let pairs: Vec<_> = m.fibers()[0]
            .points
            .iter()
            .map(|&z| (z, gelfand_eval(&f, z).unwrap()))
            .collect();
        let back = inverse_transform(&ctx, &pairs, c(3.0, 0.0)).unwrap();
        assert!((back[0] - c(2.0, 0.0)).norm() < 1e-14 && back[1].norm() < 1e-14);
    }

    #[test]
    fn phi_samples_json() {
        let s = r#"{"w":[3.0,0.0],"values":[{"z":[2.0,0.0],"phi":[3.0,0.0]},{"z":[-2.0,0.0],"phi":[-1.0,0.0]}]}"#;
        let parsed: PhiSamples = serde_json::from_str(s).unwrap();
        assert_eq!(parsed.pairs().len(), 2);
        assert_eq!(serde_json::to_string(&parsed).unwrap(), s);
    }
}
