use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by every module.
///
/// All comparisons are made relative to a scale `max(1, operand magnitudes)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative tolerance for equality and singularity tests.
    pub eq_tol: f64,
    /// Distance below which a fiber point is considered critical.
    pub crit_tol: f64,
    /// Residual bound for polynomial roots.
    pub root_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eq_tol: 1e-10,
            crit_tol: 1e-8,
            root_tol: 1e-10,
        }
    }
}

impl ToleranceConfig {
    pub fn new(eq_tol: f64, crit_tol: f64, root_tol: f64) -> Result<Self> {
        let cfg = Self {
            eq_tol,
            crit_tol,
            root_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eq_tol", self.eq_tol),
            ("crit_tol", self.crit_tol),
            ("root_tol", self.root_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Radius within which computed roots are treated as one coalesced point.
    ///
    /// Simple roots are accurate to about `root_tol`, double roots only to its
    /// square root, so clusters are detected at that radius.
    pub fn coalesce_radius(&self) -> f64 {
        self.root_tol.sqrt()
    }
}

/// `max(1, |x|)` over all arguments.
pub fn scale_of<I: IntoIterator<Item = f64>>(magnitudes: I) -> f64 {
    magnitudes.into_iter().fold(1.0, f64::max)
}
