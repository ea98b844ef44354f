//! Argument decoding: inline JSON or a file path, plus the vector-function
//! document format.

use std::fs;
use std::sync::Arc;

use multicentric::{AlgebraContext, Complex64, SampleSet, ToleranceConfig, VectorFunction};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// A malformed argument; always a usage error.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn looks_inline(s: &str) -> bool {
    let t = s.trim_start();
    t.starts_with('{') || t.starts_with('[') || t.starts_with('"') || t.parse::<f64>().is_ok()
}

/// Reads `arg` as JSON text, or as the path of a JSON file.
pub fn load<T: DeserializeOwned>(flag: &str, arg: &str) -> Result<T, InputError> {
    let text = if looks_inline(arg) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| InputError(format!("--{flag}: cannot read '{arg}': {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| InputError(format!("--{flag}: {e}")))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Real(f64),
    Pair([f64; 2]),
}

/// A complex scalar written as `[re, im]` or as a real number.
pub fn load_complex(flag: &str, arg: &str) -> Result<Complex64, InputError> {
    match load::<ScalarRepr>(flag, arg) {
        Ok(ScalarRepr::Real(x)) => Ok(Complex64::new(x, 0.0)),
        Ok(ScalarRepr::Pair([re, im])) => Ok(Complex64::new(re, im)),
        Err(_) => Err(InputError(format!("--{flag}: expected a number or an [re, im] pair, got '{arg}'"))),
    }
}

/// A scalar or a list of scalars.
pub fn load_complex_list(flag: &str, arg: &str) -> Result<Vec<Complex64>, InputError> {
    if let Ok(z) = load_complex(flag, arg) {
        return Ok(vec![z]);
    }
    let items: Vec<ScalarRepr> = load(flag, arg)?;
    Ok(items
        .into_iter()
        .map(|s| match s {
            ScalarRepr::Real(x) => Complex64::new(x, 0.0),
            ScalarRepr::Pair([re, im]) => Complex64::new(re, im),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleDoc {
    pub w: Complex64,
    pub f: Vec<Complex64>,
}

/// `{"centers": [...], "samples": [{"w": .., "f": [..]}, ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionDoc {
    pub centers: Vec<Complex64>,
    pub samples: Vec<SampleDoc>,
}

impl FunctionDoc {
    pub fn from_function(f: &VectorFunction) -> Self {
        Self {
            centers: f.ctx().centers().lambdas().to_vec(),
            samples: f
                .samples()
                .points()
                .iter()
                .zip(f.values())
                .map(|(&w, v)| SampleDoc { w, f: v.clone() })
                .collect(),
        }
    }

    pub fn context(&self, tol: &ToleranceConfig) -> multicentric::Result<Arc<AlgebraContext>> {
        Ok(Arc::new(AlgebraContext::from_lambdas(self.centers.clone(), *tol)?))
    }

    pub fn into_function(self, tol: &ToleranceConfig) -> multicentric::Result<VectorFunction> {
        let ctx = self.context(tol)?;
        self.into_function_in(ctx)
    }

    /// Builds the function over an existing context, sharing its samples
    /// when they coincide.
    pub fn into_function_in(self, ctx: Arc<AlgebraContext>) -> multicentric::Result<VectorFunction> {
        let points: Vec<Complex64> = self.samples.iter().map(|s| s.w).collect();
        let m = Arc::new(SampleSet::new(&ctx, points)?);
        let values = self.samples.into_iter().map(|s| s.f).collect();
        VectorFunction::new(ctx, m, values)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixRepr {
    Dense(multicentric::ComplexMatrix),
    Rows(Vec<Vec<Complex64>>),
}

/// A matrix as `{"rows", "cols", "data"}` or as a list of rows.
pub fn load_matrix(flag: &str, arg: &str) -> Result<multicentric::ComplexMatrix, InputError> {
    match load::<MatrixRepr>(flag, arg)? {
        MatrixRepr::Dense(m) => Ok(m),
        MatrixRepr::Rows(rows) => multicentric::ComplexMatrix::from_rows(&rows).map_err(|e| InputError(format!("--{flag}: {e}"))),
    }
}
