//! Multicentric calculus: the Banach algebra `C_Λ(M)` of `C^d`-valued
//! functions under the polyproduct, its Gelfand transform, and the matrix
//! functional calculus `χ_A` it induces.

pub mod algebra;
pub mod calculus;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod tolerance;
pub mod transform;
pub mod verify;

pub use algebra::{AlgebraContext, SampleSet, VectorFunction};
pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use num_complex::Complex64;
pub use poly::{Centers, Fiber, Polynomial};
pub use tolerance::ToleranceConfig;
