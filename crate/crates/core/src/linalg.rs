//! Small dense complex linear algebra: LU solves, matrix polynomials,
//! characteristic polynomials and eigenvalues, spectral norms.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{roots_clustered, Polynomial};
use crate::tolerance::{scale_of, ToleranceConfig};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest dimension accepted by [`eigenvalues`].
pub const EIGEN_DIM_CAP: usize = 16;

/// Relative radius within which eigenvalues are treated as one defective
/// cluster; a Jordan block of size `m` scatters them by about `ε^{1/m}`.
pub const EIGEN_CLUSTER_RADIUS: f64 = 1e-3;

const NORM2_REL_TOL: f64 = 1e-8;
const NORM2_MAX_ITER: usize = 100_000;

/// Dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl TryFrom<RawMatrix> for ComplexMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        ComplexMatrix::new(raw.rows, raw.cols, raw.data)
    }
}

impl From<ComplexMatrix> for RawMatrix {
    fn from(m: ComplexMatrix) -> Self {
        RawMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data,
        }
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::InvalidInput(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        if data.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![ONE; n])
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self {
            rows: rows.len(),
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            })
        }
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Induced ∞-norm: the largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|c| c.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm, an upper bound for `‖A‖₂`.
    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &ComplexMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &ComplexMatrix) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &ComplexMatrix) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `self + c·I`.
    pub fn add_identity(&self, c: Complex64) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] += c;
        }
        m
    }

    /// Inverse via LU with partial pivoting.
    pub fn inverse(&self, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
        let n = self.require_square()?;
        let lu = Lu::factor(self, tol)?;
        let mut inv = Self::zeros(n, n);
        for j in 0..n {
            let mut e = vec![ZERO; n];
            e[j] = ONE;
            let x = lu.solve(&e);
            for i in 0..n {
                inv[(i, j)] = x[i];
            }
        }
        Ok(inv)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch, like the indexing they wrap.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

struct Lu {
    n: usize,
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        let n = a.rows;
        let threshold = tol.eq_tol * scale_of([a.max_abs()]);
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot < threshold {
                return Err(Error::SingularMatrix { pivot, threshold });
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let d = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / d;
                lu[(i, k)] = factor;
                if factor == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let t = lu[(k, j)];
                    lu[(i, j)] -= factor * t;
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: Complex64 = (0..i).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: Complex64 = (i + 1..n).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        x
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
///
/// A pivot below `eq_tol · max(1, max|a_ij|)` is reported as singular.
pub fn solve(a: &ComplexMatrix, b: &[Complex64], tol: &ToleranceConfig) -> Result<Vec<Complex64>> {
    let n = a.require_square()?;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    Ok(Lu::factor(a, tol)?.solve(b))
}

/// `q(A)` by Horner's scheme.
pub fn mat_poly_eval(q: &Polynomial, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    let mut acc = ComplexMatrix::zeros(n, n);
    for &c in q.coeffs().iter().rev() {
        acc = acc.matmul(a)?.add_identity(c);
    }
    Ok(acc)
}

/// `det(zI − A)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &ComplexMatrix) -> Result<Polynomial> {
    let n = a.require_square()?;
    let mut coeffs = vec![ZERO; n + 1];
    coeffs[n] = ONE;
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.matmul(&m)?.add_identity(coeffs[n + 1 - k]);
        let am = a.matmul(&m)?;
        coeffs[n - k] = -am.trace() / k as f64;
    }
    Polynomial::new(coeffs)
}

/// Eigenvalues with multiplicity: roots of the characteristic polynomial.
pub fn eigenvalues(a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<Vec<Complex64>> {
    let n = a.require_square()?;
    if n > EIGEN_DIM_CAP {
        return Err(Error::DimensionTooLarge {
            n,
            cap: EIGEN_DIM_CAP,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // Roots of an ill-conditioned characteristic polynomial satisfy a looser
    // residual; widen the root tolerance to the size of the coefficient error.
    let cp = char_poly(a)?;
    let coeff_err = f64::EPSILON * (n * n) as f64;
    let loose = ToleranceConfig {
        root_tol: tol.root_tol.max(coeff_err),
        ..*tol
    };
    roots_clustered(&cp, &loose, EIGEN_CLUSTER_RADIUS)
}

/// Spectral norm `‖A‖₂` by power iteration on `AᴴA`.
pub fn operator_norm_2(a: &ComplexMatrix) -> Result<f64> {
    let n = a.require_square()?;
    if n == 0 || a.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let ah = a.conj_transpose();
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::from_polar(1.0 + 0.5 * i as f64 / n as f64, 0.3 * i as f64))
        .collect();
    normalize(&mut v);
    let mut sigma = 0.0;
    for _ in 0..NORM2_MAX_ITER {
        let av = a.mul_vec(&v)?;
        let next_sigma = vec_norm(&av);
        let mut w = ah.mul_vec(&av)?;
        if vec_norm(&w) == 0.0 {
            // v lies in the kernel; restart from a basis vector.
            w = vec![ZERO; n];
            w[0] = ONE;
        }
        normalize(&mut w);
        v = w;
        if (next_sigma - sigma).abs() <= NORM2_REL_TOL * 1e-2 * next_sigma {
            return Ok(next_sigma.max(sigma));
        }
        sigma = next_sigma;
    }
    Err(Error::ConvergenceFailure {
        iterations: NORM2_MAX_ITER,
        residual: sigma,
    })
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = vec_norm(v);
    if n > 0.0 {
        v.iter_mut().for_each(|c| *c /= n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn jordan0(n: usize) -> ComplexMatrix {
        let mut j = ComplexMatrix::zeros(n, n);
        for i in 0..n - 1 {
            j[(i, i + 1)] = ONE;
        }
        j
    }

    #[test]
    fn rejects_bad_shapes_and_nan() {
        assert!(ComplexMatrix::new(2, 2, vec![ONE; 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn solve_identity_and_permutation() {
        let x = solve(&ComplexMatrix::identity(2), &[c(3.0, 0.0), c(4.0, 0.0)], &tol()).unwrap();
        assert_eq!(x, vec![c(3.0, 0.0), c(4.0, 0.0)]);
        let p = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let x = solve(&p, &[c(1.0, 0.0), c(2.0, 0.0)], &tol()).unwrap();
        assert_eq!(x, vec![c(2.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn solve_detects_singular() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(
            solve(&a, &[ONE, ONE], &tol()),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn multiplication_matrix_solve() {
        // B_f(3) for centers {1,-1}, f(3) = (2, 0).
        let b = ComplexMatrix::from_real_rows(&[&[3.5, -1.5], &[1.5, -1.5]]);
        let g = solve(&b, &[ONE, ONE], &tol()).unwrap();
        let r = b.mul_vec(&g).unwrap();
        assert!((r[0] - ONE).norm() < 1e-14 && (r[1] - ONE).norm() < 1e-14);
        // (f2, f1) / (φ(2)φ(-2)) = (0, 2)/(-3)
        assert_abs_diff_eq!(g[0].re, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(g[1].re, -2.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn matrix_polynomials_on_nilpotent_jordan() {
        let j = jordan0(3);
        let sq = mat_poly_eval(&Polynomial::from_real(&[0.0, 0.0, 1.0]), &j).unwrap();
        let mut want = ComplexMatrix::zeros(3, 3);
        want[(0, 2)] = ONE;
        assert_eq!(sq, want);
        let cube_plus_one = mat_poly_eval(&Polynomial::from_real(&[1.0, 0.0, 0.0, 1.0]), &j).unwrap();
        assert_eq!(cube_plus_one, ComplexMatrix::identity(3));
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(mat_poly_eval(&Polynomial::one(), &a).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn eigenvalue_examples() {
        let mut e = eigenvalues(&ComplexMatrix::from_diag(&[c(2.0, 0.0), c(3.0, 0.0)]), &tol()).unwrap();
        e.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert_abs_diff_eq!(e[0].re, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1].re, 3.0, epsilon = 1e-12);

        let e = eigenvalues(&jordan0(2), &tol()).unwrap();
        assert!(e.iter().all(|z| z.norm() < 1e-7));

        let b = ComplexMatrix::from_real_rows(&[&[3.5, -1.5], &[1.5, -1.5]]);
        let mut e = eigenvalues(&b, &tol()).unwrap();
        e.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert_abs_diff_eq!(e[0].re, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1].re, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenvalue_cap() {
        let a = ComplexMatrix::identity(EIGEN_DIM_CAP + 1);
        assert!(matches!(eigenvalues(&a, &tol()), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn char_poly_of_companion() {
        // companion of z^2 - 3z + 2
        let a = ComplexMatrix::from_real_rows(&[&[0.0, -2.0], &[1.0, 3.0]]);
        assert_eq!(char_poly(&a).unwrap(), Polynomial::from_real(&[2.0, -3.0, 1.0]));
    }

    #[test]
    fn spectral_norm_examples() {
        assert_abs_diff_eq!(operator_norm_2(&ComplexMatrix::identity(3)).unwrap(), 1.0, epsilon = 1e-12);
        let d = ComplexMatrix::from_diag(&[c(3.0, 0.0), c(0.0, -4.0)]);
        assert_abs_diff_eq!(operator_norm_2(&d).unwrap(), 4.0, epsilon = 1e-8);
        let n = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        assert_abs_diff_eq!(operator_norm_2(&n).unwrap(), 2.0, epsilon = 1e-12);
        assert_eq!(operator_norm_2(&ComplexMatrix::zeros(2, 2)).unwrap(), 0.0);
    }

    #[test]
    fn json_layout() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"data":[[1.0,0.0],[2.0,0.0]]}"#);
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"rows":2,"cols":2,"data":[[1,0]]}"#).is_err());
    }
}
