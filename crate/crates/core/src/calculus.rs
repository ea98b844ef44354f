//! The matrix functional calculus `χ_A(f) = Σ δ_j(A) f_j(p(A))`.
//!
//! `p` is chosen so that `p(A)` is diagonalizable; then `f_j(p(A))` only
//! depends on the values `f_j(β_i)` at the eigenvalues `β_i = p(α_i)` and is
//! realized by Lagrange interpolation, so `χ_A(f) = P(A)` for one polynomial
//! `P(z) = Σ δ_j(z) q_j(p(z))`. Jordan structure is supplied by the caller.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::VectorFunction;
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, mat_poly_eval, operator_norm_2, ComplexMatrix, EIGEN_CLUSTER_RADIUS};
use crate::poly::{antiderivative, cluster_points, roots, Polynomial};
use crate::random;
use crate::tolerance::{scale_of, ToleranceConfig};
use crate::transform::gelfand_eval;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Attempts made by [`ensure_simple_roots`].
pub const SHIFT_ATTEMPTS: usize = 32;

/// An eigenvalue `α` whose Jordan blocks have size at most `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub alpha: Complex64,
    pub n: usize,
}

/// Eigenvalue data with minimal polynomial `m_A = Π (z − α_k)^{n_k+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumData {
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumData {
    pub fn new(entries: Vec<SpectrumEntry>) -> Result<Self> {
        let s = Self { entries };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::InvalidInput("spectrum data has no entries".into()));
        }
        for (i, e) in self.entries.iter().enumerate() {
            if !(e.alpha.re.is_finite() && e.alpha.im.is_finite()) {
                return Err(Error::InvalidInput(format!("entries[{i}].alpha is not finite")));
            }
            if self.entries[..i].iter().any(|o| o.alpha == e.alpha) {
                return Err(Error::InvalidInput(format!("entries[{i}].alpha = {} is repeated", e.alpha)));
            }
        }
        Ok(())
    }

    /// Checks that the data fits an `n × n` matrix.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        self.validate()?;
        let deg = self.minimal_degree();
        if deg > n {
            return Err(Error::InvalidInput(format!(
                "minimal polynomial degree {deg} exceeds matrix dimension {n}"
            )));
        }
        Ok(())
    }

    pub fn minimal_degree(&self) -> usize {
        self.entries.iter().map(|e| e.n + 1).sum()
    }

    pub fn minimal_polynomial(&self) -> Polynomial {
        let roots: Vec<Complex64> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.alpha, e.n + 1))
            .collect();
        Polynomial::from_roots(&roots)
    }

    pub fn alphas(&self) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.alpha).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JordanBlock {
    pub alpha: Complex64,
    pub size: usize,
}

/// A constructed test matrix `A = T (⊕ J_k) T^{-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestMatrixSpec {
    pub blocks: Vec<JordanBlock>,
    /// Seed of the random similarity; `None` means `T = I`.
    #[serde(default)]
    pub similarity_seed: Option<u64>,
    #[serde(default = "unit_cond")]
    pub target_cond: f64,
}

fn unit_cond() -> f64 {
    1.0
}

/// An assembled test matrix with its similarity and spectrum data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestMatrix {
    pub a: ComplexMatrix,
    pub jordan: ComplexMatrix,
    pub t: ComplexMatrix,
    pub t_inv: ComplexMatrix,
    pub cond_t: f64,
    pub spectrum: SpectrumData,
}

impl TestMatrixSpec {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    /// Block diagonal Jordan matrix.
    pub fn jordan(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut j = ComplexMatrix::zeros(n, n);
        let mut off = 0;
        for b in &self.blocks {
            for i in 0..b.size {
                j[(off + i, off + i)] = b.alpha;
                if i + 1 < b.size {
                    j[(off + i, off + i + 1)] = ONE;
                }
            }
            off += b.size;
        }
        j
    }

    /// Spectrum data read off the blocks: `n_k + 1` is the largest block of `α_k`.
    pub fn spectrum(&self) -> SpectrumData {
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        for b in &self.blocks {
            match entries.iter_mut().find(|e| e.alpha == b.alpha) {
                Some(e) => e.n = e.n.max(b.size - 1),
                None => entries.push(SpectrumEntry {
                    alpha: b.alpha,
                    n: b.size - 1,
                }),
            }
        }
        SpectrumData { entries }
    }

    pub fn assemble(&self) -> Result<TestMatrix> {
        if self.blocks.is_empty() {
            return Err(Error::InvalidInput("blocks is empty".into()));
        }
        if let Some(i) = self.blocks.iter().position(|b| b.size == 0) {
            return Err(Error::InvalidInput(format!("blocks[{i}].size must be positive")));
        }
        if !(self.target_cond.is_finite() && self.target_cond >= 1.0) {
            return Err(Error::InvalidInput("target_cond must be a finite number ≥ 1".into()));
        }
        let n = self.dim();
        let jordan = self.jordan();
        let (t, t_inv) = match self.similarity_seed {
            Some(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                random::similarity(&mut rng, n, self.target_cond)
            }
            None => (ComplexMatrix::identity(n), ComplexMatrix::identity(n)),
        };
        let a = &(&t * &jordan) * &t_inv;
        let cond_t = operator_norm_2(&t)? * operator_norm_2(&t_inv)?;
        Ok(TestMatrix {
            a,
            jordan,
            t,
            t_inv,
            cond_t,
            spectrum: self.spectrum(),
        })
    }
}

/// Monic `s_A + c`: `s_A` integrates `Π_{n_k>0} (ζ − α_k)^{n_k}` from 0, so
/// `s_A^{(j)}(α_k) = 0` for `j = 1..n_k`.
pub fn simplifying_poly(s: &SpectrumData, c: Complex64) -> Polynomial {
    let roots: Vec<Complex64> = s
        .entries
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.alpha, e.n))
        .collect();
    let integrated = antiderivative(&Polynomial::from_roots(&roots), ZERO);
    let lead = integrated.leading();
    let mut coeffs: Vec<Complex64> = integrated.coeffs().iter().map(|&a| a / lead).collect();
    coeffs[0] += c;
    *coeffs.last_mut().expect("degree at least 1") = ONE;
    Polynomial::new(coeffs).expect("finite coefficients")
}

/// Shifts `p` by a constant until its roots are simple and avoid every
/// `α_k`. Candidates are `c_seed` followed by `c_seed + r_k e^{ikθ}` with
/// geometrically growing `r_k` and the golden angle `θ`.
pub fn ensure_simple_roots(
    p: &Polynomial,
    c_seed: Complex64,
    s: &SpectrumData,
    tol: &ToleranceConfig,
) -> Result<Polynomial> {
    if !p.is_monic() || p.degree() == 0 {
        return Err(Error::InvalidInput("p must be monic of degree at least 1".into()));
    }
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let scale = scale_of(p.coeffs().iter().map(|c| c.norm()));
    for k in 0..SHIFT_ATTEMPTS {
        let shift = if k == 0 {
            c_seed
        } else {
            c_seed + Complex64::from_polar(0.5 * scale * 1.25f64.powi(k as i32 - 1), golden * k as f64)
        };
        let q = p + &Polynomial::constant(shift);
        if let Ok(r) = roots(&q, tol) {
            let rscale = scale_of(r.iter().map(|z| z.norm()));
            let sep = tol.coalesce_radius() * rscale;
            let distinct = r
                .iter()
                .enumerate()
                .all(|(i, a)| r[i + 1..].iter().all(|b| (a - b).norm() > sep));
            let off_alpha = r.iter().all(|z| s.entries.iter().all(|e| (z - e.alpha).norm() > sep));
            if distinct && off_alpha {
                return Ok(q);
            }
        }
    }
    Err(Error::NoSimpleShiftFound {
        attempts: SHIFT_ATTEMPTS,
    })
}

/// Checks `p^{(j)}(α_k) = 0` for `j = 1..n_k`, relative to the size of the
/// terms in each derivative.
pub fn check_simplifying(p: &Polynomial, s: &SpectrumData, tol: &ToleranceConfig) -> Result<()> {
    for e in &s.entries {
        let mut d = p.clone();
        for order in 1..=e.n {
            d = d.derivative();
            let (v, mag) = d.eval_with_scale(e.alpha);
            if v.norm() > tol.eq_tol * scale_of([mag]) {
                return Err(Error::NotSimplifying {
                    alpha: e.alpha,
                    order,
                    value: v.norm(),
                });
            }
        }
    }
    Ok(())
}

/// Newton divided-difference coefficients on `nodes`; equal consecutive
/// nodes take `derivs(i, r) = φ^{(r)}(x_i)/r!` for the confluent entries.
fn divided_differences(nodes: &[Complex64], derivs: impl Fn(usize, usize) -> Complex64) -> Vec<Complex64> {
    let n = nodes.len();
    // table[i] holds f[x_i .. x_{i+k}] at level k
    let mut table: Vec<Complex64> = (0..n).map(|i| derivs(i, 0)).collect();
    let mut coeffs = vec![table[0]];
    for k in 1..n {
        for i in 0..n - k {
            table[i] = if nodes[i] == nodes[i + k] {
                derivs(i, k)
            } else {
                (table[i + 1] - table[i]) / (nodes[i + k] - nodes[i])
            };
        }
        coeffs.push(table[0]);
    }
    coeffs
}

/// Expands a Newton form `Σ c_k Π_{i<k} (z − x_i)` into coefficients.
fn newton_to_poly(nodes: &[Complex64], coeffs: &[Complex64]) -> Polynomial {
    let mut q = Polynomial::zero();
    for k in (0..coeffs.len()).rev() {
        q = &(&q * &Polynomial::from_roots(&[nodes[k]])) + &Polynomial::constant(coeffs[k]);
    }
    q
}

/// Lagrange interpolant through `(x_i, y_i)`.
fn interpolate(xs: &[Complex64], ys: &[Complex64]) -> Polynomial {
    let c = divided_differences(xs, |i, r| {
        debug_assert_eq!(r, 0);
        ys[i]
    });
    newton_to_poly(xs, &c)
}

/// The polynomial `P` with `χ_A(f) = P(A)`, reduced modulo `m_A`.
pub fn calculus_polynomial(s: &SpectrumData, p: &Polynomial, f: &VectorFunction) -> Result<Polynomial> {
    s.validate()?;
    let ctx = f.ctx();
    let tol = ctx.tol();
    let pc = ctx.p();
    let pscale = scale_of(pc.coeffs().iter().map(|c| c.norm()));
    if p.coeffs().len() != pc.coeffs().len()
        || p.coeffs()
            .iter()
            .zip(pc.coeffs())
            .any(|(a, b)| (a - b).norm() > tol.eq_tol * pscale)
    {
        return Err(Error::ContextMismatch);
    }
    check_simplifying(pc, s, tol)?;

    let raw: Vec<Complex64> = s.alphas().iter().map(|&a| pc.eval(a)).collect();
    let radius = tol.eq_tol * scale_of(raw.iter().map(|b| b.norm()));
    let betas: Vec<Complex64> = cluster_points(&raw, radius).into_iter().map(|(b, _)| b).collect();
    let idx: Vec<usize> = betas
        .iter()
        .map(|&b| f.samples().find(b).ok_or(Error::SampleMiss { w: b }))
        .collect::<Result<_>>()?;

    let mut big_p = Polynomial::zero();
    for (j, delta) in ctx.delta().iter().enumerate() {
        let ys: Vec<Complex64> = idx.iter().map(|&i| f.at(i)[j]).collect();
        let q = interpolate(&betas, &ys);
        big_p = &big_p + &(delta * &q.compose(pc));
    }
    let (_, r) = big_p.div_rem(&s.minimal_polynomial())?;
    Ok(r)
}

/// `χ_A(f)` evaluated as `P(A)`.
pub fn chi_a(a: &ComplexMatrix, s: &SpectrumData, p: &Polynomial, f: &VectorFunction) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    s.validate_for(a.rows())?;
    mat_poly_eval(&calculus_polynomial(s, p, f)?, a)
}

/// Hermite interpolant matching `values[k][r] = φ^{(r)}(α_k)`, `r = 0..=n_k`.
pub fn hermite_polynomial(s: &SpectrumData, values: &[Vec<Complex64>]) -> Result<Polynomial> {
    s.validate()?;
    if values.len() != s.entries.len() {
        return Err(Error::DimensionMismatch {
            expected: s.entries.len(),
            found: values.len(),
        });
    }
    let mut nodes = Vec::new();
    let mut owner = Vec::new();
    for (k, e) in s.entries.iter().enumerate() {
        if values[k].len() < e.n + 1 {
            return Err(Error::InsufficientData {
                alpha: e.alpha,
                needed: e.n + 1,
                got: values[k].len(),
            });
        }
        for _ in 0..=e.n {
            nodes.push(e.alpha);
            owner.push(k);
        }
    }
    let c = divided_differences(&nodes, |i, r| {
        let fact: f64 = (1..=r).map(|x| x as f64).product();
        values[owner[i]][r] / fact
    });
    Ok(newton_to_poly(&nodes, &c))
}

/// Classical `φ(A)` from derivative data at the eigenvalues.
pub fn hermite_matrix_function(a: &ComplexMatrix, s: &SpectrumData, values: &[Vec<Complex64>]) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    s.validate_for(a.rows())?;
    mat_poly_eval(&hermite_polynomial(s, values)?, a)
}

/// Spectrum of `χ_A(f)` against `f̂(σ(A))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralMappingReport {
    pub computed: Vec<Complex64>,
    pub expected: Vec<Complex64>,
    pub hausdorff: f64,
}

pub fn spectral_mapping_check(
    a: &ComplexMatrix,
    s: &SpectrumData,
    p: &Polynomial,
    f: &VectorFunction,
) -> Result<SpectralMappingReport> {
    let chi = chi_a(a, s, p, f)?;
    let eig = eigenvalues(&chi, f.ctx().tol())?;
    let expected_raw: Vec<Complex64> = s
        .alphas()
        .iter()
        .map(|&al| gelfand_eval(f, al))
        .collect::<Result<_>>()?;
    let scale = scale_of(eig.iter().chain(&expected_raw).map(|z| z.norm()));
    let radius = EIGEN_CLUSTER_RADIUS * scale;
    let computed: Vec<Complex64> = cluster_points(&eig, radius).into_iter().map(|(c, _)| c).collect();
    let expected: Vec<Complex64> = cluster_points(&expected_raw, radius).into_iter().map(|(c, _)| c).collect();
    let hausdorff = hausdorff(&computed, &expected);
    Ok(SpectralMappingReport {
        computed,
        expected,
        hausdorff,
    })
}

/// Hausdorff distance between two finite sets.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_sided = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|u| y.iter().map(|v| (u - v).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

/// `χ_A(f)` obtained as `T χ_V(f) T^{-1}` with `V = T^{-1} A T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityResult {
    pub chi: ComplexMatrix,
    pub cond_t: f64,
}

pub fn chi_similarity(
    a: &ComplexMatrix,
    t: &ComplexMatrix,
    s: &SpectrumData,
    p: &Polynomial,
    f: &VectorFunction,
) -> Result<SimilarityResult> {
    let tol = f.ctx().tol();
    let t_inv = t.inverse(tol)?;
    let v = t_inv.matmul(a)?.matmul(t)?;
    let chi_v = chi_a(&v, s, p, f)?;
    let chi = t.matmul(&chi_v)?.matmul(&t_inv)?;
    let cond_t = operator_norm_2(t)? * operator_norm_2(&t_inv)?;
    Ok(SimilarityResult { chi, cond_t })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{AlgebraContext, SampleSet};
    use crate::poly::Centers;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn jordan(alpha: Complex64, size: usize) -> ComplexMatrix {
        TestMatrixSpec {
            blocks: vec![JordanBlock { alpha, size }],
            similarity_seed: None,
            target_cond: 1.0,
        }
        .jordan()
    }

    fn spec(entries: &[(Complex64, usize)]) -> SpectrumData {
        SpectrumData::new(entries.iter().map(|&(alpha, n)| SpectrumEntry { alpha, n }).collect()).unwrap()
    }

    fn ctx_for(p: &Polynomial) -> Arc<AlgebraContext> {
        let centers = Centers::from_polynomial(p, &tol()).unwrap();
        Arc::new(AlgebraContext::new(centers, tol()).unwrap())
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, eps: f64) -> bool {
        a.try_sub(b).unwrap().max_abs() <= eps
    }

    #[test]
    fn simplifying_examples() {
        let s = spec(&[(c(0.0, 0.0), 2)]);
        let p = simplifying_poly(&s, ONE);
        assert_eq!(p.coeffs(), &[ONE, ZERO, ZERO, ONE]);

        let s = spec(&[(c(0.5, 0.0), 0), (c(-2.0, 1.0), 0)]);
        let p = simplifying_poly(&s, c(3.0, 0.0));
        assert_eq!(p.coeffs(), &[c(3.0, 0.0), ONE]);

        let s = spec(&[(c(1.0, 0.0), 1), (c(-1.0, 0.0), 1)]);
        let p = simplifying_poly(&s, c(5.0, 0.0));
        let want = [c(5.0, 0.0), c(-3.0, 0.0), ZERO, ONE];
        for (a, b) in p.coeffs().iter().zip(want) {
            assert!((a - b).norm() < 1e-15);
        }
        check_simplifying(&p, &s, &tol()).unwrap();
    }

    #[test]
    fn shift_examples() {
        let s = spec(&[(c(0.0, 0.0), 2)]);
        let z3 = simplifying_poly(&s, ZERO);
        let p = ensure_simple_roots(&z3, ONE, &s, &tol()).unwrap();
        assert_eq!(p.coeffs()[0], ONE);

        let simple = Polynomial::from_real(&[-1.0, 0.0, 1.0]);
        let s1 = spec(&[(c(3.0, 0.0), 0)]);
        assert_eq!(ensure_simple_roots(&simple, ZERO, &s1, &tol()).unwrap(), simple);

        let z2 = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        let s0 = spec(&[(c(0.0, 0.0), 1)]);
        let q = ensure_simple_roots(&z2, ZERO, &s0, &tol()).unwrap();
        assert!(q.coeffs()[0].norm() > 0.1);
    }

    #[test]
    fn not_simplifying_is_reported() {
        let s = spec(&[(c(0.0, 0.0), 1)]);
        let p = Polynomial::from_real(&[1.0, 1.0, 1.0]);
        assert!(matches!(check_simplifying(&p, &s, &tol()), Err(Error::NotSimplifying { order: 1, .. })));
    }

    /// 2×2 Jordan block at 0 with p = z² + 1.
    fn two_by_two(f1: Complex64, f2: Complex64) -> (ComplexMatrix, SpectrumData, Polynomial, VectorFunction) {
        let s = spec(&[(ZERO, 1)]);
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let ctx = ctx_for(&p);
        let m = Arc::new(SampleSet::new(&ctx, vec![ONE, c(2.0, 0.0)]).unwrap());
        let f = VectorFunction::new(ctx, m, vec![vec![f1, f2], vec![c(7.0, 0.0), c(-7.0, 0.0)]]).unwrap();
        (jordan(ZERO, 2), s, p, f)
    }

    #[test]
    fn jordan_two_closed_form() {
        let (f1, f2) = (c(0.3, 1.1), c(-2.0, 0.25));
        let (a, s, p, f) = two_by_two(f1, f2);
        let chi = chi_a(&a, &s, &p, &f).unwrap();
        let want = ComplexMatrix::identity(2)
            .scale((f1 + f2) / 2.0)
            .try_add(&a.scale((f1 - f2) / c(0.0, 2.0)))
            .unwrap();
        assert!(close(&chi, &want, 1e-14));

        let rep = spectral_mapping_check(&a, &s, &p, &f).unwrap();
        assert_eq!(rep.expected.len(), 1);
        assert!((rep.expected[0] - (f1 + f2) / 2.0).norm() < 1e-14);
        assert!(rep.hausdorff < 1e-6);
    }

    #[test]
    fn unit_maps_to_identity() {
        let (a, s, p, f) = two_by_two(ONE, ONE);
        let one = VectorFunction::unit(f.ctx().clone(), f.samples().clone());
        assert!(close(&chi_a(&a, &s, &p, &one).unwrap(), &ComplexMatrix::identity(2), 1e-14));
        let rep = spectral_mapping_check(&a, &s, &p, &one).unwrap();
        assert_eq!(rep.computed.len(), 1);
        assert!((rep.computed[0] - ONE).norm() < 1e-12);
    }

    #[test]
    fn missing_sample_is_reported() {
        let s = spec(&[(ZERO, 1)]);
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let ctx = ctx_for(&p);
        let m = Arc::new(SampleSet::new(&ctx, vec![c(2.0, 0.0)]).unwrap());
        let f = VectorFunction::unit(ctx, m);
        assert!(matches!(chi_a(&jordan(ZERO, 2), &s, &p, &f), Err(Error::SampleMiss { .. })));
    }

    #[test]
    fn jordan_three_constant_f_is_toeplitz() {
        let s = spec(&[(ZERO, 2)]);
        let p = Polynomial::from_real(&[1.0, 0.0, 0.0, 1.0]);
        let ctx = ctx_for(&p);
        let m = Arc::new(SampleSet::new(&ctx, vec![ONE]).unwrap());
        let a_vals = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)];
        let f = VectorFunction::constant(ctx.clone(), m, &a_vals).unwrap();
        let chi = chi_a(&jordan(ZERO, 3), &s, &p, &f).unwrap();
        // φ(z) = Σ δ_j(z) a_j as a polynomial
        let phi = ctx
            .delta()
            .iter()
            .zip(&a_vals)
            .fold(Polynomial::zero(), |acc, (d, &aj)| &acc + &d.scale(aj));
        let co = |k: usize| phi.coeffs().get(k).copied().unwrap_or(ZERO);
        for i in 0..3 {
            for j in 0..3 {
                let want = if j >= i { co(j - i) } else { ZERO };
                assert!((chi[(i, j)] - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn hermite_examples() {
        let alpha = c(0.7, -0.2);
        let s = spec(&[(alpha, 2)]);
        let vals = vec![vec![alpha * alpha, alpha * 2.0, c(2.0, 0.0)]];
        let h = hermite_matrix_function(&jordan(alpha, 3), &s, &vals).unwrap();
        let a2 = alpha * alpha;
        let want = ComplexMatrix::from_rows(&[
            vec![a2, alpha * 2.0, ONE],
            vec![ZERO, a2, alpha * 2.0],
            vec![ZERO, ZERO, a2],
        ])
        .unwrap();
        assert!(close(&h, &want, 1e-14));

        let al = [c(1.0, 0.0), c(-2.0, 0.5), c(0.0, 3.0)];
        let s = spec(&[(al[0], 0), (al[1], 0), (al[2], 0)]);
        let d = ComplexMatrix::from_diag(&al);
        let vals: Vec<Vec<Complex64>> = al.iter().map(|z| vec![z.exp()]).collect();
        let h = hermite_matrix_function(&d, &s, &vals).unwrap();
        let want = ComplexMatrix::from_diag(&al.iter().map(|z| z.exp()).collect::<Vec<_>>());
        assert!(close(&h, &want, 1e-12));

        let short = vec![vec![ONE, ONE]];
        let s = spec(&[(alpha, 2)]);
        assert!(matches!(
            hermite_matrix_function(&jordan(alpha, 3), &s, &short),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn chi_matches_hermite_for_polynomial_components() {
        // f_j(w) = a_j + b_j w, so φ(z) = Σ δ_j(z)(a_j + b_j p(z))
        let s = spec(&[(ZERO, 2)]);
        let p = Polynomial::from_real(&[1.0, 0.0, 0.0, 1.0]);
        let ctx = ctx_for(&p);
        let m = Arc::new(SampleSet::new(&ctx, vec![ONE, c(0.5, 0.5)]).unwrap());
        let a = [c(1.0, 0.5), c(-1.0, 2.0), c(0.3, 0.0)];
        let b = [c(0.0, 1.0), c(2.0, -1.0), c(-0.7, 0.4)];
        let f = VectorFunction::from_fn(ctx.clone(), m, |w| (0..3).map(|j| a[j] + b[j] * w).collect()).unwrap();
        let phi = (0..3).fold(Polynomial::zero(), |acc, j| {
            let fj = Polynomial::new(vec![a[j], b[j]]).unwrap().compose(&p);
            &acc + &(&ctx.delta()[j] * &fj)
        });
        let vals = vec![vec![phi.eval(ZERO), phi.derivative().eval(ZERO), phi.nth_derivative(2).eval(ZERO)]];
        let j3 = jordan(ZERO, 3);
        let h = hermite_matrix_function(&j3, &s, &vals).unwrap();
        assert!(close(&chi_a(&j3, &s, &p, &f).unwrap(), &h, 1e-12));
    }

    #[test]
    fn two_i_spectral_mapping() {
        let s = spec(&[(c(2.0, 0.0), 0)]);
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]);
        let ctx = ctx_for(&p);
        let m = Arc::new(SampleSet::new(&ctx, vec![c(3.0, 0.0)]).unwrap());
        let f = VectorFunction::new(ctx, m, vec![vec![c(2.0, 1.0), c(-1.0, 0.5)]]).unwrap();
        let a = ComplexMatrix::identity(2).scale(c(2.0, 0.0));
        let chi = chi_a(&a, &s, &p, &f).unwrap();
        let fhat2 = gelfand_eval(&f, c(2.0, 0.0)).unwrap();
        assert!((fhat2 - (c(2.0, 1.0) * 1.5 - c(-1.0, 0.5) * 0.5)).norm() < 1e-14);
        assert!(close(&chi, &ComplexMatrix::identity(2).scale(fhat2), 1e-13));
        let rep = spectral_mapping_check(&a, &s, &p, &f).unwrap();
        assert_eq!(rep.computed.len(), 1);
        assert!(rep.hausdorff < 1e-6);
        let fhat_m2 = gelfand_eval(&f, c(-2.0, 0.0)).unwrap();
        assert!((fhat_m2 - fhat2).norm() > 0.1);
    }

    #[test]
    fn similarity_agrees_with_direct() {
        let s = spec(&[(ZERO, 2)]);
        let p = Polynomial::from_real(&[1.0, 0.0, 0.0, 1.0]);
        let ctx = ctx_for(&p);
        let m = Arc::new(SampleSet::new(&ctx, vec![ONE]).unwrap());
        let f = VectorFunction::new(ctx, m, vec![vec![c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 1.0)]]).unwrap();
        let tm = TestMatrixSpec {
            blocks: vec![JordanBlock { alpha: ZERO, size: 3 }],
            similarity_seed: Some(11),
            target_cond: 50.0,
        }
        .assemble()
        .unwrap();
        assert!((tm.cond_t - 50.0).abs() < 1e-6);
        let direct = chi_a(&tm.a, &s, &p, &f).unwrap();
        let sim = chi_similarity(&tm.a, &tm.t, &s, &p, &f).unwrap();
        assert!(close(&direct, &sim.chi, 1e-6 * sim.cond_t));
        let ident = chi_similarity(&tm.a, &ComplexMatrix::identity(3), &s, &p, &f).unwrap();
        assert!(close(&direct, &ident.chi, 1e-13));
    }

    #[test]
    fn spec_json_shapes() {
        let s: SpectrumData = serde_json::from_str(r#"{"entries":[{"alpha":[0.0,0.0],"n":2}]}"#).unwrap();
        assert_eq!(s.minimal_degree(), 3);
        let t: TestMatrixSpec =
            serde_json::from_str(r#"{"blocks":[{"alpha":[1.0,0.0],"size":2}],"similarity_seed":3,"target_cond":10.0}"#)
                .unwrap();
        let tm = t.assemble().unwrap();
        assert_eq!(tm.spectrum, spec(&[(ONE, 1)]));
        assert!(close(&(&(&tm.t_inv * &tm.a) * &tm.t), &tm.jordan, 1e-12));
    }
}
