//! Seeded property suites. Each returns a report with the worst observed
//! deviation, the tolerance it is held to, and the pass flag; the same seed
//! always produces the same report.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraContext, SampleSet, VectorFunction};
use crate::calculus::{
    chi_a, chi_similarity, ensure_simple_roots, hermite_matrix_function, simplifying_poly, spectral_mapping_check,
    JordanBlock, SpectrumData, SpectrumEntry, TestMatrix, TestMatrixSpec,
};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, ComplexMatrix};
use crate::poly::{Centers, Polynomial};
use crate::random::{complex_in_disc, separated_points};
use crate::tolerance::{scale_of, ToleranceConfig};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub const SUITES: [&str; 11] = [
    "homomorphism",
    "closed-forms",
    "nilpotent",
    "eigen",
    "characters",
    "spectral-radius",
    "inversion",
    "jordan",
    "specmap",
    "blowup",
    "nondiff",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Suite-specific figures, keyed by name.
    pub metrics: BTreeMap<String, f64>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, cases: usize, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            suite: suite.to_string(),
            seed,
            cases,
            max_deviation,
            tolerance,
            passed: max_deviation <= tolerance,
            metrics: BTreeMap::new(),
        }
    }

    fn metric(mut self, key: &str, value: f64) -> Self {
        self.metrics.insert(key.to_string(), value);
        self
    }

    /// Folds an extra condition into the pass flag.
    fn require(mut self, ok: bool) -> Self {
        self.passed &= ok;
        self
    }
}

/// Optional overrides of a suite's default sizes.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub cases: Option<usize>,
    pub d: Option<usize>,
    pub samples: Option<usize>,
}

pub fn run_suite(name: &str, seed: u64, params: &SuiteParams, tol: &ToleranceConfig) -> Result<SuiteReport> {
    let cases = |default: usize| params.cases.unwrap_or(default);
    let ds: Vec<usize> = match params.d {
        Some(d) => vec![d],
        None => vec![2, 3, 4, 5],
    };
    match name {
        "homomorphism" => homomorphism(seed, cases(200), &ds, params.samples.unwrap_or(50), tol),
        "closed-forms" => closed_forms(seed, cases(100), tol),
        "nilpotent" => nilpotent(seed, tol),
        "eigen" => eigen(seed, cases(200), &ds, tol),
        "characters" => characters(seed, cases(100), &ds, tol),
        "spectral-radius" => spectral_radius(seed, cases(50), &ds, tol),
        "inversion" => inversion(seed, cases(100), tol),
        "jordan" => jordan(seed, cases(50), tol),
        "specmap" => specmap(seed, cases(100), tol),
        "blowup" => blowup(seed, tol),
        "nondiff" => nondiff(seed, cases(20), tol),
        other => Err(Error::InvalidInput(format!(
            "unknown suite '{other}'; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_vec<R: Rng>(rng: &mut R, d: usize) -> Vec<Complex64> {
    (0..d).map(|_| complex_in_disc(rng, 1.0)).collect()
}

fn random_context<R: Rng>(rng: &mut R, d: usize, tol: &ToleranceConfig) -> Result<Arc<AlgebraContext>> {
    let lambdas = separated_points(rng, d, 1.5, 0.4);
    Ok(Arc::new(AlgebraContext::from_lambdas(lambdas, *tol)?))
}

fn random_samples<R: Rng>(rng: &mut R, ctx: &AlgebraContext, count: usize, radius: f64) -> Result<Arc<SampleSet>> {
    let pts = (0..count).map(|_| complex_in_disc(rng, radius)).collect();
    Ok(Arc::new(SampleSet::new(ctx, pts)?))
}

fn random_function<R: Rng>(rng: &mut R, ctx: &Arc<AlgebraContext>, m: &Arc<SampleSet>) -> Result<VectorFunction> {
    let d = ctx.d();
    VectorFunction::from_fn(ctx.clone(), m.clone(), |_| random_vec(rng, d))
}

fn two_centers(tol: &ToleranceConfig) -> Result<Arc<AlgebraContext>> {
    Ok(Arc::new(AlgebraContext::from_lambdas(vec![ONE, -ONE], *tol)?))
}

/// `max |L(f⊛g) − f̂ ĝ|` over all fiber points, relative to the size of the
/// terms entering `L(f⊛g)`.
fn homomorphism_deviation(f: &VectorFunction, g: &VectorFunction) -> Result<f64> {
    let h = f.polyprod(g)?;
    let ctx = f.ctx();
    let mut worst: f64 = 0.0;
    for (i, fib) in f.samples().fibers().iter().enumerate() {
        for &z in &fib.points {
            let lhs = h.gelfand_at_sample(i, z);
            let rhs = f.gelfand_at_sample(i, z) * g.gelfand_at_sample(i, z);
            let terms: f64 = ctx
                .basis_at(z)
                .iter()
                .zip(h.at(i))
                .map(|(b, v)| b.norm() * v.norm())
                .sum();
            worst = worst.max((lhs - rhs).norm() / scale_of([terms, rhs.norm()]));
        }
    }
    Ok(worst)
}

pub fn homomorphism(seed: u64, cases: usize, ds: &[usize], samples: usize, tol: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = rng_for(seed);
    let mut worst: f64 = 0.0;
    for case in 0..cases {
        let d = ds[case % ds.len()];
        let ctx = random_context(&mut rng, d, tol)?;
        let m = random_samples(&mut rng, &ctx, samples, 2.0)?;
        let f = random_function(&mut rng, &ctx, &m)?;
        let g = random_function(&mut rng, &ctx, &m)?;
        worst = worst.max(homomorphism_deviation(&f, &g)?);
    }
    Ok(SuiteReport::new("homomorphism", seed, cases, worst, 1e-10))
}

/// Λ = {1, −1}: product `f∘g + (w/4)(f₁−f₂)(g₁−g₂)𝟙` and inverse
/// `(f₂, f₁)/(φ(z)φ(−z))` against the generic routines.
pub fn closed_forms(seed: u64, cases: usize, tol: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = rng_for(seed);
    let ctx = two_centers(tol)?;
    let (mut prod_dev, mut inv_dev): (f64, f64) = (0.0, 0.0);
    for _ in 0..cases {
        let m = random_samples(&mut rng, &ctx, 10, 2.0)?;
        let f = random_function(&mut rng, &ctx, &m)?;
        let g = random_function(&mut rng, &ctx, &m)?;
        let h = f.polyprod(&g)?;
        let inv = match f.invert() {
            Ok(inv) => Some(inv),
            Err(Error::NotInvertible { .. }) => None,
            Err(e) => return Err(e),
        };
        for (i, &w) in m.points().iter().enumerate() {
            let (a, b) = (f.at(i), g.at(i));
            let extra = w / 4.0 * (a[0] - a[1]) * (b[0] - b[1]);
            for k in 0..2 {
                let want = a[k] * b[k] + extra;
                prod_dev = prod_dev.max((h.at(i)[k] - want).norm() / scale_of([want.norm()]));
            }
            if let Some(inv) = &inv {
                let z = m.fibers()[i].points[0];
                let den = f.gelfand_at_sample(i, z) * f.gelfand_at_sample(i, -z);
                let want = [a[1] / den, a[0] / den];
                for k in 0..2 {
                    inv_dev = inv_dev.max((inv.at(i)[k] - want[k]).norm() / scale_of([want[k].norm()]));
                }
            }
        }
    }
    Ok(SuiteReport::new("closed-forms", seed, cases, prod_dev.max(inv_dev), 1e-12)
        .metric("product_deviation", prod_dev)
        .metric("inverse_deviation", inv_dev))
}

/// Λ = {1, −1}, M = {−1}, f = (1, −1): `B_f = ½[[1,1],[−1,−1]]`, `f⊛f = 0`.
pub fn nilpotent(seed: u64, tol: &ToleranceConfig) -> Result<SuiteReport> {
    let ctx = two_centers(tol)?;
    let m = Arc::new(SampleSet::new(&ctx, vec![-ONE])?);
    let f = VectorFunction::new(ctx, m, vec![vec![ONE, -ONE]])?;
    let b = f.mult_matrix(0);
    let want = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[-0.5, -0.5]]);
    let exact = b == want;
    let square = f.polyprod(&f)?.max_abs();
    Ok(SuiteReport::new("nilpotent", seed, 1, square, 1e-14)
        .metric("b_matrix_exact", if exact { 1.0 } else { 0.0 })
        .require(exact))
}

/// Smallest achievable largest distance when pairing `a` with `b`.
fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    fn go(a: &[Complex64], b: &[Complex64], used: &mut Vec<bool>, i: usize, cur: f64, best: &mut f64) {
        if cur >= *best {
            return;
        }
        if i == a.len() {
            *best = cur;
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(a, b, used, i + 1, cur.max((a[i] - b[j]).norm()), best);
                used[j] = false;
            }
        }
    }
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut best = f64::INFINITY;
    go(a, b, &mut vec![false; b.len()], 0, 0.0, &mut best);
    best
}

pub fn eigen(seed: u64, cases: usize, ds: &[usize], tol: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = rng_for(seed);
    let mut worst: f64 = 0.0;
    for case in 0..cases {
        let d = ds[case % ds.len()];
        let ctx = random_context(&mut rng, d, tol)?;
        let m = random_samples(&mut rng, &ctx, 1, 2.0)?;
        let f = random_function(&mut rng, &ctx, &m)?;
        let fiber_vals = f.fiber_values(0);
        let eig = eigenvalues(&f.mult_matrix(0), tol)?;
        let scale = scale_of(fiber_vals.iter().map(|z| z.norm()));
        worst = worst.max(multiset_distance(&eig, &fiber_vals) / scale);
    }
    Ok(SuiteReport::new("eigen", seed, cases, worst, 1e-8))
}

pub fn characters(seed: u64, cases: usize, ds: &[usize], tol: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = rng_for(seed);
    let mut worst: f64 = 0.0;
    let mut standard_at_zero = true;
    for case in 0..cases {
        let d = ds[case % ds.len()];
        let ctx = random_context(&mut rng, d, tol)?;
        let mut pts: Vec<Complex64> = (0..5).map(|_| complex_in_disc(&mut rng, 2.0)).collect();
        pts.push(ZERO);
        let m = SampleSet::new(&ctx, pts.clone())?;
        for &w0 in &pts {
            let rep = ctx.characters_at(&m, w0)?;
            let size = rep
                .etas
                .iter()
                .flat_map(|e| e.iter().map(|c| c.norm_sqr()))
                .fold(1.0, f64::max);
            worst = worst.max(rep.max_residual / size);
            if w0 == ZERO {
                standard_at_zero &= rep
                    .etas
                    .iter()
                    .enumerate()
                    .all(|(k, eta)| eta.iter().enumerate().all(|(j, &v)| v == if j == k { ONE } else { ZERO }));
            }
        }
    }
    Ok(SuiteReport::new("characters", seed, cases, worst, 1e-10)
        .metric("standard_basis_at_zero", if standard_at_zero { 1.0 } else { 0.0 })
        .require(standard_at_zero))
}

/// `‖f^{2^k}‖^{1/2^k}` at `k = 10` against `|f̂|_K`, plus exact zeros for
/// radical elements over the `d`-fold critical value of `z^d − 1`.
pub fn spectral_radius(seed: u64, cases: usize, ds: &[usize], tol: &ToleranceConfig) -> Result<SuiteReport> {
    const K: usize = 10;
    let mut rng = rng_for(seed);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < cases {
        let d = ds[done % ds.len()];
        let ctx = random_context(&mut rng, d, tol)?;
        let m = random_samples(&mut rng, &ctx, 10, 2.0)?;
        let f = random_function(&mut rng, &ctx, &m)?;
        let rho = f.spectral_radius();
        if rho < 0.1 {
            continue;
        }
        let seq = f.spectral_radius_iter(K)?;
        worst = worst.max((seq[K] / rho - 1.0).abs());
        done += 1;
    }
    let mut radical_ok = true;
    for &d in ds {
        if d < 2 {
            continue;
        }
        let mut coeffs = vec![ZERO; d + 1];
        coeffs[0] = -ONE;
        coeffs[d] = ONE;
        let centers = Centers::from_polynomial(&Polynomial::new(coeffs)?, tol)?;
        let ctx = Arc::new(AlgebraContext::new(centers, *tol)?);
        let basis = ctx.radical_basis_at(-ONE)?;
        let m = Arc::new(SampleSet::new(&ctx, vec![-ONE])?);
        let mut a = vec![ZERO; d];
        for v in &basis {
            let c = complex_in_disc(&mut rng, 1.0);
            for (x, y) in a.iter_mut().zip(v) {
                *x += c * y;
            }
        }
        let f = VectorFunction::new(ctx, m, vec![a])?;
        let k_nil = (d as f64).log2().ceil() as usize;
        let seq = f.spectral_radius_iter(k_nil)?;
        radical_ok &= !basis.is_empty() && seq[k_nil] == 0.0;
    }
    Ok(SuiteReport::new("spectral-radius", seed, cases, worst, 0.05)
        .metric("radical_exact_zero", if radical_ok { 1.0 } else { 0.0 })
        .require(radical_ok))
}

pub fn inversion(seed: u64, cases: usize, tol: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = rng_for(seed);
    let ctx = two_centers(tol)?;
    let mut worst_c: f64 = 0.0;
    let mut lower_ok = true;
    let mut done = 0;
    while done < cases {
        let m = random_samples(&mut rng, &ctx, 10, 2.0)?;
        let f = random_function(&mut rng, &ctx, &m)?;
        let lambda = complex_in_disc(&mut rng, 3.0);
        let spec = f.spectrum().multiset;
        if spec.iter().any(|s| (s - lambda).norm() < 0.05) {
            continue;
        }
        let rep = f.resolvent_bound_check(lambda)?;
        worst_c = worst_c.max(rep.empirical_c);
        lower_ok &= rep.lower_bound_holds;
        done += 1;
    }
    Ok(SuiteReport::new("inversion", seed, cases, worst_c, 1.0 + 1e-8)
        .metric("max_empirical_c", worst_c)
        .metric("lower_bound_holds", if lower_ok { 1.0 } else { 0.0 })
        .require(lower_ok))
}

/// A random test matrix together with a simplifying polynomial and the
/// algebra over its roots.
struct CalculusInstance {
    tm: TestMatrix,
    ctx: Arc<AlgebraContext>,
}

impl CalculusInstance {
    fn p(&self) -> &Polynomial {
        self.ctx.p()
    }

    /// Samples `{p(α_k)}` plus `extra` random points.
    fn samples<R: Rng>(&self, rng: &mut R, extra: usize) -> Result<Arc<SampleSet>> {
        let mut pts: Vec<Complex64> = Vec::new();
        for e in &self.tm.spectrum.entries {
            let b = self.p().eval(e.alpha);
            if !pts.contains(&b) {
                pts.push(b);
            }
        }
        let scale = scale_of(pts.iter().map(|z| z.norm()));
        for _ in 0..extra {
            pts.push(complex_in_disc(rng, 2.0 * scale));
        }
        Ok(Arc::new(SampleSet::new(&self.ctx, pts)?))
    }
}

fn random_blocks<R: Rng>(rng: &mut R, max_block: usize, max_n: usize) -> Vec<JordanBlock> {
    loop {
        let r = rng.gen_range(1..=3);
        let alphas = separated_points(rng, r, 1.0, 0.5);
        let mut blocks = Vec::new();
        for &alpha in &alphas {
            for _ in 0..rng.gen_range(1..=2) {
                blocks.push(JordanBlock {
                    alpha,
                    size: rng.gen_range(1..=max_block),
                });
            }
        }
        let spec = TestMatrixSpec {
            blocks: blocks.clone(),
            similarity_seed: None,
            target_cond: 1.0,
        };
        let n = spec.dim();
        let big_n: usize = spec.spectrum().entries.iter().map(|e| e.n).sum();
        if n <= max_n && (1..=4).contains(&big_n) {
            return blocks;
        }
    }
}

fn calculus_instance<R: Rng>(
    rng: &mut R,
    blocks: Vec<JordanBlock>,
    max_cond: f64,
    tol: &ToleranceConfig,
) -> Result<CalculusInstance> {
    let spec = TestMatrixSpec {
        blocks,
        similarity_seed: Some(rng.gen()),
        target_cond: rng.gen_range(1.0..=max_cond),
    };
    let tm = spec.assemble()?;
    let base = simplifying_poly(&tm.spectrum, ZERO);
    let p = ensure_simple_roots(&base, complex_in_disc(rng, 1.0), &tm.spectrum, tol)?;
    let ctx = Arc::new(AlgebraContext::new(Centers::from_polynomial(&p, tol)?, *tol)?);
    Ok(CalculusInstance { tm, ctx })
}

/// `‖χ(f⊛g) − χ(f)χ(g)‖` in Frobenius norm, relative to `max(1, ‖χ(f)‖‖χ(g)‖)`.
fn chi_homomorphism_deviation(
    a: &ComplexMatrix,
    s: &SpectrumData,
    p: &Polynomial,
    f: &VectorFunction,
    g: &VectorFunction,
) -> Result<f64> {
    let cf = chi_a(a, s, p, f)?;
    let cg = chi_a(a, s, p, g)?;
    let cfg = chi_a(a, s, p, &f.polyprod(g)?)?;
    let diff = cfg.try_sub(&cf.matmul(&cg)?)?.norm_fro();
    Ok(diff / scale_of([cf.norm_fro() * cg.norm_fro()]))
}

/// 3×3 Jordan block with `p = z³ + 1` against the Hermite oracle, and the
/// homomorphism on random Jordan structures with `n ≤ 8` under similarities
/// of condition at most 50.
pub fn jordan(seed: u64, cases: usize, tol: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = rng_for(seed);

    let j3 = TestMatrixSpec {
        blocks: vec![JordanBlock { alpha: ZERO, size: 3 }],
        similarity_seed: None,
        target_cond: 1.0,
    }
    .jordan();
    let s3 = SpectrumData::new(vec![SpectrumEntry { alpha: ZERO, n: 2 }])?;
    let p3 = Polynomial::from_real(&[1.0, 0.0, 0.0, 1.0]);
    let ctx3 = Arc::new(AlgebraContext::new(Centers::from_polynomial(&p3, tol)?, *tol)?);
    let mut oracle_dev: f64 = 0.0;
    for _ in 0..cases {
        let m = random_samples(&mut rng, &ctx3, 3, 2.0)?;
        let m = Arc::new(SampleSet::new(&ctx3, [vec![ONE], m.points().to_vec()].concat())?);
        // f_j(w) = c_j0 + c_j1 w + c_j2 w²
        let comps: Vec<Polynomial> = (0..3)
            .map(|_| Polynomial::new(random_vec(&mut rng, 3)))
            .collect::<Result<_>>()?;
        let f = VectorFunction::from_fn(ctx3.clone(), m, |w| comps.iter().map(|q| q.eval(w)).collect())?;
        let phi = comps
            .iter()
            .zip(ctx3.delta())
            .fold(Polynomial::zero(), |acc, (q, d)| &acc + &(d * &q.compose(&p3)));
        let vals = vec![(0..3).map(|r| phi.nth_derivative(r).eval(ZERO)).collect()];
        let h = hermite_matrix_function(&j3, &s3, &vals)?;
        let chi = chi_a(&j3, &s3, &p3, &f)?;
        oracle_dev = oracle_dev.max(chi.try_sub(&h)?.max_abs() / scale_of([h.max_abs()]));
    }

    let mut hom_dev: f64 = 0.0;
    let mut max_n = 0;
    for _ in 0..cases {
        let blocks = random_blocks(&mut rng, 4, 8);
        let inst = calculus_instance(&mut rng, blocks, 50.0, tol)?;
        max_n = max_n.max(inst.tm.a.rows());
        let m = inst.samples(&mut rng, 2)?;
        let f = random_function(&mut rng, &inst.ctx, &m)?;
        let g = random_function(&mut rng, &inst.ctx, &m)?;
        let dev = chi_homomorphism_deviation(&inst.tm.a, &inst.tm.spectrum, inst.p(), &f, &g)?;
        hom_dev = hom_dev.max(dev / inst.tm.cond_t);
    }
    Ok(SuiteReport::new("jordan", seed, cases, oracle_dev.max(hom_dev), 1e-8)
        .metric("hermite_deviation", oracle_dev)
        .metric("homomorphism_deviation", hom_dev)
        .metric("max_dimension", max_n as f64))
}

/// Hausdorff distance between `σ(χ_A(f))` and `f̂(σ(A))` on random
/// instances with blocks of size at most 3, plus `A = 2I`, `p = z² − 1`.
pub fn specmap(seed: u64, cases: usize, tol: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = rng_for(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..cases.saturating_sub(1) {
        let blocks = random_blocks(&mut rng, 3, 8);
        let inst = calculus_instance(&mut rng, blocks, 10.0, tol)?;
        let m = inst.samples(&mut rng, 2)?;
        let f = random_function(&mut rng, &inst.ctx, &m)?;
        let rep = spectral_mapping_check(&inst.tm.a, &inst.tm.spectrum, inst.p(), &f)?;
        let scale = scale_of(rep.expected.iter().map(|z| z.norm()));
        worst = worst.max(rep.hausdorff / scale);
    }

    let ctx = Arc::new(AlgebraContext::from_lambdas(vec![ONE, -ONE], *tol)?);
    let m = Arc::new(SampleSet::new(&ctx, vec![Complex64::new(3.0, 0.0)])?);
    let f = random_function(&mut rng, &ctx, &m)?;
    let a = ComplexMatrix::identity(2).scale(Complex64::new(2.0, 0.0));
    let s = SpectrumData::new(vec![SpectrumEntry {
        alpha: Complex64::new(2.0, 0.0),
        n: 0,
    }])?;
    let rep = spectral_mapping_check(&a, &s, ctx.p(), &f)?;
    let full = f.spectrum().set;
    let strictly_larger = full.len() > rep.computed.len();
    worst = worst.max(rep.hausdorff / scale_of(rep.expected.iter().map(|z| z.norm())));
    Ok(SuiteReport::new("specmap", seed, cases, worst, 1e-6)
        .metric("two_i_full_spectrum_size", full.len() as f64)
        .metric("two_i_quotient_spectrum_size", rep.computed.len() as f64)
        .require(strictly_larger))
}

/// Least-squares slope of `y` against `x`.
fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// `‖f‖` for `f = L^{-1}φ`, `φ(x + iy) = max(x, 0)^α`, on the annulus
/// `ε ≤ |z| ≤ 2` with centers `±1`; the norm grows like `ε^{α−1}`.
pub fn blowup_norm(eps: f64, alpha: f64, tol: &ToleranceConfig) -> Result<f64> {
    const RADII: usize = 24;
    const ANGLES: usize = 33;
    let ctx = two_centers(tol)?;
    // fibers {z, −z} cover the annulus from its right half
    let mut pts = Vec::with_capacity(RADII * ANGLES);
    for i in 0..RADII {
        let r = eps * (2.0 / eps).powf(i as f64 / (RADII - 1) as f64);
        for k in 0..ANGLES {
            let t = -TAU / 4.0 + TAU / 2.0 * k as f64 / (ANGLES - 1) as f64;
            let z = Complex64::from_polar(r, t);
            pts.push(z * z - ONE);
        }
    }
    let mut uniq: Vec<Complex64> = Vec::with_capacity(pts.len());
    for w in pts {
        if !uniq.contains(&w) {
            uniq.push(w);
        }
    }
    let m = Arc::new(SampleSet::new(&ctx, uniq)?);
    let f = VectorFunction::from_gelfand(ctx, m, |z| Complex64::new(z.re.max(0.0).powf(alpha), 0.0))?;
    Ok(f.op_norm())
}

pub fn blowup(seed: u64, tol: &ToleranceConfig) -> Result<SuiteReport> {
    const ALPHA: f64 = 0.5;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for k in 3..=10 {
        let eps = 2f64.powi(-k);
        xs.push(eps.ln());
        ys.push(blowup_norm(eps, ALPHA, tol)?.ln());
    }
    let fitted = slope(&xs, &ys);
    let expected = -(1.0 - ALPHA);
    Ok(SuiteReport::new("blowup", seed, xs.len(), (fitted - expected).abs(), 0.15).metric("slope", fitted))
}

/// Homomorphism of `χ_A` for components `a_j + b_j |w − w_c|^{1/4}` around
/// the critical value `w_c = p(0)` of Jordan blocks at 0.
pub fn nondiff(seed: u64, cases: usize, tol: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = rng_for(seed);
    let mut worst: f64 = 0.0;
    let mut quotient_growth: f64 = 0.0;
    for case in 0..cases {
        let (size, p) = if case % 2 == 0 {
            (2, Polynomial::from_real(&[-1.0, 0.0, 1.0]))
        } else {
            (3, Polynomial::from_real(&[1.0, 0.0, 0.0, 1.0]))
        };
        let d = p.degree();
        let wc = p.eval(ZERO);
        let ctx = Arc::new(AlgebraContext::new(Centers::from_polynomial(&p, tol)?, *tol)?);
        let mut pts = vec![wc];
        for k in 1..=8 {
            let r = 10f64.powi(-k);
            pts.push(wc + Complex64::from_polar(r, rng.gen::<f64>() * TAU));
        }
        let m = Arc::new(SampleSet::new(&ctx, pts)?);
        let rough = |rng: &mut ChaCha8Rng| {
            let a = random_vec(rng, d);
            let b = random_vec(rng, d);
            VectorFunction::from_fn(ctx.clone(), m.clone(), |w| {
                let h = (w - wc).norm().powf(0.25);
                (0..d).map(|j| a[j] + b[j] * h).collect()
            })
        };
        let f = rough(&mut rng)?;
        let g = rough(&mut rng)?;
        let tm = TestMatrixSpec {
            blocks: vec![JordanBlock { alpha: ZERO, size }],
            similarity_seed: Some(rng.gen()),
            target_cond: rng.gen_range(1.0..=50.0),
        }
        .assemble()?;
        let dev = chi_homomorphism_deviation(&tm.a, &tm.spectrum, &p, &f, &g)?;
        worst = worst.max(dev / tm.cond_t);
        // χ_A through the similarity path agrees as well
        let direct = chi_a(&tm.a, &tm.spectrum, &p, &f)?;
        let sim = chi_similarity(&tm.a, &tm.t, &tm.spectrum, &p, &f)?;
        let sim_dev = sim.chi.try_sub(&direct)?.norm_fro() / scale_of([direct.norm_fro()]);
        worst = worst.max(sim_dev / (1e-2 * sim.cond_t));
        // |φ(z) − φ(0)|/|z| along the sampled fibers near the critical point
        let phi0 = f.gelfand_at_sample(0, ZERO);
        for (i, fib) in m.fibers().iter().enumerate().skip(1) {
            for &z in &fib.points {
                let q = (f.gelfand_at_sample(i, z) - phi0).norm() / z.norm();
                quotient_growth = quotient_growth.max(q);
            }
        }
    }
    Ok(SuiteReport::new("nondiff", seed, cases, worst, 1e-8).metric("max_difference_quotient", quotient_growth))
}

/// Runs every suite with its defaults.
pub fn run_all(seed: u64, tol: &ToleranceConfig) -> Result<Vec<SuiteReport>> {
    SUITES
        .iter()
        .map(|s| run_suite(s, seed, &SuiteParams::default(), tol))
        .collect()
}
