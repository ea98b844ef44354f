//! Dense complex polynomials, simultaneous root finding, Lagrange bases and
//! fibers `p^{-1}(w)`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::{scale_of, ToleranceConfig};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Iteration cap for the Aberth–Ehrlich solver.
pub const ROOT_MAX_ITER: usize = 1000;

/// Angular offset of the initial root configuration.
const ABERTH_ANGLE_OFFSET: f64 = 0.4;

/// A polynomial with complex coefficients in ascending powers.
///
/// The leading (last) coefficient is nonzero; the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolynomial", into = "RawPolynomial")]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawPolynomial {
    coeffs: Vec<Complex64>,
}

impl TryFrom<RawPolynomial> for Polynomial {
    type Error = Error;

    fn try_from(raw: RawPolynomial) -> Result<Self> {
        Polynomial::new(raw.coeffs)
    }
}

impl From<Polynomial> for RawPolynomial {
    fn from(p: Polynomial) -> Self {
        RawPolynomial { coeffs: p.coeffs }
    }
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming exact
    /// trailing zeros.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidInput(
                "polynomial coefficients must be finite".into(),
            ));
        }
        Ok(Self::from_vec(coeffs))
    }

    fn from_vec(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_vec(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_vec(vec![c])
    }

    /// The monomial `z`.
    pub fn identity() -> Self {
        Self::from_vec(vec![ZERO, ONE])
    }

    /// The monic polynomial `Π (z − r)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![ONE];
        for &r in roots {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Self::from_vec(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == ONE
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value together with the magnitude scale `Σ |c_k| |z|^k`, which bounds
    /// the rounding error of the evaluation.
    pub fn eval_with_scale(&self, z: Complex64) -> (Complex64, f64) {
        let r = z.norm();
        let mut val = ZERO;
        let mut mag = 0.0;
        for &c in self.coeffs.iter().rev() {
            val = val * z + c;
            mag = mag * r + c.norm();
        }
        (val, mag)
    }

    pub fn derivative(&self) -> Self {
        Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_vec(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `q ∘ inner`, by Horner's scheme over polynomials.
    pub fn compose(&self, inner: &Polynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, &c| &(&acc * inner) + &Polynomial::constant(c))
    }

    /// Euclidean division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if divisor.is_zero() {
            return Err(Error::InvalidInput("division by the zero polynomial".into()));
        }
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ZERO; self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= q * d;
            }
            rem[k + dd] = ZERO;
        }
        rem.truncate(dd);
        Ok((Self::from_vec(quot), Self::from_vec(rem)))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidInput("the zero polynomial has no monic form".into()));
        }
        Ok(self.scale(ONE / self.leading()))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|k| {
                self.coeffs.get(k).copied().unwrap_or(ZERO) + rhs.coeffs.get(k).copied().unwrap_or(ZERO)
            })
            .collect();
        Polynomial::from_vec(c)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::from_vec(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial::from_vec(c)
    }
}

/// Integrates `q` from 0, adding the constant `c`.
pub fn antiderivative(q: &Polynomial, c: Complex64) -> Polynomial {
    let mut coeffs = Vec::with_capacity(q.coeffs.len() + 1);
    coeffs.push(c);
    coeffs.extend(
        q.coeffs
            .iter()
            .enumerate()
            .map(|(k, &a)| a / (k as f64 + 1.0)),
    );
    Polynomial::from_vec(coeffs)
}

/// All roots of `q` with multiplicity, by Aberth–Ehrlich iteration.
///
/// The initial guesses lie on a circle of radius `1 + max|c_k|/|lead|`,
/// rotated by a fixed offset so that symmetric polynomials do not start
/// on a symmetry axis. Clusters that are numerically one multiple root are
/// returned as repeated copies of that root.
pub fn roots(q: &Polynomial, tol: &ToleranceConfig) -> Result<Vec<Complex64>> {
    roots_clustered(q, tol, tol.coalesce_radius())
}

/// As [`roots`], with clusters detected at the given relative radius.
pub(crate) fn roots_clustered(q: &Polynomial, tol: &ToleranceConfig, cluster_radius: f64) -> Result<Vec<Complex64>> {
    if q.is_zero() || q.degree() == 0 {
        return Err(Error::InvalidInput(
            "root finding requires a polynomial of degree at least 1".into(),
        ));
    }
    let q = q.monic()?;
    let n = q.degree();
    if n == 1 {
        return Ok(vec![-q.coeffs[0]]);
    }
    let dq = q.derivative();
    let radius = 1.0
        + q.coeffs[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + ABERTH_ANGLE_OFFSET))
        .collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;

    for _ in 0..ROOT_MAX_ITER {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (val, mag) = q.eval_with_scale(z[i]);
            if val.norm() <= 4.0 * eps * mag {
                done[i] = true;
                continue;
            }
            let dval = dq.eval(z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff == ZERO {
                        ZERO
                    } else {
                        ONE / diff
                    }
                })
                .sum();
            let step = if dval == ZERO {
                // Stationary point: nudge off it.
                Complex64::new(eps.sqrt() * (1.0 + z[i].norm()), 0.0)
            } else {
                let newton = val / dval;
                let denom = ONE - newton * repulsion;
                if denom == ZERO {
                    newton
                } else {
                    newton / denom
                }
            };
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[i] -= step;
            if step.norm() <= eps * z[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }

    polish_clusters(&q, &mut z, cluster_radius, tol.root_tol);

    let worst = z
        .iter()
        .map(|&zi| {
            let (v, mag) = q.eval_with_scale(zi);
            v.norm() / scale_of([mag])
        })
        .fold(0.0, f64::max);
    if worst > tol.root_tol || z.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::ConvergenceFailure {
            iterations: ROOT_MAX_ITER,
            residual: worst,
        });
    }
    Ok(z)
}

/// Single-linkage groups of `members` at the given radius.
fn linkage_groups(z: &[Complex64], members: &[usize], radius: f64) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = members.to_vec();
    let mut groups = Vec::new();
    while let Some(seed) = left.pop() {
        let mut group = vec![seed];
        let mut k = 0;
        while k < group.len() {
            let a = z[group[k]];
            let (near, far): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&j| (z[j] - a).norm() <= radius);
            group.extend(near);
            left = far;
            k += 1;
        }
        groups.push(group);
    }
    groups
}

/// Collapses clusters of computed roots that represent one multiple root.
///
/// A root of multiplicity `k` of a polynomial known to relative accuracy
/// `cert_tol` scatters into `k` points at distance about `cert_tol^{1/k}`.
/// Groups are formed at that radius, and the group centroid is
/// refined by Newton's method on `q^{(k−1)}`. The group collapses onto the
/// refined point when `q, q', ..., q^{(k−1)}` all vanish there to `cert_tol`
/// (relative); otherwise it is split at a smaller radius and retried.
fn polish_clusters(q: &Polynomial, z: &mut [Complex64], rel_radius: f64, cert_tol: f64) {
    let n = z.len();
    let scale = scale_of(z.iter().map(|r| r.norm()));
    let radius_for = |k: usize| rel_radius.max(10.0 * cert_tol.powf(1.0 / k as f64)) * scale;
    let all: Vec<usize> = (0..n).collect();
    let mut queue = linkage_groups(z, &all, radius_for(n));
    while let Some(group) = queue.pop() {
        let k = group.len();
        if k < 2 {
            continue;
        }
        let centroid = group.iter().map(|&j| z[j]).sum::<Complex64>() / k as f64;
        let spread = group.iter().map(|&j| (z[j] - centroid).norm()).fold(0.0, f64::max);
        if spread <= radius_for(k) {
            if let Some(c) = certify_multiple_root(q, centroid, k, spread.max(f64::EPSILON * scale), cert_tol) {
                for &j in &group {
                    z[j] = c;
                }
                continue;
            }
        }
        let mut r = spread.min(radius_for(k));
        loop {
            r /= 2.0;
            if r < rel_radius * scale * 1e-3 {
                break;
            }
            let parts = linkage_groups(z, &group, r);
            if parts.len() > 1 {
                queue.extend(parts);
                break;
            }
        }
    }
}

/// Newton on `q^{(k−1)}` from `start`; returns the limit if it stays within
/// `reach` of `start` and is a numerical root of multiplicity `k`.
fn certify_multiple_root(q: &Polynomial, start: Complex64, k: usize, reach: f64, cert_tol: f64) -> Option<Complex64> {
    let dm = q.nth_derivative(k - 1);
    let ddm = dm.derivative();
    let mut c = start;
    for _ in 0..16 {
        let d = ddm.eval(c);
        if d == ZERO {
            break;
        }
        let step = dm.eval(c) / d;
        c -= step;
        if step.norm() <= f64::EPSILON * scale_of([c.norm()]) {
            break;
        }
    }
    if !(c.re.is_finite() && c.im.is_finite()) || (c - start).norm() > reach {
        return None;
    }
    let mut d = q.clone();
    for _ in 0..k {
        let (v, mag) = d.eval_with_scale(c);
        if v.norm() > cert_tol * scale_of([mag]) {
            return None;
        }
        d = d.derivative();
    }
    Some(c)
}

/// The distinct interpolation nodes `Λ` and the monic `p(z) = Π (z − λ_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Centers {
    lambdas: Vec<Complex64>,
    separation: f64,
    p: Polynomial,
    /// `p'(λ_j) = Π_{k≠j} (λ_j − λ_k)`
    dp_at: Vec<Complex64>,
}

impl Centers {
    pub fn new(lambdas: Vec<Complex64>, tol: &ToleranceConfig) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::InvalidInput("at least one center is required".into()));
        }
        if lambdas.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidInput("centers must be finite".into()));
        }
        let mut separation = f64::INFINITY;
        for i in 0..lambdas.len() {
            for j in i + 1..lambdas.len() {
                separation = separation.min((lambdas[i] - lambdas[j]).norm());
            }
        }
        if separation <= tol.crit_tol {
            return Err(Error::CentersDegenerate { separation });
        }
        let dp_at = (0..lambdas.len())
            .map(|j| {
                lambdas
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &l)| lambdas[j] - l)
                    .product()
            })
            .collect();
        let p = Polynomial::from_roots(&lambdas);
        Ok(Self {
            lambdas,
            separation,
            p,
            dp_at,
        })
    }

    /// Centers given by the roots of a monic polynomial.
    pub fn from_polynomial(p: &Polynomial, tol: &ToleranceConfig) -> Result<Self> {
        if !p.is_monic() {
            return Err(Error::InvalidInput("the variable changer p must be monic".into()));
        }
        Centers::new(roots(p, tol)?, tol)
    }

    pub fn lambdas(&self) -> &[Complex64] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    /// The monic polynomial with zeros `Λ`.
    pub fn poly(&self) -> &Polynomial {
        &self.p
    }

    pub fn dp_at_center(&self, j: usize) -> Complex64 {
        self.dp_at[j]
    }

    /// `δ_j(z) = Π_{k≠j} (z − λ_k)/(λ_j − λ_k)` in product form.
    pub fn basis_value(&self, j: usize, z: Complex64) -> Complex64 {
        let lj = self.lambdas[j];
        self.lambdas
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, &lk)| (z - lk) / (lj - lk))
            .product()
    }

    pub fn basis_values(&self, z: Complex64) -> Vec<Complex64> {
        (0..self.len()).map(|j| self.basis_value(j, z)).collect()
    }
}

/// Lagrange basis polynomials `δ_j` with `δ_j(λ_k) = [j = k]`.
pub fn lagrange_basis(c: &Centers) -> Vec<Polynomial> {
    let lambdas = c.lambdas();
    (0..lambdas.len())
        .map(|j| {
            let others: Vec<Complex64> = lambdas
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &l)| l)
                .collect();
            Polynomial::from_roots(&others).scale(ONE / c.dp_at_center(j))
        })
        .collect()
}

/// Zeros of `p'`.
pub fn critical_points(p: &Polynomial, tol: &ToleranceConfig) -> Result<Vec<Complex64>> {
    if p.degree() < 2 {
        return Err(Error::InvalidInput(
            "critical points require degree at least 2".into(),
        ));
    }
    roots(&p.derivative(), tol)
}

/// The solutions `z_1..z_d` of `p(z) = w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fiber {
    pub w: Complex64,
    pub points: Vec<Complex64>,
    pub critical: bool,
}

impl Fiber {
    /// Groups points closer than `radius`; returns `(centroid, multiplicity)`.
    pub fn clusters(&self, radius: f64) -> Vec<(Complex64, usize)> {
        cluster_points(&self.points, radius)
    }
}

/// Single-linkage clustering of complex points.
pub fn cluster_points(points: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut out: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match out.iter_mut().find(|(root, _, _)| *root == r) {
            Some(entry) => {
                entry.1 += points[i];
                entry.2 += 1;
            }
            None => out.push((r, points[i], 1)),
        }
    }
    out.into_iter()
        .map(|(_, sum, m)| (sum / m as f64, m))
        .collect()
}

/// Solves `p(z) = w`; flags the fiber critical when some `|p'(z_j)|` is at
/// most `crit_tol` (relative) or two points have coalesced.
pub fn fiber(p: &Polynomial, w: Complex64, tol: &ToleranceConfig) -> Result<Fiber> {
    if p.degree() < 1 {
        return Err(Error::InvalidInput("fiber requires a nonconstant polynomial".into()));
    }
    let shifted = p - &Polynomial::constant(w);
    let points = if shifted.degree() == p.degree() {
        roots(&shifted, tol)?
    } else {
        // Only possible for w equal to the constant term of a linear p.
        return Err(Error::InvalidInput("degenerate fiber".into()));
    };
    let critical = fiber_is_critical(p, &points, tol);
    Ok(Fiber { w, points, critical })
}

pub(crate) fn fiber_is_critical(p: &Polynomial, points: &[Complex64], tol: &ToleranceConfig) -> bool {
    let dp = p.derivative();
    let flat = points.iter().any(|&z| {
        let (v, mag) = dp.eval_with_scale(z);
        v.norm() <= tol.crit_tol * scale_of([mag])
    });
    let radius = tol.coalesce_radius() * scale_of(points.iter().map(|z| z.norm()));
    flat || cluster_points(points, radius).len() < points.len()
}
