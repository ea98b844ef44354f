//! Seeded generators for test matrices and randomized suites.

use num_complex::Complex64;
use rand::Rng;

use crate::linalg::ComplexMatrix;

/// Uniform sample from the disc of the given radius.
pub fn complex_in_disc<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = rng.gen::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(r, t)
}

/// `count` points in the disc with pairwise distance at least `min_sep`.
pub fn separated_points<R: Rng + ?Sized>(rng: &mut R, count: usize, radius: f64, min_sep: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(count);
    while out.len() < count {
        let z = complex_in_disc(rng, radius);
        if out.iter().all(|&x| (x - z).norm() >= min_sep) {
            out.push(z);
        }
    }
    out
}

/// Random unitary matrix as a product of `n` Householder reflections.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut q = ComplexMatrix::identity(n);
    for _ in 0..n {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let nv: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if nv == 0.0 {
            continue;
        }
        // H = I - 2 v vᴴ / (vᴴ v)
        let mut h = ComplexMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] -= v[i] * v[j].conj() * (2.0 / nv);
            }
        }
        q = &h * &q;
    }
    q
}

/// A similarity `T = U Σ Vᴴ` with singular values spaced geometrically in
/// `[1, cond]`, together with its exact inverse `V Σ^{-1} Uᴴ`.
pub fn similarity<R: Rng + ?Sized>(rng: &mut R, n: usize, cond: f64) -> (ComplexMatrix, ComplexMatrix) {
    let u = unitary(rng, n);
    let v = unitary(rng, n);
    let cond = cond.max(1.0);
    let sv: Vec<f64> = (0..n)
        .map(|i| {
            if n == 1 {
                1.0
            } else {
                cond.powf(i as f64 / (n - 1) as f64)
            }
        })
        .collect();
    let s = ComplexMatrix::from_diag(&sv.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>());
    let s_inv = ComplexMatrix::from_diag(&sv.iter().map(|&x| Complex64::new(1.0 / x, 0.0)).collect::<Vec<_>>());
    let vh = v.conj_transpose();
    let uh = u.conj_transpose();
    let t = &(&u * &s) * &vh;
    let t_inv = &(&v * &s_inv) * &uh;
    (t, t_inv)
}
