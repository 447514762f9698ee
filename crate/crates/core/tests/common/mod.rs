//! Independent reference implementations shared by the integration tests.
//! Eigenproblems go through nalgebra rather than the crate's own solver.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_4, PI};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unruh_teleport::analysis::Point;
use unruh_teleport::qmat::{ComplexMatrix, DensityMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let x: f64 = rng.gen();
        if x > 0.0 {
            return x;
        }
    }
}

/// Uniform over the valid parameter box.
pub fn random_point(rng: &mut ChaCha8Rng) -> Point {
    Point {
        vartheta: PI * open_unit(rng),
        p: rng.gen_range(0.0..1.0),
        q: rng.gen_range(0.0..1.0),
        r: rng.gen_range(0.0..=FRAC_PI_4),
        theta: rng.gen_range(0.0..=PI),
        phi: rng.gen_range(0.0..2.0 * PI),
    }
}

pub fn to_na(m: &ComplexMatrix) -> DMatrix<Complex64> {
    let n = m.dim();
    DMatrix::from_fn(n, n, |i, j| m[(i, j)])
}

/// Real symmetric embedding `[[Re, -Im], [Im, Re]]` of a Hermitian matrix.
/// nalgebra's complex Hermitian solver occasionally returns inconsistent
/// eigenvectors, so spectral functions go through the real solver instead.
fn embed(m: &DMatrix<Complex64>) -> DMatrix<f64> {
    let n = m.nrows();
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = (m[(i % n, j % n)] + m[(j % n, i % n)].conj()) * 0.5;
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(embed(m)).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // every eigenvalue appears twice in the embedding
    v.into_iter().step_by(2).collect()
}

/// `f(m)` for Hermitian `m`, via the real embedding.
fn hermitian_fn(m: &DMatrix<Complex64>, f: impl Fn(f64) -> f64) -> DMatrix<Complex64> {
    let n = m.nrows();
    let e = SymmetricEigen::new(embed(m));
    let d = DMatrix::from_diagonal(&e.eigenvalues.map(f));
    let big = &e.eigenvectors * d * e.eigenvectors.transpose();
    DMatrix::from_fn(n, n, |i, j| Complex64::new(big[(i, j)], big[(i + n, j)]))
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    hermitian_eigenvalues(&to_na(m))
}

fn psd_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    hermitian_fn(m, |l| l.max(0.0).sqrt())
}

/// Wootters concurrence from the spectrum of `sqrt(rho) rho~ sqrt(rho)`.
pub fn wootters_concurrence(rho: &DensityMatrix) -> f64 {
    let m = to_na(rho.matrix());
    let yy = DMatrix::from_fn(4, 4, |i, j| {
        // sigma_y (x) sigma_y is the anti-diagonal (-1, 1, 1, -1)
        if i + j == 3 {
            Complex64::new(if i == 0 || i == 3 { -1.0 } else { 1.0 }, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let tilde = &yy * m.conjugate() * &yy;
    let s = psd_sqrt(&m);
    let r = &s * tilde * &s;
    let mut l: Vec<f64> = hermitian_eigenvalues(&r).iter().map(|x| x.max(0.0).sqrt()).collect();
    l.reverse();
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

fn entropy_2x2(a: f64, d: f64, b: Complex64) -> f64 {
    let mean = (a + d) / 2.0;
    let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
    [mean + rad, mean - rad]
        .iter()
        .filter(|&&l| l > 1e-300)
        .map(|&l| -l * l.log2())
        .sum()
}

fn entropy(m: &ComplexMatrix) -> f64 {
    eigenvalues(m).iter().filter(|&&l| l > 1e-300).map(|&l| -l * l.log2()).sum()
}

/// Average entropy of qubit A after a projective measurement of qubit B
/// along the Bloch direction `(t, f)`.
fn conditional_entropy(rho: &ComplexMatrix, t: f64, f: f64) -> f64 {
    let n = [t.sin() * f.cos(), t.sin() * f.sin(), t.cos()];
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        // Pi = (I + sign n.sigma)/2
        let pi = [
            [
                Complex64::new((1.0 + sign * n[2]) / 2.0, 0.0),
                Complex64::new(sign * n[0] / 2.0, -sign * n[1] / 2.0),
            ],
            [
                Complex64::new(sign * n[0] / 2.0, sign * n[1] / 2.0),
                Complex64::new((1.0 - sign * n[2]) / 2.0, 0.0),
            ],
        ];
        let mut a = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in a.iter_mut().enumerate() {
            for (k, entry) in row.iter_mut().enumerate() {
                for j in 0..2 {
                    for l in 0..2 {
                        *entry += rho[(2 * i + j, 2 * k + l)] * pi[l][j];
                    }
                }
            }
        }
        let prob = a[0][0].re + a[1][1].re;
        if prob > 1e-300 {
            total += prob * entropy_2x2(a[0][0].re / prob, a[1][1].re / prob, a[0][1] / prob);
        }
    }
    total
}

/// Discord with measurement on the second qubit, minimized over a 180x360
/// grid of directions and then refined by a shrinking pattern search.
pub fn discord_brute_force(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let (nt, nf) = (180, 360);
    let (dt, df) = (PI / nt as f64, 2.0 * PI / nf as f64);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=nt {
        for j in 0..nf {
            let (t, f) = (i as f64 * dt, j as f64 * df);
            let h = conditional_entropy(m, t, f);
            if h < best.0 {
                best = (h, t, f);
            }
        }
    }
    let (mut h, mut t, mut f) = best;
    let (mut st, mut sf) = (dt, df);
    while st > 1e-12 {
        let mut moved = false;
        for (ddt, ddf) in [(st, 0.0), (-st, 0.0), (0.0, sf), (0.0, -sf)] {
            let cand = conditional_entropy(m, t + ddt, f + ddf);
            if cand < h {
                h = cand;
                t += ddt;
                f += ddf;
                moved = true;
            }
        }
        if !moved {
            st /= 2.0;
            sf /= 2.0;
        }
    }
    let rho_b = entropy_2x2(m[(0, 0)].re + m[(2, 2)].re, m[(1, 1)].re + m[(3, 3)].re, m[(0, 1)] + m[(2, 3)]);
    rho_b - entropy(m) + h
}

/// Random valid X-shaped two-qubit state with complex anti-diagonal.
pub fn random_x_state(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let w: Vec<f64> = (0..4).map(|_| open_unit(rng)).collect();
    let sum: f64 = w.iter().sum();
    let d: Vec<f64> = w.iter().map(|x| x / sum).collect();
    let mut m = ComplexMatrix::diag_real(&d);
    let z03 = Complex64::from_polar(rng.gen::<f64>() * (d[0] * d[3]).sqrt(), rng.gen_range(0.0..2.0 * PI));
    let z12 = Complex64::from_polar(rng.gen::<f64>() * (d[1] * d[2]).sqrt(), rng.gen_range(0.0..2.0 * PI));
    m[(0, 3)] = z03;
    m[(3, 0)] = z03.conj();
    m[(1, 2)] = z12;
    m[(2, 1)] = z12.conj();
    DensityMatrix::new(m, vec![2, 2]).expect("valid X state")
}

/// Random density matrix of dimension `n` as `G G^dagger / Tr`, with rank
/// at most `rank`.
pub fn random_density(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> DensityMatrix {
    let g = DMatrix::from_fn(n, rank, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    let cm = ComplexMatrix::from_fn(n, |i, j| m[(i, j)] / tr);
    DensityMatrix::new(cm.hermitize(), vec![n]).expect("valid random state")
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.max_abs_diff(b)
}
