//! Dense complex linear algebra for the small (dim <= 8) matrices used here.
//!
//! Everything is row-major `Vec<Complex>` storage. Values are immutable once
//! built; operations return new matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

/// Largest matrix dimension any routine here is meant for.
pub const MAX_DIM: usize = 8;

/// Tolerances used when validating states.
pub const NORM_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
/// Symmetry tolerance accepted by [`eig_hermitian`].
pub const EIG_HERMITIAN_TOL: f64 = 1e-10;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries; rejects non-square input and
    /// non-finite values.
    pub fn from_row_major(dim: usize, entries: Vec<Complex>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite matrix entry".into()));
        }
        Ok(Self { dim, data: entries })
    }

    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_row_major(dim, entries.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex::new(v, 0.0);
        }
        m
    }

    /// `|v><v|`
    pub fn outer(v: &[Complex]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)].conj())
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex::new(s, 0.0))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |a_ij - conj(a_ji)|`
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(a + a^dagger) / 2`
    pub fn hermitize(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Vec<Complex> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `a b a^dagger`
    pub fn conjugate_by(&self, a: &Self) -> Self {
        &(a * self) * &a.dagger()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrix `sigma_k` with `sigma_0 = I`, `sigma_1 = X`, `sigma_2 = Y`,
/// `sigma_3 = Z`.
pub fn pauli(k: usize) -> ComplexMatrix {
    let e = match k {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -I, I, ZERO],
        3 => [ONE, ZERO, ZERO, -ONE],
        _ => panic!("pauli index {k} out of range"),
    };
    ComplexMatrix {
        dim: 2,
        data: e.to_vec(),
    }
}

/// Kronecker product with lexicographic (first factor most significant)
/// ordering.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    ComplexMatrix::from_fn(na * nb, |i, j| a[(i / nb, j / nb)] * b[(i % nb, j % nb)])
}

pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

fn check_dims(dims: &[usize], len: usize) -> Result<()> {
    if dims.is_empty() || dims.iter().any(|&d| d == 0) {
        return Err(Error::InvalidState("empty subsystem list".into()));
    }
    let prod: usize = dims.iter().product();
    if prod != len {
        return Err(Error::DimMismatch {
            expected: prod,
            found: len,
        });
    }
    Ok(())
}

/// Normalized state vector over a list of subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex>,
    dims: Vec<usize>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "state norm^2 is {norm_sq}, expected 1"
            )));
        }
        Ok(Self { amplitudes, dims })
    }

    /// Normalizes `amplitudes`, returning the state and the squared norm that
    /// was divided out.
    pub fn normalized(amplitudes: Vec<Complex>, dims: Vec<usize>) -> Result<(Self, f64)> {
        check_dims(&dims, amplitudes.len())?;
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !(norm_sq.is_finite() && norm_sq > 0.0) {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        let s = 1.0 / norm_sq.sqrt();
        let amplitudes = amplitudes.into_iter().map(|z| z * s).collect();
        Ok((Self { amplitudes, dims }, norm_sq))
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    /// Applies a local operator on subsystem `target` without renormalizing.
    pub fn apply_local(&self, op: &ComplexMatrix, target: usize) -> Result<Vec<Complex>> {
        let d = *self.dims.get(target).ok_or(Error::InvalidSubsystem {
            index: target,
            count: self.dims.len(),
        })?;
        if op.dim() != d {
            return Err(Error::DimMismatch {
                expected: d,
                found: op.dim(),
            });
        }
        let stride: usize = self.dims[target + 1..].iter().product();
        let mut out = vec![ZERO; self.amplitudes.len()];
        for (idx, slot) in out.iter_mut().enumerate() {
            let local = (idx / stride) % d;
            let base = idx - local * stride;
            *slot = (0..d)
                .map(|k| op[(local, k)] * self.amplitudes[base + k * stride])
                .sum();
        }
        Ok(out)
    }

    /// `<psi| a |psi>`
    pub fn expectation(&self, a: &ComplexMatrix) -> Complex {
        let av = a.mul_vec(&self.amplitudes);
        self.amplitudes
            .iter()
            .zip(&av)
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: ComplexMatrix::outer(&self.amplitudes),
            dims: self.dims.clone(),
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix over a list of
/// subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, matrix.dim())?;
        let dev = matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min_eig = eig_hermitian(&matrix)?.values[0];
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "smallest eigenvalue {min_eig:e} is negative"
            )));
        }
        Ok(Self { matrix, dims })
    }

    /// Single-qubit or multi-qubit state with every subsystem of dimension 2.
    pub fn qubits(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix.dim();
        if !n.is_power_of_two() || n < 2 {
            return Err(Error::DimMismatch {
                expected: 2,
                found: n,
            });
        }
        let dims = vec![2; n.trailing_zeros() as usize];
        Self::new(matrix, dims)
    }

    /// For matrices that are valid by construction; rounding asymmetry is
    /// removed.
    pub(crate) fn from_trusted(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.dim());
        Self {
            matrix: matrix.hermitize(),
            dims,
        }
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let n: usize = dims.iter().product();
        Self {
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
            dims,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.matrix[(i, j)]
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// Reduced state on the subsystems listed in `keep` (kept in ascending
/// order).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.dims();
    if keep.is_empty() {
        return Err(Error::InvalidState("keep set is empty".into()));
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::InvalidSubsystem {
            index: bad,
            count: dims.len(),
        });
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();

    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let n_keep: usize = kept_dims.iter().product();
    let n_trace: usize = traced_dims.iter().product();

    // full index from (kept multi-index, traced multi-index)
    let compose = |ki: usize, ti: usize| -> usize {
        let mut digits = vec![0usize; dims.len()];
        let mut rem = ki;
        for (pos, &k) in kept.iter().enumerate().rev() {
            digits[k] = rem % kept_dims[pos];
            rem /= kept_dims[pos];
        }
        let mut rem = ti;
        for (pos, &t) in traced.iter().enumerate().rev() {
            digits[t] = rem % traced_dims[pos];
            rem /= traced_dims[pos];
        }
        digits
            .iter()
            .zip(dims)
            .fold(0usize, |acc, (&digit, &d)| acc * d + digit)
    };

    let m = rho.matrix();
    let reduced = ComplexMatrix::from_fn(n_keep, |i, j| {
        (0..n_trace)
            .map(|t| m[(compose(i, t), compose(j, t))])
            .sum()
    });
    Ok(DensityMatrix::from_trusted(reduced, kept_dims))
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and
/// orthonormal eigenvectors stored as columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `V f(diag(lambda)) V^dagger`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * fv[k] * self.vectors[(j, k)].conj())
                .sum()
        })
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic complex Jacobi rotations.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let dev = h.hermitian_deviation();
    if dev > EIG_HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = h.dim();
    let mut a = h.hermitize();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= 1e-300 {
                    continue;
                }
                let u = apq / g;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let ub = u.conj();

                // columns: A <- A J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * ub * s;
                    a[(k, q)] = akp * s + akq * ub * c;
                }
                // rows: A <- J^dagger A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * u * s;
                    a[(q, k)] = apk * s + aqk * u * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex::new(a[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * ub * s;
                    v[(k, q)] = vkp * s + vkq * ub * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Principal square root of a positive semidefinite matrix; negative
/// rounding eigenvalues are clamped to zero.
pub fn sqrt_psd(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(eig_hermitian(h)?.reconstruct_with(|l| l.max(0.0).sqrt()))
}

/// Eigenvalues at or below this are treated as outside the support when
/// computing fidelities.
pub const FIDELITY_SUPPORT_CUTOFF: f64 = 1e-14;

/// Uhlmann-Jozsa fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`,
/// evaluated on the support of whichever state has the smaller rank so that
/// pure states reduce to an exact overlap.
pub fn jozsa_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let er = eig_hermitian(rho.matrix())?;
    let es = eig_hermitian(sigma.matrix())?;
    let rank = |e: &HermitianEigen| e.values.iter().filter(|&&l| l > FIDELITY_SUPPORT_CUTOFF).count();
    let (e, other) = if rank(&er) <= rank(&es) {
        (er, sigma.matrix())
    } else {
        (es, rho.matrix())
    };
    let support: Vec<usize> = (0..e.values.len())
        .filter(|&k| e.values[k] > FIDELITY_SUPPORT_CUTOFF)
        .collect();
    let vecs: Vec<Vec<Complex>> = support.iter().map(|&k| e.vector(k)).collect();
    let images: Vec<Vec<Complex>> = vecs.iter().map(|v| other.mul_vec(v)).collect();
    let m = ComplexMatrix::from_fn(support.len(), |i, j| {
        let overlap: Complex = vecs[i].iter().zip(&images[j]).map(|(a, b)| a.conj() * b).sum();
        overlap * (e.values[support[i]] * e.values[support[j]]).sqrt()
    });
    let fid = if support.len() == 1 {
        m[(0, 0)].re
    } else {
        let root_trace: f64 = eig_hermitian(&m.hermitize())?
            .values
            .iter()
            .map(|&l| l.max(0.0).sqrt())
            .sum();
        root_trace * root_trace
    };
    Ok(fid.clamp(0.0, 1.0))
}

/// von Neumann entropy in bits, with `0 log 0 = 0`.
pub fn entropy_bits(rho: &ComplexMatrix) -> Result<f64> {
    Ok(eig_hermitian(rho)?
        .values
        .iter()
        .map(|&l| l.max(0.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum())
}
