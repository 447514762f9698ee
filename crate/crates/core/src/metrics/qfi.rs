//! Quantum Fisher information, computed three independent ways: the
//! spectral SLD formula, the Bloch-vector formula for qubits, and the
//! block-wise SLD for X-shaped two-qubit states. The closed forms for the
//! teleported states are checked against all three.

use crate::channel::Coefficients;
use crate::error::{Error, Result};
use crate::qmat::{eig_hermitian, pauli, Complex, ComplexMatrix, DensityMatrix};
use crate::teleport::{InputParams, Param};

use super::{check_x_type, X_BLOCKS};

/// Eigenvalue pairs with `lambda_i + lambda_j` at or below this are outside
/// the support and dropped.
pub const SUPPORT_CUTOFF: f64 = 1e-12;

/// Guard on the closed-form denominators that vanish for pure outputs.
pub const DEGENERATE_DENOMINATOR: f64 = 1e-12;

/// Below this distance from the sphere a Bloch vector counts as pure.
pub const PURE_BLOCH_TOL: f64 = 1e-9;

/// `F = sum_{ij} 2 |<i|d rho|j>|^2 / (lambda_i + lambda_j)`.
pub fn qfi_eigen(rho: &DensityMatrix, drho: &ComplexMatrix) -> Result<f64> {
    if drho.dim() != rho.dim() {
        return Err(Error::DimMismatch {
            expected: rho.dim(),
            found: drho.dim(),
        });
    }
    let dev = drho.hermitian_deviation();
    if dev > 1e-10 {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let tr = drho.trace().norm();
    if tr > 1e-10 {
        return Err(Error::InvalidState(format!(
            "derivative of a density matrix must be traceless (trace {tr:e})"
        )));
    }
    let eig = eig_hermitian(rho.matrix())?;
    let v = &eig.vectors;
    let rotated = &(&v.dagger() * drho) * v;
    let lambda: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0)).collect();
    let n = rho.dim();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let denom = lambda[i] + lambda[j];
            if denom > SUPPORT_CUTOFF {
                total += 2.0 * rotated[(i, j)].norm_sqr() / denom;
            }
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        if !(v.norm() <= 1.0 + 1e-10) {
            return Err(Error::InvalidState(format!(
                "Bloch vector norm {} exceeds 1",
                v.norm()
            )));
        }
        Ok(v)
    }

    /// Components `Tr(rho sigma_k)` of a 2x2 density matrix.
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        let [x, y, z] = bloch_components(rho.matrix())?;
        Self::new(x, y, z)
    }

    pub fn norm(&self) -> f64 {
        self.dot(&[self.x, self.y, self.z]).sqrt()
    }

    fn dot(&self, v: &[f64; 3]) -> f64 {
        self.x * v[0] + self.y * v[1] + self.z * v[2]
    }
}

/// `Tr(m sigma_k)` for `k = x, y, z`; also maps a state derivative to the
/// Bloch-vector derivative.
pub fn bloch_components(m: &ComplexMatrix) -> Result<[f64; 3]> {
    if m.dim() != 2 {
        return Err(Error::DimMismatch {
            expected: 2,
            found: m.dim(),
        });
    }
    Ok(std::array::from_fn(|k| (m * &pauli(k + 1)).trace().re))
}

pub fn qfi_bloch(omega: &BlochVector, domega: &[f64; 3]) -> f64 {
    let grad_sq: f64 = domega.iter().map(|x| x * x).sum();
    let norm_sq = omega.dot(&[omega.x, omega.y, omega.z]);
    if norm_sq.sqrt() < 1.0 - PURE_BLOCH_TOL {
        let proj = omega.dot(domega);
        grad_sq + proj * proj / (1.0 - norm_sq)
    } else {
        grad_sq
    }
}

/// Closed-form QFI of the teleported single-qubit state.
pub fn qfi_single_closed(which: Param, input: &InputParams, k: &Coefficients) -> Result<f64> {
    let (st, ct) = input.theta().sin_cos();
    let n2sq = k.n2 * k.n2;
    match which {
        Param::Phi => {
            let x = k.f * st / k.n2;
            Ok(4.0 * x * x)
        }
        Param::Theta => {
            let amd2 = (k.a - k.d).powi(2);
            let f4 = 4.0 * k.f * k.f;
            let den = n2sq - amd2 * ct * ct - f4 * st * st;
            if den < DEGENERATE_DENOMINATOR {
                return Err(Error::Degenerate { denominator: den });
            }
            let s2t = (2.0 * input.theta()).sin();
            let extra = 0.25 * (amd2 - f4).powi(2) * s2t * s2t / den;
            Ok((amd2 * st * st + f4 * ct * ct + extra) / n2sq)
        }
    }
}

/// [`qfi_single_closed`] with the pure-state branch substituted when the
/// output is (numerically) pure.
pub fn qfi_single(which: Param, input: &InputParams, k: &Coefficients) -> f64 {
    match qfi_single_closed(which, input, k) {
        Ok(v) => v,
        Err(_) => {
            let (st, ct) = input.theta().sin_cos();
            ((k.a - k.d).powi(2) * st * st + 4.0 * k.f * k.f * ct * ct) / (k.n2 * k.n2)
        }
    }
}

/// Block-wise SLD for X-shaped 4x4 states. Each 2x2 block `rho_i` has
/// `L_i = (1/mu_i)[d rho_i + xi_i rho_i^{-1} - d mu_i]` with
/// `mu_i = Tr rho_i / 2`, `P_i = Tr rho_i^2`, `xi_i = 2 mu_i d mu_i - dP_i/4`
/// and `xi_i = 0` for singular blocks.
pub fn qfi_block_diagonal(rho: &DensityMatrix, drho: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != 4 || drho.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            found: if rho.dim() != 4 { rho.dim() } else { drho.dim() },
        });
    }
    check_x_type(rho.matrix())?;
    check_x_type(drho)?;
    let mut total = 0.0;
    for block in X_BLOCKS {
        let take = |m: &ComplexMatrix| {
            ComplexMatrix::from_fn(2, |i, j| m[(block[i], block[j])])
        };
        let r = take(rho.matrix());
        let dr = take(drho);
        let mu = r.trace().re / 2.0;
        if mu <= 0.0 {
            continue;
        }
        let dmu = dr.trace().re / 2.0;
        let dpurity = 2.0 * (&r * &dr).trace().re;
        let xi = 2.0 * mu * dmu - dpurity / 4.0;
        let det = (r[(0, 0)] * r[(1, 1)] - r[(0, 1)] * r[(1, 0)]).re;
        // smallest eigenvalue of the block, computed without cancellation
        let lambda_min = det / (mu + (mu * mu - det).max(0.0).sqrt());
        let mut l = &dr - &ComplexMatrix::identity(2).scale_real(dmu);
        if 2.0 * lambda_min > SUPPORT_CUTOFF {
            let mut inv = ComplexMatrix::zeros(2);
            inv[(0, 0)] = r[(1, 1)] / det;
            inv[(1, 1)] = r[(0, 0)] / det;
            inv[(0, 1)] = -r[(0, 1)] / det;
            inv[(1, 0)] = -r[(1, 0)] / det;
            l = &l + &inv.scale_real(xi);
        }
        let l = l.scale(Complex::new(1.0 / mu, 0.0));
        total += (&dr * &l).trace().re;
    }
    Ok(total)
}

/// Closed-form QFI of the teleported two-qubit state, with
/// `zeta = A^2 + D^2`.
pub fn qfi_two_closed(which: Param, input: &InputParams, k: &Coefficients) -> Result<f64> {
    let st = input.theta().sin();
    let n2sq = k.n2 * k.n2;
    let (a2, d2) = (k.a * k.a, k.d * k.d);
    let zeta = a2 + d2;
    let f4 = k.f.powi(4);
    match which {
        Param::Phi => Ok(16.0 * f4 * st * st / (zeta * n2sq)),
        Param::Theta => {
            let c2t = (2.0 * input.theta()).cos();
            let inner = zeta
                * (((a2 - d2).powi(2) - 16.0 * f4) * c2t - (zeta * zeta + 4.0 * (a2 * d2 - 4.0 * f4)));
            if inner.abs() < DEGENERATE_DENOMINATOR {
                return Err(Error::Degenerate { denominator: inner });
            }
            Ok((zeta + 8.0 * a2 * d2 * (zeta * zeta - 16.0 * f4) / inner) / n2sq)
        }
    }
}

/// [`qfi_two_closed`] with the pure-block limit substituted when the
/// denominator vanishes.
pub fn qfi_two(which: Param, input: &InputParams, k: &Coefficients) -> f64 {
    match qfi_two_closed(which, input, k) {
        Ok(v) => v,
        Err(_) => {
            let (st, ct) = input.theta().sin_cos();
            let (a2, d2) = (k.a * k.a, k.d * k.d);
            let zeta = a2 + d2;
            ((a2 - d2).powi(2) * st * st + 16.0 * k.f.powi(4) * ct * ct) / (zeta * k.n2 * k.n2)
        }
    }
}
