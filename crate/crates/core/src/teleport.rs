//! Standard teleportation with a mixed resource acts as a generalized
//! depolarizing channel `rho -> sum_i Tr(B_i rho_ch) sigma_i rho sigma_i`.
//! The two-qubit protocol runs two copies of it in parallel.

use std::f64::consts::PI;

use crate::channel::Coefficients;
use crate::error::{check_range, Error, Result};
use crate::qmat::{kron, pauli, Complex, ComplexMatrix, DensityMatrix, PureState, ZERO};

/// Weight `theta` and phase `phi` of the teleported state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputParams {
    theta: f64,
    phi: f64,
}

impl InputParams {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        Ok(Self {
            theta: check_range("theta", "[0, pi]", theta, 0.0, PI, true, true)?,
            phi: check_range("phi", "[0, 2pi)", phi, 0.0, 2.0 * PI, true, false)?,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`
pub fn single_input_state(input: &InputParams) -> PureState {
    let (s, c) = (input.theta / 2.0).sin_cos();
    PureState::new(
        vec![Complex::new(c, 0.0), Complex::from_polar(s, input.phi)],
        vec![2],
    )
    .expect("input state is normalized")
}

/// `cos(theta/2)|10> + e^{i phi} sin(theta/2)|01>`
pub fn two_input_state(input: &InputParams) -> PureState {
    let (s, c) = (input.theta / 2.0).sin_cos();
    PureState::new(
        vec![ZERO, Complex::from_polar(s, input.phi), Complex::new(c, 0.0), ZERO],
        vec![2, 2],
    )
    .expect("input state is normalized")
}

/// Bell projectors `B_i = (I (x) sigma_i) B_0 (I (x) sigma_i)` with
/// `B_0 = |Phi+><Phi+|`.
#[derive(Clone, Debug)]
pub struct BellBasis {
    projectors: [ComplexMatrix; 4],
}

impl BellBasis {
    pub fn new() -> Self {
        let h = Complex::new(0.5_f64.sqrt(), 0.0);
        let b0 = ComplexMatrix::outer(&[h, ZERO, ZERO, h]);
        let projectors = std::array::from_fn(|i| {
            let u = kron(&pauli(0), &pauli(i));
            b0.conjugate_by(&u)
        });
        Self { projectors }
    }

    pub fn projector(&self, i: usize) -> &ComplexMatrix {
        &self.projectors[i]
    }
}

impl Default for BellBasis {
    fn default() -> Self {
        Self::new()
    }
}

fn expect_dim(rho: &DensityMatrix, dim: usize) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimMismatch {
            expected: dim,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// `Tr(B_i rho_ch)` for `i = 0..4`.
pub fn depolarizing_weights(resource: &DensityMatrix) -> Result<[f64; 4]> {
    expect_dim(resource, 4)?;
    let bell = BellBasis::new();
    Ok(std::array::from_fn(|i| {
        (bell.projector(i) * resource.matrix()).trace().re
    }))
}

pub fn teleport_single(input: &DensityMatrix, resource: &DensityMatrix) -> Result<DensityMatrix> {
    expect_dim(input, 2)?;
    let w = depolarizing_weights(resource)?;
    let mut out = ComplexMatrix::zeros(2);
    for (i, &wi) in w.iter().enumerate() {
        out = &out + &input.matrix().conjugate_by(&pauli(i)).scale_real(wi);
    }
    Ok(DensityMatrix::from_trusted(out, vec![2]))
}

/// Both qubits of `input` are sent through independent copies of the same
/// resource; `p_ij = w_i w_j`.
pub fn teleport_two(input: &DensityMatrix, resource: &DensityMatrix) -> Result<DensityMatrix> {
    expect_dim(input, 4)?;
    let w = depolarizing_weights(resource)?;
    let mut out = ComplexMatrix::zeros(4);
    for (i, &wi) in w.iter().enumerate() {
        for (j, &wj) in w.iter().enumerate() {
            let u = kron(&pauli(i), &pauli(j));
            out = &out + &input.matrix().conjugate_by(&u).scale_real(wi * wj);
        }
    }
    Ok(DensityMatrix::from_trusted(out, vec![2, 2]))
}

/// Which input parameter a derivative is taken with respect to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Theta,
    Phi,
}

/// Closed-form single-qubit output state.
pub fn closed_form_single(input: &InputParams, k: &Coefficients) -> DensityMatrix {
    DensityMatrix::from_trusted(single_matrix(input.theta, input.phi, k, None), vec![2])
}

/// Entrywise derivative of [`closed_form_single`].
pub fn closed_form_single_derivative(input: &InputParams, k: &Coefficients, wrt: Param) -> ComplexMatrix {
    single_matrix(input.theta, input.phi, k, Some(wrt))
}

fn single_matrix(theta: f64, phi: f64, k: &Coefficients, wrt: Option<Param>) -> ComplexMatrix {
    let (st, ct) = theta.sin_cos();
    let e = Complex::from_polar(1.0, -phi);
    // cos^2(theta/2) = (1 + cos theta)/2
    let (c2, s2, sin, phase) = match wrt {
        None => ((1.0 + ct) / 2.0, (1.0 - ct) / 2.0, st, e),
        Some(Param::Theta) => (-st / 2.0, st / 2.0, ct, e),
        Some(Param::Phi) => (0.0, 0.0, st, e * Complex::new(0.0, -1.0)),
    };
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 0)] = Complex::new((k.a * c2 + k.d * s2) / k.n2, 0.0);
    m[(1, 1)] = Complex::new((k.a * s2 + k.d * c2) / k.n2, 0.0);
    m[(0, 1)] = phase * (k.f * sin / k.n2);
    m[(1, 0)] = m[(0, 1)].conj();
    m
}

/// Closed-form two-qubit output state (X-shaped).
pub fn closed_form_two(input: &InputParams, k: &Coefficients) -> DensityMatrix {
    DensityMatrix::from_trusted(two_matrix(input.theta, input.phi, k, None), vec![2, 2])
}

/// Entrywise derivative of [`closed_form_two`].
pub fn closed_form_two_derivative(input: &InputParams, k: &Coefficients, wrt: Param) -> ComplexMatrix {
    two_matrix(input.theta, input.phi, k, Some(wrt))
}

fn two_matrix(theta: f64, phi: f64, k: &Coefficients, wrt: Option<Param>) -> ComplexMatrix {
    let (st, ct) = theta.sin_cos();
    let n4 = k.n2 * k.n2;
    let (a2, d2) = (k.a * k.a, k.d * k.d);
    let e = Complex::from_polar(1.0, phi);
    let (corner, c2, s2, sin, phase) = match wrt {
        None => (k.a * k.d, (1.0 + ct) / 2.0, (1.0 - ct) / 2.0, st, e),
        Some(Param::Theta) => (0.0, -st / 2.0, st / 2.0, ct, e),
        Some(Param::Phi) => (0.0, 0.0, 0.0, st, e * Complex::new(0.0, 1.0)),
    };
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = Complex::new(corner / n4, 0.0);
    m[(3, 3)] = Complex::new(corner / n4, 0.0);
    m[(1, 1)] = Complex::new((a2 * s2 + d2 * c2) / n4, 0.0);
    m[(2, 2)] = Complex::new((a2 * c2 + d2 * s2) / n4, 0.0);
    m[(1, 2)] = phase * (2.0 * k.f * k.f * sin / n4);
    m[(2, 1)] = m[(1, 2)].conj();
    m
}
