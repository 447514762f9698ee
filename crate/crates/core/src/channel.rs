//! Resource-state preparation: Alice and Rob share an entangled pair, Rob
//! applies a partial measurement (PM), accelerates (the Unruh map splits his
//! mode into Rindler regions I and II), applies the reversal (PMR) in region
//! I, and region II is traced out.
//!
//! Subsystem order after [`unruh_expand`] is always `(A, I, II)`.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{check_range, Result};
use crate::qmat::{
    partial_trace, pauli, Complex, ComplexMatrix, DensityMatrix, PureState, ZERO,
};

pub const ALICE: usize = 0;
pub const ROB: usize = 1;
pub const REGION_I: usize = 1;
pub const REGION_II: usize = 2;

/// The four channel knobs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    vartheta: f64,
    p: f64,
    q: f64,
    r: f64,
}

impl ChannelParams {
    pub fn new(vartheta: f64, p: f64, q: f64, r: f64) -> Result<Self> {
        Ok(Self {
            vartheta: check_vartheta(vartheta)?,
            p: check_strength("p", p)?,
            q: check_strength("q", q)?,
            r: check_r(r)?,
        })
    }

    pub fn vartheta(&self) -> f64 {
        self.vartheta
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn coefficients(&self) -> Coefficients {
        Coefficients::from_params(self)
    }
}

pub(crate) fn check_vartheta(v: f64) -> Result<f64> {
    check_range("vartheta", "(0, pi)", v, 0.0, PI, false, false)
}

pub(crate) fn check_strength(name: &'static str, v: f64) -> Result<f64> {
    check_range(name, "[0, 1)", v, 0.0, 1.0, true, false)
}

pub(crate) fn check_r(v: f64) -> Result<f64> {
    check_range("r", "[0, pi/4]", v, 0.0, FRAC_PI_4, true, true)
}

/// The `A`, `D`, `F` coefficients of the teleported states together with the
/// normalizer `N2 = A + D`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficients {
    pub a: f64,
    pub d: f64,
    pub f: f64,
    pub n2: f64,
}

impl Coefficients {
    pub fn from_params(params: &ChannelParams) -> Self {
        let (sh, ch) = (params.vartheta / 2.0).sin_cos();
        let (s2, c2) = (sh * sh, ch * ch);
        let pb = 1.0 - params.p;
        let qb = 1.0 - params.q;
        let (sr, cr) = params.r.sin_cos();
        let a = s2 * pb * cr * cr + c2 * qb;
        let d = s2 * pb * qb * sr * sr;
        let f = sh * ch * (pb * qb).sqrt() * cr;
        let n2 = s2 * pb * cr * cr + s2 * pb * qb * sr * sr + c2 * qb;
        Self { a, d, f, n2 }
    }
}

#[derive(Clone, Debug)]
pub struct ChannelOutput {
    /// Two-qubit state of Alice and Rob's region-I mode.
    pub resource: DensityMatrix,
    pub prep_probability: f64,
    pub coeffs: Coefficients,
}

/// `sin(vartheta/2)|00> + cos(vartheta/2)|11>`
pub fn initial_state(vartheta: f64) -> Result<PureState> {
    let v = check_vartheta(vartheta)?;
    let (s, c) = (v / 2.0).sin_cos();
    PureState::new(
        vec![Complex::new(s, 0.0), ZERO, ZERO, Complex::new(c, 0.0)],
        vec![2, 2],
    )
}

/// `M1(p) = sqrt(1-p)|0><0| + |1><1|`
pub fn pm_operator(p: f64) -> ComplexMatrix {
    ComplexMatrix::diag_real(&[(1.0 - p).sqrt(), 1.0])
}

/// Reversal as a measurement operator: `X M1(q) X = |0><0| + sqrt(1-q)|1><1|`.
pub fn pmr_operator(q: f64) -> ComplexMatrix {
    let x = pauli(1);
    &(&x * &pm_operator(q)) * &x
}

/// Applies the reversible PM branch on `target` and renormalizes. Returns the
/// post-selected state and its success probability `<psi|M1^dagger M1|psi>`.
pub fn apply_pm(state: &PureState, p: f64, target: usize) -> Result<(PureState, f64)> {
    let p = check_strength("p", p)?;
    post_select(state, &pm_operator(p), target)
}

/// Applies the PMR on `target` and renormalizes; see [`pmr_operator`].
pub fn apply_pmr(state: &PureState, q: f64, target: usize) -> Result<(PureState, f64)> {
    let q = check_strength("q", q)?;
    post_select(state, &pmr_operator(q), target)
}

fn post_select(state: &PureState, op: &ComplexMatrix, target: usize) -> Result<(PureState, f64)> {
    let amps = state.apply_local(op, target)?;
    PureState::normalized(amps, state.dims().to_vec())
}

/// Expands Rob's Minkowski qubit into the Rindler pair (I, II):
/// `|0> -> cos r |0>|0> + sin r |1>|1>`, `|1> -> |1>|0>`. Region I replaces
/// `target` in place and region II is appended as the last subsystem.
pub fn unruh_expand(state: &PureState, r: f64, target: usize) -> Result<PureState> {
    let r = check_r(r)?;
    let n = state.num_subsystems();
    if target >= n || state.dims()[target] != 2 {
        return Err(crate::Error::InvalidSubsystem {
            index: target,
            count: n,
        });
    }
    let (sr, cr) = r.sin_cos();
    let stride: usize = state.dims()[target + 1..].iter().product();
    let amps = state.amplitudes();
    let mut out = vec![ZERO; amps.len() * 2];
    for (idx, &amp) in amps.iter().enumerate() {
        let bit = (idx / stride) % 2;
        // region II is appended as least significant qubit
        if bit == 0 {
            out[2 * idx] += amp * cr;
            out[2 * (idx + stride) + 1] += amp * sr;
        } else {
            out[2 * idx] += amp;
        }
    }
    let mut dims = state.dims().to_vec();
    dims.push(2);
    // isometry; renormalize only to absorb rounding
    Ok(PureState::normalized(out, dims)?.0)
}

/// Full preparation pipeline and its success probability.
pub fn resource_state(params: &ChannelParams) -> Result<ChannelOutput> {
    let psi0 = initial_state(params.vartheta)?;
    let (psi1, p1) = apply_pm(&psi0, params.p, ROB)?;
    let psi2 = unruh_expand(&psi1, params.r, ROB)?;
    let (psi3, p2) = apply_pmr(&psi2, params.q, REGION_I)?;
    let resource = partial_trace(&psi3.density(), &[ALICE, REGION_I])?;
    Ok(ChannelOutput {
        resource,
        prep_probability: p1 * p2,
        coeffs: params.coefficients(),
    })
}

/// Closed-form resource matrix (X-shaped; only `(0,0)`, `(1,1)`, `(3,3)` and
/// the `(0,3)` corner are populated).
pub fn resource_closed_form(params: &ChannelParams) -> DensityMatrix {
    let (sh, ch) = (params.vartheta / 2.0).sin_cos();
    let pb = 1.0 - params.p;
    let qb = 1.0 - params.q;
    let (sr, cr) = params.r.sin_cos();
    let n2 = params.coefficients().n2;
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = Complex::new(sh * sh * pb * cr * cr / n2, 0.0);
    m[(1, 1)] = Complex::new(sh * sh * pb * qb * sr * sr / n2, 0.0);
    m[(3, 3)] = Complex::new(ch * ch * qb / n2, 0.0);
    let corner = Complex::new(sh * ch * (pb * qb).sqrt() * cr / n2, 0.0);
    m[(0, 3)] = corner;
    m[(3, 0)] = corner;
    DensityMatrix::from_trusted(m, vec![2, 2])
}

/// PM success probability `P1`.
pub fn pm_probability(params: &ChannelParams) -> f64 {
    let (sh, ch) = (params.vartheta / 2.0).sin_cos();
    sh * sh * (1.0 - params.p) + ch * ch
}

/// PMR success probability `P2`, conditional on PM success.
pub fn pmr_probability(params: &ChannelParams) -> f64 {
    params.coefficients().n2 / pm_probability(params)
}

/// Joint preparation probability `P1 P2`, arranged as
/// `1 - p sin^2(vartheta/2) - q (...)` so that `p = q = 0` gives exactly 1.
pub fn prep_probability(params: &ChannelParams) -> f64 {
    let (sh, ch) = (params.vartheta / 2.0).sin_cos();
    let sr = params.r.sin();
    let pb = 1.0 - params.p;
    1.0 - params.p * sh * sh - params.q * (sh * sh * pb * sr * sr + ch * ch)
}

/// Mixing angle from proper acceleration `a` and mode frequency `omega`:
/// `cos r = (1 + exp(-2 pi omega / a))^(-1/2)`.
pub fn acceleration_to_r(a: f64, omega: f64) -> Result<f64> {
    check_range("a", "(0, inf)", a, 0.0, f64::INFINITY, false, false)?;
    check_range("omega", "(0, inf)", omega, 0.0, f64::INFINITY, false, false)?;
    let e = (-2.0 * PI * omega / a).exp();
    Ok((1.0 + e).sqrt().recip().acos())
}
