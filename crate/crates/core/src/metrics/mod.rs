//! Figures of merit for the teleported states.

pub mod qfi;

use std::fmt;
use std::str::FromStr;

use crate::channel::{ChannelParams, Coefficients};
use crate::error::{Error, Result};
use crate::qmat::{eig_hermitian, ComplexMatrix, DensityMatrix};
use crate::teleport::{closed_form_two, InputParams, Param};

pub use qfi::{
    bloch_components, qfi_block_diagonal, qfi_bloch, qfi_eigen, qfi_single, qfi_single_closed,
    qfi_two, qfi_two_closed, BlochVector,
};

/// Off-pattern entries of an X state must be below this.
pub const X_TYPE_TOL: f64 = 1e-10;

/// Index pairs that make up the two 2x2 blocks of an X state.
pub(crate) const X_BLOCKS: [[usize; 2]; 2] = [[0, 3], [1, 2]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scenario {
    Single,
    Two,
}

impl Scenario {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scenario::Single => "single",
            Scenario::Two => "two",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "single" => Ok(Scenario::Single),
            "two" => Ok(Scenario::Two),
            other => Err(format!("unknown scenario '{other}' (expected single or two)")),
        }
    }
}

pub(crate) fn check_x_type(m: &ComplexMatrix) -> Result<()> {
    if m.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            found: m.dim(),
        });
    }
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            if i != j && i + j != 3 {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    if worst > X_TYPE_TOL {
        return Err(Error::NotXType { magnitude: worst });
    }
    Ok(())
}

/// Sum of off-diagonal magnitudes in the computational basis.
pub fn coherence_l1(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let n = m.dim();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                total += m[(i, j)].norm();
            }
        }
    }
    total
}

/// l1 coherence of the single-qubit output in closed form.
pub fn coherence_single_closed(params: &ChannelParams, input: &InputParams) -> f64 {
    let k = params.coefficients();
    (params.vartheta().sin() * ((1.0 - params.p()) * (1.0 - params.q())).sqrt() * params.r().cos()
        * input.theta().sin()
        / k.n2)
        .abs()
}

/// l1 coherence of the two-qubit output in closed form.
pub fn coherence_two_closed(input: &InputParams, k: &Coefficients) -> f64 {
    4.0 * (k.f * k.f * input.theta().sin() / (k.n2 * k.n2)).abs()
}

/// `C = 2 max(0, |rho_03| - sqrt(rho_11 rho_22), |rho_12| - sqrt(rho_00 rho_33))`
pub fn concurrence_x(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    check_x_type(m)?;
    let d = |i: usize| m[(i, i)].re.max(0.0);
    let c1 = m[(0, 3)].norm() - (d(1) * d(2)).sqrt();
    let c2 = m[(1, 2)].norm() - (d(0) * d(3)).sqrt();
    Ok(2.0 * c1.max(c2).max(0.0))
}

/// Concurrence of the two-qubit output in closed form.
pub fn concurrence_two_closed(input: &InputParams, k: &Coefficients) -> f64 {
    let n4 = k.n2 * k.n2;
    let c = 2.0 * (k.f * k.f * input.theta().sin() / n4).abs() - (k.a * k.d / n4).abs();
    2.0 * c.max(0.0)
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    let h = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    h(x) + h(1.0 - x)
}

fn plogp(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Quantum discord of an X state (measurement on the second qubit):
/// `min(Q1, Q2)` with `Q_j = H(rho_00 + rho_22) + sum_i lambda_i log2 lambda_i + D_j`.
pub fn discord_x(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    check_x_type(m)?;
    let d: Vec<f64> = (0..4).map(|i| m[(i, i)].re.max(0.0)).collect();
    let joint: f64 = eig_hermitian(m)?.values.iter().map(|&l| plogp(l.max(0.0))).sum();
    let hb = binary_entropy(d[0] + d[2]);
    let z = 1.0 - 2.0 * (d[2] + d[3]);
    let t = m[(0, 3)].norm() + m[(1, 2)].norm();
    let d1 = binary_entropy((1.0 + (z * z + 4.0 * t * t).sqrt()) / 2.0);
    let d2 = -d.iter().map(|&x| plogp(x)).sum::<f64>() - hb;
    let q1 = hb + joint + d1;
    let q2 = hb + joint + d2;
    Ok(q1.min(q2).max(0.0))
}

/// `<psi_in|rho_out|psi_in>` for the closed-form outputs, expanded directly.
pub fn fidelity_closed(scenario: Scenario, input: &InputParams, k: &Coefficients) -> f64 {
    let s2 = input.theta().sin().powi(2);
    match scenario {
        Scenario::Single => (k.a - 0.5 * (k.a - k.d) * s2 + k.f * s2) / k.n2,
        Scenario::Two => {
            let (a2, d2) = (k.a * k.a, k.d * k.d);
            (a2 - 0.5 * (a2 - d2) * s2 + 2.0 * k.f * k.f * s2) / (k.n2 * k.n2)
        }
    }
}

/// Fidelity expressions in the form
/// `[((A-D)/2 + F cos 2phi) sin^2 theta + D] / N2` (single) and
/// `[((A^2-D^2)/4 + F^2 cos 2phi) 2 sin^2 theta + D^2] / N2^2` (two).
/// They coincide with [`fidelity_closed`] only for `theta = pi/2` and
/// `phi` in `{0, pi}`.
pub fn fidelity_printed(scenario: Scenario, input: &InputParams, k: &Coefficients) -> f64 {
    let s2 = input.theta().sin().powi(2);
    let c2p = (2.0 * input.phi()).cos();
    match scenario {
        Scenario::Single => (((k.a - k.d) / 2.0 + k.f * c2p) * s2 + k.d) / k.n2,
        Scenario::Two => {
            let (a2, d2) = (k.a * k.a, k.d * k.d);
            (((a2 - d2) / 4.0 + k.f * k.f * c2p) * 2.0 * s2 + d2) / (k.n2 * k.n2)
        }
    }
}

/// All metrics at one parameter point. Correlation measures are only
/// defined for the two-qubit scenario.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricsRow {
    pub prep_probability: f64,
    pub fidelity: f64,
    pub qfi_theta: f64,
    pub qfi_phi: f64,
    pub coherence: f64,
    pub concurrence: Option<f64>,
    pub discord: Option<f64>,
}

/// Evaluates every metric through the closed forms.
pub fn evaluate(scenario: Scenario, params: &ChannelParams, input: &InputParams) -> Result<MetricsRow> {
    let k = params.coefficients();
    let prep_probability = crate::channel::prep_probability(params);
    let fidelity = fidelity_closed(scenario, input, &k);
    Ok(match scenario {
        Scenario::Single => MetricsRow {
            prep_probability,
            fidelity,
            qfi_theta: qfi_single(Param::Theta, input, &k),
            qfi_phi: qfi_single(Param::Phi, input, &k),
            coherence: coherence_single_closed(params, input),
            concurrence: None,
            discord: None,
        },
        Scenario::Two => {
            let out = closed_form_two(input, &k);
            MetricsRow {
                prep_probability,
                fidelity,
                qfi_theta: qfi_two(Param::Theta, input, &k),
                qfi_phi: qfi_two(Param::Phi, input, &k),
                coherence: coherence_two_closed(input, &k),
                concurrence: Some(concurrence_two_closed(input, &k)),
                discord: Some(discord_x(&out)?),
            }
        }
    })
}
