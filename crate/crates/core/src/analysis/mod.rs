//! Analytic optima of the phase QFI and the 1-D sweeps behind the figures.

pub mod figures;
pub mod sweep;

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use crate::channel::{check_r, check_strength, check_vartheta, ChannelParams};
use crate::error::{check_range, Error, Result};
use crate::metrics::qfi_single;
use crate::teleport::{InputParams, Param};

pub use sweep::{run_sweep, MetricSelection, QRule, SweepRow, SweepSpec};

/// Upper end of the default p/q grids; 1 itself is excluded.
pub const STRENGTH_MAX: f64 = 0.999;
pub const DEFAULT_R_POINTS: usize = 201;
pub const DEFAULT_STRENGTH_POINTS: usize = 1001;

/// One full parameter assignment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub vartheta: f64,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl Point {
    pub fn channel(&self) -> Result<ChannelParams> {
        ChannelParams::new(self.vartheta, self.p, self.q, self.r)
    }

    pub fn input(&self) -> Result<InputParams> {
        InputParams::new(self.theta, self.phi)
    }

    pub fn get(&self, param: SweepParam) -> f64 {
        match param {
            SweepParam::Vartheta => self.vartheta,
            SweepParam::P => self.p,
            SweepParam::Q => self.q,
            SweepParam::R => self.r,
            SweepParam::Theta => self.theta,
            SweepParam::Phi => self.phi,
        }
    }

    pub fn with(mut self, param: SweepParam, value: f64) -> Self {
        match param {
            SweepParam::Vartheta => self.vartheta = value,
            SweepParam::P => self.p = value,
            SweepParam::Q => self.q = value,
            SweepParam::R => self.r = value,
            SweepParam::Theta => self.theta = value,
            SweepParam::Phi => self.phi = value,
        }
        self
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(vartheta={}, p={}, q={}, r={}, theta={}, phi={})",
            self.vartheta, self.p, self.q, self.r, self.theta, self.phi
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepParam {
    Vartheta,
    P,
    Q,
    R,
    Theta,
    Phi,
}

impl SweepParam {
    pub const ALL: [SweepParam; 6] = [
        SweepParam::Vartheta,
        SweepParam::P,
        SweepParam::Q,
        SweepParam::R,
        SweepParam::Theta,
        SweepParam::Phi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Vartheta => "vartheta",
            SweepParam::P => "p",
            SweepParam::Q => "q",
            SweepParam::R => "r",
            SweepParam::Theta => "theta",
            SweepParam::Phi => "phi",
        }
    }

    pub fn is_angle(&self) -> bool {
        !matches!(self, SweepParam::P | SweepParam::Q)
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SweepParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown parameter '{s}'"))
    }
}

/// Evenly spaced grid including both end points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidSweep(format!("grid needs at least 2 points, got {count}")));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::InvalidSweep("grid bounds must be finite".into()));
        }
        Ok(Self { start, stop, count })
    }

    pub fn r_default() -> Self {
        Self {
            start: 0.0,
            stop: std::f64::consts::FRAC_PI_4,
            count: DEFAULT_R_POINTS,
        }
    }

    pub fn strength_default() -> Self {
        Self {
            start: 0.0,
            stop: STRENGTH_MAX,
            count: DEFAULT_STRENGTH_POINTS,
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.stop - self.start) / (self.count - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + h * i as f64 })
            .collect()
    }
}

/// Slack on the lower end of `[0, 1)` absorbing rounding in the formulas.
pub const OPTIMUM_ROUNDING: f64 = 1e-12;

/// Analytic optimum, flagged when it falls outside `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Optimum {
    pub value: f64,
    pub in_range: bool,
}

impl Optimum {
    fn new(value: f64) -> Self {
        Self {
            value,
            in_range: (-OPTIMUM_ROUNDING..1.0).contains(&value),
        }
    }
}

fn check_unit_closed(name: &'static str, v: f64) -> Result<f64> {
    check_range(name, "[0, 1]", v, 0.0, 1.0, true, true)
}

/// PM strength maximizing the single-qubit phase QFI at fixed `q`.
pub fn p_opt(q: f64, vartheta: f64, r: f64) -> Result<Optimum> {
    let q = check_unit_closed("q", q)?;
    let vartheta = check_vartheta(vartheta)?;
    let r = check_r(r)?;
    let s2 = (vartheta / 2.0).sin().powi(2);
    let (sr, cr) = r.sin_cos();
    let num = q * cr * cr * s2 - vartheta.cos() * (1.0 - q);
    let den = s2 * (1.0 - q * sr * sr);
    Ok(Optimum::new(num / den))
}

/// PMR strength maximizing the single-qubit phase QFI at fixed `p`.
pub fn q_opt(p: f64, vartheta: f64, r: f64) -> Result<Optimum> {
    let p = check_unit_closed("p", p)?;
    let vartheta = check_vartheta(vartheta)?;
    let r = check_r(r)?;
    let s2 = (vartheta / 2.0).sin().powi(2);
    let c2r = r.cos().powi(2);
    let num = s2 * (p + 2.0 * (1.0 - p) * c2r) - 1.0;
    let den = s2 * (p + (1.0 - p) * c2r) - 1.0;
    Ok(Optimum::new(num / den))
}

/// Reversal strength `q_s = 1 - (1-p) cos^2 r` that cancels the Unruh
/// damping of the Rindler-I excitation.
pub fn q_special(p: f64, r: f64) -> Result<f64> {
    let p = check_strength("p", p)?;
    let r = check_r(r)?;
    Ok(1.0 - (1.0 - p) * r.cos().powi(2))
}

/// First maximizing grid point (ties resolve to the smallest parameter).
pub fn grid_argmax(values: &[f64], grid: &[f64]) -> Result<(f64, f64)> {
    if values.len() != grid.len() || values.len() < 2 {
        return Err(Error::LengthMismatch {
            values: values.len(),
            grid: grid.len(),
        });
    }
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    Ok((grid[best], values[best]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OptimizeFor {
    P,
    Q,
}

impl FromStr for OptimizeFor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "p" => Ok(OptimizeFor::P),
            "q" => Ok(OptimizeFor::Q),
            other => Err(format!("can only optimize p or q, not '{other}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimaReport {
    pub target: OptimizeFor,
    pub vartheta: f64,
    /// The strength held fixed (q when optimizing p and vice versa).
    pub fixed: f64,
    pub r: f64,
    pub analytic: Optimum,
    /// `q_s` at the given p (target q) or at the grid-optimal p (target p).
    pub q_s: f64,
    pub grid_argmax: f64,
    pub grid_max: f64,
    pub grid_spacing: f64,
    pub gap: f64,
}

/// Compares the analytic optimum of the phase QFI (at `theta = pi/2`)
/// with a scan over `grid`.
pub fn optimize(target: OptimizeFor, fixed: f64, vartheta: f64, r: f64, grid: Grid) -> Result<OptimaReport> {
    let analytic = match target {
        OptimizeFor::P => p_opt(fixed, vartheta, r)?,
        OptimizeFor::Q => q_opt(fixed, vartheta, r)?,
    };
    let input = InputParams::new(FRAC_PI_2, 0.0)?;
    let xs = grid.points();
    let values = xs
        .iter()
        .map(|&x| {
            let params = match target {
                OptimizeFor::P => ChannelParams::new(vartheta, x, fixed, r)?,
                OptimizeFor::Q => ChannelParams::new(vartheta, fixed, x, r)?,
            };
            Ok(qfi_single(Param::Phi, &input, &params.coefficients()))
        })
        .collect::<Result<Vec<f64>>>()?;
    let (grid_argmax, grid_max) = grid_argmax(&values, &xs)?;
    let q_s = match target {
        OptimizeFor::P => q_special(grid_argmax, r)?,
        OptimizeFor::Q => q_special(fixed, r)?,
    };
    Ok(OptimaReport {
        target,
        vartheta,
        fixed,
        r,
        analytic,
        q_s,
        grid_argmax,
        grid_max,
        grid_spacing: grid.spacing(),
        gap: (analytic.value - grid_argmax).abs(),
    })
}
