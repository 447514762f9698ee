//! One-dimensional sweeps with oracle spot checks.

use std::str::FromStr;

use rayon::prelude::*;

use super::{q_special, Grid, Point, SweepParam};
use crate::channel::{resource_state, ChannelParams};
use crate::error::{Error, Result};
use crate::metrics::{
    coherence_l1, concurrence_x, discord_x, evaluate, qfi_eigen, qfi_single_closed, qfi_two_closed,
    MetricsRow, Scenario,
};
use crate::qmat::jozsa_fidelity;
use crate::teleport::{
    closed_form_single, closed_form_single_derivative, closed_form_two, closed_form_two_derivative,
    single_input_state, teleport_single, teleport_two, two_input_state, InputParams, Param,
};

/// Worker count for sweeps; unset or 0 means one per core.
pub const THREADS_ENV: &str = "UNRUH_TELEPORT_THREADS";

pub const DEFAULT_ORACLE_FRACTION: f64 = 1.0 / 16.0;

pub const STATE_TOL: f64 = 1e-12;
pub const QFI_REL_TOL: f64 = 1e-8;
pub const METRIC_TOL: f64 = 1e-10;

/// How `q` is set at each grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QRule {
    Fixed,
    /// `q = q_s(p, r)` recomputed at every point.
    Special,
}

/// Which metric columns a sweep reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricSelection {
    pub prep_probability: bool,
    pub fidelity: bool,
    pub qfi_theta: bool,
    pub qfi_phi: bool,
    pub coherence: bool,
    pub concurrence: bool,
    pub discord: bool,
}

impl MetricSelection {
    pub const NAMES: [&'static str; 7] = [
        "prep_prob",
        "fidelity",
        "qfi_theta",
        "qfi_phi",
        "coherence",
        "concurrence",
        "discord",
    ];

    pub fn all() -> Self {
        Self {
            prep_probability: true,
            fidelity: true,
            qfi_theta: true,
            qfi_phi: true,
            coherence: true,
            concurrence: true,
            discord: true,
        }
    }

    pub fn none() -> Self {
        Self {
            prep_probability: false,
            fidelity: false,
            qfi_theta: false,
            qfi_phi: false,
            coherence: false,
            concurrence: false,
            discord: false,
        }
    }

    pub fn only(names: &[&str]) -> std::result::Result<Self, String> {
        let mut sel = Self::none();
        for name in names {
            sel.set(name)?;
        }
        Ok(sel)
    }

    fn set(&mut self, name: &str) -> std::result::Result<(), String> {
        let flag = match name {
            "prep_prob" => &mut self.prep_probability,
            "fidelity" => &mut self.fidelity,
            "qfi_theta" => &mut self.qfi_theta,
            "qfi_phi" => &mut self.qfi_phi,
            "coherence" => &mut self.coherence,
            "concurrence" => &mut self.concurrence,
            "discord" => &mut self.discord,
            other => return Err(format!("unknown metric '{other}'")),
        };
        *flag = true;
        Ok(())
    }

    /// Drops the columns that are not selected.
    pub fn mask(&self, row: &MetricsRow) -> [Option<f64>; 7] {
        let keep = |on: bool, v: Option<f64>| if on { v } else { None };
        [
            keep(self.prep_probability, Some(row.prep_probability)),
            keep(self.fidelity, Some(row.fidelity)),
            keep(self.qfi_theta, Some(row.qfi_theta)),
            keep(self.qfi_phi, Some(row.qfi_phi)),
            keep(self.coherence, Some(row.coherence)),
            keep(self.concurrence, row.concurrence),
            keep(self.discord, row.discord),
        ]
    }
}

impl Default for MetricSelection {
    fn default() -> Self {
        Self::all()
    }
}

impl FromStr for MetricSelection {
    type Err = String;

    /// Comma-separated metric names, or `all`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.trim() == "all" {
            return Ok(Self::all());
        }
        let names: Vec<&str> = s.split(',').map(str::trim).filter(|n| !n.is_empty()).collect();
        if names.is_empty() {
            return Err("empty metric selection".into());
        }
        Self::only(&names)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub scenario: Scenario,
    /// Values of every parameter; the swept one is overwritten per point.
    pub base: Point,
    pub swept: SweepParam,
    pub grid: Grid,
    pub q_rule: QRule,
    pub metrics: MetricSelection,
    /// Fraction of points that get oracle checks; 0 disables them.
    pub oracle_fraction: f64,
}

impl SweepSpec {
    pub fn new(scenario: Scenario, base: Point, swept: SweepParam, grid: Grid) -> Self {
        Self {
            scenario,
            base,
            swept,
            grid,
            q_rule: QRule::Fixed,
            metrics: MetricSelection::all(),
            oracle_fraction: DEFAULT_ORACLE_FRACTION,
        }
    }

    pub fn with_q_rule(mut self, rule: QRule) -> Self {
        self.q_rule = rule;
        self
    }

    pub fn with_metrics(mut self, metrics: MetricSelection) -> Self {
        self.metrics = metrics;
        self
    }

    pub fn with_oracle_fraction(mut self, fraction: f64) -> Self {
        self.oracle_fraction = fraction;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.count < 2 {
            return Err(Error::InvalidSweep(format!(
                "grid needs at least 2 points, got {}",
                self.grid.count
            )));
        }
        if self.q_rule == QRule::Special && self.swept == SweepParam::Q {
            return Err(Error::InvalidSweep("q cannot be swept when it is tied to q_s".into()));
        }
        if !(0.0..=1.0).contains(&self.oracle_fraction) {
            return Err(Error::InvalidSweep(format!(
                "oracle fraction must be in [0, 1] (got {})",
                self.oracle_fraction
            )));
        }
        Ok(())
    }

    /// Every `stride`-th point (starting with the first) is oracle-checked.
    pub fn oracle_stride(&self) -> Option<usize> {
        if self.oracle_fraction <= 0.0 {
            None
        } else {
            Some((1.0 / self.oracle_fraction).round().max(1.0) as usize)
        }
    }

    /// Parameter points in grid order.
    pub fn points(&self) -> Result<Vec<Point>> {
        self.grid
            .points()
            .into_iter()
            .map(|x| {
                let pt = self.base.with(self.swept, x);
                match self.q_rule {
                    QRule::Fixed => Ok(pt),
                    QRule::Special => Ok(Point {
                        q: q_special(pt.p, pt.r)?,
                        ..pt
                    }),
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub scenario: Scenario,
    pub point: Point,
    pub metrics: MetricsRow,
}

/// Runs `f` on a pool sized by [`THREADS_ENV`].
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let points = spec.points()?;
    let stride = spec.oracle_stride();
    with_pool(|| {
        points
            .par_iter()
            .enumerate()
            .map(|(i, pt)| {
                let params = pt.channel()?;
                let input = pt.input()?;
                let metrics = evaluate(spec.scenario, &params, &input)?;
                if stride.is_some_and(|s| i % s == 0) {
                    oracle_check(spec.scenario, pt, &params, &input, &metrics)?;
                }
                Ok(SweepRow {
                    scenario: spec.scenario,
                    point: *pt,
                    metrics,
                })
            })
            .collect()
    })
}

fn compare(check: &'static str, point: &Point, error: f64, tolerance: f64) -> Result<()> {
    if error <= tolerance {
        Ok(())
    } else {
        Err(Error::OracleMismatch {
            check,
            point: point.to_string(),
            error,
            tolerance,
        })
    }
}

/// Recomputes `metrics` through the simulated pipeline and the generic
/// matrix routines.
pub fn oracle_check(
    scenario: Scenario,
    point: &Point,
    params: &ChannelParams,
    input: &InputParams,
    metrics: &MetricsRow,
) -> Result<()> {
    let k = params.coefficients();
    let prepared = resource_state(params)?;
    let closed = crate::channel::resource_closed_form(params);
    compare(
        "resource state",
        point,
        prepared.resource.matrix().max_abs_diff(closed.matrix()),
        STATE_TOL,
    )?;
    compare(
        "preparation probability",
        point,
        (prepared.prep_probability - metrics.prep_probability).abs(),
        STATE_TOL,
    )?;

    let (psi, out, expected) = match scenario {
        Scenario::Single => {
            let psi = single_input_state(input).density();
            let out = teleport_single(&psi, &prepared.resource)?;
            (psi, out, closed_form_single(input, &k))
        }
        Scenario::Two => {
            let psi = two_input_state(input).density();
            let out = teleport_two(&psi, &prepared.resource)?;
            (psi, out, closed_form_two(input, &k))
        }
    };
    compare("output state", point, out.matrix().max_abs_diff(expected.matrix()), STATE_TOL)?;

    for (which, value) in [(Param::Theta, metrics.qfi_theta), (Param::Phi, metrics.qfi_phi)] {
        let (closed_ok, drho) = match scenario {
            Scenario::Single => (
                qfi_single_closed(which, input, &k).is_ok(),
                closed_form_single_derivative(input, &k, which),
            ),
            Scenario::Two => (
                qfi_two_closed(which, input, &k).is_ok(),
                closed_form_two_derivative(input, &k, which),
            ),
        };
        if !closed_ok {
            continue;
        }
        let spectral = qfi_eigen(&expected, &drho)?;
        let check = match which {
            Param::Theta => "qfi_theta",
            Param::Phi => "qfi_phi",
        };
        compare(check, point, (spectral - value).abs(), QFI_REL_TOL * value.abs().max(1.0))?;
    }

    compare("coherence", point, (coherence_l1(&out) - metrics.coherence).abs(), METRIC_TOL)?;
    compare(
        "fidelity",
        point,
        (jozsa_fidelity(&psi, &out)? - metrics.fidelity).abs(),
        METRIC_TOL,
    )?;
    if let Some(c) = metrics.concurrence {
        compare("concurrence", point, (concurrence_x(&out)? - c).abs(), METRIC_TOL)?;
    }
    if let Some(d) = metrics.discord {
        compare("discord", point, (discord_x(&out)? - d).abs(), METRIC_TOL)?;
    }
    Ok(())
}
