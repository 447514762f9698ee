//! Parameter specs for the published figures, one curve per CSV file.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::{optimize, Grid, OptimaReport, OptimizeFor, Point, QRule, SweepParam, SweepSpec};
use crate::error::{Error, Result};
use crate::metrics::Scenario;

pub const FIGURE_IDS: [u32; 11] = [3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13];

/// Fixed acceleration used by the strength sweeps.
pub const FIXED_R: f64 = 0.6;

const VARTHETAS: [(&str, f64); 3] = [("vt-pi4", FRAC_PI_4), ("vt-pi2", FRAC_PI_2), ("vt-3pi4", 3.0 * FRAC_PI_4)];

#[derive(Clone, Debug, PartialEq)]
pub struct OptimaCurve {
    pub target: OptimizeFor,
    pub fixed: f64,
    pub vartheta: f64,
    pub r_grid: Grid,
    pub strength_grid: Grid,
}

impl OptimaCurve {
    pub fn run(&self) -> Result<Vec<OptimaReport>> {
        self.r_grid
            .points()
            .into_iter()
            .map(|r| optimize(self.target, self.fixed, self.vartheta, r, self.strength_grid))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveKind {
    Sweep(SweepSpec),
    Optima(OptimaCurve),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureCurve {
    pub label: String,
    pub kind: CurveKind,
}

impl FigureCurve {
    fn sweep(label: impl Into<String>, spec: SweepSpec) -> Self {
        Self {
            label: label.into(),
            kind: CurveKind::Sweep(spec),
        }
    }

    pub fn file_name(&self, id: u32) -> String {
        format!("fig{id}_{}.csv", self.label)
    }
}

fn point(vartheta: f64, p: f64, q: f64, r: f64) -> Point {
    Point {
        vartheta,
        p,
        q,
        r,
        theta: FRAC_PI_2,
        phi: 0.0,
    }
}

fn vs_r(scenario: Scenario, vartheta: f64, p: f64, q: f64) -> SweepSpec {
    SweepSpec::new(scenario, point(vartheta, p, q, 0.0), SweepParam::R, Grid::r_default())
}

fn vs_strength(scenario: Scenario, swept: SweepParam, vartheta: f64, p: f64, q: f64) -> SweepSpec {
    SweepSpec::new(scenario, point(vartheta, p, q, FIXED_R), swept, Grid::strength_default())
}

/// Equal-strength curves plus `q = q_s` curves, for each channel angle.
fn protection_vs_r(scenario: Scenario, qs_strengths: &[f64]) -> Vec<FigureCurve> {
    let mut curves = Vec::new();
    for (vt_label, vt) in VARTHETAS {
        for pq in [0.0, 0.5, 0.9] {
            curves.push(FigureCurve::sweep(format!("{vt_label}_pq{pq}"), vs_r(scenario, vt, pq, pq)));
        }
        for &p in qs_strengths {
            curves.push(FigureCurve::sweep(
                format!("{vt_label}_qs_p{p}"),
                vs_r(scenario, vt, p, 0.0).with_q_rule(QRule::Special),
            ));
        }
    }
    curves
}

/// Single- and two-qubit curves side by side at `vartheta = pi/2`.
fn scenario_comparison() -> Vec<FigureCurve> {
    let mut curves = Vec::new();
    for scenario in [Scenario::Single, Scenario::Two] {
        for pq in [0.0, 0.5, 0.9] {
            curves.push(FigureCurve::sweep(
                format!("{scenario}_pq{pq}"),
                vs_r(scenario, FRAC_PI_2, pq, pq),
            ));
        }
    }
    curves
}

/// Curves making up figure `id`.
pub fn figure_curves(id: u32) -> Result<Vec<FigureCurve>> {
    let single = Scenario::Single;
    let curves = match id {
        3 => [(0.0, 0.0), (0.4, 0.8), (0.8, 0.4), (0.8, 0.8)]
            .into_iter()
            .map(|(p, q)| FigureCurve::sweep(format!("p{p}_q{q}"), vs_r(single, FRAC_PI_2, p, q)))
            .collect(),
        4 => {
            let mut curves = Vec::new();
            for (vt_label, vt) in VARTHETAS {
                for p in [0.0, 0.5, 0.9] {
                    curves.push(FigureCurve::sweep(format!("a_{vt_label}_p{p}"), vs_r(single, vt, p, 0.0)));
                }
                for q in [0.5, 0.9] {
                    curves.push(FigureCurve::sweep(format!("b_{vt_label}_q{q}"), vs_r(single, vt, 0.0, q)));
                }
                for q in [0.0, 0.5, 0.9] {
                    curves.push(FigureCurve::sweep(
                        format!("c_{vt_label}_q{q}"),
                        vs_strength(single, SweepParam::P, vt, 0.0, q),
                    ));
                }
            }
            curves
        }
        5 => {
            let mut curves = Vec::new();
            for q in [0.0, 0.3, 0.6, 0.9] {
                curves.push(FigureCurve::sweep(
                    format!("a_q{q}"),
                    vs_strength(single, SweepParam::P, 3.0 * FRAC_PI_4, 0.0, q),
                ));
            }
            for p in [0.0, 0.3, 0.6, 0.9] {
                curves.push(FigureCurve::sweep(
                    format!("b_p{p}"),
                    vs_strength(single, SweepParam::Q, FRAC_PI_4, p, 0.0),
                ));
            }
            curves
        }
        6 => vec![
            FigureCurve {
                label: "a_p-opt".into(),
                kind: CurveKind::Optima(OptimaCurve {
                    target: OptimizeFor::P,
                    fixed: 0.6,
                    vartheta: 3.0 * FRAC_PI_4,
                    r_grid: Grid::r_default(),
                    strength_grid: Grid::strength_default(),
                }),
            },
            FigureCurve {
                label: "b_q-opt".into(),
                kind: CurveKind::Optima(OptimaCurve {
                    target: OptimizeFor::Q,
                    fixed: 0.6,
                    vartheta: FRAC_PI_4,
                    r_grid: Grid::r_default(),
                    strength_grid: Grid::strength_default(),
                }),
            },
        ],
        7 => protection_vs_r(single, &[0.9, 0.999]),
        8 => vec![
            FigureCurve::sweep("a", vs_strength(single, SweepParam::P, 3.0 * FRAC_PI_4, 0.0, 0.0)),
            FigureCurve::sweep("b", vs_strength(single, SweepParam::P, 3.0 * FRAC_PI_4, 0.0, 0.6)),
            FigureCurve::sweep("c", vs_strength(single, SweepParam::Q, FRAC_PI_4, 0.0, 0.0)),
            FigureCurve::sweep("d", vs_strength(single, SweepParam::Q, FRAC_PI_4, 0.6, 0.0)),
        ],
        9 | 12 => protection_vs_r(Scenario::Two, &[0.0]),
        10 | 11 | 13 => scenario_comparison(),
        other => return Err(Error::UnknownFigure(other)),
    };
    Ok(curves)
}
