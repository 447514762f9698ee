//! CSV rendering for sweep rows and optima reports.

use std::io::Write;

use crate::analysis::{MetricSelection, OptimaReport, OptimizeFor, SweepRow};

pub const SWEEP_HEADER: [&str; 14] = [
    "scenario",
    "vartheta",
    "p",
    "q",
    "r",
    "theta",
    "phi",
    "prep_prob",
    "fidelity",
    "qfi_theta",
    "qfi_phi",
    "coherence",
    "concurrence",
    "discord",
];

pub const OPTIMA_HEADER: [&str; 10] = [
    "target",
    "vartheta",
    "fixed",
    "r",
    "analytic",
    "in_range",
    "q_s",
    "grid_argmax",
    "grid_max",
    "gap",
];

/// 17 significant digits in scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

pub fn sweep_record(row: &SweepRow, selection: &MetricSelection) -> Vec<String> {
    let pt = &row.point;
    let mut rec = vec![row.scenario.to_string()];
    rec.extend([pt.vartheta, pt.p, pt.q, pt.r, pt.theta, pt.phi].map(format_number));
    rec.extend(selection.mask(&row.metrics).map(optional));
    rec
}

pub fn optima_record(rep: &OptimaReport) -> Vec<String> {
    let target = match rep.target {
        OptimizeFor::P => "p",
        OptimizeFor::Q => "q",
    };
    vec![
        target.to_string(),
        format_number(rep.vartheta),
        format_number(rep.fixed),
        format_number(rep.r),
        format_number(rep.analytic.value),
        rep.analytic.in_range.to_string(),
        format_number(rep.q_s),
        format_number(rep.grid_argmax),
        format_number(rep.grid_max),
        format_number(rep.gap),
    ]
}

fn write_records<W: Write>(w: W, header: &[&str], records: impl IntoIterator<Item = Vec<String>>) -> csv::Result<()> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    out.write_record(header)?;
    for rec in records {
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_sweep<W: Write>(w: W, rows: &[SweepRow], selection: &MetricSelection) -> csv::Result<()> {
    write_records(w, &SWEEP_HEADER, rows.iter().map(|r| sweep_record(r, selection)))
}

pub fn write_optima<W: Write>(w: W, reports: &[OptimaReport]) -> csv::Result<()> {
    write_records(w, &OPTIMA_HEADER, reports.iter().map(optima_record))
}
