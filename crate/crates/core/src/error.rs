use thiserror::Error;

/// Errors produced by the numerics and the sweep driver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be in {range} (got {value})")]
    OutOfRange {
        name: &'static str,
        range: &'static str,
        value: f64,
    },

    #[error("subsystem index {index} does not exist (state has {count} subsystems)")]
    InvalidSubsystem { index: usize, count: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max |a - a^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not X-shaped (off-pattern magnitude {magnitude:e})")]
    NotXType { magnitude: f64 },

    #[error("closed form is degenerate (denominator {denominator:e})")]
    Degenerate { denominator: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("length mismatch: {values} values for {grid} grid points")]
    LengthMismatch { values: usize, grid: usize },

    #[error("unknown figure {0} (expected 3..=13)")]
    UnknownFigure(u32),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("oracle mismatch in {check} at {point}: error {error:e} exceeds {tolerance:e}")]
    OracleMismatch {
        check: &'static str,
        point: String,
        error: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks `lo <= value < hi` (or `<= hi` when `closed_hi`).
pub(crate) fn check_range(
    name: &'static str,
    range: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    closed_lo: bool,
    closed_hi: bool,
) -> Result<f64> {
    let lo_ok = if closed_lo { value >= lo } else { value > lo };
    let hi_ok = if closed_hi { value <= hi } else { value < hi };
    if value.is_finite() && lo_ok && hi_ok {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, range, value })
    }
}
