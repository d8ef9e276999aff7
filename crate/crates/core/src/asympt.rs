//! Main terms `6n⁴/(π²q²)` and their segment/line variants, exact residuals
//! `r(n) = f_q(n) - 6n⁴/(π²q²)`, residual scans, and a log-log slope fit
//! compared against the exponents 3 (unconditional) and 5/2 (under RH).
//!
//! Everything here is descriptive. A slope below 5/2 at desk scale is not
//! evidence for RH, and nothing in this module claims otherwise.

use std::fmt;

use rayon::prelude::*;

use crate::counts::{f_fast, GridQuery};
use crate::numeric::{exact_minus_f64, PI_SQUARED};
use crate::totient::TotientTable;
use crate::{GridError, Result};

/// Exponent of the unconditional polynomial envelope `n³`.
pub const UNCONDITIONAL_EXPONENT: f64 = 3.0;
/// Exponent of the envelope `n^{5/2+ε}` under RH.
pub const RH_EXPONENT: f64 = 2.5;
/// Residuals smaller than this in magnitude are left out of slope fits.
pub const MIN_FIT_RESIDUAL: f64 = 1.0;
pub const MIN_FIT_POINTS: usize = 4;

fn n4(n: u64) -> f64 {
    (n as f64).powi(4)
}

fn bracket_ge(q: u64) -> f64 {
    let q = q as f64;
    1.0 / ((q - 1.0) * (q - 1.0)) - 1.0 / (q * q)
}

fn bracket_eq(q: u64) -> f64 {
    let q = q as f64;
    1.0 / ((q + 1.0) * (q + 1.0)) - 2.0 / (q * q) + 1.0 / ((q - 1.0) * (q - 1.0))
}

fn require_line_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(GridError::InvalidArgument(format!("line point count q={q} must be at least 2")));
    }
    Ok(())
}

/// `6n⁴/(π²q²)`.
pub fn main_term_f(n: u64, q: u64) -> f64 {
    6.0 * n4(n) / (PI_SQUARED * (q as f64) * (q as f64))
}

/// `3n⁴/(π²q²)`, the main term of `s_{q+1}(n)`.
pub fn main_term_segments(n: u64, q: u64) -> f64 {
    3.0 * n4(n) / (PI_SQUARED * (q as f64) * (q as f64))
}

/// `(3n⁴/π²)·[1/(q-1)² - 1/q²]`, the main term of `l_{≥q}(n)`.
pub fn main_term_lines_ge(n: u64, q: u64) -> Result<f64> {
    require_line_q(q)?;
    Ok(3.0 * n4(n) / PI_SQUARED * bracket_ge(q))
}

/// `(3n⁴/π²)·[1/(q+1)² - 2/q² + 1/(q-1)²]`, the main term of `l_q(n)`.
pub fn main_term_lines_eq(n: u64, q: u64) -> Result<f64> {
    require_line_q(q)?;
    Ok(3.0 * n4(n) / PI_SQUARED * bracket_eq(q))
}

/// `f_q(n) - 6n⁴/(π²q²)` with the exact part kept exact until one rounding.
pub fn residual(n: u64, q: u64, table: &TotientTable) -> Result<f64> {
    let exact = f_fast(GridQuery::new(n, q)?, table)?;
    Ok(exact_minus_f64(exact as i128, main_term_f(n, q)))
}

/// One row of a residual scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub n: u64,
    pub q: u64,
    pub exact: u128,
    pub main: f64,
    pub residual: f64,
    /// `|residual| / n^e` for the scan's exponent `e`.
    pub normalized: f64,
}

/// Evaluate one [`ScanRow`] per `n`, in input order.
///
/// Rows are computed in parallel on the current rayon pool; the output does
/// not depend on the number of threads.
pub fn scan_residuals(q: u64, n_values: &[u64], table: &TotientTable, exponent: f64) -> Result<Vec<ScanRow>> {
    if n_values.is_empty() {
        return Err(GridError::InvalidArgument("scan needs at least one n".into()));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GridError::InvalidArgument("scan n values must be strictly increasing".into()));
    }
    n_values
        .par_iter()
        .map(|&n| {
            let exact = f_fast(GridQuery::new(n, q)?, table)?;
            let main = main_term_f(n, q);
            let residual = exact_minus_f64(exact as i128, main);
            let normalized = residual.abs() / (n as f64).powf(exponent);
            Ok(ScanRow { n, q, exact, main, residual, normalized })
        })
        .collect()
}

/// Powers of two times `start`: `start, 2·start, 4·start, … ≤ end`.
pub fn geometric_grid(start: u64, end: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = start;
    while n >= 1 && n <= end {
        out.push(n);
        n = match n.checked_mul(2) {
            Some(v) => v,
            None => break,
        };
    }
    out
}

/// Least-squares line through `(log n, log |residual|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub points_used: usize,
    pub n_range: (u64, u64),
}

/// Fit `log |r| = slope · log n + intercept` over rows with `|r| ≥ 1`.
pub fn fit_log_exponent(rows: &[ScanRow]) -> Result<SlopeFit> {
    let usable: Vec<&ScanRow> = rows
        .iter()
        .filter(|r| r.residual != 0.0 && r.residual.abs() >= MIN_FIT_RESIDUAL)
        .collect();
    if usable.len() < MIN_FIT_POINTS {
        return Err(GridError::InvalidArgument(format!(
            "slope fit needs at least {MIN_FIT_POINTS} rows with |residual| ≥ {MIN_FIT_RESIDUAL}, got {}",
            usable.len()
        )));
    }
    let xs: Vec<f64> = usable.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = usable.iter().map(|r| r.residual.abs().ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(GridError::InvalidArgument("slope fit needs at least two distinct n".into()));
    }
    let slope = sxy / sxx;
    let lo = usable.iter().map(|r| r.n).min().unwrap_or(0);
    let hi = usable.iter().map(|r| r.n).max().unwrap_or(0);
    Ok(SlopeFit { slope, intercept: my - slope * mx, points_used: usable.len(), n_range: (lo, hi) })
}

/// Where a fitted slope falls relative to the reference exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeClass {
    BelowRh,
    Between,
    AboveUnconditional,
}

impl SlopeClass {
    pub fn label(&self) -> &'static str {
        match self {
            SlopeClass::BelowRh => "below RH exponent 5/2",
            SlopeClass::Between => "between 5/2 and 3",
            SlopeClass::AboveUnconditional => "above unconditional envelope: investigate implementation",
        }
    }
}

impl fmt::Display for SlopeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Heuristic classification of a slope fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhReport {
    pub slope: f64,
    pub class: SlopeClass,
}

impl RhReport {
    pub const DISCLAIMER: &'static str = "heuristic diagnostic only; makes no claim about RH";
}

pub fn rh_report(fit: &SlopeFit) -> RhReport {
    let class = if fit.slope < RH_EXPONENT {
        SlopeClass::BelowRh
    } else if fit.slope <= UNCONDITIONAL_EXPONENT {
        SlopeClass::Between
    } else {
        SlopeClass::AboveUnconditional
    };
    RhReport { slope: fit.slope, class }
}
