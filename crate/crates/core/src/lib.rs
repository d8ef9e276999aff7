//! Exact and asymptotic counting of lines and line segments through the
//! points of the square grid `{0, ..., n-1}²`.
//!
//! The central quantity is the weighted gcd sum
//!
//! ```text
//! f_q(n) = Σ_{-n < i, j < n, gcd(i, j) = q} (n - |i|)(n - |j|)
//! ```
//!
//! from which the segment counts `s_{q+1}(n)`, the line counts `l_{≥q}(n)`
//! and `l_q(n)`, and the number of threshold functions `t(n)` all follow.
//!
//! * [`totient`] sieves φ and its summatory function Φ together with the
//!   error terms `E_Φ` and `E_R`.
//! * [`counts`] evaluates `f_q(n)` both by its definition and by the
//!   totient-weighted fast formula, and derives the other counts.
//! * [`oracle`] recounts everything geometrically on small grids.
//! * [`asympt`] provides the `6n⁴/(π²q²)` main terms, residual scans and
//!   log-log slope diagnostics.
//! * [`cli`] is the command-line front end.

pub mod asympt;
pub mod cli;
pub mod counts;
mod error;
pub mod format;
pub mod numeric;
pub mod oracle;
pub mod totient;

pub use error::{GridError, Result};
