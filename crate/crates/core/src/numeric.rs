//! Floating-point helpers for "huge exact integer minus real main term".
//!
//! Residuals in this crate are small differences of very large numbers. The
//! integer side is always carried exactly; these helpers make sure the only
//! rounding happens once, at the very end.

use std::f64::consts::PI;

/// π² from the platform's double-precision π.
pub const PI_SQUARED: f64 = PI * PI;

/// `exact - x`, rounded once.
///
/// `x` is split into its integer part (exact as an `i128` for any finite
/// `|x| < 2^127`) and its fractional part, so the large cancellation is done
/// in integer arithmetic.
pub fn exact_minus_f64(exact: i128, x: f64) -> f64 {
    debug_assert!(x.is_finite());
    let whole = x.floor();
    let frac = x - whole;
    let diff = exact - whole as i128;
    diff as f64 - frac
}

/// `exact - coef * k` with the product formed error-free.
///
/// `k` is split as `k_hi + k_lo` with `k_hi = k as f64`; the product
/// `coef * k_hi` is recovered exactly as `p + e` through a fused
/// multiply-add, and `coef * k_lo` is a small correction.
pub fn exact_minus_scaled(exact: i128, coef: f64, k: u128) -> f64 {
    let k_hi = k as f64;
    let k_lo = (k as i128 - k_hi as i128) as f64;
    let p = coef * k_hi;
    let e = coef.mul_add(k_hi, -p);
    exact_minus_f64(exact, p) - e - coef * k_lo
}
