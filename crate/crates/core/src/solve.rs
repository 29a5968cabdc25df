//! Bracketed bisection for the monotone distance inversions.

use crate::error::Result;

/// Iteration cap. Bisection also stops once the interval can no longer be
/// split in f64.
const MAX_ITERATIONS: usize = 200;

/// Finds the root of `f` on `[lo, hi]` to an interval width of `tol`.
///
/// `f(lo)` and `f(hi)` must have opposite signs (or one of them be zero);
/// the caller is responsible for checking the bracket. Returns the midpoint
/// of the final interval.
pub(crate) fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    for _ in 0..MAX_ITERATIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
