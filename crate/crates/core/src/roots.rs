//! Bracketing root finder shared by threshold searches and scans.

use crate::error::{Error, Result};

/// Bisection on `[lo, hi]` until the bracket is no wider than `tol`, or
/// until `|f(mid)| <= value_tol` when one is given. Returns the midpoint of
/// the final bracket (or the exact root if one is hit).
pub fn bisect<F>(f: F, lo: f64, hi: f64, tol: f64, value_tol: Option<f64>) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    // 200 halvings exhaust any f64 bracket
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if let Some(vt) = value_tol {
            if f_mid.abs() <= vt {
                return Ok(mid);
            }
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
