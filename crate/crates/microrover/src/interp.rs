//! Interpolation over small tables of (x, y) knots.
//!
//! All lookups are exact at knots and error outside the knot domain.

use crate::error::{Error, Result};

fn check_domain(quantity: &'static str, knots: &[(f64, f64)], x: f64) -> Result<()> {
    let min = knots.first().map(|k| k.0).unwrap_or(f64::NAN);
    let max = knots.last().map(|k| k.0).unwrap_or(f64::NAN);
    if knots.is_empty() || x < min || x > max {
        return Err(Error::OutOfDomain {
            quantity,
            value: x,
            min,
            max,
        });
    }
    Ok(())
}

/// Locate the bracketing knot pair. Knots must be sorted by x, strictly increasing.
fn bracket(knots: &[(f64, f64)], x: f64) -> ((f64, f64), (f64, f64)) {
    debug_assert!(knots.windows(2).all(|w| w[0].0 < w[1].0), "knots not sorted");
    let i = knots.partition_point(|k| k.0 < x).min(knots.len() - 1).max(1);
    (knots[i - 1], knots[i])
}

/// Linear in x and y.
pub fn linear(quantity: &'static str, knots: &[(f64, f64)], x: f64) -> Result<f64> {
    check_domain(quantity, knots, x)?;
    let ((x0, y0), (x1, y1)) = bracket(knots, x);
    Ok(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
}

/// Linear in ln(x) and ln(y). Requires positive x and y everywhere.
pub fn log_log(quantity: &'static str, knots: &[(f64, f64)], x: f64) -> Result<f64> {
    check_domain(quantity, knots, x)?;
    let ((x0, y0), (x1, y1)) = bracket(knots, x);
    let t = (x.ln() - x0.ln()) / (x1.ln() - x0.ln());
    Ok((y0.ln() + t * (y1.ln() - y0.ln())).exp())
}

/// Linear in ln(x), linear in y.
pub fn semilog_x(quantity: &'static str, knots: &[(f64, f64)], x: f64) -> Result<f64> {
    check_domain(quantity, knots, x)?;
    let ((x0, y0), (x1, y1)) = bracket(knots, x);
    let t = (x.ln() - x0.ln()) / (x1.ln() - x0.ln());
    Ok(y0 + t * (y1 - y0))
}

/// Bisection on a monotone predicate: returns the smallest x in [lo, hi] for
/// which `feasible(x)` holds, to relative tolerance `rel_tol`. The caller must
/// ensure `feasible` is monotone (false below the root, true above).
pub fn bisect_min_feasible<F: Fn(f64) -> bool>(
    lo: f64,
    hi: f64,
    rel_tol: f64,
    feasible: F,
) -> Option<f64> {
    if feasible(lo) {
        return Some(lo);
    }
    if !feasible(hi) {
        return None;
    }
    let (mut a, mut b) = (lo, hi);
    while (b - a) / b > rel_tol {
        let m = 0.5 * (a + b);
        if feasible(m) {
            b = m;
        } else {
            a = m;
        }
    }
    Some(b)
}

/// Least-squares slope of ln(y) against ln(x).
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
