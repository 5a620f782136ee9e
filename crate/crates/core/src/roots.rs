//! Bracketed scalar root finding: bisection down to a coarse width, then
//! secant steps that fall back to bisection whenever they leave the bracket.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootTolerance {
    /// Step (or bracket width) below which the iteration may stop.
    pub x_tol: f64,
    /// |f| must also be at most this before stopping, unless the bracket
    /// has shrunk to a few ulps.
    pub f_tol: f64,
    pub max_iter: usize,
}

/// Finds a root of `f` in `[a, b]` given `f(a)` and `f(b)` of opposite sign.
pub fn hybrid_root<F>(mut f: F, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64, tol: RootTolerance) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    if fa == 0.0 {
        return Ok(Root { x: a, fx: fa, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, fx: fb, iterations: 0 });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange {
            v_low: a,
            f_low: fa,
            v_high: b,
            f_high: fb,
        });
    }

    let RootTolerance { x_tol, f_tol, max_iter } = tol;
    let coarse = 1e3 * x_tol;
    let mut it = 0;
    while (b - a).abs() > coarse {
        if it >= max_iter {
            return Err(Error::NonConvergence("bracketed root search"));
        }
        it += 1;
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(Root { x: m, fx: fm, iterations: it });
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }

    // secant from the two bracket ends, keeping the bracket valid
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    loop {
        if it >= max_iter {
            return Err(Error::NonConvergence("bracketed root search"));
        }
        it += 1;
        let mut x = x1 - f1 * (x1 - x0) / (f1 - f0);
        let lo = a.min(b);
        let hi = a.max(b);
        if !x.is_finite() || x <= lo || x >= hi {
            x = 0.5 * (a + b);
        }
        let fx = f(x)?;
        let step = (x - x1).abs();
        if fx == 0.0 {
            return Ok(Root { x, fx, iterations: it });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        let width = (b - a).abs();
        let converged = (step <= x_tol || width <= x_tol) && fx.abs() <= f_tol;
        if converged || width <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            return Ok(Root { x, fx, iterations: it });
        }
        x0 = x1;
        f0 = f1;
        x1 = x;
        f1 = fx;
    }
}
