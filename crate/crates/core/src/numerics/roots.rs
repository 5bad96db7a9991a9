use crate::error::{Error, Result};

/// Outcome of a root search; `root` is `f64` in 1-D and `[f64; 2]` in 2-D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult<T> {
    pub root: T,
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

const MAX_BRACKET_ITERATIONS: usize = 400;

/// Bracketing root finder on `[lo, hi]`: regula falsi steps, falling back to
/// bisection whenever the same endpoint is retained twice in a row.
///
/// Stops when `|fn(root)| <= tol` or the bracket is narrower than `tol`.
pub fn find_root_1d<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<RootResult<f64>>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo * f_hi > 0.0 {
        return Err(Error::NotBracketed { lo, hi, f_lo, f_hi });
    }
    if f_lo == 0.0 {
        return Ok(RootResult { root: lo, residual_norm: 0.0, iterations: 0, converged: true });
    }
    if f_hi == 0.0 {
        return Ok(RootResult { root: hi, residual_norm: 0.0, iterations: 0, converged: true });
    }

    // +1 when the low end moved last, -1 for the high end.
    let mut last_side = 0i8;
    let mut repeats = 0;
    let mut best = if f_lo.abs() < f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };

    for iteration in 1..=MAX_BRACKET_ITERATIONS {
        let mut x = hi - f_hi * (hi - lo) / (f_hi - f_lo);
        if repeats >= 2 || !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
            repeats = 0;
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFiniteIntegrand { x });
        }
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx.abs() <= tol {
            return Ok(RootResult { root: x, residual_norm: fx.abs(), iterations: iteration, converged: true });
        }

        let side = if (fx < 0.0) == (f_lo < 0.0) {
            lo = x;
            f_lo = fx;
            1
        } else {
            hi = x;
            f_hi = fx;
            -1
        };
        repeats = if side == last_side { repeats + 1 } else { 0 };
        last_side = side;

        if hi - lo <= tol {
            return Ok(RootResult {
                root: best.0,
                residual_norm: best.1.abs(),
                iterations: iteration,
                converged: true,
            });
        }
    }

    Ok(RootResult {
        root: best.0,
        residual_norm: best.1.abs(),
        iterations: MAX_BRACKET_ITERATIONS,
        converged: false,
    })
}

fn inf_norm(v: [f64; 2]) -> f64 {
    v[0].abs().max(v[1].abs())
}

fn finite(v: [f64; 2]) -> bool {
    v[0].is_finite() && v[1].is_finite()
}

/// Damped Newton iteration for a 2×2 nonlinear system.
///
/// The Jacobian is formed by central differences with step
/// `eps^(1/3) * max(1, |x_i|)`. Each Newton step is halved up to 20 times
/// until the residual ∞-norm decreases; a residual that evaluates to a
/// non-finite value counts as no decrease, so `fun` may signal "outside the
/// admissible domain" by returning NaN. Converged iff the residual ∞-norm is
/// at most `tol`.
pub fn solve_2d<F>(fun: F, x0: [f64; 2], tol: f64, max_iter: usize) -> Result<RootResult<[f64; 2]>>
where
    F: Fn([f64; 2]) -> [f64; 2],
{
    let mut x = x0;
    let mut fx = fun(x);
    if !finite(fx) {
        return Err(Error::InvalidArgument(format!(
            "system is not finite at the initial guess ({}, {})",
            x[0], x[1]
        )));
    }
    let step_base = f64::EPSILON.cbrt();

    for iteration in 0..=max_iter {
        let norm = inf_norm(fx);
        if norm <= tol {
            return Ok(RootResult { root: x, residual_norm: norm, iterations: iteration, converged: true });
        }
        if iteration == max_iter {
            break;
        }

        // Central-difference Jacobian, column j = dF/dx_j.
        let mut jac = [[0.0; 2]; 2];
        for j in 0..2 {
            let h = step_base * x[j].abs().max(1.0);
            let mut xp = x;
            let mut xm = x;
            xp[j] += h;
            xm[j] -= h;
            let fp = fun(xp);
            let fm = fun(xm);
            // One-sided near a domain edge.
            let col = match (finite(fp), finite(fm)) {
                (true, true) => [(fp[0] - fm[0]) / (2.0 * h), (fp[1] - fm[1]) / (2.0 * h)],
                (true, false) => [(fp[0] - fx[0]) / h, (fp[1] - fx[1]) / h],
                (false, true) => [(fx[0] - fm[0]) / h, (fx[1] - fm[1]) / h],
                (false, false) => return Err(Error::SingularJacobian { at: x }),
            };
            jac[0][j] = col[0];
            jac[1][j] = col[1];
        }

        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        let scale = jac.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
        if !det.is_finite() || scale == 0.0 || det.abs() <= 1e-14 * scale * scale {
            return Err(Error::SingularJacobian { at: x });
        }
        let dx = [
            -(jac[1][1] * fx[0] - jac[0][1] * fx[1]) / det,
            -(-jac[1][0] * fx[0] + jac[0][0] * fx[1]) / det,
        ];

        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..=20 {
            let trial = [x[0] + lambda * dx[0], x[1] + lambda * dx[1]];
            let ft = fun(trial);
            if finite(ft) && inf_norm(ft) < norm {
                accepted = Some((trial, ft));
                break;
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((trial, ft)) => {
                x = trial;
                fx = ft;
            }
            None => {
                return Err(Error::NonConvergence { iterate: x, residuals: fx, iterations: iteration + 1 })
            }
        }
    }

    Err(Error::NonConvergence { iterate: x, residuals: fx, iterations: max_iter })
}
