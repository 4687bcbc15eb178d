//! Luxemburg and Amemiya norms by one-dimensional solves over the certified
//! modular.

use std::cell::Cell;

use crate::error::NormError;
use crate::exponents::ExponentSequence;
use crate::modular::scaled_modular;
use crate::sequence::FiniteSequence;
use crate::weights::WeightSequence;

pub const DEFAULT_TOL_ROOT: f64 = 1e-8;
pub const DEFAULT_TOL_REL: f64 = 1e-8;

const MAX_EXPANSIONS: usize = 200;
const MAX_ITERATIONS: usize = 400;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormResult {
    pub value: f64,
    /// Luxemburg: `|ρ(x/value) − 1|`. Amemiya: relative width of the final
    /// minimizer bracket.
    pub residual: f64,
    pub iterations: usize,
    /// Final bracket, in `λ`, around the root (Luxemburg) or the minimizer
    /// (Amemiya).
    pub bracket: (f64, f64),
}

impl NormResult {
    fn zero() -> Self {
        NormResult {
            value: 0.0,
            residual: 0.0,
            iterations: 0,
            bracket: (0.0, 0.0),
        }
    }
}

/// `‖x‖_L = inf{λ > 0 : ρ(x/λ) ≤ 1}`, with `‖0‖_L = 0`.
///
/// Bisection on the strictly decreasing map `λ ↦ ρ(x/λ)`. The modular is
/// certified to `tol_root / 10`, and a point is accepted once its estimate
/// plus certification error lies within `tol_root / 4` of 1.
pub fn luxemburg_norm(
    x: &FiniteSequence,
    weights: &WeightSequence,
    exponents: &ExponentSequence,
    tol_root: f64,
) -> Result<NormResult, NormError> {
    if x.is_zero() {
        return Ok(NormResult::zero());
    }
    let tol_mod = tol_root / 10.0;
    // Accepting at a quarter of the requested residual keeps two independent
    // solves (e.g. for x and αx) consistent to about tol_root relative.
    let accept = 0.25 * tol_root;
    let rho_at = |lam: f64| scaled_modular(x, 1.0 / lam, weights, exponents, tol_mod);

    let rho = scaled_modular(x, 1.0, weights, exponents, tol_mod)?;
    let guess = rho.estimate.powf(1.0 / exponents.tail_exponent());
    let mut iterations = 1;

    let first = rho_at(guess)?;
    iterations += 1;
    if (first.estimate - 1.0).abs() + first.error_bound <= accept {
        return Ok(NormResult {
            value: guess,
            residual: (first.estimate - 1.0).abs(),
            iterations,
            bracket: (guess, guess),
        });
    }
    // lo: ρ(x/lo) > 1, hi: ρ(x/hi) < 1
    let (mut lo, mut hi) = if first.estimate > 1.0 {
        let mut lo = guess;
        let mut hi = guess * 2.0;
        let mut steps = 0;
        while rho_at(hi)?.estimate > 1.0 {
            iterations += 1;
            steps += 1;
            if steps > MAX_EXPANSIONS {
                return Err(NormError::Bracket {
                    what: "Luxemburg root",
                    steps,
                });
            }
            lo = hi;
            hi *= 2.0;
        }
        (lo, hi)
    } else {
        let mut hi = guess;
        let mut lo = guess * 0.5;
        let mut steps = 0;
        while rho_at(lo)?.estimate < 1.0 {
            iterations += 1;
            steps += 1;
            if steps > MAX_EXPANSIONS {
                return Err(NormError::Bracket {
                    what: "Luxemburg root",
                    steps,
                });
            }
            hi = lo;
            lo *= 0.5;
        }
        (lo, hi)
    };

    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = rho_at(mid)?;
        iterations += 1;
        residual = (r.estimate - 1.0).abs();
        if residual + r.error_bound <= accept {
            return Ok(NormResult {
                value: mid,
                residual,
                iterations,
                bracket: (lo, hi),
            });
        }
        if r.estimate > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(NormError::NoConvergence {
        tol: tol_root,
        iterations,
        residual,
    })
}

/// `‖x‖_A = inf_{λ>0} (1 + ρ(λx))/λ`, with `‖0‖_A = 0`.
///
/// The objective is unimodal in `λ`: with `g(λ) = ρ(λx)` convex and
/// `g(0) = 0`, the sign of its derivative is that of the nondecreasing
/// `λ g'(λ) − 1 − g(λ)`. Golden-section search runs over `ln λ`, seeded at
/// `1/‖x‖_L` and bracketed by geometric expansion.
pub fn amemiya_norm(
    x: &FiniteSequence,
    weights: &WeightSequence,
    exponents: &ExponentSequence,
    tol_rel: f64,
) -> Result<NormResult, NormError> {
    if x.is_zero() {
        return Ok(NormResult::zero());
    }
    let lux = luxemburg_norm(x, weights, exponents, tol_rel.max(1e-12))?;
    let tol_mod = tol_rel / 10.0;
    let evaluations = Cell::new(lux.iterations);
    let objective = |t: f64| -> Result<f64, NormError> {
        evaluations.set(evaluations.get() + 1);
        let lam = t.exp();
        let rho = scaled_modular(x, lam, weights, exponents, tol_mod)?;
        Ok((1.0 + rho.estimate) / lam)
    };

    // Expand a triple (a, b, c) in log-space until f(b) ≤ f(a), f(c).
    let seed = -lux.value.ln();
    let mut step = std::f64::consts::LN_2;
    let (mut a, mut b, mut c) = (seed - step, seed, seed + step);
    let (mut fa, mut fb, mut fc) = (objective(a)?, objective(b)?, objective(c)?);
    let mut steps = 0;
    while !(fb <= fa && fb <= fc) {
        steps += 1;
        if steps > MAX_EXPANSIONS {
            return Err(NormError::Bracket {
                what: "Amemiya minimizer",
                steps,
            });
        }
        step *= 2.0;
        if fa < fb {
            (c, fc) = (b, fb);
            (b, fb) = (a, fa);
            a = b - step;
            fa = objective(a)?;
        } else {
            (a, fa) = (b, fb);
            (b, fb) = (c, fc);
            c = b + step;
            fc = objective(c)?;
        }
    }

    let width_target = tol_rel.ln_1p();
    let (mut lo, mut hi) = (a, c);
    let mut best = (b, fb);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = objective(x1)?;
    let mut f2 = objective(x2)?;
    for _ in 0..MAX_ITERATIONS {
        if hi - lo <= width_target {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - INV_PHI * (hi - lo);
            f1 = objective(x1)?;
        } else {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + INV_PHI * (hi - lo);
            f2 = objective(x2)?;
        }
    }
    for cand in [(x1, f1), (x2, f2)] {
        if cand.1 < best.1 {
            best = cand;
        }
    }
    let residual = (hi - lo).exp_m1();
    let iterations = evaluations.get();
    if residual > tol_rel {
        return Err(NormError::NoConvergence {
            tol: tol_rel,
            iterations,
            residual,
        });
    }
    Ok(NormResult {
        value: best.1,
        residual,
        iterations,
        bracket: (lo.exp(), hi.exp()),
    })
}

/// Closed-form `‖x‖_A` for a constant exponent: the minimum of
/// `(1 + λ^p ρ)/λ`, attained at `λ^p = 1/((p − 1)ρ)`, is
/// `p (p − 1)^{(1−p)/p} ρ^{1/p}`.
pub fn amemiya_constant_p_oracle(rho_value: f64, p: f64) -> f64 {
    assert!(rho_value > 0.0 && p > 1.0, "requires ρ > 0 and p > 1");
    p * (p - 1.0).powf((1.0 - p) / p) * rho_value.powf(1.0 / p)
}
