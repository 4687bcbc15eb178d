//! Certified evaluation of the modular `ρ`, the paranorm `h = ρ^{1/M}` and
//! the `V_p(λ)` norm for finitely supported sequences.
//!
//! `ρ(x) = Σ_{k≥1} ((1/λ_k) Σ_{j∈I_k} |x_j|)^{p_k}`. Terms up to a head index
//! `K*` are summed directly. Past the support of `x`, the structural
//! exponent prefix and the weight table, every window sum is a suffix sum
//! `T = Σ_{j=lo}^{N} |x_j|` and `p_k = p_∞`, so the tail splits into runs of
//! constant `T` whose sums over the affine weights are enclosed by
//! Euler–Maclaurin brackets. `K*` doubles until the bracket is narrow enough.

use crate::certified::{
    affine_power_run, affine_power_tail, outward, Bracket, CertifiedValue, CompensatedSum,
    ROUNDING_ULPS,
};
use crate::error::ModularError;
use crate::exponents::ExponentSequence;
use crate::sequence::FiniteSequence;
use crate::weights::WeightSequence;

pub const DEFAULT_TOL: f64 = 1e-10;

/// Extra head terms beyond the structural index before the first tail bracket.
const HEAD_MARGIN: usize = 32;
const MAX_HEAD: usize = 1 << 26;
/// Runs of constant window sum at most this long are summed term by term.
const SHORT_RUN: u64 = 64;

fn check_tol(tol: f64) -> Result<(), ModularError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(ModularError::BadTolerance(tol))
    }
}

fn rounding_allowance(magnitude: f64) -> f64 {
    ROUNDING_ULPS * f64::EPSILON * magnitude
}

/// Prefix sums of `|x_j|` over the effective support.
struct AbsPrefix {
    sums: Vec<f64>,
}

impl AbsPrefix {
    fn new(x: &FiniteSequence) -> Self {
        let n = x.effective_support();
        let mut sums = Vec::with_capacity(n + 1);
        sums.push(0.0);
        let mut acc = CompensatedSum::default();
        for j in 1..=n {
            acc.add(x.get(j).abs());
            sums.push(acc.value());
        }
        AbsPrefix { sums }
    }

    fn support(&self) -> usize {
        self.sums.len() - 1
    }

    /// `Σ_{j=lo}^{hi} |x_j|`.
    fn window_sum(&self, lo: usize, hi: usize) -> f64 {
        let n = self.support();
        if lo > n || lo > hi {
            return 0.0;
        }
        self.sums[hi.min(n)] - self.sums[lo - 1]
    }
}

/// Last `k ≥ from` whose window still starts at `lo`.
fn run_end(weights: &WeightSequence, from: u64, lo: usize) -> u64 {
    let starts_at = |k: u64| weights.window(k as usize).lo;
    let mut step = 1u64;
    while starts_at(from + step) <= lo {
        step *= 2;
        assert!(step < 1 << 53, "window start never advances");
    }
    let (mut inside, mut outside) = (from + step / 2, from + step);
    if step == 1 {
        inside = from;
    }
    while outside - inside > 1 {
        let mid = inside + (outside - inside) / 2;
        if starts_at(mid) <= lo {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    inside
}

/// Encloses `Σ_{k ≥ first} (T_k / λ_k)^{p_∞}` where the head already covers
/// the support and every structural prefix.
fn tail_bracket(prefix: &AbsPrefix, weights: &WeightSequence, p: f64, first: u64) -> Bracket {
    let n = prefix.support();
    let affine = weights.affine_tail();
    let lo = weights.window(first as usize).lo;
    if lo > n {
        return Bracket::ZERO;
    }
    if weights.has_anchored_tail() {
        let t = prefix.window_sum(lo, n);
        let tail = affine_power_tail(affine.offset, affine.slope, p, first);
        return tail.scale(t.powf(p));
    }
    let mut total = Bracket::ZERO;
    let mut k = first;
    loop {
        let lo = weights.window(k as usize).lo;
        if lo > n {
            break;
        }
        let end = run_end(weights, k, lo);
        let t = prefix.window_sum(lo, n);
        let run = if end - k < SHORT_RUN {
            let mut s = CompensatedSum::default();
            for i in k..=end {
                s.add(weights.weight_at(i as usize).powf(-p));
            }
            Bracket::summed(s.value())
        } else {
            affine_power_run(affine.offset, affine.slope, p, k, end)
        };
        total = total.plus(run.scale(t.powf(p)));
        k = end + 1;
    }
    total
}

/// Certified `ρ(x)`.
///
/// `error_bound` is zero exactly when every term past the head is provably
/// zero; otherwise it is the outward-rounded tail radius plus a small
/// summation allowance; its truncation part is driven below `tol / 2`.
pub fn modular_rho(
    x: &FiniteSequence,
    weights: &WeightSequence,
    exponents: &ExponentSequence,
    tol: f64,
) -> Result<CertifiedValue, ModularError> {
    check_tol(tol)?;
    if x.is_zero() {
        return Ok(CertifiedValue::exact(0.0));
    }
    let prefix = AbsPrefix::new(x);
    let structural = prefix
        .support()
        .max(weights.affine_tail().start)
        .max(exponents.prefix_len());
    let p_tail = exponents.tail_exponent();

    let mut head = CompensatedSum::default();
    let mut k = 0usize;
    let mut k_head = (2 * structural).max(structural + HEAD_MARGIN);
    loop {
        while k < k_head {
            k += 1;
            let w = weights.window(k);
            let s = prefix.window_sum(w.lo, w.hi);
            if s > 0.0 {
                head.add((s / weights.weight_at(k)).powf(exponents.exponent_at(k)));
            }
        }
        let tail = tail_bracket(&prefix, weights, p_tail, k_head as u64 + 1);
        let head_sum = head.value();
        if !head_sum.is_finite() || !tail.center.is_finite() || !tail.radius().is_finite() {
            return Err(ModularError::NonFinite);
        }
        if tail.half_width <= 0.5 * tol || k_head >= MAX_HEAD {
            if tail.half_width > 0.5 * tol {
                return Err(ModularError::Uncertifiable {
                    tol,
                    achieved: tail.half_width,
                });
            }
            if tail == Bracket::ZERO {
                return Ok(CertifiedValue::exact(head_sum));
            }
            let estimate = head_sum + tail.center;
            let error_bound = tail.radius() + rounding_allowance(head_sum + tail.center.abs());
            return Ok(CertifiedValue {
                estimate,
                error_bound,
            });
        }
        k_head *= 2;
    }
}

/// `ρ(c·x)`.
pub fn scaled_modular(
    x: &FiniteSequence,
    c: f64,
    weights: &WeightSequence,
    exponents: &ExponentSequence,
    tol: f64,
) -> Result<CertifiedValue, ModularError> {
    check_tol(tol)?;
    if c == 0.0 {
        return Ok(CertifiedValue::exact(0.0));
    }
    if c == 1.0 {
        return modular_rho(x, weights, exponents, tol);
    }
    modular_rho(&x.scaled(c), weights, exponents, tol)
}

/// `h(x) = ρ(x)^{1/M}`, `M = max{1, sup_k p_k}`.
pub fn paranorm_h(
    x: &FiniteSequence,
    weights: &WeightSequence,
    exponents: &ExponentSequence,
    tol: f64,
) -> Result<CertifiedValue, ModularError> {
    let rho = modular_rho(x, weights, exponents, tol)?;
    Ok(rho.powf(1.0 / exponents.paranorm_power()))
}

/// `‖x‖_{V_p(λ)} = ρ(x)^{1/p}` for a constant exponent `p > 1`.
pub fn norm_vp(
    x: &FiniteSequence,
    weights: &WeightSequence,
    p: f64,
    tol: f64,
) -> Result<CertifiedValue, ModularError> {
    let exponents = ExponentSequence::constant(p).map_err(|_| ModularError::BadExponent(p))?;
    let rho = modular_rho(x, weights, &exponents, tol)?;
    Ok(rho.powf(1.0 / p))
}

/// `Σ_k ((1/k) Σ_{j≤k} |x_j|)^p`, the `ces_p` modular, computed without the
/// window or Euler–Maclaurin machinery: running sums for the head and a
/// trapezoid/midpoint convexity bracket for the tail `T^p Σ_{k>K} k^{-p}`.
pub fn cesaro_direct(x: &FiniteSequence, p: f64, tol: f64) -> Result<CertifiedValue, ModularError> {
    check_tol(tol)?;
    if !(p.is_finite() && p > 1.0) {
        return Err(ModularError::BadExponent(p));
    }
    if x.is_zero() {
        return Ok(CertifiedValue::exact(0.0));
    }
    let values = x.values();
    let n = x.effective_support();
    let mut running = CompensatedSum::default();
    let mut head = CompensatedSum::default();
    let mut k = 0usize;
    let mut horizon = n.max(1024);
    loop {
        while k < horizon {
            k += 1;
            if k <= n {
                running.add(values[k - 1].abs());
            }
            head.add((running.value() / k as f64).powf(p));
        }
        let total = running.value().powf(p);
        let next = (k + 1) as f64;
        let integral_from = |t: f64| t.powf(1.0 - p) / (p - 1.0);
        let lower = total * (integral_from(next) + 0.5 * next.powf(-p));
        let upper = total * integral_from(next - 0.5);
        let half = 0.5 * (upper - lower).max(0.0);
        let center = 0.5 * (upper + lower);
        let head_sum = head.value();
        if !head_sum.is_finite() || !upper.is_finite() {
            return Err(ModularError::NonFinite);
        }
        if half <= 0.5 * tol {
            return Ok(CertifiedValue {
                estimate: head_sum + center,
                error_bound: outward(half, center) + rounding_allowance(head_sum + center),
            });
        }
        if horizon >= MAX_HEAD * 2 {
            return Err(ModularError::Uncertifiable {
                tol,
                achieved: half,
            });
        }
        horizon *= 2;
    }
}
