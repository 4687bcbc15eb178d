//! de la Vallée-Poussin window means and finite-horizon summability diagnostics.

use crate::sequence::FiniteSequence;
use crate::weights::WeightSequence;

/// Printed alongside every diagnostics report.
pub const HORIZON_DISCLAIMER: &str =
    "finite-horizon profile only: no statement about the limit k → ∞ is implied";

/// `t_k(x) = (1/λ_k) Σ_{j∈I_k} x_j`.
///
/// The divisor is `λ_k`, not the number of integers in the window.
pub fn vp_mean(x: &FiniteSequence, weights: &WeightSequence, k: usize) -> f64 {
    let w = weights.window(k);
    let sum: f64 = (w.lo..=w.hi.min(x.len())).map(|j| x.get(j)).sum();
    sum / weights.weight_at(k)
}

/// `(1/λ_k) Σ_{j∈I_k} |x_j|`.
pub fn abs_window_mean(x: &FiniteSequence, weights: &WeightSequence, k: usize) -> f64 {
    let w = weights.window(k);
    let sum: f64 = (w.lo..=w.hi.min(x.len())).map(|j| x.get(j).abs()).sum();
    sum / weights.weight_at(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Constant,
    Increasing,
    Decreasing,
    Mixed,
}

impl Trend {
    /// Which of `[V,λ]_0`, `[V,λ]_∞` the finite profile resembles.
    pub fn profile(&self) -> &'static str {
        match self {
            Trend::Constant => "bounded, non-null profile",
            Trend::Decreasing => "null profile",
            Trend::Increasing => "unbounded profile",
            Trend::Mixed => "indeterminate profile",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub horizon: usize,
    /// `max_{k ≤ K}` of the absolute window means.
    pub sup: f64,
    /// The absolute window mean at `k = K`.
    pub last: f64,
    pub trend: Trend,
    pub disclaimer: &'static str,
}

/// Absolute window means of `j ↦ x_j` for `k = 1..=horizon`, summarized.
pub fn classify_diagnostics<F>(x: F, weights: &WeightSequence, horizon: usize) -> Diagnostics
where
    F: Fn(usize) -> f64,
{
    assert!(horizon >= 1, "horizon must be positive");
    let mut prefix = Vec::with_capacity(horizon + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for j in 1..=horizon {
        acc += x(j).abs();
        prefix.push(acc);
    }
    let means: Vec<f64> = (1..=horizon)
        .map(|k| {
            let w = weights.window(k);
            (prefix[w.hi] - prefix[w.lo - 1]) / weights.weight_at(k)
        })
        .collect();

    let sup = means.iter().copied().fold(0.0, f64::max);
    let scale = sup.max(f64::MIN_POSITIVE);
    let eps = 1e-12 * scale;
    let (mut up, mut down) = (false, false);
    for pair in means.windows(2) {
        let d = pair[1] - pair[0];
        if d > eps {
            up = true;
        } else if d < -eps {
            down = true;
        }
    }
    let trend = match (up, down) {
        (false, false) => Trend::Constant,
        (true, false) => Trend::Increasing,
        (false, true) => Trend::Decreasing,
        (true, true) => Trend::Mixed,
    };
    Diagnostics {
        horizon,
        sup,
        last: means[horizon - 1],
        trend,
        disclaimer: HORIZON_DISCLAIMER,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn seq(v: &[f64]) -> FiniteSequence {
        FiniteSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn mean_examples() {
        let id = WeightSequence::Identity;
        let r2 = WeightSequence::rate(2.0).unwrap();
        assert_eq!(vp_mean(&seq(&[1.0, 2.0, 3.0]), &id, 3), 2.0);
        assert_eq!(vp_mean(&FiniteSequence::unit(1), &r2, 1), 1.0);
        assert_eq!(vp_mean(&seq(&[1.0; 5]), &r2, 5), 1.0);
    }

    #[test]
    fn abs_mean_examples() {
        let id = WeightSequence::Identity;
        assert_eq!(abs_window_mean(&seq(&[1.0, -2.0, 3.0]), &id, 3), 2.0);
        assert_eq!(abs_window_mean(&FiniteSequence::unit(1), &id, 4), 0.25);
        for k in 1..20 {
            assert_eq!(abs_window_mean(&FiniteSequence::zero(4), &id, k), 0.0);
        }
    }

    #[test]
    fn identity_weights_reproduce_cesaro_mean() {
        let x = seq(&[0.5, -1.5, 2.0, 0.0, 4.0, -3.0]);
        for k in 1..12 {
            let direct: f64 = (1..=k).map(|j| x.get(j).abs()).sum::<f64>() / k as f64;
            assert_eq!(abs_window_mean(&x, &WeightSequence::Identity, k), direct);
        }
    }

    #[test]
    fn divisor_is_weight_not_window_size() {
        // λ_4 = 2.5: window {3, 4}, divisor 2.5
        let lam = WeightSequence::table(vec![1.0, 1.5, 2.0, 2.5], 0.5).unwrap();
        let x = seq(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(vp_mean(&x, &lam, 4), 2.0 / 2.5);
    }

    #[test]
    fn diagnostics_examples() {
        let id = WeightSequence::Identity;
        let d = classify_diagnostics(|_| 1.0, &id, 100);
        assert_eq!((d.sup, d.last, d.trend), (1.0, 1.0, Trend::Constant));

        let d = classify_diagnostics(|j| if j == 1 { 1.0 } else { 0.0 }, &id, 100);
        assert_relative_eq!(d.last, 0.01);
        assert_eq!(d.trend, Trend::Decreasing);
        assert_eq!(d.trend.profile(), "null profile");

        let d = classify_diagnostics(|j| j as f64, &id, 100);
        assert_relative_eq!(d.last, 50.5);
        assert_eq!(d.trend, Trend::Increasing);
        assert!(d.disclaimer.contains("finite-horizon"));
    }
}
