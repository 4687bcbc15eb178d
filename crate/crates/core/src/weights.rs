//! Weight generators `Λ = (λ_k)` and the trailing integer windows they induce.

use crate::error::SpaceError;

/// Tolerance used to snap window endpoints that are integers in exact
/// arithmetic but land a few ulps off after the affine evaluation.
const SNAP: f64 = 1e-9;

/// A weight sequence `λ_1 = 1 ≤ λ_2 ≤ …` with increments in `[0, 1]` and
/// `λ_k → ∞`.
///
/// Only closed-form kinds are representable, so every sequence has an
/// affine tail `λ_k = a + s·k` from some index on. The modular engine relies
/// on that tail to bracket infinite sums.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSequence {
    /// `λ_k = k` (the Cesàro case).
    Identity,
    /// `λ_k = 1 + (k − 1)/r` with `r ≥ 1`.
    Rate { r: f64 },
    /// Explicit prefix `λ_1..λ_K` followed by `λ_k = λ_K + s·(k − K)`.
    Table { values: Vec<f64>, tail_slope: f64 },
}

/// Affine description `λ_k = offset + slope·k`, valid for `k ≥ start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineTail {
    pub start: usize,
    pub offset: f64,
    pub slope: f64,
}

impl AffineTail {
    pub fn at(&self, k: f64) -> f64 {
        self.offset + self.slope * k
    }
}

/// The integer window `I_k = [lo, hi]` with `hi = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub k: usize,
    pub lo: usize,
    pub hi: usize,
}

#[allow(clippy::len_without_is_empty)]
impl Window {
    pub fn len(&self) -> usize {
        self.hi + 1 - self.lo
    }

    pub fn contains(&self, j: usize) -> bool {
        self.lo <= j && j <= self.hi
    }
}

impl WeightSequence {
    pub fn identity() -> Self {
        WeightSequence::Identity
    }

    pub fn rate(r: f64) -> Result<Self, SpaceError> {
        if !r.is_finite() || r < 1.0 {
            return Err(SpaceError::Invariant {
                rule: "rate must be ≥ 1",
                detail: format!("got r = {r}"),
            });
        }
        Ok(WeightSequence::Rate { r })
    }

    pub fn table(values: Vec<f64>, tail_slope: f64) -> Result<Self, SpaceError> {
        let first = values.first().ok_or_else(|| SpaceError::Invariant {
            rule: "weight table must be non-empty",
            detail: "no values".into(),
        })?;
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(SpaceError::Invariant {
                rule: "weights must be finite",
                detail: format!("λ_{} = {v}", i + 1),
            });
        }
        if *first != 1.0 {
            return Err(SpaceError::Invariant {
                rule: "λ_1 = 1",
                detail: format!("got λ_1 = {first}"),
            });
        }
        for (i, pair) in values.windows(2).enumerate() {
            let step = pair[1] - pair[0];
            if step < 0.0 {
                return Err(SpaceError::Invariant {
                    rule: "λ nondecreasing",
                    detail: format!("λ_{} = {} < λ_{} = {}", i + 2, pair[1], i + 1, pair[0]),
                });
            }
            if step > 1.0 + 1e-12 {
                return Err(SpaceError::Invariant {
                    rule: "λ_{k+1} ≤ λ_k + 1",
                    detail: format!("jump of {step} between λ_{} and λ_{}", i + 1, i + 2),
                });
            }
        }
        if !(tail_slope > 0.0 && tail_slope <= 1.0) {
            return Err(SpaceError::Invariant {
                rule: "tail_slope must lie in (0, 1]",
                detail: format!("got tail_slope = {tail_slope}"),
            });
        }
        Ok(WeightSequence::Table { values, tail_slope })
    }

    /// `λ_k` for `k ≥ 1`.
    pub fn weight_at(&self, k: usize) -> f64 {
        assert!(k >= 1, "weights are indexed from 1");
        match self {
            WeightSequence::Identity => k as f64,
            WeightSequence::Rate { r } => 1.0 + (k - 1) as f64 / r,
            WeightSequence::Table { values, tail_slope } => {
                if k <= values.len() {
                    values[k - 1]
                } else {
                    let last = values.len();
                    values[last - 1] + tail_slope * (k - last) as f64
                }
            }
        }
    }

    pub fn window(&self, k: usize) -> Window {
        let left = k as f64 - self.weight_at(k) + 1.0;
        let nearest = left.round();
        let left = if (left - nearest).abs() <= SNAP * nearest.abs().max(1.0) {
            nearest
        } else {
            left
        };
        let lo = (left.ceil() as usize).clamp(1, k);
        Window { k, lo, hi: k }
    }

    pub fn affine_tail(&self) -> AffineTail {
        match self {
            WeightSequence::Identity => AffineTail {
                start: 1,
                offset: 0.0,
                slope: 1.0,
            },
            WeightSequence::Rate { r } => AffineTail {
                start: 1,
                offset: 1.0 - 1.0 / r,
                slope: 1.0 / r,
            },
            WeightSequence::Table { values, tail_slope } => {
                let last = values.len();
                AffineTail {
                    start: last,
                    offset: values[last - 1] - tail_slope * last as f64,
                    slope: *tail_slope,
                }
            }
        }
    }

    /// True when the window's left endpoint is constant on the affine tail,
    /// i.e. every window from some point on reaches back to the same index.
    pub fn has_anchored_tail(&self) -> bool {
        self.affine_tail().slope == 1.0
    }

    pub fn is_identity(&self) -> bool {
        match self {
            WeightSequence::Identity => true,
            WeightSequence::Rate { r } => *r == 1.0,
            WeightSequence::Table { .. } => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            WeightSequence::Identity => "identity".into(),
            WeightSequence::Rate { r } => format!("rate:{r}"),
            WeightSequence::Table { values, tail_slope } => {
                format!("table[{}]+{}", values.len(), tail_slope)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_examples() {
        assert_eq!(WeightSequence::Identity.weight_at(5), 5.0);
        assert_eq!(WeightSequence::rate(2.0).unwrap().weight_at(5), 3.0);
        assert_eq!(WeightSequence::Identity.weight_at(1), 1.0);
    }

    #[test]
    fn window_examples() {
        let w = WeightSequence::Identity.window(5);
        assert_eq!((w.lo, w.hi), (1, 5));
        let w = WeightSequence::rate(2.0).unwrap().window(5);
        assert_eq!((w.lo, w.hi), (3, 5));
        let table = WeightSequence::table(vec![1.0, 1.5, 2.5], 0.3).unwrap();
        for lam in [
            WeightSequence::Identity,
            WeightSequence::rate(7.0).unwrap(),
            table,
        ] {
            let w = lam.window(1);
            assert_eq!((w.lo, w.hi), (1, 1));
        }
    }

    #[test]
    fn fractional_weights_keep_integer_points_only() {
        // λ_4 = 2.5 → [4 − 2.5 + 1, 4] = [2.5, 4] → {3, 4}
        let lam = WeightSequence::table(vec![1.0, 1.5, 2.0, 2.5], 0.5).unwrap();
        let w = lam.window(4);
        assert_eq!((w.lo, w.hi, w.len()), (3, 4, 2));
    }

    #[test]
    fn rejects_invalid_tables() {
        let err = WeightSequence::table(vec![1.0, 2.5], 0.5).unwrap_err();
        assert!(err.to_string().contains("λ_{k+1} ≤ λ_k + 1"), "{err}");
        let err = WeightSequence::table(vec![2.0], 0.5).unwrap_err();
        assert!(err.to_string().contains("λ_1 = 1"));
        let err = WeightSequence::table(vec![1.0, 0.5], 0.5).unwrap_err();
        assert!(err.to_string().contains("nondecreasing"));
        assert!(WeightSequence::table(vec![1.0], 0.0).is_err());
        assert!(WeightSequence::table(vec![1.0], 1.5).is_err());
        assert!(WeightSequence::table(vec![], 0.5).is_err());
        let err = WeightSequence::rate(0.5).unwrap_err();
        assert!(err.to_string().contains("rate must be ≥ 1"));
    }

    #[test]
    fn structural_invariants_hold_up_to_ten_thousand() {
        let kinds = [
            WeightSequence::Identity,
            WeightSequence::rate(1.0).unwrap(),
            WeightSequence::rate(3.7).unwrap(),
            WeightSequence::table(vec![1.0, 1.2, 2.2, 2.9, 3.0], 0.45).unwrap(),
            WeightSequence::table(vec![1.0, 2.0], 1.0).unwrap(),
        ];
        for lam in &kinds {
            assert_eq!(lam.weight_at(1), 1.0);
            for k in 1..10_000 {
                let step = lam.weight_at(k + 1) - lam.weight_at(k);
                assert!((-1e-12..=1.0 + 1e-12).contains(&step), "{lam:?} k={k}");
                let w = lam.window(k);
                assert!(w.lo >= 1 && w.hi == k && w.lo <= w.hi);
            }
            let tail = lam.affine_tail();
            for k in tail.start..tail.start + 50 {
                assert!((tail.at(k as f64) - lam.weight_at(k)).abs() < 1e-9);
            }
        }
    }
}
