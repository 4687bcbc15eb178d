//! Finitely supported real sequences.

use crate::error::SpaceError;

/// `x = (x_1, …, x_N, 0, 0, …)`. Stored 0-based; public indices are 1-based.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FiniteSequence {
    values: Vec<f64>,
}

impl FiniteSequence {
    pub fn new(values: Vec<f64>) -> Result<Self, SpaceError> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(SpaceError::Invariant {
                rule: "entries must be finite",
                detail: format!("x_{} = {v}", i + 1),
            });
        }
        Ok(FiniteSequence { values })
    }

    pub fn zero(len: usize) -> Self {
        FiniteSequence {
            values: vec![0.0; len],
        }
    }

    /// The unit vector `e_n`.
    pub fn unit(n: usize) -> Self {
        assert!(n >= 1, "unit vectors are indexed from 1");
        let mut values = vec![0.0; n];
        values[n - 1] = 1.0;
        FiniteSequence { values }
    }

    /// Declared support bound `N`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 1-based entry; zero beyond the support bound.
    pub fn get(&self, j: usize) -> f64 {
        if j == 0 {
            return 0.0;
        }
        self.values.get(j - 1).copied().unwrap_or(0.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Index of the last nonzero entry (0 for the zero sequence).
    pub fn effective_support(&self) -> usize {
        self.values
            .iter()
            .rposition(|&v| v != 0.0)
            .map_or(0, |i| i + 1)
    }

    pub fn scaled(&self, c: f64) -> Self {
        FiniteSequence {
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        FiniteSequence {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        FiniteSequence {
            values: (1..=n).map(|j| self.get(j) + other.get(j)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `α·x + β·y`.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Self {
        let n = self.len().max(other.len());
        FiniteSequence {
            values: (1..=n)
                .map(|j| alpha * self.get(j) + beta * other.get(j))
                .collect(),
        }
    }

    /// Keeps entries with index `≤ m`.
    pub fn head(&self, m: usize) -> Self {
        FiniteSequence {
            values: self.values.iter().take(m).copied().collect(),
        }
    }

    /// Keeps entries with index `> m`.
    pub fn tail_after(&self, m: usize) -> Self {
        let mut values = self.values.clone();
        for v in values.iter_mut().take(m) {
            *v = 0.0;
        }
        FiniteSequence { values }
    }

    /// Keeps entries with index in `(lo, hi]`.
    pub fn restrict(&self, lo: usize, hi: usize) -> Self {
        self.head(hi).tail_after(lo)
    }
}
