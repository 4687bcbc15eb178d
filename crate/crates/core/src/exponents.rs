//! Bounded exponent sequences `p = (p_k)` with `p_k > 1`.

use crate::error::SpaceError;

#[derive(Debug, Clone, PartialEq)]
pub enum ExponentSequence {
    Constant(f64),
    /// Explicit prefix `p_1..p_K`, then `p_k = tail` for `k > K`.
    Table {
        values: Vec<f64>,
        tail: f64,
    },
}

fn check_exponent(p: f64, at: &str) -> Result<(), SpaceError> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(SpaceError::Invariant {
            rule: "p_k > 1 required",
            detail: format!("{at} = {p}"),
        })
    }
}

impl ExponentSequence {
    pub fn constant(p: f64) -> Result<Self, SpaceError> {
        check_exponent(p, "p")?;
        Ok(ExponentSequence::Constant(p))
    }

    pub fn table(values: Vec<f64>, tail: f64) -> Result<Self, SpaceError> {
        for (i, &p) in values.iter().enumerate() {
            check_exponent(p, &format!("p_{}", i + 1))?;
        }
        check_exponent(tail, "tail")?;
        Ok(ExponentSequence::Table { values, tail })
    }

    pub fn exponent_at(&self, k: usize) -> f64 {
        match self {
            ExponentSequence::Constant(p) => *p,
            ExponentSequence::Table { values, tail } => {
                values.get(k.wrapping_sub(1)).copied().unwrap_or(*tail)
            }
        }
    }

    /// Length of the explicit prefix; `p_k` is constant for `k` beyond it.
    pub fn prefix_len(&self) -> usize {
        match self {
            ExponentSequence::Constant(_) => 0,
            ExponentSequence::Table { values, .. } => values.len(),
        }
    }

    /// The eventual constant value `p_∞`.
    pub fn tail_exponent(&self) -> f64 {
        match self {
            ExponentSequence::Constant(p) => *p,
            ExponentSequence::Table { tail, .. } => *tail,
        }
    }

    /// `H = sup_k p_k`.
    pub fn sup(&self) -> f64 {
        match self {
            ExponentSequence::Constant(p) => *p,
            ExponentSequence::Table { values, tail } => {
                values.iter().copied().fold(*tail, f64::max)
            }
        }
    }

    pub fn inf(&self) -> f64 {
        match self {
            ExponentSequence::Constant(p) => *p,
            ExponentSequence::Table { values, tail } => {
                values.iter().copied().fold(*tail, f64::min)
            }
        }
    }

    /// `M = max{1, H}`.
    pub fn paranorm_power(&self) -> f64 {
        self.sup().max(1.0)
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self {
            ExponentSequence::Constant(p) => Some(*p),
            ExponentSequence::Table { values, tail } => {
                values.iter().all(|v| v == tail).then_some(*tail)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            ExponentSequence::Constant(p) => format!("p={p}"),
            ExponentSequence::Table { values, tail } => {
                format!("p=table[{}]+{}", values.len(), tail)
            }
        }
    }
}
