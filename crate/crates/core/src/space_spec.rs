//! JSON description of a space `V(λ;p)` and, optionally, one sequence in it.
//!
//! ```json
//! {
//!   "weights":   {"kind": "rate", "r": 2},
//!   "exponents": {"kind": "table", "values": [1.5, 3], "tail": 2},
//!   "x": [1, -0.5, 0.25]
//! }
//! ```
//!
//! Weight kinds: `identity`, `rate` (`r`), `table` (`values`, `tail_slope`).
//! Exponent kinds: `const` (`p`), `table` (`values`, `tail`).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::SpaceError;
use crate::exponents::ExponentSequence;
use crate::sequence::FiniteSequence;
use crate::weights::WeightSequence;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("malformed space description at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {source}")]
    Invalid {
        field: &'static str,
        #[source]
        source: SpaceError,
    },
    #[error("missing field: {0}")]
    Missing(&'static str),
}

impl SpecError {
    /// Name of the violated invariant, when there is one.
    pub fn rule(&self) -> Option<&'static str> {
        match self {
            SpecError::Invalid {
                source: SpaceError::Invariant { rule, .. },
                ..
            } => Some(rule),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightsDoc {
    Identity,
    Rate { r: f64 },
    Table { values: Vec<f64>, tail_slope: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExponentsDoc {
    Const { p: f64 },
    Table { values: Vec<f64>, tail: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub weights: WeightsDoc,
    pub exponents: ExponentsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
}

/// A validated space, with the sequence if one was given.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceSpec {
    pub weights: WeightSequence,
    pub exponents: ExponentSequence,
    pub x: Option<FiniteSequence>,
}

impl SpaceSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let doc: SpaceDoc = serde_json::from_str(text).map_err(|e| SpecError::Malformed {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_doc(doc)
    }

    pub fn from_doc(doc: SpaceDoc) -> Result<Self, SpecError> {
        let invalid = |field| move |source| SpecError::Invalid { field, source };
        let weights = match doc.weights {
            WeightsDoc::Identity => Ok(WeightSequence::Identity),
            WeightsDoc::Rate { r } => WeightSequence::rate(r),
            WeightsDoc::Table { values, tail_slope } => WeightSequence::table(values, tail_slope),
        }
        .map_err(invalid("weights"))?;
        let exponents = match doc.exponents {
            ExponentsDoc::Const { p } => ExponentSequence::constant(p),
            ExponentsDoc::Table { values, tail } => ExponentSequence::table(values, tail),
        }
        .map_err(invalid("exponents"))?;
        let x = doc
            .x
            .map(FiniteSequence::new)
            .transpose()
            .map_err(invalid("x"))?;
        Ok(SpaceSpec {
            weights,
            exponents,
            x,
        })
    }

    /// The sequence, or an error naming the missing field.
    pub fn sequence(&self) -> Result<&FiniteSequence, SpecError> {
        self.x.as_ref().ok_or(SpecError::Missing("x"))
    }
}
