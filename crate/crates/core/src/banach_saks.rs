//! Gliding-hump subsequence selection in `V_p(λ)` and the Banach-Saks
//! type-`p` estimate `‖Σ_{j=0}^{n} b_j‖ ≤ 2(n+1)^{1/p}` it is meant to
//! deliver.
//!
//! "Weakly null" is replaced by the two facts the selection consumes:
//! every member lies in the unit ball and each coordinate tends to zero
//! along the family. Norms of truncations are certified `V_p(λ)` norms.

use thiserror::Error;

use crate::error::ModularError;
use crate::modular::norm_vp;
use crate::sequence::FiniteSequence;
use crate::weights::WeightSequence;

pub const DEFAULT_SCAN_BUDGET: usize = 100_000;
/// Unit-ball membership is checked with this much slack.
pub const UNIT_BALL_SLACK: f64 = 1e-9;
/// Slack added to certified norms when comparing against the bound.
pub const BOUND_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtractionError {
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error("invalid epsilon schedule: {0}")]
    Schedule(String),
    #[error("count must be at least 1")]
    EmptyCount,
    #[error("family member {n} has norm {norm} > 1")]
    NotInUnitBall { n: usize, norm: f64 },
    #[error("family has no member {n} (needed at step {step})")]
    FamilyExhausted { n: usize, step: usize },
    #[error("scan budget of {budget} exceeded while choosing the {what} at step {step}")]
    ScanBudgetExceeded {
        step: usize,
        what: &'static str,
        budget: usize,
    },
}

/// `ε_j = first · ratio^{j−1}`, with `Σ ε_j ≤ 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonSchedule {
    first: f64,
    ratio: f64,
}

impl Default for EpsilonSchedule {
    /// `ε_j = 2^{−(j+2)}`, summing to `1/4`.
    fn default() -> Self {
        EpsilonSchedule {
            first: 0.125,
            ratio: 0.5,
        }
    }
}

impl EpsilonSchedule {
    pub fn geometric(first: f64, ratio: f64) -> Result<Self, ExtractionError> {
        if !(first > 0.0 && ratio > 0.0 && ratio < 1.0) {
            return Err(ExtractionError::Schedule(format!(
                "need first > 0 and 0 < ratio < 1, got {first}, {ratio}"
            )));
        }
        let s = EpsilonSchedule { first, ratio };
        if s.total() > 0.5 {
            return Err(ExtractionError::Schedule(format!(
                "Σ ε_n = {} exceeds 1/2",
                s.total()
            )));
        }
        Ok(s)
    }

    /// `ε_j` for `j ≥ 1`.
    pub fn epsilon(&self, j: usize) -> f64 {
        assert!(j >= 1);
        self.first * self.ratio.powi(j as i32 - 1)
    }

    pub fn total(&self) -> f64 {
        self.first / (1.0 - self.ratio)
    }

    /// `Σ_{j=1}^{n} ε_j`.
    pub fn partial_sum(&self, n: usize) -> f64 {
        (1..=n).map(|j| self.epsilon(j)).sum()
    }
}

/// An indexed family `n ↦ x_n`, `n ≥ 1`. `None` means the family is
/// exhausted.
pub trait SequenceFamily {
    fn member(&self, n: usize) -> Option<FiniteSequence>;
}

impl<F> SequenceFamily for F
where
    F: Fn(usize) -> Option<FiniteSequence>,
{
    fn member(&self, n: usize) -> Option<FiniteSequence> {
        self(n)
    }
}

/// `x_n = e_n / ‖e_n‖_{V_p(λ)}`.
#[derive(Debug, Clone)]
pub struct NormalizedBasis {
    weights: WeightSequence,
    p: f64,
    tol: f64,
}

impl NormalizedBasis {
    pub fn new(weights: WeightSequence, p: f64) -> Self {
        NormalizedBasis {
            weights,
            p,
            tol: 1e-13,
        }
    }
}

impl SequenceFamily for NormalizedBasis {
    fn member(&self, n: usize) -> Option<FiniteSequence> {
        let e = FiniteSequence::unit(n);
        let norm = norm_vp(&e, &self.weights, self.p, self.tol).ok()?.estimate;
        Some(e.scaled(1.0 / norm))
    }
}

/// Normalized spikes placed so that, where the weights allow it, no window
/// touching one spike reaches another: spike `n+1` sits at the first index
/// whose window starts past spike `n`. Under anchored weights (e.g. `λ_k = k`)
/// every window reaches back to the start, so spikes are simply spaced two
/// apart.
#[derive(Debug, Clone)]
pub struct SeparatedSpikes {
    positions: Vec<usize>,
    scales: Vec<f64>,
}

impl SeparatedSpikes {
    /// Builds the first `count` members; fails if a spike would land beyond
    /// `max_support`.
    pub fn new(
        weights: &WeightSequence,
        p: f64,
        count: usize,
        max_support: usize,
    ) -> Result<Self, ExtractionError> {
        let mut positions = Vec::with_capacity(count);
        let mut pos = 1usize;
        for n in 1..=count {
            if pos > max_support {
                return Err(ExtractionError::FamilyExhausted { n, step: n });
            }
            positions.push(pos);
            pos = if weights.has_anchored_tail() {
                pos + 2
            } else {
                let mut k = pos + 1;
                while weights.window(k).lo <= pos {
                    k += 1;
                    if k > max_support {
                        break;
                    }
                }
                k
            };
        }
        let scales = positions
            .iter()
            .map(|&i| {
                norm_vp(&FiniteSequence::unit(i), weights, p, 1e-13).map(|v| 1.0 / v.estimate)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SeparatedSpikes { positions, scales })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}

impl SequenceFamily for SeparatedSpikes {
    fn member(&self, n: usize) -> Option<FiniteSequence> {
        let pos = *self.positions.get(n.checked_sub(1)?)?;
        Some(FiniteSequence::unit(pos).scaled(self.scales[n - 1]))
    }
}

/// One selection step: `b_j = x_{n_j}` and its cut point `m_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionStep {
    pub index: usize,
    pub cut: usize,
    pub epsilon: f64,
    /// `‖Σ_{i ≤ m_{j−1}} b_j(i) e^{(i)}‖`, required `< ε_{j−1}` for `j ≥ 2`.
    pub head_norm: f64,
    /// `‖Σ_{i > m_j} b_j(i) e^{(i)}‖`, required `< ε_j`.
    pub tail_norm: f64,
    pub block: FiniteSequence,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlidingHumpExtraction {
    pub p: f64,
    pub schedule: EpsilonSchedule,
    pub steps: Vec<ExtractionStep>,
}

impl GlidingHumpExtraction {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `(n_j)`.
    pub fn indices(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.index).collect()
    }

    /// `(m_j)`.
    pub fn cuts(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.cut).collect()
    }

    /// `b_j`, with `b_0 = 0`.
    pub fn block(&self, j: usize) -> FiniteSequence {
        match j {
            0 => FiniteSequence::zero(0),
            _ => self.steps[j - 1].block.clone(),
        }
    }

    /// `m_j`, with `m_0 = 0`.
    pub fn cut(&self, j: usize) -> usize {
        match j {
            0 => 0,
            _ => self.steps[j - 1].cut,
        }
    }

    /// The first `n` steps.
    pub fn prefix(&self, n: usize) -> Self {
        GlidingHumpExtraction {
            p: self.p,
            schedule: self.schedule,
            steps: self.steps[..n.min(self.steps.len())].to_vec(),
        }
    }

    /// Both index sequences strictly increase and every recorded norm is
    /// strictly below its epsilon.
    pub fn is_valid(&self) -> bool {
        let increasing = |v: Vec<usize>| v.windows(2).all(|w| w[0] < w[1]);
        increasing(self.indices())
            && increasing(self.cuts())
            && self.steps.iter().enumerate().all(|(i, s)| {
                let head_ok = i == 0 || s.head_norm < self.steps[i - 1].epsilon;
                head_ok && s.tail_norm < s.epsilon
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionConfig {
    pub schedule: EpsilonSchedule,
    pub scan_budget: usize,
    pub tol: f64,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        ExtractionConfig {
            schedule: EpsilonSchedule::default(),
            scan_budget: DEFAULT_SCAN_BUDGET,
            tol: 1e-12,
        }
    }
}

/// Upper end of a certified norm.
fn norm_upper(
    x: &FiniteSequence,
    weights: &WeightSequence,
    p: f64,
    tol: f64,
) -> Result<f64, ModularError> {
    Ok(norm_vp(x, weights, p, tol)?.upper())
}

fn unit_ball_member(
    family: &dyn SequenceFamily,
    n: usize,
    step: usize,
    weights: &WeightSequence,
    p: f64,
    tol: f64,
) -> Result<FiniteSequence, ExtractionError> {
    let x = family
        .member(n)
        .ok_or(ExtractionError::FamilyExhausted { n, step })?;
    let norm = norm_vp(&x, weights, p, tol)?;
    if norm.lower() > 1.0 + UNIT_BALL_SLACK {
        return Err(ExtractionError::NotInUnitBall {
            n,
            norm: norm.estimate,
        });
    }
    Ok(x)
}

/// Selects `b_1 = x_1, b_2 = x_{n_2}, …` with cut points `m_1 < m_2 < …` such
/// that the part of `b_j` beyond `m_j` has norm `< ε_j` and the part of
/// `b_{j+1}` up to `m_j` has norm `< ε_j`.
///
/// Each step takes the first admissible `n` after `n_{j−1}` and then the
/// first admissible `m` after `m_{j−1}`.
pub fn extract_gliding_hump(
    family: &dyn SequenceFamily,
    weights: &WeightSequence,
    p: f64,
    count: usize,
    config: &ExtractionConfig,
) -> Result<GlidingHumpExtraction, ExtractionError> {
    if count == 0 {
        return Err(ExtractionError::EmptyCount);
    }
    let tol = config.tol;
    let mut steps: Vec<ExtractionStep> = Vec::with_capacity(count);
    let mut prev_cut = 0usize;
    let mut next_index = 1usize;
    for j in 1..=count {
        let epsilon = config.schedule.epsilon(j);

        let (index, block, head_norm) = if j == 1 {
            (1, unit_ball_member(family, 1, j, weights, p, tol)?, 0.0)
        } else {
            let head_eps = config.schedule.epsilon(j - 1);
            let mut found = None;
            for n in next_index..next_index + config.scan_budget {
                let x = family
                    .member(n)
                    .ok_or(ExtractionError::FamilyExhausted { n, step: j })?;
                let head = x.head(prev_cut);
                let h = if head.is_zero() {
                    0.0
                } else {
                    norm_upper(&head, weights, p, tol)?
                };
                if h < head_eps {
                    found = Some((n, h));
                    break;
                }
            }
            let (n, h) = found.ok_or(ExtractionError::ScanBudgetExceeded {
                step: j,
                what: "subsequence index",
                budget: config.scan_budget,
            })?;
            (n, unit_ball_member(family, n, j, weights, p, tol)?, h)
        };

        // The tail norm only changes when m passes a nonzero entry, so the
        // first admissible m is m_{j−1} + 1 or one of those entries.
        let support = block.effective_support();
        let mut candidates = std::iter::once(prev_cut + 1)
            .chain((prev_cut + 2..=support).filter(|&i| block.get(i) != 0.0));
        let mut chosen = None;
        for _ in 0..config.scan_budget {
            let Some(m) = candidates.next() else { break };
            let tail = block.tail_after(m);
            let t = if m >= support || tail.is_zero() {
                0.0
            } else {
                norm_upper(&tail, weights, p, tol)?
            };
            if t < epsilon {
                chosen = Some((m, t));
                break;
            }
        }
        let (cut, tail_norm) = chosen.ok_or(ExtractionError::ScanBudgetExceeded {
            step: j,
            what: "cut point",
            budget: config.scan_budget,
        })?;

        steps.push(ExtractionStep {
            index,
            cut,
            epsilon,
            head_norm,
            tail_norm,
            block,
        });
        prev_cut = cut;
        next_index = index + 1;
    }
    Ok(GlidingHumpExtraction {
        p,
        schedule: config.schedule,
        steps,
    })
}

/// Numbers for one `n`: the bound and each link of the chain
/// `lhs ≤ ‖middle‖ + 2Σε ≤ (n+1)^{1/p} + 1 ≤ 2(n+1)^{1/p}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsBound {
    pub n: usize,
    /// `‖Σ_{j=0}^{n} b_j‖`.
    pub lhs: f64,
    pub lhs_error: f64,
    /// `2(n+1)^{1/p}`.
    pub rhs: f64,
    pub ratio: f64,
    /// `‖Σ_j b_j restricted to (m_{j−1}, m_j]‖`.
    pub middle: f64,
    /// `2 Σ_{j=1}^{n} ε_j`.
    pub hump_allowance: f64,
    /// `lhs ≤ middle + 2Σε` (triangle inequality with the head/tail conditions).
    pub decomposition_holds: bool,
    /// `middle ≤ (n+1)^{1/p}`.
    pub middle_bound_holds: bool,
    pub pass: bool,
}

pub fn verify_bs_bound(
    extraction: &GlidingHumpExtraction,
    weights: &WeightSequence,
    tol: f64,
) -> Result<BsBound, ModularError> {
    let p = extraction.p;
    let n = extraction.len();
    let mut sum = FiniteSequence::zero(0);
    let mut middle = FiniteSequence::zero(0);
    for j in 1..=n {
        let b = extraction.block(j);
        sum = sum.add(&b);
        middle = middle.add(&b.restrict(extraction.cut(j - 1), extraction.cut(j)));
    }
    let lhs = norm_vp(&sum, weights, p, tol)?;
    let mid = norm_vp(&middle, weights, p, tol)?;
    let root = ((n + 1) as f64).powf(1.0 / p);
    let rhs = 2.0 * root;
    let hump_allowance = 2.0 * extraction.schedule.partial_sum(n);
    let slack = BOUND_SLACK + lhs.error_bound + mid.error_bound;
    Ok(BsBound {
        n,
        lhs: lhs.estimate,
        lhs_error: lhs.error_bound,
        rhs,
        ratio: lhs.estimate / rhs,
        middle: mid.estimate,
        hump_allowance,
        decomposition_holds: lhs.estimate <= mid.estimate + hump_allowance + slack,
        middle_bound_holds: mid.estimate <= root + slack,
        pass: lhs.estimate <= rhs + BOUND_SLACK + lhs.error_bound,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BspReport {
    pub extraction: GlidingHumpExtraction,
    pub rows: Vec<BsBound>,
}

impl BspReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BsBound> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

/// One extraction of `n_max` blocks, then the bound for every prefix
/// `n = 0..=n_max` with `C = 2`.
pub fn property_bsp_check(
    family: &dyn SequenceFamily,
    weights: &WeightSequence,
    p: f64,
    n_max: usize,
    config: &ExtractionConfig,
) -> Result<BspReport, ExtractionError> {
    let extraction = extract_gliding_hump(family, weights, p, n_max.max(1), config)?;
    let rows = (0..=n_max)
        .map(|n| verify_bs_bound(&extraction.prefix(n), weights, config.tol))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BspReport { extraction, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_schedule() {
        let s = EpsilonSchedule::default();
        let first: Vec<f64> = (1..=5).map(|j| s.epsilon(j)).collect();
        assert_eq!(
            first,
            vec![1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0]
        );
        assert_eq!(s.total(), 0.25);
        assert!(s.partial_sum(5) <= 0.5);
        assert!(EpsilonSchedule::geometric(0.3, 0.5).is_err());
        assert!(EpsilonSchedule::geometric(0.25, 0.5).is_ok());
    }

    #[test]
    fn disjoint_family_is_returned_unchanged() {
        let w = WeightSequence::rate(4.0).unwrap();
        let fam = SeparatedSpikes::new(&w, 2.0, 6, 10_000).unwrap();
        let ex = extract_gliding_hump(&fam, &w, 2.0, 6, &ExtractionConfig::default()).unwrap();
        assert_eq!(ex.indices(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(ex.cuts(), fam.positions().to_vec());
        for (j, s) in ex.steps.iter().enumerate() {
            assert_eq!(s.head_norm, 0.0);
            assert_eq!(s.tail_norm, 0.0);
            assert_eq!(s.block, fam.member(j + 1).unwrap());
        }
        assert!(ex.is_valid());
    }

    #[test]
    fn normalized_basis_extraction_is_valid() {
        let w = WeightSequence::Identity;
        let fam = NormalizedBasis::new(w.clone(), 2.0);
        let ex = extract_gliding_hump(&fam, &w, 2.0, 8, &ExtractionConfig::default()).unwrap();
        assert!(ex.is_valid());
        assert_eq!(ex.indices(), (1..=8).collect::<Vec<_>>());
        assert_eq!(ex.cuts(), (1..=8).collect::<Vec<_>>());
    }

    #[test]
    fn extraction_skips_members_with_heavy_heads() {
        // x_n = e_1/n + e_{n+1}/2 scaled into the unit ball: the head over
        // [1, m] decays like 1/n, so the scan must skip ahead.
        let w = WeightSequence::rate(2.0).unwrap();
        let fam = move |n: usize| {
            let mut v = vec![0.0; n + 1];
            v[0] = 1.0 / n as f64;
            v[n] = 0.5;
            Some(FiniteSequence::new(v).unwrap().scaled(0.5))
        };
        let ex = extract_gliding_hump(&fam, &w, 2.0, 4, &ExtractionConfig::default()).unwrap();
        assert!(ex.is_valid(), "{:?}", ex.indices());
        let idx = ex.indices();
        assert_eq!(idx[0], 1);
        assert!(idx[1] > 2, "{idx:?}");
        // same inputs, same extraction
        let again = extract_gliding_hump(&fam, &w, 2.0, 4, &ExtractionConfig::default()).unwrap();
        assert_eq!(ex, again);
    }

    #[test]
    fn extraction_errors() {
        let w = WeightSequence::Identity;
        let cfg = ExtractionConfig::default();
        let big = |_: usize| Some(FiniteSequence::unit(1).scaled(3.0));
        assert!(matches!(
            extract_gliding_hump(&big, &w, 2.0, 2, &cfg),
            Err(ExtractionError::NotInUnitBall { n: 1, .. })
        ));
        // no coordinatewise decay: every member equals e_1/2
        let stuck = |_: usize| Some(FiniteSequence::unit(1).scaled(0.5));
        let tight = ExtractionConfig {
            scan_budget: 50,
            ..cfg
        };
        assert!(matches!(
            extract_gliding_hump(&stuck, &w, 2.0, 3, &tight),
            Err(ExtractionError::ScanBudgetExceeded { step: 2, .. })
        ));
        let none = |_: usize| None;
        assert!(matches!(
            extract_gliding_hump(&none, &w, 2.0, 1, &cfg),
            Err(ExtractionError::FamilyExhausted { n: 1, .. })
        ));
        assert_eq!(
            extract_gliding_hump(&stuck, &w, 2.0, 0, &cfg),
            Err(ExtractionError::EmptyCount)
        );
    }

    #[test]
    fn bound_for_single_and_empty_sums() {
        let w = WeightSequence::Identity;
        let fam = NormalizedBasis::new(w.clone(), 2.0);
        let ex = extract_gliding_hump(&fam, &w, 2.0, 1, &ExtractionConfig::default()).unwrap();
        let zero = verify_bs_bound(&ex.prefix(0), &w, 1e-12).unwrap();
        assert_eq!((zero.lhs, zero.rhs, zero.pass), (0.0, 2.0, true));
        let one = verify_bs_bound(&ex, &w, 1e-12).unwrap();
        assert!((one.lhs - 1.0).abs() < 1e-9 && one.pass);
        assert_eq!(one.rhs, 2.0 * 2f64.sqrt());
    }

    #[test]
    fn window_separated_blocks_add_in_the_modular() {
        // rate(2): spikes at 1, 2, 4, … never share a window, so
        // ρ(Σ b_j) = Σ ρ(b_j) = n and ‖Σ b_j‖ = n^{1/p}.
        let w = WeightSequence::rate(2.0).unwrap();
        let fam = SeparatedSpikes::new(&w, 2.0, 3, 1_000).unwrap();
        assert_eq!(fam.positions(), &[1, 2, 4]);
        let ex = extract_gliding_hump(&fam, &w, 2.0, 3, &ExtractionConfig::default()).unwrap();
        let b = verify_bs_bound(&ex, &w, 1e-12).unwrap();
        assert!((b.lhs - 3f64.sqrt()).abs() < 1e-9, "{b:?}");
        assert_eq!(b.rhs, 4.0);
        assert!(b.pass && b.middle_bound_holds && b.decomposition_holds);
    }
}
