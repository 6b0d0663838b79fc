//! Interval-weighted evidential ranking.
//!
//! Classical `{IS, NS}` assessments are discounted by interval weights into
//! interval BPAs, each stored as a pair of classical mass functions: the left
//! part discounted by the lower weight bound and the right part by the upper
//! bound. Parts are fused independently with Dempster's rule, first across
//! criteria and then across decision makers, and finally the two parts of
//! each alternative are combined with each other and ranked by pignistic
//! belief in `{IS}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evidence::{combine_all, EvidenceError, Frame, MassFunction, IS, IS_NS, NS};
use crate::interval::{Interval, IntervalError};

/// Slack on the `[0, 1]` bound of discount weights.
const WEIGHT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("every weight in the {0} group is zero")]
    AllZeroWeights(WeightGroup),
    #[error("empty {0} weight group")]
    EmptyWeightGroup(WeightGroup),
    #[error("weight {0} is outside [0, 1]")]
    InvalidWeight(Interval),
    #[error("mass function is not defined on the {{IS, NS}} frame")]
    NotIdealFrame,
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Evidence(#[from] EvidenceError),
    #[error("{cell}: {source}")]
    AtCell {
        cell: Cell,
        #[source]
        source: Box<PipelineError>,
    },
    #[error("invalid decision problem: {0}")]
    InvalidProblem(String),
}

impl PipelineError {
    fn at(self, cell: Cell) -> Self {
        PipelineError::AtCell {
            cell,
            source: Box::new(self),
        }
    }

    /// The innermost error, with cell annotations stripped.
    pub fn root(&self) -> &PipelineError {
        match self {
            PipelineError::AtCell { source, .. } => source.root(),
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightGroup {
    Criterion,
    DecisionMaker,
}

impl fmt::Display for WeightGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightGroup::Criterion => "criterion",
            WeightGroup::DecisionMaker => "decision-maker",
        })
    }
}

/// Coordinates of a pipeline cell, by label.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cell {
    pub decision_maker: Option<String>,
    pub alternative: Option<String>,
    pub criterion: Option<String>,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [
            ("decision maker", &self.decision_maker),
            ("alternative", &self.alternative),
            ("criterion", &self.criterion),
        ]
        .iter()
        .filter_map(|(k, v)| v.as_ref().map(|v| format!("{k} {v:?}")))
        .collect();
        if parts.is_empty() {
            f.write_str("problem")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

/// An interval BPA over `{IS, NS}` as a (left, right) pair of classical BPAs.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalBpa {
    left: MassFunction,
    right: MassFunction,
}

impl IntervalBpa {
    pub fn new(left: MassFunction, right: MassFunction) -> Result<Self, PipelineError> {
        let frame = Frame::ideal_binary();
        if *left.frame() != frame || *right.frame() != frame {
            return Err(PipelineError::NotIdealFrame);
        }
        Ok(Self { left, right })
    }

    pub fn left(&self) -> &MassFunction {
        &self.left
    }

    pub fn right(&self) -> &MassFunction {
        &self.right
    }

    /// Per-focal-element view `[left, right]` for `{IS}`, `{NS}` and
    /// `{IS,NS}`. The `{IS,NS}` pair is usually inverted (left >= right), so
    /// it is returned as raw bounds rather than an [`Interval`].
    pub fn bounds(&self) -> [(f64, f64); 3] {
        let l = self.left.triple();
        let r = self.right.triple();
        [(l[0], r[0]), (l[1], r[1]), (l[2], r[2])]
    }
}

fn check_weight(w: Interval) -> Result<(), PipelineError> {
    if w.lo() < -WEIGHT_TOLERANCE || w.hi() > 1.0 + WEIGHT_TOLERANCE {
        return Err(PipelineError::InvalidWeight(w));
    }
    Ok(())
}

fn check_ideal(m: &MassFunction) -> Result<(), PipelineError> {
    if *m.frame() != Frame::ideal_binary() {
        return Err(PipelineError::NotIdealFrame);
    }
    Ok(())
}

/// Shafer discounting of a `{IS, NS}` BPA by reliability `w`:
/// `(p, q, r) -> (w p, w q, 1 - w p - w q)`.
pub fn discount(m: &MassFunction, w: f64) -> Result<MassFunction, PipelineError> {
    check_ideal(m)?;
    if !(-WEIGHT_TOLERANCE..=1.0 + WEIGHT_TOLERANCE).contains(&w) {
        return Err(PipelineError::InvalidWeight(Interval::point(w)?));
    }
    let w = w.clamp(0.0, 1.0);
    let is = w * m.mass(IS);
    let ns = w * m.mass(NS);
    // equals 1 - w p - w q since p + q + r = 1; exact at w = 0 and w = 1
    let both = w * m.mass(IS_NS) + (1.0 - w);
    let masses: BTreeMap<_, _> = [(IS, is), (NS, ns), (IS_NS, both)]
        .into_iter()
        .filter(|(_, v)| *v > 0.0)
        .collect();
    Ok(MassFunction::from_validated(Frame::ideal_binary(), masses))
}

/// Divides every interval of a group by the largest endpoint in the group.
pub fn normalize_weight_group(weights: &[Interval], group: WeightGroup) -> Result<Vec<Interval>, PipelineError> {
    if weights.is_empty() {
        return Err(PipelineError::EmptyWeightGroup(group));
    }
    if let Some(w) = weights.iter().find(|w| w.lo() < 0.0) {
        return Err(PipelineError::InvalidWeight(*w));
    }
    let max = weights.iter().map(Interval::hi).fold(0.0, f64::max);
    if max <= 0.0 {
        return Err(PipelineError::AllZeroWeights(group));
    }
    let divisor = Interval::point(max)?;
    weights.iter().map(|w| Ok(w.try_div(divisor)?)).collect()
}

/// Discounts a classical BPA by an interval weight: the left part by the
/// lower bound, the right part by the upper bound.
pub fn discount_to_interval_bpa(m: &MassFunction, w: Interval) -> Result<IntervalBpa, PipelineError> {
    check_weight(w)?;
    Ok(IntervalBpa {
        left: discount(m, w.lo())?,
        right: discount(m, w.hi())?,
    })
}

/// Discounts each part of an interval BPA by the matching weight bound.
pub fn discount_interval_bpa(ib: &IntervalBpa, w: Interval) -> Result<IntervalBpa, PipelineError> {
    check_weight(w)?;
    Ok(IntervalBpa {
        left: discount(&ib.left, w.lo())?,
        right: discount(&ib.right, w.hi())?,
    })
}

/// Fuses the left parts together and the right parts together.
pub fn fuse_interval_bpas(ibs: &[IntervalBpa]) -> Result<IntervalBpa, PipelineError> {
    let left = combine_all(ibs.iter().map(|ib| &ib.left))?;
    let right = combine_all(ibs.iter().map(|ib| &ib.right))?;
    Ok(IntervalBpa { left, right })
}

/// Combines the two parts of an interval BPA into one classical BPA.
pub fn collapse_interval_bpa(ib: &IntervalBpa) -> Result<MassFunction, PipelineError> {
    Ok(ib.left.combine(&ib.right)?)
}

/// Pignistic belief in `{IS}`: `m({IS}) + m({IS,NS}) / 2`.
pub fn bet_ideal(m: &MassFunction) -> f64 {
    m.pignistic()[0]
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMaker {
    pub label: String,
    pub weight: Interval,
}

/// A validated multi-decision-maker, multi-criterion rating problem.
///
/// Indexing: `criterion_weights[dm][criterion]` and
/// `ratings[dm][alternative][criterion]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    alternatives: Vec<String>,
    criteria: Vec<String>,
    decision_makers: Vec<DecisionMaker>,
    criterion_weights: Vec<Vec<Interval>>,
    ratings: Vec<Vec<Vec<MassFunction>>>,
}

impl DecisionProblem {
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<String>,
        decision_makers: Vec<DecisionMaker>,
        criterion_weights: Vec<Vec<Interval>>,
        ratings: Vec<Vec<Vec<MassFunction>>>,
    ) -> Result<Self, PipelineError> {
        let invalid = |msg: String| Err(PipelineError::InvalidProblem(msg));
        if alternatives.is_empty() {
            return invalid("no alternatives".into());
        }
        if criteria.is_empty() {
            return invalid("no criteria".into());
        }
        if decision_makers.is_empty() {
            return invalid("no decision makers".into());
        }
        for (kind, labels) in [("alternative", &alternatives), ("criterion", &criteria)] {
            if let Some(dup) = first_duplicate(labels.iter()) {
                return invalid(format!("duplicate {kind} label {dup:?}"));
            }
        }
        if let Some(dup) = first_duplicate(decision_makers.iter().map(|d| &d.label)) {
            return invalid(format!("duplicate decision maker label {dup:?}"));
        }
        if criterion_weights.len() != decision_makers.len() || ratings.len() != decision_makers.len() {
            return invalid("criterion weights and ratings need one entry per decision maker".into());
        }
        for (d, dm) in decision_makers.iter().enumerate() {
            let cell = Cell {
                decision_maker: Some(dm.label.clone()),
                ..Cell::default()
            };
            if dm.weight.lo() < 0.0 {
                return Err(PipelineError::InvalidWeight(dm.weight).at(cell));
            }
            if criterion_weights[d].len() != criteria.len() {
                return invalid(format!("decision maker {:?} must weight every criterion", dm.label));
            }
            for (c, w) in criterion_weights[d].iter().enumerate() {
                if w.lo() < 0.0 {
                    let cell = Cell {
                        criterion: Some(criteria[c].clone()),
                        ..cell.clone()
                    };
                    return Err(PipelineError::InvalidWeight(*w).at(cell));
                }
            }
            if ratings[d].len() != alternatives.len() {
                return invalid(format!("decision maker {:?} must rate every alternative", dm.label));
            }
            for (a, row) in ratings[d].iter().enumerate() {
                if row.len() != criteria.len() {
                    return invalid(format!(
                        "decision maker {:?} must rate alternative {:?} on every criterion",
                        dm.label, alternatives[a]
                    ));
                }
                for (c, m) in row.iter().enumerate() {
                    if *m.frame() != Frame::ideal_binary() {
                        let cell = Cell {
                            alternative: Some(alternatives[a].clone()),
                            criterion: Some(criteria[c].clone()),
                            ..cell.clone()
                        };
                        return Err(PipelineError::NotIdealFrame.at(cell));
                    }
                }
            }
        }
        Ok(Self {
            alternatives,
            criteria,
            decision_makers,
            criterion_weights,
            ratings,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn decision_makers(&self) -> &[DecisionMaker] {
        &self.decision_makers
    }

    pub fn criterion_weights(&self) -> &[Vec<Interval>] {
        &self.criterion_weights
    }

    pub fn ratings(&self) -> &[Vec<Vec<MassFunction>>] {
        &self.ratings
    }

    fn cell(&self, dm: usize, alt: Option<usize>, crit: Option<usize>) -> Cell {
        Cell {
            decision_maker: Some(self.decision_makers[dm].label.clone()),
            alternative: alt.map(|a| self.alternatives[a].clone()),
            criterion: crit.map(|c| self.criteria[c].clone()),
        }
    }
}

fn first_duplicate<'a, I: Iterator<Item = &'a String>>(labels: I) -> Option<&'a String> {
    let mut seen = std::collections::HashSet::new();
    labels.into_iter().find(|l| !seen.insert(*l))
}

/// Scope of the largest-endpoint divisor for criterion weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionNormalization {
    /// One divisor over every decision maker's criterion weights.
    #[default]
    Pooled,
    /// A separate divisor per decision maker.
    PerDm,
}

impl std::str::FromStr for CriterionNormalization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pooled" => Ok(Self::Pooled),
            "per-dm" => Ok(Self::PerDm),
            other => Err(format!(
                "unknown criterion normalization {other:?} (expected pooled or per-dm)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RankOptions {
    pub criterion_normalization: CriterionNormalization,
}

/// Every intermediate of a ranking run plus the final order.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingReport {
    pub alternatives: Vec<String>,
    pub criteria: Vec<String>,
    pub decision_makers: Vec<String>,
    /// `[dm][criterion]`
    pub normalized_criterion_weights: Vec<Vec<Interval>>,
    /// `[dm]`
    pub normalized_dm_weights: Vec<Interval>,
    /// `[dm][alternative][criterion]`
    pub discounted: Vec<Vec<Vec<IntervalBpa>>>,
    /// `[dm][alternative]`, fused across criteria.
    pub per_dm_fused: Vec<Vec<IntervalBpa>>,
    /// `[dm][alternative]`, discounted by the decision maker's weight.
    pub dm_discounted: Vec<Vec<IntervalBpa>>,
    /// `[alternative]`, fused across decision makers.
    pub final_bpas: Vec<IntervalBpa>,
    pub collapsed: Vec<MassFunction>,
    pub bet_is: Vec<f64>,
    /// Alternative indices, best first.
    pub ranking: Vec<usize>,
}

impl RankingReport {
    pub fn ranking_labels(&self) -> Vec<&str> {
        self.ranking.iter().map(|&i| self.alternatives[i].as_str()).collect()
    }
}

/// Indices sorted by descending score; equal scores keep input order.
pub fn rank_by(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    order
}

pub fn rank_alternatives(problem: &DecisionProblem) -> Result<RankingReport, PipelineError> {
    rank_alternatives_with(problem, &RankOptions::default())
}

pub fn rank_alternatives_with(
    problem: &DecisionProblem,
    options: &RankOptions,
) -> Result<RankingReport, PipelineError> {
    let n_dm = problem.decision_makers.len();
    let n_alt = problem.alternatives.len();
    let n_crit = problem.criteria.len();

    let normalized_criterion_weights = match options.criterion_normalization {
        CriterionNormalization::Pooled => {
            let pooled: Vec<Interval> = problem.criterion_weights.iter().flatten().copied().collect();
            normalize_weight_group(&pooled, WeightGroup::Criterion)?
                .chunks(n_crit)
                .map(<[Interval]>::to_vec)
                .collect()
        }
        CriterionNormalization::PerDm => problem
            .criterion_weights
            .iter()
            .enumerate()
            .map(|(d, ws)| {
                normalize_weight_group(ws, WeightGroup::Criterion).map_err(|e| e.at(problem.cell(d, None, None)))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    let dm_weights: Vec<Interval> = problem.decision_makers.iter().map(|d| d.weight).collect();
    let normalized_dm_weights = normalize_weight_group(&dm_weights, WeightGroup::DecisionMaker)?;

    let mut discounted = Vec::with_capacity(n_dm);
    let mut per_dm_fused = Vec::with_capacity(n_dm);
    let mut dm_discounted = Vec::with_capacity(n_dm);
    for d in 0..n_dm {
        let mut cells = Vec::with_capacity(n_alt);
        let mut fused_row = Vec::with_capacity(n_alt);
        let mut dm_row = Vec::with_capacity(n_alt);
        for a in 0..n_alt {
            let row = (0..n_crit)
                .map(|c| {
                    discount_to_interval_bpa(&problem.ratings[d][a][c], normalized_criterion_weights[d][c])
                        .map_err(|e| e.at(problem.cell(d, Some(a), Some(c))))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let fused = fuse_interval_bpas(&row).map_err(|e| e.at(problem.cell(d, Some(a), None)))?;
            let reweighted = discount_interval_bpa(&fused, normalized_dm_weights[d])
                .map_err(|e| e.at(problem.cell(d, Some(a), None)))?;
            cells.push(row);
            fused_row.push(fused);
            dm_row.push(reweighted);
        }
        discounted.push(cells);
        per_dm_fused.push(fused_row);
        dm_discounted.push(dm_row);
    }

    let mut final_bpas = Vec::with_capacity(n_alt);
    let mut collapsed = Vec::with_capacity(n_alt);
    for a in 0..n_alt {
        let alt_cell = || Cell {
            alternative: Some(problem.alternatives[a].clone()),
            ..Cell::default()
        };
        let column: Vec<IntervalBpa> = dm_discounted.iter().map(|row| row[a].clone()).collect();
        let fused = fuse_interval_bpas(&column).map_err(|e| e.at(alt_cell()))?;
        collapsed.push(collapse_interval_bpa(&fused).map_err(|e| e.at(alt_cell()))?);
        final_bpas.push(fused);
    }
    let bet_is: Vec<f64> = collapsed.iter().map(bet_ideal).collect();
    let ranking = rank_by(&bet_is);

    Ok(RankingReport {
        alternatives: problem.alternatives.clone(),
        criteria: problem.criteria.clone(),
        decision_makers: problem.decision_makers.iter().map(|d| d.label.clone()).collect(),
        normalized_criterion_weights,
        normalized_dm_weights,
        discounted,
        per_dm_fused,
        dm_discounted,
        final_bpas,
        collapsed,
        bet_is,
        ranking,
    })
}
