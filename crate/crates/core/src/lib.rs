//! Evidential multi-criteria decision making with interval-valued weights.
//!
//! Decision makers rate alternatives per criterion with classical mass
//! functions over `{IS, NS}` (ideal / negative-ideal solution). Criterion and
//! decision-maker weights are intervals; discounting by the lower and upper
//! weight bounds turns each rating into an interval BPA. These are fused with
//! Dempster's rule across criteria and then across decision makers, collapsed
//! to one classical BPA per alternative, and ranked by pignistic belief in
//! `{IS}`.
//!
//! ```
//! use evimcdm::io::supplier_selection;
//! use evimcdm::pipeline::rank_alternatives;
//!
//! let report = rank_alternatives(&supplier_selection()).unwrap();
//! assert_eq!(report.ranking_labels()[0], "Supplier4");
//! ```

pub mod evidence;
pub mod fuzzy;
pub mod interval;
pub mod io;
pub mod pipeline;

pub use evidence::{combine_all, EvidenceError, FocalSet, Frame, MassFunction};
pub use fuzzy::{crisp_to_interval, FuzzyError, LinguisticScale, ScaleKind, ScaleValue, TriangularFuzzyNumber};
pub use interval::{Interval, IntervalError};
pub use pipeline::{
    collapse_interval_bpa, discount_interval_bpa, discount_to_interval_bpa, fuse_interval_bpas, normalize_weight_group,
    rank_alternatives, rank_alternatives_with, CriterionNormalization, DecisionMaker, DecisionProblem, IntervalBpa,
    PipelineError, RankOptions, RankingReport, WeightGroup,
};
