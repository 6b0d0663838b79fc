//! JSON problem documents.
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "frame": ["IS", "NS"],
//!   "scales": [{"name": "mine", "kind": "interval", "terms": [{"term": "Good", "value": [0.6, 0.9]}]}],
//!   "alternatives": ["A1", "A2"],
//!   "criteria": ["C1"],
//!   "decision_makers": [
//!     {"name": "DM1", "weight": 0.8, "criterion_weights": {"C1": {"term": "Good", "scale": "mine"}}}
//!   ],
//!   "ratings": {"DM1": {"A1": {"C1": [0.6, 0.2, 0.2]}, "A2": {"C1": [0.1, 0.7, 0.2]}}}
//! }
//! ```
//!
//! A weight is a crisp number, a `[lo, hi]` pair, or a linguistic term with
//! the name of a built-in or document-defined scale. A rating is the triple
//! `(m({IS}), m({NS}), m({IS,NS}))`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::evidence::MassFunction;
use crate::fuzzy::{crisp_to_interval, LinguisticScale, ScaleKind, ScaleValue, TriangularFuzzyNumber};
use crate::interval::Interval;
use crate::pipeline::{DecisionMaker, DecisionProblem};

pub const SCHEMA_VERSION: &str = "1";

/// Ratings are accepted when their masses sum to one within this slack and
/// are then renormalized. Wider than the core default so that tables printed
/// with four or five decimals load as written.
pub const RATING_SUM_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadOptions {
    /// Alpha level for turning fuzzy-number terms into intervals.
    pub alpha: f64,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self { alpha: 0.0 }
    }
}

/// Why a document was rejected. Every rejection falls in exactly one class.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LoadError {
    #[error("ParseError at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("SchemaError at {location}: {message}")]
    Schema { location: String, message: String },
    #[error("ValidationError at {location}: {message}")]
    Validation { location: String, message: String },
}

impl LoadError {
    pub fn class(&self) -> &'static str {
        match self {
            LoadError::Parse { .. } => "ParseError",
            LoadError::Schema { .. } => "SchemaError",
            LoadError::Validation { .. } => "ValidationError",
        }
    }

    fn schema(location: impl fmt::Display, message: impl fmt::Display) -> Self {
        LoadError::Schema {
            location: location.to_string(),
            message: message.to_string(),
        }
    }

    fn validation(location: impl fmt::Display, message: impl fmt::Display) -> Self {
        LoadError::Validation {
            location: location.to_string(),
            message: message.to_string(),
        }
    }
}

impl From<serde_json::Error> for LoadError {
    fn from(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        let (line, column) = (e.line(), e.column());
        match e.classify() {
            Category::Data => LoadError::Schema {
                location: format!("line {line}, column {column}"),
                message: strip_position(&e),
            },
            Category::Io | Category::Syntax | Category::Eof => LoadError::Parse {
                line,
                column,
                message: strip_position(&e),
            },
        }
    }
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_owned(),
        None => s,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scales: Vec<ScaleDocument>,
    pub alternatives: Vec<String>,
    pub criteria: Vec<String>,
    pub decision_makers: Vec<DecisionMakerDocument>,
    /// decision maker → alternative → criterion → rating triple
    pub ratings: BTreeMap<String, BTreeMap<String, BTreeMap<String, [f64; 3]>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleDocument {
    pub name: String,
    pub kind: ScaleKind,
    pub terms: Vec<TermDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    pub term: String,
    /// `[lo, hi]` for interval scales, `[a, b, c]` for fuzzy-number scales.
    pub value: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionMakerDocument {
    pub name: String,
    pub weight: WeightSpec,
    pub criterion_weights: BTreeMap<String, WeightSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Crisp(f64),
    Interval([f64; 2]),
    Term(TermRef),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRef {
    pub term: String,
    pub scale: String,
}

impl ProblemDocument {
    pub fn from_json(bytes: &[u8]) -> Result<Self, LoadError> {
        Ok(serde_json::from_slice(bytes)?)
    }

    /// Document for an already validated problem, weights as intervals.
    pub fn from_problem(problem: &DecisionProblem) -> Self {
        let decision_makers = problem
            .decision_makers()
            .iter()
            .zip(problem.criterion_weights())
            .map(|(dm, ws)| DecisionMakerDocument {
                name: dm.label.clone(),
                weight: WeightSpec::Interval(dm.weight.into()),
                criterion_weights: problem
                    .criteria()
                    .iter()
                    .zip(ws)
                    .map(|(c, w)| (c.clone(), WeightSpec::Interval((*w).into())))
                    .collect(),
            })
            .collect();
        let ratings = problem
            .decision_makers()
            .iter()
            .zip(problem.ratings())
            .map(|(dm, rows)| {
                let by_alt = problem
                    .alternatives()
                    .iter()
                    .zip(rows)
                    .map(|(a, row)| {
                        let by_crit = problem
                            .criteria()
                            .iter()
                            .zip(row)
                            .map(|(c, m)| (c.clone(), m.triple()))
                            .collect();
                        (a.clone(), by_crit)
                    })
                    .collect();
                (dm.label.clone(), by_alt)
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            frame: Some(vec!["IS".into(), "NS".into()]),
            scales: Vec::new(),
            alternatives: problem.alternatives().to_vec(),
            criteria: problem.criteria().to_vec(),
            decision_makers,
            ratings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Resolves weights and ratings into a validated [`DecisionProblem`].
    pub fn resolve(&self, options: &LoadOptions) -> Result<DecisionProblem, LoadError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(LoadError::schema(
                "schema_version",
                format!(
                    "unsupported version {:?} (expected {SCHEMA_VERSION:?})",
                    self.schema_version
                ),
            ));
        }
        if !(0.0..=1.0).contains(&options.alpha) {
            return Err(LoadError::validation(
                "alpha",
                format!("alpha level {} is outside [0, 1]", options.alpha),
            ));
        }
        if let Some(frame) = &self.frame {
            if frame.len() != 2 || frame[0] != "IS" || frame[1] != "NS" {
                return Err(LoadError::schema(
                    "frame",
                    "only the frame [\"IS\", \"NS\"] is supported",
                ));
            }
        }
        for (what, labels) in [("alternatives", &self.alternatives), ("criteria", &self.criteria)] {
            if labels.is_empty() {
                return Err(LoadError::schema(what, format!("no {what} given")));
            }
            check_unique(what, labels.iter())?;
        }
        if self.decision_makers.is_empty() {
            return Err(LoadError::schema("decision_makers", "no decision makers given"));
        }
        check_unique("decision_makers", self.decision_makers.iter().map(|d| &d.name))?;

        let scales = self.scales()?;
        let mut decision_makers = Vec::with_capacity(self.decision_makers.len());
        let mut criterion_weights = Vec::with_capacity(self.decision_makers.len());
        let mut ratings = Vec::with_capacity(self.decision_makers.len());
        for dm in &self.decision_makers {
            let at = format!("decision_makers[{:?}]", dm.name);
            let weight = resolve_weight(&dm.weight, &scales, options.alpha, &format!("{at}.weight"))?;
            decision_makers.push(DecisionMaker {
                label: dm.name.clone(),
                weight,
            });

            for c in dm.criterion_weights.keys() {
                if !self.criteria.contains(c) {
                    return Err(LoadError::schema(
                        format!("{at}.criterion_weights"),
                        format!("unknown criterion {c:?}"),
                    ));
                }
            }
            let ws = self
                .criteria
                .iter()
                .map(|c| {
                    let loc = format!("{at}.criterion_weights[{c:?}]");
                    let spec = dm
                        .criterion_weights
                        .get(c)
                        .ok_or_else(|| LoadError::schema(&loc, "missing criterion weight"))?;
                    resolve_weight(spec, &scales, options.alpha, &loc)
                })
                .collect::<Result<Vec<_>, _>>()?;
            criterion_weights.push(ws);

            let table = self.ratings.get(&dm.name).ok_or_else(|| {
                LoadError::schema(format!("ratings[{:?}]", dm.name), "missing ratings for decision maker")
            })?;
            ratings.push(self.resolve_ratings(&dm.name, table)?);
        }
        for name in self.ratings.keys() {
            if !self.decision_makers.iter().any(|d| &d.name == name) {
                return Err(LoadError::schema("ratings", format!("unknown decision maker {name:?}")));
            }
        }

        DecisionProblem::new(
            self.alternatives.clone(),
            self.criteria.clone(),
            decision_makers,
            criterion_weights,
            ratings,
        )
        .map_err(|e| LoadError::validation("problem", e))
    }

    fn resolve_ratings(
        &self,
        dm: &str,
        table: &BTreeMap<String, BTreeMap<String, [f64; 3]>>,
    ) -> Result<Vec<Vec<MassFunction>>, LoadError> {
        for a in table.keys() {
            if !self.alternatives.contains(a) {
                return Err(LoadError::schema(
                    format!("ratings[{dm:?}]"),
                    format!("unknown alternative {a:?}"),
                ));
            }
        }
        self.alternatives
            .iter()
            .map(|a| {
                let row = table.get(a).ok_or_else(|| {
                    LoadError::schema(format!("ratings[{dm:?}][{a:?}]"), "missing ratings for alternative")
                })?;
                for c in row.keys() {
                    if !self.criteria.contains(c) {
                        return Err(LoadError::schema(
                            format!("ratings[{dm:?}][{a:?}]"),
                            format!("unknown criterion {c:?}"),
                        ));
                    }
                }
                self.criteria
                    .iter()
                    .map(|c| {
                        let loc = format!("ratings[{dm:?}][{a:?}][{c:?}]");
                        let [is, ns, both] = *row.get(c).ok_or_else(|| LoadError::schema(&loc, "missing rating"))?;
                        MassFunction::ideal_triple_with_tolerance(is, ns, both, RATING_SUM_TOLERANCE)
                            .map_err(|e| LoadError::validation(&loc, e))
                    })
                    .collect()
            })
            .collect()
    }

    fn scales(&self) -> Result<Vec<LinguisticScale>, LoadError> {
        let mut scales = vec![LinguisticScale::kaufmann_tfn(), LinguisticScale::interval_default()];
        for doc in &self.scales {
            let at = format!("scales[{:?}]", doc.name);
            if scales.iter().any(|s| s.name() == doc.name) {
                return Err(LoadError::validation(&at, "scale name already defined"));
            }
            let mut scale = LinguisticScale::new(doc.name.clone(), doc.kind);
            for t in &doc.terms {
                let loc = format!("{at}.terms[{:?}]", t.term);
                let value = match (doc.kind, t.value.as_slice()) {
                    (ScaleKind::Interval, [lo, hi]) => {
                        ScaleValue::Interval(Interval::new(*lo, *hi).map_err(|e| LoadError::validation(&loc, e))?)
                    }
                    (ScaleKind::Tfn, [a, b, c]) => ScaleValue::Tfn(
                        TriangularFuzzyNumber::new(*a, *b, *c).map_err(|e| LoadError::validation(&loc, e))?,
                    ),
                    (ScaleKind::Interval, _) => return Err(LoadError::schema(&loc, "interval terms take [lo, hi]")),
                    (ScaleKind::Tfn, _) => return Err(LoadError::schema(&loc, "fuzzy-number terms take [a, b, c]")),
                };
                scale.push(&t.term, value).map_err(|e| LoadError::validation(&loc, e))?;
            }
            scales.push(scale);
        }
        Ok(scales)
    }
}

fn check_unique<'a>(what: &str, labels: impl Iterator<Item = &'a String>) -> Result<(), LoadError> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(LoadError::schema(what, format!("duplicate label {l:?}")));
        }
    }
    Ok(())
}

fn resolve_weight(spec: &WeightSpec, scales: &[LinguisticScale], alpha: f64, loc: &str) -> Result<Interval, LoadError> {
    let iv = match spec {
        WeightSpec::Crisp(x) => crisp_to_interval(*x).map_err(|e| LoadError::validation(loc, e))?,
        WeightSpec::Interval([lo, hi]) => Interval::new(*lo, *hi).map_err(|e| LoadError::validation(loc, e))?,
        WeightSpec::Term(TermRef { term, scale }) => {
            let scale = scales
                .iter()
                .find(|s| s.name() == scale)
                .ok_or_else(|| LoadError::validation(loc, format!("unknown scale {scale:?}")))?;
            scale
                .lookup_interval(term, alpha)
                .map_err(|e| LoadError::validation(loc, e))?
        }
    };
    if iv.lo() < 0.0 {
        return Err(LoadError::validation(loc, format!("weight {iv} is negative")));
    }
    Ok(iv)
}

/// Reads and validates a problem document.
pub fn load_problem<R: Read>(
    mut source: R,
    format: InputFormat,
    options: &LoadOptions,
) -> Result<DecisionProblem, LoadError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes).map_err(|e| LoadError::Parse {
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    match format {
        InputFormat::Json => load_problem_json(&bytes, options),
    }
}

pub fn load_problem_json(bytes: &[u8], options: &LoadOptions) -> Result<DecisionProblem, LoadError> {
    ProblemDocument::from_json(bytes)?.resolve(options)
}

/// The supplier-selection dataset bundled with the crate.
pub const SUPPLIER_SELECTION_JSON: &str = include_str!("../../examples/supplier-selection.json");

pub fn supplier_selection() -> DecisionProblem {
    load_problem_json(SUPPLIER_SELECTION_JSON.as_bytes(), &LoadOptions::default()).expect("bundled dataset is valid")
}
