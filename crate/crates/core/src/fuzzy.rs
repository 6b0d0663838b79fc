//! Triangular fuzzy numbers and linguistic term scales.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{Interval, IntervalError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("invalid triangular fuzzy number ({a}, {b}, {c}): require finite a <= b <= c")]
    InvalidTfn { a: f64, b: f64, c: f64 },
    #[error("alpha level {0} is outside [0, 1]")]
    InvalidAlpha(f64),
    #[error("unknown term {term:?} in scale {scale:?}; valid terms: {}", valid.join(", "))]
    UnknownTerm {
        scale: String,
        term: String,
        valid: Vec<String>,
    },
    #[error("duplicate term {term:?} in scale {scale:?}")]
    DuplicateTerm { scale: String, term: String },
    #[error("term {term:?} does not match the value kind of scale {scale:?}")]
    KindMismatch { scale: String, term: String },
    #[error("unknown scale {0:?}")]
    UnknownScale(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// Triangular fuzzy number `(a, b, c)`: support `[a, c]`, peak at `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct TriangularFuzzyNumber {
    a: f64,
    b: f64,
    c: f64,
}

impl TriangularFuzzyNumber {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        let finite = a.is_finite() && b.is_finite() && c.is_finite();
        if !finite || a > b || b > c {
            return Err(FuzzyError::InvalidTfn { a, b, c });
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Piecewise-linear membership. A collapsed flank (`a == b` or `b == c`)
    /// yields 1 at the shared point.
    pub fn membership(&self, x: f64) -> f64 {
        if x < self.a || x > self.c {
            0.0
        } else if x == self.b {
            1.0
        } else if x < self.b {
            (x - self.a) / (self.b - self.a)
        } else {
            (self.c - x) / (self.c - self.b)
        }
    }

    /// The alpha-cut `[a + alpha (b - a), c - alpha (c - b)]`; `alpha = 0`
    /// gives the support.
    pub fn alpha_cut(&self, alpha: f64) -> Result<Interval, FuzzyError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(FuzzyError::InvalidAlpha(alpha));
        }
        let lo = self.a + alpha * (self.b - self.a);
        let hi = self.c - alpha * (self.c - self.b);
        Ok(Interval::new(lo, hi)?)
    }
}

impl TryFrom<[f64; 3]> for TriangularFuzzyNumber {
    type Error = FuzzyError;

    fn try_from(v: [f64; 3]) -> Result<Self, Self::Error> {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<TriangularFuzzyNumber> for [f64; 3] {
    fn from(t: TriangularFuzzyNumber) -> Self {
        [t.a, t.b, t.c]
    }
}

/// Embeds a crisp non-negative number as `[x, x]`.
pub fn crisp_to_interval(x: f64) -> Result<Interval, IntervalError> {
    if !x.is_finite() || x < 0.0 {
        return Err(IntervalError::InvalidInterval {
            lo: x,
            hi: x,
            reason: "crisp weight must be finite and non-negative",
        });
    }
    Interval::point(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleKind {
    Interval,
    Tfn,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleValue {
    Interval(Interval),
    Tfn(TriangularFuzzyNumber),
}

impl ScaleValue {
    /// Interval view of the value; fuzzy numbers are cut at `alpha`.
    pub fn to_interval(&self, alpha: f64) -> Result<Interval, FuzzyError> {
        match self {
            ScaleValue::Interval(iv) => Ok(*iv),
            ScaleValue::Tfn(t) => t.alpha_cut(alpha),
        }
    }
}

/// An ordered term → value mapping. All values share one [`ScaleKind`].
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticScale {
    name: String,
    kind: ScaleKind,
    entries: Vec<(String, ScaleValue)>,
}

pub const KAUFMANN_TFN: &str = "kaufmann-tfn";
pub const INTERVAL_DEFAULT: &str = "interval-default";

const TERMS: [&str; 5] = ["Very low (VL)", "Low (L)", "Medium (M)", "High (H)", "Very high (VH)"];

impl LinguisticScale {
    pub fn new(name: impl Into<String>, kind: ScaleKind) -> Self {
        Self {
            name: name.into(),
            kind,
            entries: Vec::new(),
        }
    }

    pub fn with_interval(mut self, term: &str, value: Interval) -> Result<Self, FuzzyError> {
        self.push(term, ScaleValue::Interval(value))?;
        Ok(self)
    }

    pub fn with_tfn(mut self, term: &str, value: TriangularFuzzyNumber) -> Result<Self, FuzzyError> {
        self.push(term, ScaleValue::Tfn(value))?;
        Ok(self)
    }

    /// Appends a term; the value variant must match the scale kind.
    pub fn push(&mut self, term: &str, value: ScaleValue) -> Result<(), FuzzyError> {
        if self.entries.iter().any(|(t, _)| t == term) {
            return Err(FuzzyError::DuplicateTerm {
                scale: self.name.clone(),
                term: term.to_owned(),
            });
        }
        let matches = matches!(
            (self.kind, value),
            (ScaleKind::Interval, ScaleValue::Interval(_)) | (ScaleKind::Tfn, ScaleValue::Tfn(_))
        );
        if !matches {
            return Err(FuzzyError::KindMismatch {
                scale: self.name.clone(),
                term: term.to_owned(),
            });
        }
        self.entries.push((term.to_owned(), value));
        Ok(())
    }

    /// Linguistic importance terms as triangular fuzzy numbers.
    pub fn kaufmann_tfn() -> Self {
        let values = [
            (0.0, 0.1, 0.3),
            (0.1, 0.3, 0.5),
            (0.3, 0.5, 0.7),
            (0.5, 0.7, 0.9),
            (0.7, 0.9, 1.0),
        ];
        let mut scale = Self::new(KAUFMANN_TFN, ScaleKind::Tfn);
        for (term, (a, b, c)) in TERMS.iter().zip(values) {
            scale
                .entries
                .push(((*term).to_owned(), ScaleValue::Tfn(TriangularFuzzyNumber { a, b, c })));
        }
        scale
    }

    /// Linguistic importance terms as intervals.
    pub fn interval_default() -> Self {
        let values = [(0.0, 0.3), (0.1, 0.5), (0.3, 0.7), (0.5, 0.9), (0.7, 1.0)];
        let mut scale = Self::new(INTERVAL_DEFAULT, ScaleKind::Interval);
        for (term, (lo, hi)) in TERMS.iter().zip(values) {
            scale.entries.push((
                (*term).to_owned(),
                ScaleValue::Interval(Interval::new(lo, hi).expect("built-in scale literal")),
            ));
        }
        scale
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            KAUFMANN_TFN => Some(Self::kaufmann_tfn()),
            INTERVAL_DEFAULT => Some(Self::interval_default()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ScaleKind {
        self.kind
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(t, _)| t.as_str())
    }

    pub fn entries(&self) -> &[(String, ScaleValue)] {
        &self.entries
    }

    pub fn lookup(&self, term: &str) -> Result<ScaleValue, FuzzyError> {
        self.entries
            .iter()
            .find(|(t, _)| t == term)
            .map(|(_, v)| *v)
            .ok_or_else(|| FuzzyError::UnknownTerm {
                scale: self.name.clone(),
                term: term.to_owned(),
                valid: self.terms().map(str::to_owned).collect(),
            })
    }

    pub fn lookup_interval(&self, term: &str, alpha: f64) -> Result<Interval, FuzzyError> {
        self.lookup(term)?.to_interval(alpha)
    }
}
