//! Dempster–Shafer mass functions over small finite frames.
//!
//! Subsets of a frame are bitmasks over the frame's element order, so a frame
//! holds at most [`MAX_FRAME_SIZE`] hypotheses.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub const MAX_FRAME_SIZE: usize = 16;

/// Combination is undefined once the conflict reaches `1 - TOTAL_CONFLICT_MARGIN`.
pub const TOTAL_CONFLICT_MARGIN: f64 = 1e-12;

/// Largest deviation of the mass total from 1 that is renormalized away.
pub const DEFAULT_SUM_TOLERANCE: f64 = 1e-6;

/// Negative masses no smaller than this are rounding noise and read as zero.
const NEGATIVE_NOISE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvidenceError {
    #[error("frame of discernment must contain at least one hypothesis")]
    EmptyFrame,
    #[error("frame has {0} hypotheses; at most {MAX_FRAME_SIZE} are supported")]
    FrameTooLarge(usize),
    #[error("duplicate hypothesis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown hypothesis label {0:?}")]
    UnknownLabel(String),
    #[error("the empty set cannot carry mass")]
    EmptyFocalSet,
    #[error("subset {bits:#b} lies outside a frame of {size} hypotheses")]
    SubsetOutOfFrame { bits: u32, size: usize },
    #[error("negative mass {0}")]
    NegativeMass(f64),
    #[error("non-finite mass {0}")]
    NonFiniteMass(f64),
    #[error("masses sum to {sum}, not 1")]
    MassSumViolation { sum: f64 },
    #[error("mass functions are defined on different frames")]
    FrameMismatch,
    #[error("total conflict (K = {0}); Dempster's rule is undefined")]
    TotalConflict(f64),
    #[error("no evidence to combine")]
    EmptyEvidenceList,
}

/// An ordered, duplicate-free list of hypothesis labels.
#[derive(Clone)]
pub struct Frame {
    labels: Arc<[String]>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(EvidenceError::EmptyFrame);
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(EvidenceError::FrameTooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(EvidenceError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels: labels.into() })
    }

    /// The `{IS, NS}` frame: ideal versus negative-ideal solution.
    pub fn ideal_binary() -> Self {
        static FRAME: OnceLock<Frame> = OnceLock::new();
        FRAME
            .get_or_init(|| Frame::new(["IS", "NS"]).expect("static frame"))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn full(&self) -> FocalSet {
        FocalSet(((1u32 << self.len()) - 1) as u16)
    }

    pub fn singleton(&self, index: usize) -> Option<FocalSet> {
        (index < self.len()).then(|| FocalSet(1 << index))
    }

    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<FocalSet, EvidenceError> {
        let mut bits = 0u16;
        for l in labels {
            let l = l.as_ref();
            let i = self
                .labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| EvidenceError::UnknownLabel(l.to_owned()))?;
            bits |= 1 << i;
        }
        Ok(FocalSet(bits))
    }

    fn check(&self, set: FocalSet) -> Result<(), EvidenceError> {
        if set.is_empty() {
            return Err(EvidenceError::EmptyFocalSet);
        }
        if u32::from(set.0) & !u32::from(self.full().0) != 0 {
            return Err(EvidenceError::SubsetOutOfFrame {
                bits: set.0.into(),
                size: self.len(),
            });
        }
        Ok(())
    }

    /// Renders a subset as `{A,B}` using this frame's labels.
    pub fn describe(&self, set: FocalSet) -> String {
        let names: Vec<&str> = set
            .elements()
            .filter_map(|i| self.labels.get(i).map(String::as_str))
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// A subset of a frame, encoded as a bitmask over element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FocalSet(u16);

impl FocalSet {
    pub const fn from_bits(bits: u16) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn intersection(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 & other.0)
    }

    pub const fn contains(self, index: usize) -> bool {
        index < 16 && self.0 & (1 << index) != 0
    }

    pub const fn is_subset_of(self, other: FocalSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.contains(i))
    }
}

/// A basic probability assignment: non-negative masses on non-empty subsets
/// summing to one. Zero masses are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    masses: BTreeMap<FocalSet, f64>,
}

impl MassFunction {
    /// Validates `assignments` and renormalizes totals within
    /// [`DEFAULT_SUM_TOLERANCE`] of one. Repeated subsets accumulate.
    pub fn new<I>(frame: &Frame, assignments: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        Self::with_tolerance(frame, assignments, DEFAULT_SUM_TOLERANCE)
    }

    pub fn with_tolerance<I>(frame: &Frame, assignments: I, sum_tolerance: f64) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        let mut masses = BTreeMap::new();
        for (set, mass) in assignments {
            frame.check(set)?;
            if !mass.is_finite() {
                return Err(EvidenceError::NonFiniteMass(mass));
            }
            if mass < -NEGATIVE_NOISE {
                return Err(EvidenceError::NegativeMass(mass));
            }
            *masses.entry(set).or_insert(0.0) += mass.max(0.0);
        }
        let sum: f64 = masses.values().sum();
        if (sum - 1.0).abs() > sum_tolerance {
            return Err(EvidenceError::MassSumViolation { sum });
        }
        masses.retain(|_, m| *m > 0.0);
        if sum != 1.0 {
            masses.values_mut().for_each(|m| *m /= sum);
        }
        Ok(Self {
            frame: frame.clone(),
            masses,
        })
    }

    /// Total ignorance: all mass on the whole frame.
    pub fn vacuous(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            masses: BTreeMap::from([(frame.full(), 1.0)]),
        }
    }

    /// Mass function over `{IS, NS}` from `(m({IS}), m({NS}), m({IS,NS}))`.
    pub fn ideal_triple(is: f64, ns: f64, both: f64) -> Result<Self, EvidenceError> {
        Self::ideal_triple_with_tolerance(is, ns, both, DEFAULT_SUM_TOLERANCE)
    }

    pub fn ideal_triple_with_tolerance(is: f64, ns: f64, both: f64, tol: f64) -> Result<Self, EvidenceError> {
        let frame = Frame::ideal_binary();
        Self::with_tolerance(&frame, [(IS, is), (NS, ns), (IS_NS, both)], tol)
    }

    pub(crate) fn from_validated(frame: Frame, masses: BTreeMap<FocalSet, f64>) -> Self {
        Self { frame, masses }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn mass(&self, set: FocalSet) -> f64 {
        self.masses.get(&set).copied().unwrap_or(0.0)
    }

    /// Focal elements in ascending bitmask order.
    pub fn focal_elements(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.masses.iter().map(|(s, m)| (*s, *m))
    }

    pub fn is_vacuous(&self) -> bool {
        self.masses.len() == 1 && self.mass(self.frame.full()) == 1.0
    }

    /// `(m({IS}), m({NS}), m({IS,NS}))` on a two-element frame.
    pub fn triple(&self) -> [f64; 3] {
        [self.mass(IS), self.mass(NS), self.mass(IS_NS)]
    }

    /// Largest absolute mass difference over all subsets.
    pub fn max_abs_diff(&self, other: &MassFunction) -> f64 {
        let mut keys: Vec<FocalSet> = self.masses.keys().chain(other.masses.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|k| (self.mass(k) - other.mass(k)).abs())
            .fold(0.0, f64::max)
    }

    /// Conflict coefficient `K`: total product mass of disjoint focal pairs.
    pub fn conflict(&self, other: &MassFunction) -> Result<f64, EvidenceError> {
        if self.frame != other.frame {
            return Err(EvidenceError::FrameMismatch);
        }
        let mut k = 0.0;
        for (x, mx) in &self.masses {
            for (y, my) in &other.masses {
                if x.intersection(*y).is_empty() {
                    k += mx * my;
                }
            }
        }
        Ok(k)
    }

    /// Dempster's rule of combination.
    pub fn combine(&self, other: &MassFunction) -> Result<MassFunction, EvidenceError> {
        if self.frame != other.frame {
            return Err(EvidenceError::FrameMismatch);
        }
        let mut joint: BTreeMap<FocalSet, f64> = BTreeMap::new();
        let mut k = 0.0;
        for (x, mx) in &self.masses {
            for (y, my) in &other.masses {
                let z = x.intersection(*y);
                if z.is_empty() {
                    k += mx * my;
                } else {
                    *joint.entry(z).or_insert(0.0) += mx * my;
                }
            }
        }
        if k >= 1.0 - TOTAL_CONFLICT_MARGIN {
            return Err(EvidenceError::TotalConflict(k));
        }
        let norm = 1.0 - k;
        joint.retain(|_, m| *m > 0.0);
        joint.values_mut().for_each(|m| *m /= norm);
        Ok(Self::from_validated(self.frame.clone(), joint))
    }

    /// Pignistic probabilities, one per frame element in frame order.
    pub fn pignistic(&self) -> Vec<f64> {
        let mut bet = vec![0.0; self.frame.len()];
        for (set, m) in &self.masses {
            let share = m / set.len() as f64;
            for i in set.elements() {
                bet[i] += share;
            }
        }
        bet
    }
}

/// Left fold of [`MassFunction::combine`] in input order.
pub fn combine_all<'a, I>(sources: I) -> Result<MassFunction, EvidenceError>
where
    I: IntoIterator<Item = &'a MassFunction>,
{
    let mut iter = sources.into_iter();
    let first = iter.next().ok_or(EvidenceError::EmptyEvidenceList)?;
    iter.try_fold(first.clone(), |acc, m| acc.combine(m))
}

pub const IS: FocalSet = FocalSet(0b01);
pub const NS: FocalSet = FocalSet(0b10);
pub const IS_NS: FocalSet = FocalSet(0b11);
