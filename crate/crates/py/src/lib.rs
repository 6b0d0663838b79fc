//! Python bindings, imported as `evimcdm`.

use std::collections::BTreeSet;

use evimcdm::evidence::{self as ev, EvidenceError, Frame};
use evimcdm::fuzzy::{self, FuzzyError};
use evimcdm::interval::{self as iv, IntervalError};
use evimcdm::io::{self as eio, LoadError, LoadOptions, ProblemDocument, ReportFormat, ReportMode};
use evimcdm::pipeline::{self as pl, CriterionNormalization, PipelineError, RankOptions, WeightGroup};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict, PyString};

mod exc {
    use pyo3::create_exception;
    use pyo3::exceptions::PyValueError;

    create_exception!(
        evimcdm,
        EvimcdmError,
        PyValueError,
        "Base class of every evimcdm error."
    );
    create_exception!(evimcdm, IntervalError, EvimcdmError);
    create_exception!(evimcdm, FuzzyError, EvimcdmError);
    create_exception!(evimcdm, EvidenceError, EvimcdmError);
    create_exception!(evimcdm, TotalConflictError, EvidenceError);
    create_exception!(evimcdm, PipelineError, EvimcdmError);
    create_exception!(evimcdm, LoadError, EvimcdmError);
    create_exception!(evimcdm, ParseError, LoadError);
    create_exception!(evimcdm, SchemaError, LoadError);
    create_exception!(evimcdm, ValidationError, LoadError);
}

fn interval_err(e: IntervalError) -> PyErr {
    exc::IntervalError::new_err(e.to_string())
}

fn fuzzy_err(e: FuzzyError) -> PyErr {
    exc::FuzzyError::new_err(e.to_string())
}

fn evidence_err(e: EvidenceError) -> PyErr {
    match e {
        EvidenceError::TotalConflict(_) => exc::TotalConflictError::new_err(e.to_string()),
        _ => exc::EvidenceError::new_err(e.to_string()),
    }
}

fn pipeline_err(e: PipelineError) -> PyErr {
    let msg = e.to_string();
    match e.root() {
        PipelineError::Evidence(EvidenceError::TotalConflict(_)) => exc::TotalConflictError::new_err(msg),
        PipelineError::Evidence(_) => exc::EvidenceError::new_err(msg),
        PipelineError::Interval(_) => exc::IntervalError::new_err(msg),
        _ => exc::PipelineError::new_err(msg),
    }
}

fn load_err(e: LoadError) -> PyErr {
    let msg = e.to_string();
    match e {
        LoadError::Parse { .. } => exc::ParseError::new_err(msg),
        LoadError::Schema { .. } => exc::SchemaError::new_err(msg),
        LoadError::Validation { .. } => exc::ValidationError::new_err(msg),
    }
}

/// Closed interval `[lo, hi]` of reals.
#[pyclass(name = "Interval", module = "evimcdm", frozen, eq, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq)]
struct Interval(iv::Interval);

#[pymethods]
impl Interval {
    #[new]
    #[pyo3(signature = (lo, hi=None))]
    fn new(lo: f64, hi: Option<f64>) -> PyResult<Self> {
        iv::Interval::new(lo, hi.unwrap_or(lo)).map(Self).map_err(interval_err)
    }

    #[getter]
    fn lo(&self) -> f64 {
        self.0.lo()
    }

    #[getter]
    fn hi(&self) -> f64 {
        self.0.hi()
    }

    #[getter]
    fn width(&self) -> f64 {
        self.0.width()
    }

    fn is_degenerate(&self) -> bool {
        self.0.is_degenerate()
    }

    fn __contains__(&self, x: f64) -> bool {
        self.0.contains(x)
    }

    fn distance(&self, other: PyRef<'_, Interval>) -> f64 {
        self.0.distance(&other.0)
    }

    fn scale(&self, k: f64) -> PyResult<Self> {
        self.0.try_scale(k).map(Self).map_err(interval_err)
    }

    fn recip(&self) -> PyResult<Self> {
        self.0.try_recip().map(Self).map_err(interval_err)
    }

    fn __add__(&self, other: PyRef<'_, Interval>) -> Self {
        Self(self.0 + other.0)
    }

    fn __mul__(&self, other: PyRef<'_, Interval>) -> PyResult<Self> {
        self.0.try_mul(other.0).map(Self).map_err(interval_err)
    }

    fn __truediv__(&self, other: PyRef<'_, Interval>) -> PyResult<Self> {
        self.0.try_div(other.0).map(Self).map_err(interval_err)
    }

    #[allow(clippy::wrong_self_convention)]
    fn to_tuple(&self) -> (f64, f64) {
        (self.0.lo(), self.0.hi())
    }

    fn __repr__(&self) -> String {
        format!("Interval({}, {})", self.0.lo(), self.0.hi())
    }
}

#[pyclass(name = "TriangularFuzzyNumber", module = "evimcdm", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct Tfn(fuzzy::TriangularFuzzyNumber);

#[pymethods]
impl Tfn {
    #[new]
    fn new(a: f64, b: f64, c: f64) -> PyResult<Self> {
        fuzzy::TriangularFuzzyNumber::new(a, b, c).map(Self).map_err(fuzzy_err)
    }

    fn membership(&self, x: f64) -> f64 {
        self.0.membership(x)
    }

    #[pyo3(signature = (alpha=0.0))]
    fn alpha_cut(&self, alpha: f64) -> PyResult<Interval> {
        self.0.alpha_cut(alpha).map(Interval).map_err(fuzzy_err)
    }

    fn __repr__(&self) -> String {
        format!("TriangularFuzzyNumber({}, {}, {})", self.0.a(), self.0.b(), self.0.c())
    }
}

/// A built-in linguistic scale (`"kaufmann-tfn"` or `"interval-default"`).
#[pyclass(name = "LinguisticScale", module = "evimcdm", frozen, skip_from_py_object)]
struct Scale(fuzzy::LinguisticScale);

#[pymethods]
impl Scale {
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        fuzzy::LinguisticScale::builtin(name)
            .map(Self)
            .ok_or_else(|| exc::FuzzyError::new_err(format!("unknown scale {name:?}")))
    }

    #[getter]
    fn name(&self) -> &str {
        self.0.name()
    }

    fn terms(&self) -> Vec<String> {
        self.0.terms().map(str::to_owned).collect()
    }

    #[pyo3(signature = (term, alpha=0.0))]
    fn lookup(&self, term: &str, alpha: f64) -> PyResult<Interval> {
        self.0.lookup_interval(term, alpha).map(Interval).map_err(fuzzy_err)
    }
}

/// A mass function over a frame of up to 16 labels.
#[pyclass(name = "MassFunction", module = "evimcdm", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct MassFunction(ev::MassFunction);

fn subset_labels(key: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
    if let Ok(s) = key.cast::<PyString>() {
        return Ok(vec![s.to_str()?.to_owned()]);
    }
    if let Ok(v) = key.extract::<Vec<String>>() {
        return Ok(v);
    }
    let set: BTreeSet<String> = key.extract()?;
    Ok(set.into_iter().collect())
}

#[pymethods]
impl MassFunction {
    /// `masses` maps subsets (a label, a tuple of labels or a frozenset) to mass.
    #[new]
    fn new(frame: Vec<String>, masses: &Bound<'_, PyDict>) -> PyResult<Self> {
        let frame = Frame::new(frame).map_err(evidence_err)?;
        let mut assignments = Vec::with_capacity(masses.len());
        for (k, v) in masses.iter() {
            let set = frame.subset(&subset_labels(&k)?).map_err(evidence_err)?;
            assignments.push((set, v.extract::<f64>()?));
        }
        ev::MassFunction::new(&frame, assignments)
            .map(Self)
            .map_err(evidence_err)
    }

    /// Mass function over `{IS, NS}` from `m({IS}), m({NS}), m({IS,NS})`.
    #[staticmethod]
    fn ideal(is_: f64, ns: f64, both: f64) -> PyResult<Self> {
        ev::MassFunction::ideal_triple(is_, ns, both)
            .map(Self)
            .map_err(evidence_err)
    }

    #[staticmethod]
    fn vacuous(frame: Vec<String>) -> PyResult<Self> {
        let frame = Frame::new(frame).map_err(evidence_err)?;
        Ok(Self(ev::MassFunction::vacuous(&frame)))
    }

    #[getter]
    fn frame(&self) -> Vec<String> {
        self.0.frame().labels().to_vec()
    }

    fn mass(&self, subset: &Bound<'_, PyAny>) -> PyResult<f64> {
        let set = self.0.frame().subset(&subset_labels(subset)?).map_err(evidence_err)?;
        Ok(self.0.mass(set))
    }

    fn focal_elements(&self) -> Vec<(Vec<String>, f64)> {
        let labels = self.0.frame().labels();
        self.0
            .focal_elements()
            .map(|(s, m)| (s.elements().map(|i| labels[i].clone()).collect(), m))
            .collect()
    }

    /// `(m({IS}), m({NS}), m({IS,NS}))` for a two-element frame.
    fn triple(&self) -> (f64, f64, f64) {
        let [a, b, c] = self.0.triple();
        (a, b, c)
    }

    fn conflict(&self, other: PyRef<'_, MassFunction>) -> PyResult<f64> {
        self.0.conflict(&other.0).map_err(evidence_err)
    }

    fn combine(&self, other: PyRef<'_, MassFunction>) -> PyResult<Self> {
        self.0.combine(&other.0).map(Self).map_err(evidence_err)
    }

    /// Pignistic probability of each frame label.
    fn pignistic(&self) -> Vec<(String, f64)> {
        self.0
            .frame()
            .labels()
            .iter()
            .cloned()
            .zip(self.0.pignistic())
            .collect()
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> = self
            .0
            .focal_elements()
            .map(|(s, m)| format!("{}: {m}", self.0.frame().describe(s)))
            .collect();
        format!("MassFunction({{{}}})", parts.join(", "))
    }
}

#[pyclass(name = "IntervalBpa", module = "evimcdm", frozen, skip_from_py_object)]
#[derive(Clone)]
struct IntervalBpa(pl::IntervalBpa);

#[pymethods]
impl IntervalBpa {
    #[new]
    fn new(left: PyRef<'_, MassFunction>, right: PyRef<'_, MassFunction>) -> PyResult<Self> {
        pl::IntervalBpa::new(left.0.clone(), right.0.clone())
            .map(Self)
            .map_err(pipeline_err)
    }

    #[getter]
    fn left(&self) -> MassFunction {
        MassFunction(self.0.left().clone())
    }

    #[getter]
    fn right(&self) -> MassFunction {
        MassFunction(self.0.right().clone())
    }

    fn discount(&self, w: PyRef<'_, Interval>) -> PyResult<Self> {
        pl::discount_interval_bpa(&self.0, w.0).map(Self).map_err(pipeline_err)
    }

    /// Combines the left and right parts into one classical BPA.
    fn collapse(&self) -> PyResult<MassFunction> {
        pl::collapse_interval_bpa(&self.0)
            .map(MassFunction)
            .map_err(pipeline_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "IntervalBpa(left={:?}, right={:?})",
            self.0.left().triple(),
            self.0.right().triple()
        )
    }
}

#[pyclass(name = "DecisionProblem", module = "evimcdm", frozen, skip_from_py_object)]
struct Problem(pl::DecisionProblem);

fn parse_normalization(s: &str) -> PyResult<CriterionNormalization> {
    s.parse().map_err(|e: String| PyValueError::new_err(e))
}

#[pymethods]
impl Problem {
    #[getter]
    fn alternatives(&self) -> Vec<String> {
        self.0.alternatives().to_vec()
    }

    #[getter]
    fn criteria(&self) -> Vec<String> {
        self.0.criteria().to_vec()
    }

    #[getter]
    fn decision_makers(&self) -> Vec<(String, Interval)> {
        self.0
            .decision_makers()
            .iter()
            .map(|d| (d.label.clone(), Interval(d.weight)))
            .collect()
    }

    fn to_json(&self) -> String {
        ProblemDocument::from_problem(&self.0).to_json()
    }

    #[pyo3(signature = (criterion_normalization="pooled"))]
    fn rank(&self, criterion_normalization: &str) -> PyResult<Report> {
        let options = RankOptions {
            criterion_normalization: parse_normalization(criterion_normalization)?,
        };
        pl::rank_alternatives_with(&self.0, &options)
            .map(Report)
            .map_err(pipeline_err)
    }
}

#[pyclass(name = "RankingReport", module = "evimcdm", frozen, skip_from_py_object)]
struct Report(pl::RankingReport);

#[pymethods]
impl Report {
    #[getter]
    fn alternatives(&self) -> Vec<String> {
        self.0.alternatives.clone()
    }

    /// Alternative labels, best first.
    #[getter]
    fn ranking(&self) -> Vec<String> {
        self.0.ranking_labels().into_iter().map(str::to_owned).collect()
    }

    /// Zero-based input positions, best first.
    #[getter]
    fn ranking_indices(&self) -> Vec<usize> {
        self.0.ranking.clone()
    }

    #[getter]
    fn bet_is(&self) -> Vec<f64> {
        self.0.bet_is.clone()
    }

    #[getter]
    fn collapsed(&self) -> Vec<MassFunction> {
        self.0.collapsed.iter().cloned().map(MassFunction).collect()
    }

    #[getter]
    fn final_bpas(&self) -> Vec<IntervalBpa> {
        self.0.final_bpas.iter().cloned().map(IntervalBpa).collect()
    }

    #[getter]
    fn normalized_dm_weights(&self) -> Vec<Interval> {
        self.0.normalized_dm_weights.iter().copied().map(Interval).collect()
    }

    #[getter]
    fn normalized_criterion_weights(&self) -> Vec<Vec<Interval>> {
        self.0
            .normalized_criterion_weights
            .iter()
            .map(|r| r.iter().copied().map(Interval).collect())
            .collect()
    }

    #[pyo3(signature = (trace=false))]
    fn to_json(&self, trace: bool) -> String {
        eio::emit_report(&self.0, mode(trace), ReportFormat::Json)
    }

    #[pyo3(signature = (trace=false))]
    fn to_table(&self, trace: bool) -> String {
        eio::emit_report(&self.0, mode(trace), ReportFormat::Table)
    }
}

fn mode(trace: bool) -> ReportMode {
    if trace {
        ReportMode::FullTrace
    } else {
        ReportMode::Summary
    }
}

#[pyfunction]
fn combine_all(sources: Vec<PyRef<'_, MassFunction>>) -> PyResult<MassFunction> {
    ev::combine_all(sources.iter().map(|m| &m.0))
        .map(MassFunction)
        .map_err(evidence_err)
}

/// Shafer discounting of a `{IS, NS}` BPA by a crisp reliability.
#[pyfunction]
fn discount(m: PyRef<'_, MassFunction>, w: f64) -> PyResult<MassFunction> {
    pl::discount(&m.0, w).map(MassFunction).map_err(pipeline_err)
}

#[pyfunction]
fn discount_to_interval_bpa(m: PyRef<'_, MassFunction>, w: PyRef<'_, Interval>) -> PyResult<IntervalBpa> {
    pl::discount_to_interval_bpa(&m.0, w.0)
        .map(IntervalBpa)
        .map_err(pipeline_err)
}

#[pyfunction]
fn fuse_interval_bpas(bpas: Vec<PyRef<'_, IntervalBpa>>) -> PyResult<IntervalBpa> {
    let owned: Vec<pl::IntervalBpa> = bpas.iter().map(|b| b.0.clone()).collect();
    pl::fuse_interval_bpas(&owned).map(IntervalBpa).map_err(pipeline_err)
}

/// Divides every interval by the largest endpoint in the group.
#[pyfunction]
fn normalize_weights(weights: Vec<PyRef<'_, Interval>>) -> PyResult<Vec<Interval>> {
    let ws: Vec<iv::Interval> = weights.iter().map(|w| w.0).collect();
    pl::normalize_weight_group(&ws, WeightGroup::Criterion)
        .map(|v| v.into_iter().map(Interval).collect())
        .map_err(pipeline_err)
}

/// Pignistic belief in `{IS}`.
#[pyfunction]
fn bet_ideal(m: PyRef<'_, MassFunction>) -> f64 {
    pl::bet_ideal(&m.0)
}

/// Parses a problem document given as `str` or `bytes`.
#[pyfunction]
#[pyo3(signature = (document, alpha=0.0))]
fn load_problem_json(document: &Bound<'_, PyAny>, alpha: f64) -> PyResult<Problem> {
    let opts = LoadOptions { alpha };
    let result = if let Ok(b) = document.cast::<PyBytes>() {
        eio::load_problem_json(b.as_bytes(), &opts)
    } else {
        let s: String = document.extract()?;
        eio::load_problem_json(s.as_bytes(), &opts)
    };
    result.map(Problem).map_err(load_err)
}

/// The bundled supplier-selection dataset.
#[pyfunction]
fn supplier_selection() -> Problem {
    Problem(eio::supplier_selection())
}

#[pymodule]
#[pyo3(name = "evimcdm")]
fn evimcdm_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<Interval>()?;
    m.add_class::<Tfn>()?;
    m.add_class::<Scale>()?;
    m.add_class::<MassFunction>()?;
    m.add_class::<IntervalBpa>()?;
    m.add_class::<Problem>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(combine_all, m)?)?;
    m.add_function(wrap_pyfunction!(discount, m)?)?;
    m.add_function(wrap_pyfunction!(discount_to_interval_bpa, m)?)?;
    m.add_function(wrap_pyfunction!(fuse_interval_bpas, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_weights, m)?)?;
    m.add_function(wrap_pyfunction!(bet_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(load_problem_json, m)?)?;
    m.add_function(wrap_pyfunction!(supplier_selection, m)?)?;
    m.add("EvimcdmError", py.get_type::<exc::EvimcdmError>())?;
    m.add("IntervalError", py.get_type::<exc::IntervalError>())?;
    m.add("FuzzyError", py.get_type::<exc::FuzzyError>())?;
    m.add("EvidenceError", py.get_type::<exc::EvidenceError>())?;
    m.add("TotalConflictError", py.get_type::<exc::TotalConflictError>())?;
    m.add("PipelineError", py.get_type::<exc::PipelineError>())?;
    m.add("LoadError", py.get_type::<exc::LoadError>())?;
    m.add("ParseError", py.get_type::<exc::ParseError>())?;
    m.add("SchemaError", py.get_type::<exc::SchemaError>())?;
    m.add("ValidationError", py.get_type::<exc::ValidationError>())?;
    Ok(())
}
