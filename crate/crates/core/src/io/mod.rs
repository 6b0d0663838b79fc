//! Problem ingestion and report emission.

pub mod problem;
pub mod report;

pub use problem::{
    load_problem, load_problem_json, supplier_selection, InputFormat, LoadError, LoadOptions, ProblemDocument,
    SUPPLIER_SELECTION_JSON,
};
pub use report::{emit_report, fmt4, ReportDocument, ReportFormat, ReportMode};
