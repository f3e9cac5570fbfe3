//! File formats: CSV tables in; DOT, JSON and text out.

pub mod csv;
pub mod dot;
pub mod report;
pub mod structure;

pub use self::csv::{parse_csv, write_csv, CsvError};
pub use self::dot::emit_dot;
pub use self::report::{
    analyze, emit_diagram_json, emit_report, Analysis, AnalysisError, AnalysisReport, ReportFormat,
};
pub use self::structure::render_structure;
