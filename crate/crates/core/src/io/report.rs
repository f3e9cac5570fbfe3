//! The end-to-end analysis of a judgment table and its JSON / text reports.

use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::hasse::{HasseDiagram, HasseError};
use crate::natural::{natural_cmp, sort_natural};
use crate::order::{analyze_order, Execution, OrderAnalysis, OrderError};
use crate::table::{Flexibility, JudgmentTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Hasse(#[from] HasseError),
}

/// Classes, order and diagram for one table at one flexibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub flexibility: Flexibility,
    pub order: OrderAnalysis,
    pub diagram: HasseDiagram,
}

pub fn analyze(
    table: &JudgmentTable,
    alpha: Flexibility,
    execution: Execution,
) -> Result<Analysis, AnalysisError> {
    let order = analyze_order(table, alpha, execution)?;
    let diagram = HasseDiagram::from_order(table, &order)?;
    Ok(Analysis {
        flexibility: alpha,
        order,
        diagram,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlexibilityReport {
    pub percent: String,
    pub basis_points: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub representative: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountsReport {
    pub p: String,
    pub q: String,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub n4: u64,
}

/// Serialized in field order. Name pairs are `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub targets: Vec<String>,
    pub flexibility: FlexibilityReport,
    pub classes: Vec<ClassReport>,
    pub relation: Vec<[String; 2]>,
    pub hasse: Vec<[String; 2]>,
    pub layers: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<CountsReport>>,
}

impl AnalysisReport {
    /// Assembles the report. With `with_counts`, pair counts are listed for
    /// every ordered pair of distinct targets.
    pub fn new(table: &JudgmentTable, analysis: &Analysis, with_counts: bool) -> Self {
        let name = |i: usize| table.targets()[i].name.clone();
        let mut targets: Vec<String> = table.targets().iter().map(|t| t.name.clone()).collect();
        sort_natural(&mut targets);

        let classes = analysis
            .order
            .classes
            .blocks()
            .iter()
            .map(|b| ClassReport {
                representative: name(b.representative),
                members: b.members.iter().map(|&m| name(m)).collect(),
            })
            .collect();

        let matrix = &analysis.order.matrix;
        let mut relation: Vec<[String; 2]> = matrix
            .bits
            .pairs()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| [name(matrix.reps[a]), name(matrix.reps[b])])
            .collect();
        sort_pairs(&mut relation);

        let hasse = analysis
            .diagram
            .edge_names()
            .into_iter()
            .map(|(lo, hi)| [lo.to_owned(), hi.to_owned()])
            .collect();

        let counts = with_counts.then(|| {
            let mut order: Vec<usize> = (0..table.target_count()).collect();
            order.sort_by(|&a, &b| natural_cmp(&table.targets()[a].name, &table.targets()[b].name));
            let mut out = Vec::new();
            for &p in &order {
                for &q in &order {
                    if p == q {
                        continue;
                    }
                    let c = table.pair_counts(p, q).expect("target indices in range");
                    out.push(CountsReport {
                        p: name(p),
                        q: name(q),
                        n1: c.n1,
                        n2: c.n2,
                        n3: c.n3,
                        n4: c.n4,
                    });
                }
            }
            out
        });

        AnalysisReport {
            targets,
            flexibility: FlexibilityReport {
                percent: analysis.flexibility.percent_text(),
                basis_points: analysis.flexibility.basis_points(),
            },
            classes,
            relation,
            hasse,
            layers: analysis.diagram.layer_names(),
            counts,
        }
    }
}

fn sort_pairs(pairs: &mut [[String; 2]]) {
    pairs.sort_by(|a, b| natural_cmp(&a[0], &b[0]).then_with(|| natural_cmp(&a[1], &b[1])));
}

pub fn emit_report(report: &AnalysisReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => render_text(report),
    }
}

fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "targets: {}", report.targets.join(" "));
    let _ = writeln!(
        out,
        "flexibility: {}% ({} basis points)",
        report.flexibility.percent, report.flexibility.basis_points
    );
    let _ = writeln!(out, "classes:");
    for c in &report.classes {
        let _ = writeln!(out, "  {} = {{{}}}", c.representative, c.members.join(","));
    }
    let _ = writeln!(out, "relation:");
    for [lo, hi] in &report.relation {
        let _ = writeln!(out, "  {lo} -> {hi}");
    }
    let _ = writeln!(out, "hasse:");
    for [lo, hi] in &report.hasse {
        let _ = writeln!(out, "  {lo} -> {hi}");
    }
    let _ = writeln!(out, "layers:");
    for (i, layer) in report.layers.iter().enumerate() {
        let _ = writeln!(out, "  {i}: {}", layer.join(" "));
    }
    if let Some(counts) = &report.counts {
        let _ = writeln!(out, "counts:");
        for c in counts {
            let _ = writeln!(
                out,
                "  {} {}: n1={} n2={} n3={} n4={}",
                c.p, c.q, c.n1, c.n2, c.n3, c.n4
            );
        }
    }
    out
}

/// JSON form of a diagram on its own, for `hasse --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramNode {
    pub name: String,
    pub members: Vec<String>,
    pub layer: usize,
}

pub fn emit_diagram_json(diagram: &HasseDiagram) -> String {
    let report = DiagramReport {
        nodes: diagram
            .nodes
            .iter()
            .zip(&diagram.layers)
            .map(|(n, &layer)| DiagramNode {
                name: n.name.clone(),
                members: n.members.clone(),
                layer,
            })
            .collect(),
        edges: diagram
            .edge_names()
            .into_iter()
            .map(|(a, b)| [a.to_owned(), b.to_owned()])
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&report).expect("diagram serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::table4;

    fn report(table: &JudgmentTable, bp: u32, counts: bool) -> AnalysisReport {
        let alpha = Flexibility::from_basis_points(bp).unwrap();
        AnalysisReport::new(
            table,
            &analyze(table, alpha, Execution::Serial).unwrap(),
            counts,
        )
    }

    #[test]
    fn table4_report_json() {
        let json = emit_report(&report(&table4(), 0, false), ReportFormat::Json);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(
            value["classes"][0],
            serde_json::json!({"representative": "t1", "members": ["t0", "t1"]})
        );
        assert_eq!(
            value["flexibility"],
            serde_json::json!({"percent": "0.00", "basis_points": 0})
        );
        assert_eq!(value["hasse"].as_array().unwrap().len(), 12);
        assert!(value.get("counts").is_none());
        let positions: Vec<usize> = [
            "targets",
            "flexibility",
            "classes",
            "relation",
            "hasse",
            "layers",
        ]
        .iter()
        .map(|k| json.find(&format!("\"{k}\"")).unwrap())
        .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn antichain_has_empty_relation() {
        let t =
            JudgmentTable::build(&["a", "b"], &["M1", "M2"], &[vec![1, 0], vec![0, 1]]).unwrap();
        let r = report(&t, 0, false);
        assert!(r.relation.is_empty());
        assert!(emit_report(&r, ReportFormat::Json).contains("\"relation\": []"));
    }

    #[test]
    fn report_is_byte_deterministic() {
        let t = table4();
        for format in [ReportFormat::Json, ReportFormat::Text] {
            assert_eq!(
                emit_report(&report(&t, 2000, true), format),
                emit_report(&report(&t, 2000, true), format)
            );
        }
    }

    #[test]
    fn counts_section() {
        let r = report(&table4(), 0, true);
        let counts = r.counts.as_ref().unwrap();
        assert_eq!(counts.len(), 90);
        let c = counts.iter().find(|c| c.p == "t5" && c.q == "t6").unwrap();
        assert_eq!((c.n1, c.n2, c.n3, c.n4), (9, 0, 1, 2));
        assert!(emit_report(&r, ReportFormat::Text).contains("  t5 t6: n1=9 n2=0 n3=1 n4=2\n"));
    }

    #[test]
    fn text_report_layout() {
        let text = emit_report(&report(&table4(), 0, false), ReportFormat::Text);
        assert!(text.starts_with("targets: t0 t1 t2 t3 t4 t5 t6 t7 t8 t9\nflexibility: 0.00% (0 basis points)\nclasses:\n  t1 = {t0,t1}\n"));
        assert!(text
            .contains("layers:\n  0: t1\n  1: t4 t6\n  2: t2 t5\n  3: t3 t9\n  4: t8\n  5: t7\n"));
    }

    #[test]
    fn diagram_json() {
        let t = table4();
        let a = analyze(&t, Flexibility::ZERO, Execution::Serial).unwrap();
        let value: serde_json::Value =
            serde_json::from_str(&emit_diagram_json(&a.diagram)).unwrap();
        assert_eq!(
            value["nodes"][0],
            serde_json::json!({"name": "t1", "members": ["t0", "t1"], "layer": 0})
        );
        assert_eq!(value["edges"][0], serde_json::json!(["t1", "t4"]));
    }
}
