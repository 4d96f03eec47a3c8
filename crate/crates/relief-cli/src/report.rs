//! JSON reports and the before/after table printed to standard output.

use relief::stats::{MeshStats, StatsPair};
use serde::Serialize;

/// One row of the report: size in binary kilobytes (1 KB = 1024 bytes)
/// plus element counts.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SizeEntry {
    pub size_kb: f64,
    pub vertices: usize,
    pub faces: usize,
}

impl From<MeshStats> for SizeEntry {
    fn from(stats: MeshStats) -> Self {
        Self {
            size_kb: stats.size_kb(),
            vertices: stats.vertex_count,
            faces: stats.face_count,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReductionsPct {
    pub size: f64,
    pub vertices: f64,
    pub faces: f64,
}

impl From<&StatsPair> for ReductionsPct {
    fn from(pair: &StatsPair) -> Self {
        Self {
            size: pair.size_reduction_pct,
            vertices: pair.vertex_reduction_pct,
            faces: pair.face_reduction_pct,
        }
    }
}

/// The machine-readable report. Every derived field is computed from
/// the before/after entries also present in the document, so the file
/// stands on its own.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Report {
    pub before: SizeEntry,
    pub after: SizeEntry,
    pub reductions_pct: ReductionsPct,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_reached: Option<bool>,
}

impl Report {
    pub fn new(pair: &StatsPair, target_reached: Option<bool>) -> Self {
        Self {
            before: pair.before.into(),
            after: pair.after.into(),
            reductions_pct: pair.into(),
            target_reached,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Three-row table in the layout Dataset / Sizes (KB) / Vertices /
/// Faces.
pub fn render_table(pair: &StatsPair) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "{:<16}{:>14}{:>12}{:>12}\n",
        "Dataset", "Sizes (KB)", "Vertices", "Faces"
    ));
    for (label, stats) in [("before", &pair.before), ("after", &pair.after)] {
        s.push_str(&format!(
            "{:<16}{:>14.2}{:>12}{:>12}\n",
            label,
            stats.size_kb(),
            stats.vertex_count,
            stats.face_count
        ));
    }
    s.push_str(&format!(
        "{:<16}{:>14.2}{:>12.2}{:>12.2}\n",
        "reduction (%)",
        pair.size_reduction_pct,
        pair.vertex_reduction_pct,
        pair.face_reduction_pct
    ));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> StatsPair {
        StatsPair::new(
            MeshStats {
                vertex_count: 322202,
                face_count: 632468,
                file_size_bytes: 9331 * 1024,
            },
            MeshStats {
                vertex_count: 18042,
                face_count: 30116,
                file_size_bytes: 3497 * 1024,
            },
        )
    }

    #[test]
    fn report_fields_are_internally_consistent() {
        let report = Report::new(&pair(), Some(true));
        let recomputed = 100.0 * (report.before.size_kb - report.after.size_kb)
            / report.before.size_kb;
        assert!((report.reductions_pct.size - recomputed).abs() < 1e-9);
        let rv = 100.0 * (report.before.vertices as f64 - report.after.vertices as f64)
            / report.before.vertices as f64;
        assert!((report.reductions_pct.vertices - rv).abs() < 1e-9);
    }

    #[test]
    fn json_shape_and_trailing_newline() {
        let json = Report::new(&pair(), Some(true)).to_json();
        assert!(json.ends_with('\n'));
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["before"]["vertices"], 322202);
        assert_eq!(value["after"]["faces"], 30116);
        assert_eq!(value["target_reached"], true);
        assert!((value["reductions_pct"]["size"].as_f64().unwrap() - 62.5227).abs() < 1e-3);
    }

    #[test]
    fn stats_report_omits_target_field() {
        let json = Report::new(&pair(), None).to_json();
        assert!(!json.contains("target_reached"));
    }

    #[test]
    fn table_layout_matches_columns() {
        let table = render_table(&pair());
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("Dataset"));
        assert!(lines[0].contains("Sizes (KB)"));
        assert!(lines[1].contains("322202"));
        assert!(lines[2].contains("30116"));
        assert!(lines[3].starts_with("reduction (%)"));
        assert!(lines[3].contains("62.52"));
    }
}
