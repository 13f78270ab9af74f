//! Evaluation reports: one row per algorithm in canonical suite order,
//! rendered to JSON (schema `schema/report.schema.json`) and CSV.
//!
//! Wall-clock fit times are deliberately absent here — they go to the
//! unhashed `timings_<suite>.csv` sidecar so repeated runs produce
//! byte-identical reports.

use serde::Serialize;
use thermoforge_core::metrics::ConfusionMatrix;
use thermoforge_core::{Error, Result};

pub const REPORT_SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize)]
pub struct EvaluationReport<R> {
    pub schema_version: String,
    pub suite: String,
    pub config_fingerprint: String,
    /// Feature columns the suite trained on, in input order.
    pub features_used: Vec<String>,
    pub rows: Vec<R>,
}

impl<R: Serialize + CsvRow> EvaluationReport<R> {
    pub fn new(
        suite: &str,
        fingerprint: &str,
        features_used: Vec<String>,
        rows: Vec<R>,
    ) -> EvaluationReport<R> {
        EvaluationReport {
            schema_version: REPORT_SCHEMA_VERSION.to_string(),
            suite: suite.to_string(),
            config_fingerprint: fingerprint.to_string(),
            features_used,
            rows,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Unsupported(format!("report serialization: {e}")))?;
        text.push('\n');
        Ok(text)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(R::HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.record());
            out.push('\n');
        }
        out
    }
}

/// CSV rendering for one report row. Floats use shortest round-trip
/// formatting; absent metrics render as empty cells.
pub trait CsvRow {
    const HEADER: &'static str;
    fn record(&self) -> String;
}

fn cell(v: f64) -> String {
    format!("{v}")
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(cell).unwrap_or_default()
}

#[derive(Clone, Debug, Serialize)]
pub struct RegressionRow {
    pub algorithm: String,
    pub mse: f64,
    pub mae: f64,
    pub rmse: f64,
    /// Absent when the test target is constant and the fit imperfect.
    pub r2: Option<f64>,
}

impl CsvRow for RegressionRow {
    const HEADER: &'static str = "algorithm,mse,mae,rmse,r2";

    fn record(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.algorithm,
            cell(self.mse),
            cell(self.mae),
            cell(self.rmse),
            opt_cell(self.r2)
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRow {
    pub algorithm: String,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    pub f1: f64,
    /// Absent when the test truth contains a single class.
    pub roc_auc: Option<f64>,
    pub confusion: ConfusionMatrix,
}

impl CsvRow for ClassificationRow {
    const HEADER: &'static str = "algorithm,train_accuracy,test_accuracy,f1,roc_auc,tn,fp,fn,tp";

    fn record(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.algorithm,
            cell(self.train_accuracy),
            cell(self.test_accuracy),
            cell(self.f1),
            opt_cell(self.roc_auc),
            self.confusion.true_negative,
            self.confusion.false_positive,
            self.confusion.false_negative,
            self.confusion.true_positive
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PinnRow {
    pub algorithm: String,
    /// Test errors in °C; absent when the split leaves no test rows.
    pub rmse_celsius: Option<f64>,
    pub mae_celsius: Option<f64>,
    pub initial_total_loss: f64,
    pub final_total_loss: f64,
    pub epochs: usize,
}

impl CsvRow for PinnRow {
    const HEADER: &'static str =
        "algorithm,rmse_celsius,mae_celsius,initial_total_loss,final_total_loss,epochs";

    fn record(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.algorithm,
            opt_cell(self.rmse_celsius),
            opt_cell(self.mae_celsius),
            cell(self.initial_total_loss),
            cell(self.final_total_loss),
            self.epochs
        )
    }
}

/// Render the fit-time sidecar: `algorithm,seconds` at 4 decimals.
pub fn timings_csv(timings: &[(String, f64)]) -> String {
    let mut out = String::from("algorithm,seconds\n");
    for (algorithm, seconds) in timings {
        out.push_str(&format!("{algorithm},{seconds:.4}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EvaluationReport<RegressionRow> {
        EvaluationReport::new(
            "regress",
            "deadbeef",
            vec!["a".into(), "b".into()],
            vec![
                RegressionRow {
                    algorithm: "svr".into(),
                    mse: 1.5,
                    mae: 1.0,
                    rmse: 1.224744871391589,
                    r2: Some(0.25),
                },
                RegressionRow {
                    algorithm: "decision_tree".into(),
                    mse: 0.5,
                    mae: 0.5,
                    rmse: 0.5f64.sqrt(),
                    r2: None,
                },
            ],
        )
    }

    #[test]
    fn csv_has_header_and_one_line_per_row() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "algorithm,mse,mae,rmse,r2");
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "svr,1.5,1,1.224744871391589,0.25");
        assert!(
            lines[2].ends_with(','),
            "absent r2 must render empty: {}",
            lines[2]
        );
    }

    #[test]
    fn json_round_trips_floats_exactly() {
        let json = sample().to_json().unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(
            value["rows"][0]["rmse"].as_f64().unwrap(),
            1.224744871391589
        );
        assert_eq!(value["schema_version"], "1");
        assert!(value["rows"][1]["r2"].is_null());
    }

    #[test]
    fn timings_render_to_four_decimals() {
        let csv = timings_csv(&[("svr".into(), 0.123456), ("tree".into(), 2.0)]);
        assert_eq!(csv, "algorithm,seconds\nsvr,0.1235\ntree,2.0000\n");
    }

    #[test]
    fn classification_row_flattens_the_confusion_matrix() {
        let row = ClassificationRow {
            algorithm: "logistic".into(),
            train_accuracy: 1.0,
            test_accuracy: 0.5,
            f1: 0.5,
            roc_auc: Some(0.75),
            confusion: ConfusionMatrix {
                true_negative: 3,
                false_positive: 1,
                false_negative: 2,
                true_positive: 4,
            },
        };
        assert_eq!(row.record(), "logistic,1,0.5,0.5,0.75,3,1,2,4");
    }
}
