//! Run configuration: strict JSON parsing, defaults, fingerprinting.
//!
//! Unknown keys are rejected with the offending JSON path so typos like
//! `leerning_rate` fail loudly instead of silently using a default. The
//! fingerprint hashes the *effective* configuration (defaults expanded,
//! seed overrides applied) minus the output directory, so it changes
//! exactly when a setting that influences artifact content changes.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thermoforge_core::data::{
    COL_MATERIAL_FLOW, COL_ROTATIONAL_RATE, COL_TOOL_DIAMETER, COL_TRAVEL_SPEED,
};
use thermoforge_core::physics::Collocation;
use thermoforge_core::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    Regress,
    Pinn,
    Classify,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 3] = [SuiteKind::Regress, SuiteKind::Pinn, SuiteKind::Classify];

    pub fn id(self) -> &'static str {
        match self {
            SuiteKind::Regress => "regress",
            SuiteKind::Pinn => "pinn",
            SuiteKind::Classify => "classify",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Input CSV; relative paths resolve against the config file's directory.
    pub data: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_train_fraction")]
    pub train_fraction: f64,
    /// Suites run by `all`/`plots`; omitted means all three.
    #[serde(default)]
    pub suites: Option<Vec<SuiteKind>>,
    /// Output directory; the `--out` flag overrides it.
    #[serde(default = "default_out")]
    pub out: String,
    #[serde(default)]
    pub regression: RegressionSettings,
    #[serde(default)]
    pub classification: ClassificationSettings,
    #[serde(default)]
    pub pinn: PinnSettings,
}

fn default_seed() -> u64 {
    42
}

fn default_train_fraction() -> f64 {
    0.8
}

fn default_out() -> String {
    "out".to_string()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RegressionSettings {
    /// Predictor columns; temperature models default to the three
    /// continuous process parameters.
    pub features: Vec<String>,
    pub svr_c: f64,
    pub svr_epsilon: f64,
    pub tree_max_depth: usize,
    pub forest_trees: usize,
    /// `None` grows trees until leaves are pure.
    pub forest_max_depth: Option<usize>,
    pub boost_stages: usize,
    pub boost_learning_rate: f64,
    pub boost_max_depth: usize,
    pub adaboost_stages: usize,
    pub adaboost_depth: usize,
}

impl Default for RegressionSettings {
    fn default() -> Self {
        RegressionSettings {
            features: vec![
                COL_ROTATIONAL_RATE.to_string(),
                COL_TRAVEL_SPEED.to_string(),
                COL_MATERIAL_FLOW.to_string(),
            ],
            svr_c: 1.0,
            svr_epsilon: 0.1,
            tree_max_depth: 3,
            forest_trees: 100,
            forest_max_depth: None,
            boost_stages: 100,
            boost_learning_rate: 0.1,
            boost_max_depth: 3,
            adaboost_stages: 50,
            adaboost_depth: 3,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClassificationSettings {
    /// Columns removed before training. The default drops tool diameter,
    /// which is constant in the dataset and so carries no signal.
    pub drop_features: Vec<String>,
    pub logistic_learning_rate: f64,
    pub logistic_epochs: usize,
    pub knn_k: usize,
    pub svc_c: f64,
    pub sgd_learning_rate: f64,
    pub sgd_epochs: usize,
    pub tree_max_depth: usize,
    pub forest_trees: usize,
    /// `None` grows trees until leaves are pure.
    pub forest_max_depth: Option<usize>,
    pub adaboost_stages: usize,
    pub boost_stages: usize,
    pub boost_learning_rate: f64,
    pub boost_max_depth: usize,
    pub stochastic_subsample: f64,
}

impl Default for ClassificationSettings {
    fn default() -> Self {
        ClassificationSettings {
            drop_features: vec![COL_TOOL_DIAMETER.to_string()],
            logistic_learning_rate: 0.1,
            logistic_epochs: 500,
            knn_k: 5,
            svc_c: 1.0,
            sgd_learning_rate: 0.1,
            sgd_epochs: 200,
            tree_max_depth: 3,
            forest_trees: 100,
            forest_max_depth: None,
            adaboost_stages: 50,
            boost_stages: 100,
            boost_learning_rate: 0.1,
            boost_max_depth: 3,
            stochastic_subsample: 0.5,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PinnSettings {
    pub epochs: usize,
    pub learning_rate: f64,
    pub physics_weight: f64,
    /// Hidden layer widths; input width comes from the feature count and
    /// the output width from the equation (2 for the complex pair).
    pub hidden_layers: Vec<usize>,
    /// Response surfaces are evaluated on a grid of this side length.
    pub surface_grid: usize,
    pub transport_c: f64,
    pub wave_c: f64,
    pub heat_k: f64,
    pub hbar: f64,
    pub mass: f64,
    /// Use u_tt − c²·u_xx instead of the study's c²·u_tt − u_xx form.
    pub textbook_wave: bool,
    pub collocation: Collocation,
}

impl Default for PinnSettings {
    fn default() -> Self {
        PinnSettings {
            epochs: 2000,
            learning_rate: 5e-3,
            physics_weight: 1.0,
            hidden_layers: vec![16, 16],
            surface_grid: 25,
            transport_c: 1.0,
            wave_c: 1.0,
            heat_k: 1.0,
            hbar: 1.0,
            mass: 1.0,
            textbook_wave: false,
            collocation: Collocation::TrainingPoints,
        }
    }
}

impl RunConfig {
    /// Parse and validate a config from JSON text. Parse errors carry the
    /// JSON path of the offending key or value.
    pub fn from_json(text: &str) -> Result<RunConfig> {
        let mut de = serde_json::Deserializer::from_str(text);
        let config: RunConfig = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let at = if path == "." {
                String::new()
            } else {
                format!(" at '{path}'")
            };
            Error::InvalidParameter(format!("config{at}: {}", e.inner()))
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidParameter(format!("cannot read config {}: {e}", path.display()))
        })?;
        RunConfig::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.data.is_empty() {
            return bad("config at 'data': path must not be empty".into());
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return bad(format!(
                "config at 'train_fraction': must be in (0,1), got {}",
                self.train_fraction
            ));
        }
        if let Some(suites) = &self.suites {
            if suites.is_empty() {
                return bad("config at 'suites': must name at least one suite".into());
            }
        }
        if self.regression.features.is_empty() {
            return bad("config at 'regression.features': must name at least one column".into());
        }
        if self.pinn.epochs == 0 {
            return bad("config at 'pinn.epochs': must be at least 1".into());
        }
        if self.pinn.hidden_layers.is_empty() || self.pinn.hidden_layers.contains(&0) {
            return bad("config at 'pinn.hidden_layers': widths must be nonzero".into());
        }
        if self.pinn.surface_grid < 2 {
            return bad(format!(
                "config at 'pinn.surface_grid': need at least 2 points per axis, got {}",
                self.pinn.surface_grid
            ));
        }
        for (name, v) in [
            ("regression.svr_c", self.regression.svr_c),
            (
                "regression.boost_learning_rate",
                self.regression.boost_learning_rate,
            ),
            (
                "classification.logistic_learning_rate",
                self.classification.logistic_learning_rate,
            ),
            (
                "classification.sgd_learning_rate",
                self.classification.sgd_learning_rate,
            ),
            ("classification.svc_c", self.classification.svc_c),
            (
                "classification.boost_learning_rate",
                self.classification.boost_learning_rate,
            ),
            ("pinn.learning_rate", self.pinn.learning_rate),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!(
                    "config at '{name}': must positive and finite, got {v}"
                ));
            }
        }
        if !(self.pinn.physics_weight.is_finite() && self.pinn.physics_weight >= 0.0) {
            return bad(format!(
                "config at 'pinn.physics_weight': must be nonnegative, got {}",
                self.pinn.physics_weight
            ));
        }
        Ok(())
    }

    /// Effective suite list for `all`/`plots`.
    pub fn effective_suites(&self) -> Vec<SuiteKind> {
        self.suites
            .clone()
            .unwrap_or_else(|| SuiteKind::ALL.to_vec())
    }

    /// Data path resolved against the directory containing the config file.
    pub fn resolve_data_path(&self, config_path: &Path) -> PathBuf {
        let data = Path::new(&self.data);
        if data.is_absolute() {
            data.to_path_buf()
        } else {
            config_path
                .parent()
                .unwrap_or_else(|| Path::new("."))
                .join(data)
        }
    }

    /// Hash of every content-affecting setting, defaults expanded. The
    /// output directory is deliberately excluded: the same experiment
    /// written to two locations is still the same experiment.
    pub fn fingerprint(&self) -> String {
        #[derive(Serialize)]
        struct View<'a> {
            data: &'a str,
            seed: u64,
            train_fraction: f64,
            suites: Vec<SuiteKind>,
            regression: &'a RegressionSettings,
            classification: &'a ClassificationSettings,
            pinn: &'a PinnSettings,
        }
        let view = View {
            data: &self.data,
            seed: self.seed,
            train_fraction: self.train_fraction,
            suites: self.effective_suites(),
            regression: &self.regression,
            classification: &self.classification,
            pinn: &self.pinn,
        };
        let canonical = serde_json::to_string(&view).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> &'static str {
        r#"{"data": "afsd.csv"}"#
    }

    #[test]
    fn defaults_fill_omitted_sections() {
        let config = RunConfig::from_json(minimal()).unwrap();
        assert_eq!(config.seed, 42);
        assert_eq!(config.train_fraction, 0.8);
        assert_eq!(config.out, "out");
        assert_eq!(config.regression.features.len(), 3);
        assert_eq!(config.pinn.epochs, 2000);
        assert_eq!(config.effective_suites(), SuiteKind::ALL.to_vec());
    }

    #[test]
    fn unknown_keys_are_rejected_with_their_path() {
        let err = RunConfig::from_json(r#"{"data": "afsd.csv", "pinn": {"leerning_rate": 0.01}}"#)
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("leerning_rate"), "missing key name: {msg}");
        assert!(msg.contains("pinn"), "missing path: {msg}");
    }

    #[test]
    fn top_level_unknown_key_is_rejected() {
        let err = RunConfig::from_json(r#"{"data": "a.csv", "sede": 7}"#).unwrap_err();
        assert!(err.to_string().contains("sede"));
    }

    #[test]
    fn type_errors_carry_the_json_path() {
        let err =
            RunConfig::from_json(r#"{"data": "a.csv", "pinn": {"epochs": "many"}}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("pinn.epochs"), "missing path: {msg}");
    }

    #[test]
    fn explicit_defaults_hash_identically_to_omitted_ones() {
        let a = RunConfig::from_json(minimal()).unwrap();
        let b = RunConfig::from_json(
            r#"{"data": "afsd.csv", "seed": 42, "train_fraction": 0.8,
                "suites": ["regress", "pinn", "classify"],
                "regression": {}, "classification": {}, "pinn": {}}"#,
        )
        .unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn every_effective_setting_perturbs_the_fingerprint() {
        let base = RunConfig::from_json(minimal()).unwrap();
        let variants = [
            r#"{"data": "other.csv"}"#,
            r#"{"data": "afsd.csv", "seed": 43}"#,
            r#"{"data": "afsd.csv", "train_fraction": 0.75}"#,
            r#"{"data": "afsd.csv", "suites": ["regress"]}"#,
            r#"{"data": "afsd.csv", "regression": {"svr_c": 2.0}}"#,
            r#"{"data": "afsd.csv", "classification": {"knn_k": 7}}"#,
            r#"{"data": "afsd.csv", "pinn": {"epochs": 100}}"#,
            r#"{"data": "afsd.csv", "pinn": {"collocation": {"mode": "grid", "m": 8}}}"#,
        ];
        for text in variants {
            let other = RunConfig::from_json(text).unwrap();
            assert_ne!(
                base.fingerprint(),
                other.fingerprint(),
                "no change for {text}"
            );
        }
    }

    #[test]
    fn output_directory_does_not_affect_the_fingerprint() {
        let a = RunConfig::from_json(minimal()).unwrap();
        let b = RunConfig::from_json(r#"{"data": "afsd.csv", "out": "elsewhere"}"#).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn bad_values_are_rejected() {
        for text in [
            r#"{"data": ""}"#,
            r#"{"data": "a.csv", "train_fraction": 1.0}"#,
            r#"{"data": "a.csv", "suites": []}"#,
            r#"{"data": "a.csv", "pinn": {"epochs": 0}}"#,
            r#"{"data": "a.csv", "pinn": {"hidden_layers": []}}"#,
            r#"{"data": "a.csv", "pinn": {"surface_grid": 1}}"#,
            r#"{"data": "a.csv", "pinn": {"learning_rate": -1.0}}"#,
        ] {
            assert!(RunConfig::from_json(text).is_err(), "accepted {text}");
        }
    }

    #[test]
    fn data_path_resolves_against_the_config_directory() {
        let config = RunConfig::from_json(minimal()).unwrap();
        let resolved = config.resolve_data_path(Path::new("fixtures/full.json"));
        assert_eq!(resolved, Path::new("fixtures/afsd.csv"));
    }
}
