//! End-to-end orchestration: config → dataset → suites → verified output
//! directory.

use std::path::PathBuf;

use serde::Serialize;
use thermoforge_core::data::{load_csv, CsvSchema};
use thermoforge_core::Result;

use crate::config::{RunConfig, SuiteKind};
use crate::manifest::{self, Artifact};
use crate::report::{timings_csv, CsvRow};
use crate::suites::{self, SuiteResult};

#[derive(Clone, Debug)]
pub struct RunRequest {
    pub config_path: PathBuf,
    /// Explicit suite selection; `None` falls back to the config's list
    /// (the `all` and `plots` subcommands).
    pub suites: Option<Vec<SuiteKind>>,
    pub out_override: Option<PathBuf>,
    pub seed_override: Option<u64>,
    pub parallel: bool,
    /// Keep only SVG artifacts (the `plots` subcommand).
    pub plots_only: bool,
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub out_dir: PathBuf,
    pub fingerprint: String,
    pub suites_run: Vec<&'static str>,
    pub files_written: usize,
}

fn collect<R: Serialize + CsvRow>(
    suite: SuiteKind,
    result: SuiteResult<R>,
    artifacts: &mut Vec<Artifact>,
    log: &mut Vec<String>,
) -> Result<()> {
    let id = suite.id();
    artifacts.extend(result.artifacts);
    artifacts.push(Artifact::hashed(
        format!("report_{id}.json"),
        result.report.to_json()?,
    ));
    artifacts.push(Artifact::hashed(
        format!("report_{id}.csv"),
        result.report.to_csv(),
    ));
    artifacts.push(Artifact::unhashed(
        format!("timings_{id}.csv"),
        timings_csv(&result.timings),
    ));
    log.extend(result.log);
    Ok(())
}

pub fn execute(req: &RunRequest) -> Result<RunSummary> {
    let mut config = RunConfig::load(&req.config_path)?;
    if let Some(seed) = req.seed_override {
        config.seed = seed;
    }
    let fingerprint = config.fingerprint();
    let out_dir = req
        .out_override
        .clone()
        .unwrap_or_else(|| PathBuf::from(&config.out));
    let data_path = config.resolve_data_path(&req.config_path);
    let (dataset, mut log) = load_csv(&data_path, &CsvSchema::afsd())?;

    let selected = req
        .suites
        .clone()
        .unwrap_or_else(|| config.effective_suites());
    let mut artifacts: Vec<Artifact> = Vec::new();
    let mut suites_run = Vec::new();
    for suite in selected {
        match suite {
            SuiteKind::Regress => collect(
                suite,
                suites::run_regression_suite(&dataset, &config, &fingerprint, req.parallel)?,
                &mut artifacts,
                &mut log,
            )?,
            SuiteKind::Pinn => collect(
                suite,
                suites::run_pinn_suite(&dataset, &config, &fingerprint, req.parallel)?,
                &mut artifacts,
                &mut log,
            )?,
            SuiteKind::Classify => collect(
                suite,
                suites::run_classification_suite(&dataset, &config, &fingerprint, req.parallel)?,
                &mut artifacts,
                &mut log,
            )?,
        }
        suites_run.push(suite.id());
    }

    if req.plots_only {
        artifacts.retain(|a| a.name.starts_with("plot_") && a.name.ends_with(".svg"));
    } else {
        let mut text = log.join("\n");
        text.push('\n');
        artifacts.push(Artifact::hashed("ingestion.log", text));
    }

    let manifest = manifest::write_all(&out_dir, &artifacts)?;
    Ok(RunSummary {
        out_dir,
        fingerprint,
        suites_run,
        // manifest.json itself is the one file the manifest doesn't list
        files_written: manifest.files.len() + 1,
    })
}
