//! The three evaluation suites, each producing report rows in a fixed
//! canonical order plus the per-model artifacts (model files, diagnostics,
//! plots).
//!
//! Suites are pure functions of (dataset, config): every fit draws its
//! randomness from seeded streams, so sequential and `--parallel` runs
//! merge to byte-identical artifacts — only the unhashed timing sidecar
//! may differ.

use std::time::Instant;

use serde::Serialize;
use thermoforge_core::data::{
    apply_scaler, fit_scaler, pearson_correlation_matrix, train_test_split, Dataset, SplitSpec,
    COL_QUALITY, COL_TEMPERATURE,
};
use thermoforge_core::ensemble::{
    fit_adaboost_classifier, fit_adaboost_regressor, fit_extra_trees_regressor,
    fit_gradient_boosting_classifier, fit_gradient_boosting_regressor, fit_ordered_boosting,
    fit_random_forest_classifier, fit_random_forest_regressor, fit_second_order_boosting,
    BoostConfig, ForestConfig, OrderedBoostConfig,
};
use thermoforge_core::margin::{
    fit_knn_classifier, fit_logistic, fit_sgd_classifier, fit_svc, fit_svr, LogisticConfig,
    SvmParams,
};
use thermoforge_core::metrics::{
    classification_metrics, qq_points, regression_metrics, residual_series, roc_points,
};
use thermoforge_core::physics::{
    response_surface, train_pinn, Equation, PhysicsSpec, PinnTrainConfig,
};
use thermoforge_core::tree::{export_tree_json, fit_cart_classifier, fit_cart_regressor};
use thermoforge_core::{Classifier, Error, Regressor, Result};

use crate::config::RunConfig;
use crate::manifest::Artifact;
use crate::report::{ClassificationRow, EvaluationReport, PinnRow, RegressionRow};
use crate::svg;

pub const REGRESSION_ALGORITHMS: [&str; 8] = [
    "svr",
    "decision_tree",
    "random_forest",
    "second_order_boosting",
    "ordered_boosting",
    "adaboost",
    "extra_trees",
    "gradient_boosting",
];

pub const CLASSIFICATION_ALGORITHMS: [&str; 9] = [
    "logistic",
    "knn",
    "svc",
    "sgd",
    "decision_tree",
    "random_forest",
    "adaboost",
    "gradient_boosting",
    "stochastic_gradient_boosting",
];

pub const PINN_MODELS: [&str; 4] = ["transport", "wave", "heat", "schrodinger"];

pub struct SuiteResult<R> {
    pub report: EvaluationReport<R>,
    /// (algorithm, fit seconds); rendered to the unhashed timing sidecar.
    pub timings: Vec<(String, f64)>,
    pub artifacts: Vec<Artifact>,
    pub log: Vec<String>,
}

type Task<'env, T> = Box<dyn FnOnce() -> Result<T> + Send + 'env>;

fn run_tasks<'env, T: Send>(tasks: Vec<Task<'env, T>>, parallel: bool) -> Result<Vec<T>> {
    if !parallel {
        return tasks.into_iter().map(|task| task()).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = tasks.into_iter().map(|task| scope.spawn(task)).collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|panic| std::panic::resume_unwind(panic))
            })
            .collect()
    })
}

fn split(ds: &Dataset, cfg: &RunConfig) -> Result<(Dataset, Dataset)> {
    train_test_split(
        ds,
        &SplitSpec {
            train_fraction: cfg.train_fraction,
            seed: cfg.seed,
        },
    )
}

fn model_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string(value)
        .map_err(|e| Error::Unsupported(format!("model serialization: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Column name without its parenthesised unit suffix.
fn short_label(name: &str) -> String {
    match name.find(" (") {
        Some(i) => name[..i].to_string(),
        None => name.to_string(),
    }
}

fn display_name(algorithm: &str) -> String {
    match algorithm {
        "svr" => "SVR".to_string(),
        "svc" => "SVC".to_string(),
        "knn" => "KNN".to_string(),
        "sgd" => "SGD".to_string(),
        "adaboost" => "AdaBoost".to_string(),
        other => other
            .split('_')
            .map(|w| {
                let mut chars = w.chars();
                match chars.next() {
                    Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
                    None => String::new(),
                }
            })
            .collect::<Vec<_>>()
            .join(" "),
    }
}

/// Fit times measure the training call only, not prediction or plotting.
fn timed<T>(fit: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let started = Instant::now();
    let value = fit()?;
    Ok((value, started.elapsed().as_secs_f64()))
}

struct RegOutcome {
    model_json: String,
    test_pred: Vec<f64>,
    seconds: f64,
    importance: Option<Vec<f64>>,
}

pub fn run_regression_suite(
    ds: &Dataset,
    cfg: &RunConfig,
    fingerprint: &str,
    parallel: bool,
) -> Result<SuiteResult<RegressionRow>> {
    let settings = &cfg.regression;
    let refs: Vec<&str> = settings.features.iter().map(String::as_str).collect();
    let (train, test) = split(ds, cfg)?;
    let x_train = train.select_features(&refs)?;
    let y_train = train.target_temperature.clone();
    let x_test = test.select_features(&refs)?;
    let y_test = test.target_temperature.clone();

    // The kernel model sees standardized inputs; trees split raw values.
    let col_idx: Vec<usize> = refs
        .iter()
        .map(|n| train.feature_index(n))
        .collect::<Result<_>>()?;
    let scaler = fit_scaler(&train, &col_idx)?;
    let (train_scaled, scale_log) = apply_scaler(&train, &scaler)?;
    let (test_scaled, _) = apply_scaler(&test, &scaler)?;
    let xs_train = train_scaled.select_features(&refs)?;
    let xs_test = test_scaled.select_features(&refs)?;

    let seed = cfg.seed;
    let n_features = refs.len();
    let feature_names = settings.features.clone();
    let tasks: Vec<Task<RegOutcome>> = vec![
        Box::new(|| {
            let params = SvmParams {
                c: settings.svr_c,
                epsilon: settings.svr_epsilon,
                ..SvmParams::default()
            };
            let (model, seconds) = timed(|| fit_svr(&xs_train, &y_train, &params))?;
            Ok(RegOutcome {
                model_json: model_json(&serde_json::json!({
                    "scaler": scaler,
                    "model": model,
                }))?,
                test_pred: model.predict(&xs_test),
                seconds,
                importance: None,
            })
        }),
        Box::new(|| {
            let (model, seconds) =
                timed(|| fit_cart_regressor(&x_train, &y_train, Some(settings.tree_max_depth), 1))?;
            let mut json = export_tree_json(&model, &feature_names)?;
            if !json.ends_with('\n') {
                json.push('\n');
            }
            Ok(RegOutcome {
                model_json: json,
                test_pred: model.predict(&x_test),
                seconds,
                importance: None,
            })
        }),
        Box::new(|| {
            let config = ForestConfig {
                n_trees: settings.forest_trees,
                max_depth: settings.forest_max_depth,
                feature_subset_size: Some(n_features),
                ..ForestConfig::random_forest(seed)
            };
            let (model, seconds) =
                timed(|| fit_random_forest_regressor(&x_train, &y_train, &config))?;
            Ok(RegOutcome {
                model_json: model_json(&model)?,
                test_pred: model.predict(&x_test),
                seconds,
                importance: Some(model.feature_importance()),
            })
        }),
        Box::new(|| {
            let config = BoostConfig {
                n_stages: settings.boost_stages,
                learning_rate: settings.boost_learning_rate,
                max_depth: Some(settings.boost_max_depth),
                ..BoostConfig::new(seed)
            };
            let (model, seconds) =
                timed(|| fit_second_order_boosting(&x_train, &y_train, &config))?;
            Ok(RegOutcome {
                model_json: model_json(&model)?,
                test_pred: model.predict(&x_test),
                seconds,
                importance: Some(model.feature_importance()),
            })
        }),
        Box::new(|| {
            let config = OrderedBoostConfig {
                n_stages: settings.boost_stages,
                learning_rate: settings.boost_learning_rate,
                ..OrderedBoostConfig::new(seed)
            };
            let (model, seconds) = timed(|| fit_ordered_boosting(&x_train, &y_train, &config))?;
            Ok(RegOutcome {
                model_json: model_json(&model)?,
                test_pred: model.predict(&x_test),
                seconds,
                importance: Some(model.feature_importance()),
            })
        }),
        Box::new(|| {
            let (model, seconds) = timed(|| {
                fit_adaboost_regressor(
                    &x_train,
                    &y_train,
                    settings.adaboost_stages,
                    settings.adaboost_depth,
                )
            })?;
            Ok(RegOutcome {
                model_json: model_json(&model)?,
                test_pred: model.predict(&x_test),
                seconds,
                importance: Some(model.feature_importance()),
            })
        }),
        Box::new(|| {
            let config = ForestConfig {
                n_trees: settings.forest_trees,
                max_depth: settings.forest_max_depth,
                feature_subset_size: Some(n_features),
                ..ForestConfig::extra_trees(seed)
            };
            let (model, seconds) =
                timed(|| fit_extra_trees_regressor(&x_train, &y_train, &config))?;
            Ok(RegOutcome {
                model_json: model_json(&model)?,
                test_pred: model.predict(&x_test),
                seconds,
                importance: Some(model.feature_importance()),
            })
        }),
        Box::new(|| {
            let config = BoostConfig {
                n_stages: settings.boost_stages,
                learning_rate: settings.boost_learning_rate,
                max_depth: Some(settings.boost_max_depth),
                ..BoostConfig::new(seed)
            };
            let (model, seconds) =
                timed(|| fit_gradient_boosting_regressor(&x_train, &y_train, &config))?;
            Ok(RegOutcome {
                model_json: model_json(&model)?,
                test_pred: model.predict(&x_test),
                seconds,
                importance: Some(model.feature_importance()),
            })
        }),
    ];
    let outcomes = run_tasks(tasks, parallel)?;

    let mut rows = Vec::new();
    let mut timings = Vec::new();
    let mut artifacts = Vec::new();
    let actual_label = format!("Actual {COL_TEMPERATURE}");
    let predicted_label = format!("Predicted {COL_TEMPERATURE}");
    for (name, outcome) in REGRESSION_ALGORITHMS.iter().zip(outcomes) {
        let metrics = regression_metrics(&y_test, &outcome.test_pred)?;
        rows.push(RegressionRow {
            algorithm: name.to_string(),
            mse: metrics.mse,
            mae: metrics.mae,
            rmse: metrics.rmse,
            r2: metrics.r2,
        });
        timings.push((name.to_string(), outcome.seconds));
        artifacts.push(Artifact::hashed(
            format!("model_regress_{name}.json"),
            outcome.model_json,
        ));
        let pretty = display_name(name);
        artifacts.push(Artifact::hashed(
            format!("plot_actual_vs_predicted_regress_{name}.svg"),
            svg::actual_vs_predicted(
                &y_test,
                &outcome.test_pred,
                &format!("{pretty}: actual vs predicted"),
                &actual_label,
                &predicted_label,
            )?,
        ));
        let series = residual_series(&y_test, &outcome.test_pred)?;
        let (preds, residuals): (Vec<f64>, Vec<f64>) = series.iter().copied().unzip();
        artifacts.push(Artifact::hashed(
            format!("plot_residual_regress_{name}.svg"),
            svg::residual(
                &preds,
                &residuals,
                &format!("{pretty}: residuals"),
                &predicted_label,
            )?,
        ));
        if residuals.len() >= 3 {
            artifacts.push(Artifact::hashed(
                format!("plot_qq_regress_{name}.svg"),
                svg::qq(
                    &qq_points(&residuals)?,
                    &format!("{pretty}: residual normal Q-Q"),
                )?,
            ));
        }
        if let Some(importance) = &outcome.importance {
            let labels: Vec<String> = settings.features.iter().map(|n| short_label(n)).collect();
            artifacts.push(Artifact::hashed(
                format!("plot_feature_importance_bars_regress_{name}.svg"),
                svg::feature_importance_bars(
                    &labels,
                    importance,
                    &format!("{pretty}: feature importance"),
                )?,
            ));
        }
    }

    let mut corr_names: Vec<&str> = refs.clone();
    corr_names.push(COL_TEMPERATURE);
    let corr = pearson_correlation_matrix(ds)?.select(&corr_names)?;
    let corr_labels: Vec<String> = corr.labels.iter().map(|l| short_label(l)).collect();
    let corr_flat: Vec<f64> = corr.values.iter().flatten().copied().collect();
    artifacts.push(Artifact::hashed(
        "plot_correlation_heatmap_regress.svg",
        svg::correlation_heatmap(
            &corr_labels,
            &corr_flat,
            "Process parameters vs peak temperature: Pearson correlation",
        )?,
    ));

    let report = EvaluationReport::new("regress", fingerprint, settings.features.clone(), rows);
    Ok(SuiteResult {
        report,
        timings,
        artifacts,
        log: scale_log,
    })
}

struct ClsOutcome {
    model_json: String,
    train_accuracy: f64,
    test_labels: Vec<u8>,
    test_scores: Vec<f64>,
    seconds: f64,
}

fn accuracy(truth: &[u8], predicted: &[u8]) -> f64 {
    let hits = truth.iter().zip(predicted).filter(|(a, b)| a == b).count();
    hits as f64 / truth.len() as f64
}

fn cls_outcome<M: Classifier + Serialize>(
    model: M,
    seconds: f64,
    x_train: &[Vec<f64>],
    y_train: &[u8],
    x_test: &[Vec<f64>],
) -> Result<ClsOutcome> {
    Ok(ClsOutcome {
        model_json: model_json(&model)?,
        train_accuracy: accuracy(y_train, &model.labels(x_train)),
        test_labels: model.labels(x_test),
        test_scores: model.scores(x_test),
        seconds,
    })
}

pub fn run_classification_suite(
    ds: &Dataset,
    cfg: &RunConfig,
    fingerprint: &str,
    parallel: bool,
) -> Result<SuiteResult<ClassificationRow>> {
    let settings = &cfg.classification;
    for name in &settings.drop_features {
        ds.feature_index(name)?;
    }
    let kept: Vec<String> = ds
        .feature_names
        .iter()
        .filter(|n| !settings.drop_features.contains(n))
        .cloned()
        .collect();
    if kept.is_empty() {
        return Err(Error::Data(
            "classification drops every feature column".into(),
        ));
    }
    let refs: Vec<&str> = kept.iter().map(String::as_str).collect();
    let (train, test) = split(ds, cfg)?;
    let x_train = train.select_features(&refs)?;
    let y_train = train.target_quality.clone();
    let x_test = test.select_features(&refs)?;
    let y_test = test.target_quality.clone();

    let col_idx: Vec<usize> = refs
        .iter()
        .map(|n| train.feature_index(n))
        .collect::<Result<_>>()?;
    let scaler = fit_scaler(&train, &col_idx)?;
    let (train_scaled, scale_log) = apply_scaler(&train, &scaler)?;
    let (test_scaled, _) = apply_scaler(&test, &scaler)?;
    let xs_train = train_scaled.select_features(&refs)?;
    let xs_test = test_scaled.select_features(&refs)?;

    let seed = cfg.seed;
    let tasks: Vec<Task<ClsOutcome>> = vec![
        Box::new(|| {
            let config = LogisticConfig {
                learning_rate: settings.logistic_learning_rate,
                n_epochs: settings.logistic_epochs,
                ..LogisticConfig::default()
            };
            let (model, seconds) = timed(|| fit_logistic(&xs_train, &y_train, &config))?;
            cls_outcome(model, seconds, &xs_train, &y_train, &xs_test)
        }),
        Box::new(|| {
            let (model, seconds) =
                timed(|| fit_knn_classifier(&xs_train, &y_train, settings.knn_k))?;
            cls_outcome(model, seconds, &xs_train, &y_train, &xs_test)
        }),
        Box::new(|| {
            let params = SvmParams {
                c: settings.svc_c,
                ..SvmParams::default()
            };
            let (model, seconds) = timed(|| fit_svc(&xs_train, &y_train, &params))?;
            cls_outcome(model, seconds, &xs_train, &y_train, &xs_test)
        }),
        Box::new(|| {
            let (model, seconds) = timed(|| {
                fit_sgd_classifier(
                    &xs_train,
                    &y_train,
                    settings.sgd_learning_rate,
                    settings.sgd_epochs,
                    seed,
                )
            })?;
            cls_outcome(model, seconds, &xs_train, &y_train, &xs_test)
        }),
        Box::new(|| {
            let (model, seconds) = timed(|| {
                fit_cart_classifier(&x_train, &y_train, Some(settings.tree_max_depth), 1)
            })?;
            let mut json = export_tree_json(&model, &kept)?;
            if !json.ends_with('\n') {
                json.push('\n');
            }
            Ok(ClsOutcome {
                model_json: json,
                train_accuracy: accuracy(&y_train, &model.labels(&x_train)),
                test_labels: model.labels(&x_test),
                test_scores: model.scores(&x_test),
                seconds,
            })
        }),
        Box::new(|| {
            let config = ForestConfig {
                n_trees: settings.forest_trees,
                max_depth: settings.forest_max_depth,
                ..ForestConfig::random_forest(seed)
            };
            let (model, seconds) =
                timed(|| fit_random_forest_classifier(&x_train, &y_train, &config))?;
            cls_outcome(model, seconds, &x_train, &y_train, &x_test)
        }),
        Box::new(|| {
            let (model, seconds) =
                timed(|| fit_adaboost_classifier(&x_train, &y_train, settings.adaboost_stages, 1))?;
            cls_outcome(model, seconds, &x_train, &y_train, &x_test)
        }),
        Box::new(|| {
            let config = BoostConfig {
                n_stages: settings.boost_stages,
                learning_rate: settings.boost_learning_rate,
                max_depth: Some(settings.boost_max_depth),
                ..BoostConfig::new(seed)
            };
            let (model, seconds) =
                timed(|| fit_gradient_boosting_classifier(&x_train, &y_train, &config))?;
            cls_outcome(model, seconds, &x_train, &y_train, &x_test)
        }),
        Box::new(|| {
            let config = BoostConfig {
                n_stages: settings.boost_stages,
                learning_rate: settings.boost_learning_rate,
                max_depth: Some(settings.boost_max_depth),
                subsample_fraction: settings.stochastic_subsample,
                ..BoostConfig::new(seed)
            };
            let (model, seconds) =
                timed(|| fit_gradient_boosting_classifier(&x_train, &y_train, &config))?;
            cls_outcome(model, seconds, &x_train, &y_train, &x_test)
        }),
    ];
    let outcomes = run_tasks(tasks, parallel)?;

    let mut rows = Vec::new();
    let mut timings = Vec::new();
    let mut artifacts = Vec::new();
    for (name, outcome) in CLASSIFICATION_ALGORITHMS.iter().zip(outcomes) {
        let metrics = classification_metrics(&y_test, &outcome.test_labels, &outcome.test_scores)?;
        rows.push(ClassificationRow {
            algorithm: name.to_string(),
            train_accuracy: outcome.train_accuracy,
            test_accuracy: metrics.accuracy,
            f1: metrics.f1,
            roc_auc: metrics.roc_auc,
            confusion: metrics.confusion,
        });
        timings.push((name.to_string(), outcome.seconds));
        artifacts.push(Artifact::hashed(
            format!("model_classify_{name}.json"),
            outcome.model_json,
        ));
        let pretty = display_name(name);
        artifacts.push(Artifact::hashed(
            format!("plot_confusion_heatmap_classify_{name}.svg"),
            svg::confusion_heatmap(
                &metrics.confusion,
                &format!("{pretty}: test confusion matrix"),
            )?,
        ));
        // ROC artifacts only exist when AUC does (two classes in truth).
        if let Ok(points) = roc_points(&y_test, &outcome.test_scores) {
            let mut csv = String::from("fpr,tpr\n");
            for (fpr, tpr) in &points {
                csv.push_str(&format!("{fpr},{tpr}\n"));
            }
            artifacts.push(Artifact::hashed(
                format!("roc_points_classify_{name}.csv"),
                csv,
            ));
            artifacts.push(Artifact::hashed(
                format!("plot_roc_classify_{name}.svg"),
                svg::roc(&points, &format!("{pretty}: ROC curve"))?,
            ));
        }
    }

    let mut corr_names: Vec<&str> = refs.clone();
    corr_names.push(COL_QUALITY);
    let corr = pearson_correlation_matrix(ds)?.select(&corr_names)?;
    let corr_labels: Vec<String> = corr.labels.iter().map(|l| short_label(l)).collect();
    let corr_flat: Vec<f64> = corr.values.iter().flatten().copied().collect();
    artifacts.push(Artifact::hashed(
        "plot_correlation_heatmap_classify.svg",
        svg::correlation_heatmap(
            &corr_labels,
            &corr_flat,
            "Process parameters vs deposition quality: Pearson correlation",
        )?,
    ));

    let report = EvaluationReport::new("classify", fingerprint, kept, rows);
    Ok(SuiteResult {
        report,
        timings,
        artifacts,
        log: scale_log,
    })
}

struct PinnOutcome {
    row: PinnRow,
    model_json: String,
    history_csv: String,
    surface_csv: String,
    contour_svg: String,
    surface_svg: String,
    seconds: f64,
}

fn equation_of(name: &str) -> Equation {
    match name {
        "transport" => Equation::Transport,
        "wave" => Equation::Wave,
        "heat" => Equation::Heat,
        "schrodinger" => Equation::Schrodinger,
        other => unreachable!("unknown physics model {other}"),
    }
}

pub fn run_pinn_suite(
    ds: &Dataset,
    cfg: &RunConfig,
    fingerprint: &str,
    parallel: bool,
) -> Result<SuiteResult<PinnRow>> {
    let settings = &cfg.pinn;
    let features = cfg.regression.features.clone();
    let refs: Vec<&str> = features.iter().map(String::as_str).collect();
    let (train, test) = split(ds, cfg)?;
    let x_train = train.select_features(&refs)?;
    let y_train = train.target_temperature.clone();
    let x_test = test.select_features(&refs)?;
    let y_test = test.target_temperature.clone();

    let tasks: Vec<Task<PinnOutcome>> = PINN_MODELS
        .iter()
        .map(|&name| {
            let equation = equation_of(name);
            let x_train = &x_train;
            let y_train = &y_train;
            let x_test = &x_test;
            let y_test = &y_test;
            let features = &features;
            let task: Task<PinnOutcome> = Box::new(move || {
                let mut spec = PhysicsSpec::new(equation);
                spec.c = match equation {
                    Equation::Transport => settings.transport_c,
                    Equation::Wave => settings.wave_c,
                    _ => 1.0,
                };
                spec.k = settings.heat_k;
                spec.hbar = settings.hbar;
                spec.mass = settings.mass;
                spec.textbook_wave = settings.textbook_wave;
                spec.collocation = settings.collocation;

                let mut architecture = vec![features.len()];
                architecture.extend(&settings.hidden_layers);
                architecture.push(equation.output_width());
                let mut train_config = PinnTrainConfig::new(architecture, cfg.seed);
                train_config.epochs = settings.epochs;
                train_config.learning_rate = settings.learning_rate;
                train_config.physics_weight = settings.physics_weight;

                let (model, seconds) =
                    timed(|| train_pinn(x_train, y_train, x_test, y_test, &spec, &train_config))?;

                let history = &model.history;
                let initial = history.first().expect("training records at least one loss");
                let final_record = history.last().expect("nonempty history");
                let mut history_csv = String::from("epoch,physics,data,total\n");
                for record in history.iter().filter(|r| r.epoch >= 1) {
                    history_csv.push_str(&format!(
                        "{},{},{},{}\n",
                        record.epoch, record.physics, record.data, record.total
                    ));
                }

                let surface = response_surface(&model, settings.surface_grid)?;
                let m = surface.m;
                let x_name = &features[model.spec.coordinate_map.x_index];
                let t_name = &features[model.spec.coordinate_map.t_index];
                let mut surface_csv = format!("{x_name},{t_name},Predicted {COL_TEMPERATURE}\n");
                for (x, t, temp) in &surface.rows {
                    surface_csv.push_str(&format!("{x},{t},{temp}\n"));
                }
                let xs: Vec<f64> = (0..m).map(|i| surface.rows[i * m].0).collect();
                let ts: Vec<f64> = (0..m).map(|j| surface.rows[j].1).collect();
                let values: Vec<f64> = surface.rows.iter().map(|r| r.2).collect();
                let grid = svg::SurfaceGrid {
                    xs: &xs,
                    ts: &ts,
                    values: &values,
                };
                let pretty = display_name(name);
                let contour_svg = svg::contour(
                    &grid,
                    &format!("{pretty} model: predicted temperature field"),
                    &short_label(x_name),
                    &short_label(t_name),
                )?;
                let surface_svg = svg::surface_isometric(
                    &grid,
                    &format!("{pretty} model: response surface"),
                    "Predicted peak temperature",
                )?;

                Ok(PinnOutcome {
                    row: PinnRow {
                        algorithm: name.to_string(),
                        rmse_celsius: model.test_rmse,
                        mae_celsius: model.test_mae,
                        initial_total_loss: initial.total,
                        final_total_loss: final_record.total,
                        epochs: train_config.epochs,
                    },
                    model_json: model_json(&model)?,
                    history_csv,
                    surface_csv,
                    contour_svg,
                    surface_svg,
                    seconds,
                })
            });
            Ok(task)
        })
        .collect::<Result<_>>()?;
    let outcomes = run_tasks(tasks, parallel)?;

    let mut rows = Vec::new();
    let mut timings = Vec::new();
    let mut artifacts = Vec::new();
    for (name, outcome) in PINN_MODELS.iter().zip(outcomes) {
        rows.push(outcome.row);
        timings.push((name.to_string(), outcome.seconds));
        artifacts.push(Artifact::hashed(
            format!("model_pinn_{name}.json"),
            outcome.model_json,
        ));
        artifacts.push(Artifact::hashed(
            format!("loss_history_pinn_{name}.csv"),
            outcome.history_csv,
        ));
        artifacts.push(Artifact::hashed(
            format!("surface_pinn_{name}.csv"),
            outcome.surface_csv,
        ));
        artifacts.push(Artifact::hashed(
            format!("plot_contour_pinn_{name}.svg"),
            outcome.contour_svg,
        ));
        artifacts.push(Artifact::hashed(
            format!("plot_surface_isometric_pinn_{name}.svg"),
            outcome.surface_svg,
        ));
    }

    let report = EvaluationReport::new("pinn", fingerprint, features, rows);
    Ok(SuiteResult {
        report,
        timings,
        artifacts,
        log: Vec::new(),
    })
}
