//! CSV ingestion, train/test splitting, feature standardization and
//! correlation statistics for AFSD-style process datasets.
//!
//! The expected input is a UTF-8 comma-separated file with a header row
//! naming six process parameters plus the two outputs (peak temperature in
//! °C and a binary deposition-quality label). `Tool Geometry` is treated as
//! categorical and encoded as integer codes in first-appearance order
//! unless every cell already parses as a number, in which case the values
//! are taken as pre-encoded codes. All statistics in this module use the
//! population convention (divide by n).

use std::io::Read;
use std::path::Path;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::model::{Error, Result};
use crate::rng;

/// One expected CSV column holding a model input.
#[derive(Clone, Debug)]
pub struct ColumnSpec {
    pub name: String,
    pub categorical: bool,
}

/// Expected ingestion schema: feature columns plus the two target columns.
#[derive(Clone, Debug)]
pub struct CsvSchema {
    pub features: Vec<ColumnSpec>,
    pub temperature: String,
    pub quality: String,
}

pub const COL_ROTATIONAL_RATE: &str = "Rotational Rate (RPM)";
pub const COL_TRAVEL_SPEED: &str = "Travel Speed (mm/min)";
pub const COL_TOOL_GEOMETRY: &str = "Tool Geometry";
pub const COL_MATERIAL_FLOW: &str = "Deposition Material Flow Rate (mm^3/min)";
pub const COL_TOOL_DIAMETER: &str = "Tool Diameter (mm)";
pub const COL_POWDER_SIZE: &str = "Powder Size (micro meter)";
pub const COL_TEMPERATURE: &str = "Peak temperature (degree Celsius)";
pub const COL_QUALITY: &str = "Deposition Quality";

impl CsvSchema {
    /// The AFSD process schema used throughout the toolkit.
    pub fn afsd() -> CsvSchema {
        let feature = |name: &str, categorical: bool| ColumnSpec {
            name: name.to_string(),
            categorical,
        };
        CsvSchema {
            features: vec![
                feature(COL_ROTATIONAL_RATE, false),
                feature(COL_TRAVEL_SPEED, false),
                feature(COL_TOOL_GEOMETRY, true),
                feature(COL_MATERIAL_FLOW, false),
                feature(COL_TOOL_DIAMETER, false),
                feature(COL_POWDER_SIZE, false),
            ],
            temperature: COL_TEMPERATURE.to_string(),
            quality: COL_QUALITY.to_string(),
        }
    }
}

/// In-memory dataset: named feature columns, the regression target in °C
/// and the binary quality target.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Dataset {
    pub feature_names: Vec<String>,
    /// Unit string per feature, extracted from the parenthesised suffix of
    /// the column name (empty when the header names no unit).
    pub units: Vec<String>,
    pub categorical_mask: Vec<bool>,
    /// Row-major n_samples × n_features values.
    pub features: Vec<Vec<f64>>,
    pub target_temperature: Vec<f64>,
    pub target_quality: Vec<u8>,
}

impl Dataset {
    pub fn n_samples(&self) -> usize {
        self.features.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn feature_index(&self, name: &str) -> Result<usize> {
        self.feature_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Data(format!("unknown column '{name}'")))
    }

    /// Column values for one feature.
    pub fn column(&self, index: usize) -> Vec<f64> {
        self.features.iter().map(|row| row[index]).collect()
    }

    /// Row-major projection onto the named features, in the given order.
    pub fn select_features(&self, names: &[&str]) -> Result<Vec<Vec<f64>>> {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.feature_index(n))
            .collect::<Result<_>>()?;
        Ok(self
            .features
            .iter()
            .map(|row| idx.iter().map(|&j| row[j]).collect())
            .collect())
    }

    /// New dataset containing the given rows, in the given order.
    pub fn subset(&self, rows: &[usize]) -> Dataset {
        Dataset {
            feature_names: self.feature_names.clone(),
            units: self.units.clone(),
            categorical_mask: self.categorical_mask.clone(),
            features: rows.iter().map(|&i| self.features[i].clone()).collect(),
            target_temperature: rows.iter().map(|&i| self.target_temperature[i]).collect(),
            target_quality: rows.iter().map(|&i| self.target_quality[i]).collect(),
        }
    }
}

/// Load a dataset from a CSV file. Returns the dataset together with the
/// ingestion log (row count, per-column ranges, category encodings).
pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<(Dataset, Vec<String>)> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)
        .map_err(|e| Error::Data(format!("cannot open {}: {e}", path.display())))?;
    load_csv_reader(file, schema)
}

/// Load a dataset from any reader producing CSV text (see [`load_csv`]).
pub fn load_csv_reader(reader: impl Read, schema: &CsvSchema) -> Result<(Dataset, Vec<String>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers: Vec<String> = match rdr.headers() {
        Ok(h) if h.is_empty() || (h.len() == 1 && h[0].is_empty()) => {
            return Err(Error::Data("empty input: no header row".into()))
        }
        Ok(h) => h.iter().map(str::to_string).collect(),
        Err(e) => return Err(Error::Data(format!("cannot read header row: {e}"))),
    };

    let find = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Data(format!("missing required column '{name}'")))
    };
    let feature_pos: Vec<usize> = schema
        .features
        .iter()
        .map(|c| find(&c.name))
        .collect::<Result<_>>()?;
    let temperature_pos = find(&schema.temperature)?;
    let quality_pos = find(&schema.quality)?;

    let mut records: Vec<csv::StringRecord> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Data(format!("row {}: {e}", i + 1)))?;
        records.push(rec);
    }
    if records.is_empty() {
        return Err(Error::Data("empty input: no data rows".into()));
    }
    if records.len() < 2 {
        return Err(Error::Data(format!(
            "need at least 2 samples, found {}",
            records.len()
        )));
    }

    let cell = |rec: &csv::StringRecord, row: usize, pos: usize, name: &str| -> Result<String> {
        rec.get(pos)
            .map(str::to_string)
            .ok_or_else(|| Error::Data(format!("row {}: missing value for '{name}'", row + 1)))
    };
    let parse_numeric = |raw: &str, row: usize, name: &str| -> Result<f64> {
        let v: f64 = raw.parse().map_err(|_| {
            Error::Data(format!(
                "row {}, column '{name}': '{raw}' is not numeric",
                row + 1
            ))
        })?;
        if !v.is_finite() {
            return Err(Error::Data(format!(
                "row {}, column '{name}': non-finite value '{raw}'",
                row + 1
            )));
        }
        Ok(v)
    };

    let n = records.len();
    let p = schema.features.len();
    let mut log = vec![format!("rows: {n}")];
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(p);

    for (j, spec) in schema.features.iter().enumerate() {
        let raw: Vec<String> = records
            .iter()
            .enumerate()
            .map(|(i, rec)| cell(rec, i, feature_pos[j], &spec.name))
            .collect::<Result<_>>()?;
        let col = if spec.categorical {
            let all_numeric = raw
                .iter()
                .all(|s| s.parse::<f64>().is_ok_and(f64::is_finite));
            if all_numeric {
                log.push(format!(
                    "column '{}': pre-encoded category codes",
                    spec.name
                ));
                raw.iter().map(|s| s.parse::<f64>().unwrap()).collect()
            } else {
                // First-appearance integer codes for the distinct values.
                let mut seen: Vec<String> = Vec::new();
                let col: Vec<f64> = raw
                    .iter()
                    .map(|s| {
                        let code = seen.iter().position(|v| v == s).unwrap_or_else(|| {
                            seen.push(s.clone());
                            seen.len() - 1
                        });
                        code as f64
                    })
                    .collect();
                let mapping: Vec<String> = seen
                    .iter()
                    .enumerate()
                    .map(|(code, v)| format!("'{v}' -> {code}"))
                    .collect();
                log.push(format!(
                    "column '{}': categories {}",
                    spec.name,
                    mapping.join(", ")
                ));
                col
            }
        } else {
            raw.iter()
                .enumerate()
                .map(|(i, s)| parse_numeric(s, i, &spec.name))
                .collect::<Result<_>>()?
        };
        let (min, max) = min_max(&col);
        log.push(format!("column '{}': min {min}, max {max}", spec.name));
        columns.push(col);
    }

    let target_temperature: Vec<f64> = records
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let raw = cell(rec, i, temperature_pos, &schema.temperature)?;
            parse_numeric(&raw, i, &schema.temperature)
        })
        .collect::<Result<_>>()?;
    let (tmin, tmax) = min_max(&target_temperature);
    log.push(format!(
        "column '{}': min {tmin}, max {tmax}",
        schema.temperature
    ));

    let target_quality: Vec<u8> = records
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let raw = cell(rec, i, quality_pos, &schema.quality)?;
            match raw.as_str() {
                "0" => Ok(0),
                "1" => Ok(1),
                other => Err(Error::Data(format!(
                    "row {}, column '{}': '{other}' is not a binary label (0 or 1)",
                    i + 1,
                    schema.quality
                ))),
            }
        })
        .collect::<Result<_>>()?;

    let features: Vec<Vec<f64>> = (0..n)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    let dataset = Dataset {
        feature_names: schema.features.iter().map(|c| c.name.clone()).collect(),
        units: schema.features.iter().map(|c| unit_of(&c.name)).collect(),
        categorical_mask: schema.features.iter().map(|c| c.categorical).collect(),
        features,
        target_temperature,
        target_quality,
    };
    Ok((dataset, log))
}

fn min_max(values: &[f64]) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in values {
        min = min.min(v);
        max = max.max(v);
    }
    (min, max)
}

/// Unit substring from a header like `Travel Speed (mm/min)`.
fn unit_of(name: &str) -> String {
    match (name.rfind('('), name.rfind(')')) {
        (Some(a), Some(b)) if a < b => name[a + 1..b].to_string(),
        _ => String::new(),
    }
}

/// Train/test split request: the train fraction and the seed controlling
/// the row permutation.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
}

/// Split rows into disjoint train/test datasets. The train size is
/// `round(train_fraction * n)`; the permutation comes from the seed's
/// dedicated stream, so results are bit-identical across runs.
pub fn train_test_split(ds: &Dataset, spec: &SplitSpec) -> Result<(Dataset, Dataset)> {
    let n = ds.n_samples();
    if n < 2 {
        return Err(Error::Data(format!(
            "need at least 2 samples to split, found {n}"
        )));
    }
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "train_fraction must be in (0,1), got {}",
            spec.train_fraction
        )));
    }
    let n_train = (spec.train_fraction * n as f64).round() as usize;
    if n_train == 0 || n_train == n {
        return Err(Error::InvalidParameter(format!(
            "train_fraction {} yields an empty partition for n={n} (train size {n_train})",
            spec.train_fraction
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng::stream(spec.seed, "train-test-split", 0));
    let train = ds.subset(&order[..n_train]);
    let test = ds.subset(&order[n_train..]);
    Ok((train, test))
}

/// Mean and population standard deviation of one column.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ColumnStats {
    pub mean: f64,
    pub std: f64,
}

impl ColumnStats {
    pub fn fit(values: &[f64]) -> ColumnStats {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        ColumnStats {
            mean,
            std: var.sqrt(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.std == 0.0
    }

    /// Z-score; constant columns map to 0.
    pub fn transform(&self, v: f64) -> f64 {
        if self.is_constant() {
            0.0
        } else {
            (v - self.mean) / self.std
        }
    }

    pub fn inverse(&self, z: f64) -> f64 {
        z * self.std + self.mean
    }
}

/// Z-score parameters for a set of dataset columns.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalerParams {
    pub columns: Vec<usize>,
    pub stats: Vec<ColumnStats>,
}

impl ScalerParams {
    /// Indices (into `columns`) of zero-variance columns, which transform
    /// to all-zeros.
    pub fn zero_variance_slots(&self) -> Vec<usize> {
        self.stats
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_constant())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Fit z-score parameters (population std) on the given feature columns.
pub fn fit_scaler(ds: &Dataset, columns: &[usize]) -> Result<ScalerParams> {
    for &j in columns {
        if j >= ds.n_features() {
            return Err(Error::Data(format!(
                "unknown column index {j} (dataset has {} features)",
                ds.n_features()
            )));
        }
    }
    let stats = columns
        .iter()
        .map(|&j| ColumnStats::fit(&ds.column(j)))
        .collect();
    Ok(ScalerParams {
        columns: columns.to_vec(),
        stats,
    })
}

/// Apply a fitted scaler, returning the transformed dataset and log lines
/// flagging any zero-variance columns.
pub fn apply_scaler(ds: &Dataset, params: &ScalerParams) -> Result<(Dataset, Vec<String>)> {
    let mut out = ds.clone();
    let mut log = Vec::new();
    for (slot, &j) in params.columns.iter().enumerate() {
        if j >= ds.n_features() {
            return Err(Error::Data(format!(
                "unknown column index {j} (dataset has {} features)",
                ds.n_features()
            )));
        }
        let stats = &params.stats[slot];
        if stats.is_constant() {
            log.push(format!(
                "column '{}': zero variance, transformed to all zeros",
                ds.feature_names[j]
            ));
        }
        for row in &mut out.features {
            row[j] = stats.transform(row[j]);
        }
    }
    Ok((out, log))
}

/// Min-max normalization of one coordinate onto [0,1].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MinMaxNorm {
    pub min: f64,
    pub max: f64,
}

impl MinMaxNorm {
    pub fn fit(values: &[f64]) -> MinMaxNorm {
        let (min, max) = min_max(values);
        MinMaxNorm { min, max }
    }

    /// Maps [min,max] onto [0,1]; a constant column maps to 0.
    pub fn transform(&self, v: f64) -> f64 {
        if self.max == self.min {
            0.0
        } else {
            (v - self.min) / (self.max - self.min)
        }
    }

    pub fn inverse(&self, t: f64) -> f64 {
        self.min + t * (self.max - self.min)
    }
}

/// Labelled Pearson correlation matrix over features and both targets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
    /// Indices of constant columns, whose correlations are 0 by convention.
    pub constant_columns: Vec<usize>,
}

impl CorrelationMatrix {
    /// Sub-matrix over the given labels, in the given order.
    pub fn select(&self, labels: &[&str]) -> Result<CorrelationMatrix> {
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| {
                self.labels
                    .iter()
                    .position(|have| have == l)
                    .ok_or_else(|| Error::Data(format!("unknown column '{l}'")))
            })
            .collect::<Result<_>>()?;
        Ok(CorrelationMatrix {
            labels: labels.iter().map(|l| l.to_string()).collect(),
            values: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.values[i][j]).collect())
                .collect(),
            constant_columns: idx
                .iter()
                .enumerate()
                .filter(|(_, &orig)| self.constant_columns.contains(&orig))
                .map(|(new, _)| new)
                .collect(),
        })
    }
}

/// Pearson correlation over all feature columns plus the temperature and
/// quality targets. The diagonal is exactly 1, the matrix is symmetric,
/// and any constant column correlates 0 with everything by convention.
pub fn pearson_correlation_matrix(ds: &Dataset) -> Result<CorrelationMatrix> {
    let n = ds.n_samples();
    if n < 2 {
        return Err(Error::Data(format!(
            "need at least 2 samples for correlation, found {n}"
        )));
    }
    let mut labels: Vec<String> = ds.feature_names.clone();
    labels.push(COL_TEMPERATURE.to_string());
    labels.push(COL_QUALITY.to_string());

    let mut cols: Vec<Vec<f64>> = (0..ds.n_features()).map(|j| ds.column(j)).collect();
    cols.push(ds.target_temperature.clone());
    cols.push(ds.target_quality.iter().map(|&q| f64::from(q)).collect());

    let centered: Vec<Vec<f64>> = cols
        .iter()
        .map(|c| {
            let mean = c.iter().sum::<f64>() / n as f64;
            c.iter().map(|v| v - mean).collect()
        })
        .collect();
    let ssq: Vec<f64> = centered
        .iter()
        .map(|c| c.iter().map(|v| v * v).sum())
        .collect();
    let constant_columns: Vec<usize> = ssq
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == 0.0)
        .map(|(i, _)| i)
        .collect();

    let k = cols.len();
    let mut values = vec![vec![0.0; k]; k];
    for i in 0..k {
        values[i][i] = 1.0;
        for j in i + 1..k {
            let r = if ssq[i] == 0.0 || ssq[j] == 0.0 {
                0.0
            } else {
                let cov: f64 = centered[i]
                    .iter()
                    .zip(&centered[j])
                    .map(|(a, b)| a * b)
                    .sum();
                (cov / (ssq[i] * ssq[j]).sqrt()).clamp(-1.0, 1.0)
            };
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        labels,
        values,
        constant_columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "Rotational Rate (RPM),Travel Speed (mm/min),Tool Geometry,\
Deposition Material Flow Rate (mm^3/min),Tool Diameter (mm),Powder Size (micro meter),\
Peak temperature (degree Celsius),Deposition Quality";

    fn csv_of(rows: &[&str]) -> String {
        let mut s = String::from(HEADER);
        for r in rows {
            s.push('\n');
            s.push_str(r);
        }
        s
    }

    fn load(rows: &[&str]) -> Result<(Dataset, Vec<String>)> {
        load_csv_reader(csv_of(rows).as_bytes(), &CsvSchema::afsd())
    }

    fn sample(n: usize) -> Dataset {
        let rows: Vec<String> = (0..n)
            .map(|i| {
                format!(
                    "{},{},flat,{},10,75,{},{}",
                    1000 + i,
                    50 + i,
                    200 + 3 * i,
                    300 + 2 * i,
                    i % 2
                )
            })
            .collect();
        let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
        load(&refs).unwrap().0
    }

    #[test]
    fn minimal_two_row_csv_loads() {
        let (ds, log) = load(&[
            "1200,100,flat,250,12,80,320,1",
            "1400,120,tapered,300,12,90,380,0",
        ])
        .unwrap();
        assert_eq!(ds.n_samples(), 2);
        assert_eq!(ds.n_features(), 6);
        assert_eq!(ds.target_temperature, vec![320.0, 380.0]);
        assert_eq!(ds.target_quality, vec![1, 0]);
        assert_eq!(ds.units[0], "RPM");
        assert_eq!(ds.units[2], "");
        assert!(log.iter().any(|l| l == "rows: 2"));
    }

    #[test]
    fn tool_geometry_first_appearance_codes() {
        let (ds, log) = load(&[
            "1200,100,flat,250,12,80,320,1",
            "1250,105,flat,260,12,80,330,1",
            "1400,120,tapered,300,12,90,380,0",
        ])
        .unwrap();
        assert_eq!(ds.column(2), vec![0.0, 0.0, 1.0]);
        assert!(log
            .iter()
            .any(|l| l.contains("'flat' -> 0") && l.contains("'tapered' -> 1")));
    }

    #[test]
    fn pre_encoded_geometry_codes_pass_through() {
        let (ds, log) =
            load(&["1200,100,2,250,12,80,320,1", "1400,120,0,300,12,90,380,0"]).unwrap();
        assert_eq!(ds.column(2), vec![2.0, 0.0]);
        assert!(log.iter().any(|l| l.contains("pre-encoded")));
    }

    #[test]
    fn missing_column_is_named_in_error() {
        let broken =
            csv_of(&["1,2,flat,4,5,6,7,1"]).replace("Peak temperature (degree Celsius)", "PT");
        let err = load_csv_reader(broken.as_bytes(), &CsvSchema::afsd()).unwrap_err();
        assert!(err
            .to_string()
            .contains("Peak temperature (degree Celsius)"));
    }

    #[test]
    fn non_numeric_cell_reports_row_and_column() {
        let err = load(&[
            "1200,100,flat,250,12,80,320,1",
            "1400,oops,flat,300,12,90,380,0",
        ])
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 2"), "{msg}");
        assert!(msg.contains("Travel Speed (mm/min)"), "{msg}");
    }

    #[test]
    fn quality_must_be_binary() {
        let err = load(&[
            "1200,100,flat,250,12,80,320,2",
            "1400,120,flat,300,12,90,380,0",
        ])
        .unwrap_err();
        assert!(err.to_string().contains("binary"));
    }

    #[test]
    fn empty_and_single_row_inputs_rejected() {
        assert!(load(&[]).unwrap_err().to_string().contains("empty input"));
        assert!(load(&["1200,100,flat,250,12,80,320,1"]).is_err());
        let err = load_csv_reader(&b""[..], &CsvSchema::afsd()).unwrap_err();
        assert!(err.to_string().contains("empty input"), "{err}");
    }

    #[test]
    fn split_sizes_follow_rounding_rule() {
        let ds = sample(10);
        let spec = SplitSpec {
            train_fraction: 0.8,
            seed: 7,
        };
        let (train, test) = train_test_split(&ds, &spec).unwrap();
        assert_eq!(train.n_samples(), 8);
        assert_eq!(test.n_samples(), 2);
    }

    #[test]
    fn split_is_deterministic_disjoint_and_exhaustive() {
        let ds = sample(10);
        let spec = SplitSpec {
            train_fraction: 0.8,
            seed: 7,
        };
        let (tr1, te1) = train_test_split(&ds, &spec).unwrap();
        let (tr2, te2) = train_test_split(&ds, &spec).unwrap();
        assert_eq!(tr1.features, tr2.features);
        assert_eq!(te1.features, te2.features);

        let mut seen: Vec<f64> = tr1
            .features
            .iter()
            .chain(&te1.features)
            .map(|r| r[0])
            .collect();
        seen.sort_by(f64::total_cmp);
        let mut all: Vec<f64> = ds.features.iter().map(|r| r[0]).collect();
        all.sort_by(f64::total_cmp);
        assert_eq!(seen, all);
    }

    #[test]
    fn split_rejects_empty_partition() {
        let ds = sample(5);
        // round(0.99 * 5) = 5 leaves no test rows.
        let err = train_test_split(
            &ds,
            &SplitSpec {
                train_fraction: 0.99,
                seed: 1,
            },
        )
        .unwrap_err();
        assert!(err.to_string().contains("empty partition"));
    }

    #[test]
    fn zscore_matches_population_convention() {
        let stats = ColumnStats::fit(&[1.0, 2.0, 3.0]);
        assert_eq!(stats.mean, 2.0);
        assert!((stats.std - 0.816_496_580_927_726).abs() < 1e-12);
        assert!((stats.transform(1.0) + 1.224_744_871_391_589).abs() < 1e-12);
        assert!((stats.transform(3.0) - 1.224_744_871_391_589).abs() < 1e-12);
    }

    #[test]
    fn scaled_training_data_has_zero_mean_unit_std() {
        let ds = sample(9);
        let params = fit_scaler(&ds, &[0, 1, 3]).unwrap();
        let (scaled, _) = apply_scaler(&ds, &params).unwrap();
        for &j in &[0usize, 1, 3] {
            let stats = ColumnStats::fit(&scaled.column(j));
            assert!(stats.mean.abs() < 1e-9);
            assert!((stats.std - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_column_scales_to_zeros_and_is_flagged() {
        let ds = sample(5);
        let params = fit_scaler(&ds, &[4]).unwrap();
        assert_eq!(params.zero_variance_slots(), vec![0]);
        let (scaled, log) = apply_scaler(&ds, &params).unwrap();
        assert!(scaled.column(4).iter().all(|&v| v == 0.0));
        assert!(log.iter().any(|l| l.contains("zero variance")));
    }

    #[test]
    fn scaler_round_trips_non_constant_columns() {
        let ds = sample(7);
        let params = fit_scaler(&ds, &[0, 1]).unwrap();
        let (scaled, _) = apply_scaler(&ds, &params).unwrap();
        for i in 0..ds.n_samples() {
            for (slot, &j) in params.columns.iter().enumerate() {
                let back = params.stats[slot].inverse(scaled.features[i][j]);
                assert!((back - ds.features[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn minmax_normalizes_to_unit_interval() {
        let norm = MinMaxNorm::fit(&[10.0, 30.0, 20.0]);
        assert_eq!(norm.transform(10.0), 0.0);
        assert_eq!(norm.transform(30.0), 1.0);
        assert_eq!(norm.transform(20.0), 0.5);
        assert_eq!(norm.inverse(0.5), 20.0);
        assert_eq!(MinMaxNorm::fit(&[4.0, 4.0]).transform(4.0), 0.0);
    }

    #[test]
    fn correlation_hand_case_and_symmetries() {
        // corr([1,2,3],[1,2,4]) = 9/sqrt(84)
        let rows = [
            "1,1,flat,1,10,75,300,0",
            "2,2,flat,2,10,75,310,1",
            "3,4,flat,3,10,75,320,1",
        ];
        let (ds, _) = load(&rows).unwrap();
        let m = pearson_correlation_matrix(&ds).unwrap();
        let rr = m
            .labels
            .iter()
            .position(|l| l == COL_ROTATIONAL_RATE)
            .unwrap();
        let ts = m.labels.iter().position(|l| l == COL_TRAVEL_SPEED).unwrap();
        assert!((m.values[rr][ts] - 0.981_980_506_061_965_7).abs() < 1e-12);
        assert_eq!(m.values[rr][rr], 1.0);
        for i in 0..m.values.len() {
            for j in 0..m.values.len() {
                assert_eq!(m.values[i][j], m.values[j][i]);
                assert!(m.values[i][j].abs() <= 1.0);
            }
        }
    }

    #[test]
    fn correlation_of_negated_column_is_minus_one() {
        let rows = [
            "1,-1,flat,1,10,75,300,0",
            "2,-2,flat,2,10,75,310,1",
            "3,-3,flat,3,10,75,320,1",
        ];
        let (ds, _) = load(&rows).unwrap();
        let m = pearson_correlation_matrix(&ds).unwrap();
        assert_eq!(m.values[0][1], -1.0);
    }

    #[test]
    fn constant_column_correlates_zero_and_is_flagged() {
        let ds = sample(6);
        let m = pearson_correlation_matrix(&ds).unwrap();
        let td = m
            .labels
            .iter()
            .position(|l| l == COL_TOOL_DIAMETER)
            .unwrap();
        assert!(m.constant_columns.contains(&td));
        for (j, &v) in m.values[td].iter().enumerate() {
            assert_eq!(v, if j == td { 1.0 } else { 0.0 });
        }
    }
}
