//! k-nearest-neighbour classification by Euclidean distance with fully
//! deterministic tie handling.

use serde::{Deserialize, Serialize};

use crate::model::{Classifier, Error, Result};
use crate::tree::check_matrix;

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Label and class-1 vote fraction for one query among the k nearest
/// training points. Equal distances rank by lower training index; a tied
/// vote goes to the class with the nearer mean distance, then to class 0.
pub fn knn_predict(
    train_x: &[Vec<f64>],
    train_labels: &[u8],
    query: &[f64],
    k: usize,
) -> Result<(u8, f64)> {
    let (n, p) = check_matrix(train_x)?;
    if train_labels.len() != n {
        return Err(Error::Data(format!(
            "{} labels for {n} rows",
            train_labels.len()
        )));
    }
    if train_labels.iter().any(|&l| l > 1) {
        return Err(Error::Data("binary labels must be 0 or 1".into()));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={n}")));
    }
    if query.len() != p {
        return Err(Error::Data(format!(
            "query has {} features, expected {p}",
            query.len()
        )));
    }

    let mut order: Vec<(f64, usize)> = train_x
        .iter()
        .enumerate()
        .map(|(i, row)| (euclidean(row, query), i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let neighbours = &order[..k];

    let ones = neighbours
        .iter()
        .filter(|(_, i)| train_labels[*i] == 1)
        .count();
    let zeros = k - ones;
    let score = ones as f64 / k as f64;
    let label = match ones.cmp(&zeros) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => 0,
        std::cmp::Ordering::Equal => {
            let mean = |class: u8| {
                neighbours
                    .iter()
                    .filter(|(_, i)| train_labels[*i] == class)
                    .map(|(d, _)| d)
                    .sum::<f64>()
                    / (k / 2) as f64
            };
            u8::from(mean(1) < mean(0))
        }
    };
    Ok((label, score))
}

/// A stored training set with a fixed k, exposing the shared classifier
/// interface (score = class-1 vote fraction).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnnClassifier {
    pub train_x: Vec<Vec<f64>>,
    pub train_labels: Vec<u8>,
    pub k: usize,
}

pub fn fit_knn_classifier(x: &[Vec<f64>], labels: &[u8], k: usize) -> Result<KnnClassifier> {
    // Validate eagerly so misuse surfaces at fit time, not first query.
    knn_predict(x, labels, &x[0], k)?;
    Ok(KnnClassifier {
        train_x: x.to_vec(),
        train_labels: labels.to_vec(),
        k,
    })
}

impl Classifier for KnnClassifier {
    fn score_one(&self, row: &[f64]) -> f64 {
        knn_predict(&self.train_x, &self.train_labels, row, self.k)
            .expect("training set validated at fit")
            .1
    }

    fn label_one(&self, row: &[f64]) -> u8 {
        knn_predict(&self.train_x, &self.train_labels, row, self.k)
            .expect("training set validated at fit")
            .0
    }
}
