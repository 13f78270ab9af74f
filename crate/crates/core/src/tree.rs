//! CART decision trees for regression (variance reduction) and binary
//! classification (Gini impurity), with sample weights, per-split feature
//! subsets and the uniform-random-threshold mode used by extra trees.
//!
//! Split candidates are the midpoints between consecutive sorted distinct
//! feature values; the accepted split maximizes impurity decrease, with
//! ties broken toward the lower feature index and then the lower
//! threshold. Rows route left when `x[feature] <= threshold`.

use rand::Rng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::model::{validate_binary_labels, Classifier, Error, Regressor, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Regression,
    Classification,
}

/// One tree node. Leaves carry the prediction value: the weighted target
/// mean for regression, the weighted class-1 proportion for
/// classification, or an additive correction in boosted trees.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeNode {
    Internal {
        feature_index: usize,
        threshold: f64,
        n_samples: usize,
        impurity: f64,
        impurity_decrease: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Leaf {
        value: f64,
        n_samples: usize,
        impurity: f64,
    },
}

impl TreeNode {
    pub fn n_samples(&self) -> usize {
        match self {
            TreeNode::Internal { n_samples, .. } | TreeNode::Leaf { n_samples, .. } => *n_samples,
        }
    }

    fn count_leaves(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Internal { left, right, .. } => left.count_leaves() + right.count_leaves(),
        }
    }
}

/// Stopping-rule parameters shared by every tree learner.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TreeParams {
    /// `None` grows until purity or sample-count stops apply.
    pub max_depth: Option<usize>,
    pub min_samples_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            max_depth: None,
            min_samples_leaf: 1,
        }
    }
}

/// A fitted CART tree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecisionTree {
    pub root: TreeNode,
    pub task: Task,
    pub n_features: usize,
}

impl DecisionTree {
    fn leaf_for(&self, row: &[f64]) -> &TreeNode {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf { .. } => return node,
                TreeNode::Internal {
                    feature_index,
                    threshold,
                    left,
                    right,
                    ..
                } => {
                    node = if row[*feature_index] <= *threshold {
                        left
                    } else {
                        right
                    };
                }
            }
        }
    }

    /// Raw leaf value for the row (target mean / class-1 proportion /
    /// boosting correction, depending on how the tree was grown).
    pub fn predict_value(&self, row: &[f64]) -> f64 {
        match self.leaf_for(row) {
            TreeNode::Leaf { value, .. } => *value,
            TreeNode::Internal { .. } => unreachable!(),
        }
    }

    pub fn n_leaves(&self) -> usize {
        self.root.count_leaves()
    }

    /// Adds each split's `n_samples * impurity_decrease` to the per-feature
    /// accumulator (the un-normalized importance contribution).
    pub fn accumulate_importance(&self, acc: &mut [f64]) {
        fn walk(node: &TreeNode, acc: &mut [f64]) {
            if let TreeNode::Internal {
                feature_index,
                n_samples,
                impurity_decrease,
                left,
                right,
                ..
            } = node
            {
                acc[*feature_index] += *n_samples as f64 * impurity_decrease;
                walk(left, acc);
                walk(right, acc);
            }
        }
        walk(&self.root, acc);
    }

    /// Per-feature importance scores, nonnegative and summing to 1.
    /// A tree with no splits returns all zeros.
    pub fn feature_importance(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.n_features];
        self.accumulate_importance(&mut acc);
        normalize_importance(acc)
    }
}

/// Normalizes raw importance accumulations to sum to 1 (all-zero stays
/// all-zero when no split was ever made).
pub fn normalize_importance(mut acc: Vec<f64>) -> Vec<f64> {
    let total: f64 = acc.iter().sum();
    if total > 0.0 {
        for a in &mut acc {
            *a /= total;
        }
    }
    acc
}

impl Regressor for DecisionTree {
    fn predict_one(&self, row: &[f64]) -> f64 {
        self.predict_value(row)
    }
}

impl Classifier for DecisionTree {
    fn score_one(&self, row: &[f64]) -> f64 {
        self.predict_value(row)
    }

    fn label_one(&self, row: &[f64]) -> u8 {
        u8::from(self.predict_value(row) >= 0.5)
    }
}

/// Fit a regression tree minimizing weighted child MSE at every split.
pub fn fit_cart_regressor(
    x: &[Vec<f64>],
    y: &[f64],
    max_depth: Option<usize>,
    min_samples_leaf: usize,
) -> Result<DecisionTree> {
    let params = TreeParams {
        max_depth,
        min_samples_leaf,
    };
    fit_tree(
        x,
        y,
        None,
        Task::Regression,
        &params,
        &GrowMode::exhaustive(),
        None,
    )
}

/// Fit a classification tree minimizing weighted child Gini impurity.
pub fn fit_cart_classifier(
    x: &[Vec<f64>],
    labels: &[u8],
    max_depth: Option<usize>,
    min_samples_leaf: usize,
) -> Result<DecisionTree> {
    let y = validate_binary_labels(labels)?;
    let params = TreeParams {
        max_depth,
        min_samples_leaf,
    };
    fit_tree(
        x,
        &y,
        None,
        Task::Classification,
        &params,
        &GrowMode::exhaustive(),
        None,
    )
}

/// How split candidates are generated.
#[derive(Clone, Copy, Debug)]
pub(crate) struct GrowMode {
    /// Features sampled (without replacement) at each split; `None` = all.
    pub feature_subset: Option<usize>,
    /// Extra-trees mode: one uniform-random threshold per candidate
    /// feature instead of exhaustive midpoint enumeration.
    pub random_thresholds: bool,
}

impl GrowMode {
    pub fn exhaustive() -> GrowMode {
        GrowMode {
            feature_subset: None,
            random_thresholds: false,
        }
    }

    fn needs_rng(&self) -> bool {
        self.feature_subset.is_some() || self.random_thresholds
    }
}

/// General entry point used by the ensemble learners: optional per-sample
/// weights, feature subsets and random thresholds. For classification,
/// `y` must already be 0/1 targets.
pub(crate) fn fit_tree(
    x: &[Vec<f64>],
    y: &[f64],
    weights: Option<&[f64]>,
    task: Task,
    params: &TreeParams,
    mode: &GrowMode,
    rng: Option<ChaCha12Rng>,
) -> Result<DecisionTree> {
    let (n, p) = check_matrix(x)?;
    if y.len() != n {
        return Err(Error::Data(format!("{} targets for {n} rows", y.len())));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Data("targets must be finite".into()));
    }
    if params.min_samples_leaf == 0 {
        return Err(Error::InvalidParameter(
            "min_samples_leaf must be at least 1".into(),
        ));
    }
    let w: Vec<f64> = match weights {
        Some(w) => {
            if w.len() != n {
                return Err(Error::Data(format!("{} weights for {n} rows", w.len())));
            }
            if w.iter().any(|&v| !(v.is_finite() && v >= 0.0)) {
                return Err(Error::Data(
                    "sample weights must be finite and nonnegative".into(),
                ));
            }
            if w.iter().sum::<f64>() <= 0.0 {
                return Err(Error::Data("sample weights must not all be zero".into()));
            }
            w.to_vec()
        }
        None => vec![1.0; n],
    };
    if mode.needs_rng() && rng.is_none() {
        return Err(Error::InvalidParameter(
            "random feature subsets / thresholds require a seeded stream".into(),
        ));
    }

    let mut grower = Grower {
        x,
        y,
        w: &w,
        task,
        params,
        mode,
        rng,
    };
    let rows: Vec<usize> = (0..n).collect();
    let root = grower.grow(&rows, 0);
    Ok(DecisionTree {
        root,
        task,
        n_features: p,
    })
}

pub(crate) fn check_matrix(x: &[Vec<f64>]) -> Result<(usize, usize)> {
    if x.is_empty() {
        return Err(Error::Data("empty input: no rows".into()));
    }
    let p = x[0].len();
    if p == 0 {
        return Err(Error::Data("rows have no features".into()));
    }
    for (i, row) in x.iter().enumerate() {
        if row.len() != p {
            return Err(Error::Data(format!(
                "row {i} has {} features, expected {p}",
                row.len()
            )));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data(format!("row {i} contains a non-finite value")));
        }
    }
    Ok((x.len(), p))
}

struct Grower<'a> {
    x: &'a [Vec<f64>],
    y: &'a [f64],
    w: &'a [f64],
    task: Task,
    params: &'a TreeParams,
    mode: &'a GrowMode,
    rng: Option<ChaCha12Rng>,
}

struct Candidate {
    score: f64,
    feature: usize,
    threshold: f64,
}

impl Grower<'_> {
    fn grow(&mut self, rows: &[usize], depth: usize) -> TreeNode {
        let (s0, s1, s2) = self.sums(rows);
        let value = s1 / s0;
        let impurity = self.impurity(s0, s1, s2);
        let leaf = |value: f64| TreeNode::Leaf {
            value,
            n_samples: rows.len(),
            impurity,
        };

        let depth_stop = self.params.max_depth.is_some_and(|d| depth >= d);
        let pure = {
            let first = self.y[rows[0]];
            rows.iter().all(|&i| self.y[i] == first)
        };
        if depth_stop || pure || rows.len() < 2 * self.params.min_samples_leaf.max(1) {
            return leaf(value);
        }

        let best = match self.best_split(rows, s0, s1) {
            Some(c) => c,
            None => return leaf(value),
        };

        let mut left_rows = Vec::with_capacity(rows.len());
        let mut right_rows = Vec::with_capacity(rows.len());
        for &i in rows {
            if self.x[i][best.feature] <= best.threshold {
                left_rows.push(i);
            } else {
                right_rows.push(i);
            }
        }
        let (l0, l1, l2) = self.sums(&left_rows);
        let (r0, r1, r2) = self.sums(&right_rows);
        let child_impurity = (l0 * self.impurity(l0, l1, l2) + r0 * self.impurity(r0, r1, r2)) / s0;
        let impurity_decrease = (impurity - child_impurity).max(0.0);

        let left = Box::new(self.grow(&left_rows, depth + 1));
        let right = Box::new(self.grow(&right_rows, depth + 1));
        TreeNode::Internal {
            feature_index: best.feature,
            threshold: best.threshold,
            n_samples: rows.len(),
            impurity,
            impurity_decrease,
            left,
            right,
        }
    }

    fn sums(&self, rows: &[usize]) -> (f64, f64, f64) {
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for &i in rows {
            let (wi, yi) = (self.w[i], self.y[i]);
            s0 += wi;
            s1 += wi * yi;
            s2 += wi * yi * yi;
        }
        (s0, s1, s2)
    }

    fn impurity(&self, s0: f64, s1: f64, s2: f64) -> f64 {
        let mean = s1 / s0;
        match self.task {
            Task::Regression => (s2 / s0 - mean * mean).max(0.0),
            Task::Classification => 2.0 * mean * (1.0 - mean),
        }
    }

    /// Best candidate by the shared criterion: maximize
    /// h = S1_L²/S0_L + S1_R²/S0_R, which minimizes weighted child MSE
    /// (regression) and weighted child Gini (classification) alike.
    /// Returns `None` when no candidate strictly beats the parent.
    fn best_split(&mut self, rows: &[usize], s0: f64, s1: f64) -> Option<Candidate> {
        let p = self.x[0].len();
        let features: Vec<usize> = match self.mode.feature_subset {
            None => (0..p).collect(),
            Some(k) => {
                let rng = self.rng.as_mut().expect("checked at fit entry");
                let mut v = rand::seq::index::sample(rng, p, k.min(p)).into_vec();
                v.sort_unstable();
                v
            }
        };

        let h_parent = s1 * s1 / s0;
        let mut best: Option<Candidate> = None;
        let msl = self.params.min_samples_leaf;
        for f in features {
            let candidate = if self.mode.random_thresholds {
                self.random_threshold_candidate(rows, f, s0, s1, msl)
            } else {
                self.exhaustive_candidate(rows, f, s0, s1, msl)
            };
            if let Some(c) = candidate {
                // Strictly-greater keeps the first (lowest feature index,
                // lowest threshold) among equal scores.
                if c.score > best.as_ref().map_or(h_parent, |b| b.score) {
                    best = Some(c);
                }
            }
        }
        best
    }

    fn exhaustive_candidate(
        &self,
        rows: &[usize],
        feature: usize,
        s0: f64,
        s1: f64,
        msl: usize,
    ) -> Option<Candidate> {
        let mut vals: Vec<(f64, usize)> = rows.iter().map(|&i| (self.x[i][feature], i)).collect();
        vals.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let mut best: Option<Candidate> = None;
        let (mut c0, mut c1) = (0.0, 0.0);
        for k in 0..vals.len() - 1 {
            let (v, i) = vals[k];
            c0 += self.w[i];
            c1 += self.w[i] * self.y[i];
            let next = vals[k + 1].0;
            if next <= v {
                continue;
            }
            let n_left = k + 1;
            if n_left < msl || rows.len() - n_left < msl {
                continue;
            }
            let threshold = 0.5 * (v + next);
            // Guard against midpoint rounding onto either endpoint, which
            // would desynchronize the partition from the prefix sums.
            if !(threshold >= v && threshold < next) {
                continue;
            }
            let (r0, r1) = (s0 - c0, s1 - c1);
            if c0 <= 0.0 || r0 <= 0.0 {
                continue;
            }
            let score = c1 * c1 / c0 + r1 * r1 / r0;
            if best.as_ref().is_none_or(|b| score > b.score) {
                best = Some(Candidate {
                    score,
                    feature,
                    threshold,
                });
            }
        }
        best
    }

    // `!(max > min)` deliberately treats NaN feature values as constant.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn random_threshold_candidate(
        &mut self,
        rows: &[usize],
        feature: usize,
        s0: f64,
        s1: f64,
        msl: usize,
    ) -> Option<Candidate> {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &i in rows {
            min = min.min(self.x[i][feature]);
            max = max.max(self.x[i][feature]);
        }
        if !(max > min) {
            return None; // constant feature: no valid threshold, no draw
        }
        let rng = self.rng.as_mut().expect("checked at fit entry");
        let threshold = rng.gen_range(min..max);

        let (mut c0, mut c1) = (0.0, 0.0);
        let mut n_left = 0usize;
        for &i in rows {
            if self.x[i][feature] <= threshold {
                c0 += self.w[i];
                c1 += self.w[i] * self.y[i];
                n_left += 1;
            }
        }
        if n_left < msl || rows.len() - n_left < msl {
            return None;
        }
        let (r0, r1) = (s0 - c0, s1 - c1);
        if c0 <= 0.0 || r0 <= 0.0 {
            return None;
        }
        let score = c1 * c1 / c0 + r1 * r1 / r0;
        Some(Candidate {
            score,
            feature,
            threshold,
        })
    }
}

/// JSON tree rendering with feature names, suitable for reconstruction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeExport {
    pub task: Task,
    pub feature_names: Vec<String>,
    pub root: TreeNode,
}

pub fn export_tree_json(tree: &DecisionTree, feature_names: &[String]) -> Result<String> {
    if feature_names.len() != tree.n_features {
        return Err(Error::Data(format!(
            "{} feature names for {} features",
            feature_names.len(),
            tree.n_features
        )));
    }
    let export = TreeExport {
        task: tree.task,
        feature_names: feature_names.to_vec(),
        root: tree.root.clone(),
    };
    serde_json::to_string_pretty(&export).map_err(|e| Error::Data(e.to_string()))
}

pub fn import_tree_json(json: &str) -> Result<(DecisionTree, Vec<String>)> {
    let export: TreeExport =
        serde_json::from_str(json).map_err(|e| Error::Data(format!("invalid tree JSON: {e}")))?;
    let tree = DecisionTree {
        root: export.root,
        task: export.task,
        n_features: export.feature_names.len(),
    };
    Ok((tree, export.feature_names))
}

/// Indented depth-first text rendering of the tree structure.
pub fn export_tree_text(tree: &DecisionTree, feature_names: &[String]) -> String {
    fn walk(node: &TreeNode, names: &[String], indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match node {
            TreeNode::Leaf {
                value, n_samples, ..
            } => {
                out.push_str(&format!("{pad}value {value} [samples {n_samples}]\n"));
            }
            TreeNode::Internal {
                feature_index,
                threshold,
                n_samples,
                left,
                right,
                ..
            } => {
                out.push_str(&format!(
                    "{pad}if {} <= {threshold} [samples {n_samples}]\n",
                    names[*feature_index]
                ));
                walk(left, names, indent + 1, out);
                out.push_str(&format!("{pad}else\n"));
                walk(right, names, indent + 1, out);
            }
        }
    }
    let mut out = String::new();
    walk(&tree.root, feature_names, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn col(values: &[f64]) -> Vec<Vec<f64>> {
        values.iter().map(|&v| vec![v]).collect()
    }

    #[test]
    fn constant_target_yields_single_leaf() {
        let tree = fit_cart_regressor(&col(&[1.0, 2.0, 3.0]), &[7.0, 7.0, 7.0], None, 1).unwrap();
        assert_eq!(tree.n_leaves(), 1);
        assert_eq!(tree.predict_value(&[2.5]), 7.0);
    }

    #[test]
    fn step_data_splits_at_midpoint() {
        let x = col(&[1.0, 2.0, 9.0, 10.0]);
        let y = [0.0, 0.0, 10.0, 10.0];
        let tree = fit_cart_regressor(&x, &y, Some(1), 1).unwrap();
        match &tree.root {
            TreeNode::Internal {
                threshold,
                impurity,
                impurity_decrease,
                ..
            } => {
                assert_eq!(*threshold, 5.5);
                assert_eq!(*impurity, 25.0);
                assert_eq!(*impurity_decrease, 25.0);
            }
            TreeNode::Leaf { .. } => panic!("expected a split"),
        }
        assert_eq!(tree.predict_value(&[1.5]), 0.0);
        assert_eq!(tree.predict_value(&[9.5]), 10.0);
    }

    #[test]
    fn depth_zero_is_the_mean_predictor() {
        let tree =
            fit_cart_regressor(&col(&[1.0, 2.0, 3.0]), &[1.0, 2.0, 6.0], Some(0), 1).unwrap();
        assert_eq!(tree.n_leaves(), 1);
        assert_eq!(tree.predict_value(&[0.0]), 3.0);
    }

    #[test]
    fn gini_values_match_hand_cases() {
        let pure = fit_cart_classifier(&col(&[1.0, 2.0, 3.0]), &[1, 1, 1], None, 1).unwrap();
        match pure.root {
            TreeNode::Leaf {
                impurity, value, ..
            } => {
                assert_eq!(impurity, 0.0);
                assert_eq!(value, 1.0);
            }
            _ => panic!("pure node must be a leaf"),
        }
        let mixed = fit_cart_classifier(&col(&[1.0, 1.0]), &[0, 1], Some(0), 1).unwrap();
        match mixed.root {
            TreeNode::Leaf { impurity, .. } => assert_eq!(impurity, 0.5),
            _ => panic!(),
        }
    }

    #[test]
    fn separable_labels_reach_perfect_training_accuracy_at_depth_one() {
        let x = col(&[0.0, 1.0, 10.0, 11.0]);
        let labels = [0u8, 0, 1, 1];
        let tree = fit_cart_classifier(&x, &labels, Some(1), 1).unwrap();
        let predicted: Vec<u8> = x.iter().map(|r| tree.label_one(r)).collect();
        assert_eq!(predicted, labels);
    }

    #[test]
    fn min_samples_leaf_is_respected() {
        let x = col(&[1.0, 2.0, 3.0, 4.0]);
        let y = [0.0, 0.0, 0.0, 10.0];
        let tree = fit_cart_regressor(&x, &y, None, 2).unwrap();
        fn check(node: &TreeNode) {
            match node {
                TreeNode::Leaf { n_samples, .. } => assert!(*n_samples >= 2),
                TreeNode::Internal { left, right, .. } => {
                    check(left);
                    check(right);
                }
            }
        }
        check(&tree.root);
    }

    #[test]
    fn equal_gain_ties_break_to_lower_feature_index() {
        // Two identical columns: both would give the same gain everywhere.
        let x: Vec<Vec<f64>> = [1.0, 2.0, 9.0, 10.0].iter().map(|&v| vec![v, v]).collect();
        let y = [0.0, 0.0, 10.0, 10.0];
        let tree = fit_cart_regressor(&x, &y, Some(1), 1).unwrap();
        match tree.root {
            TreeNode::Internal { feature_index, .. } => assert_eq!(feature_index, 0),
            _ => panic!(),
        }
    }

    #[test]
    fn weighted_fit_matches_row_replication() {
        let x = col(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let y = [2.0, 1.0, 7.0, 8.0, 2.5];
        let w = [2.0, 1.0, 3.0, 1.0, 2.0];
        let weighted = fit_tree(
            &x,
            &y,
            Some(&w),
            Task::Regression,
            &TreeParams {
                max_depth: Some(3),
                min_samples_leaf: 1,
            },
            &GrowMode::exhaustive(),
            None,
        )
        .unwrap();

        let mut xr = Vec::new();
        let mut yr = Vec::new();
        for i in 0..x.len() {
            for _ in 0..w[i] as usize {
                xr.push(x[i].clone());
                yr.push(y[i]);
            }
        }
        let replicated = fit_cart_regressor(&xr, &yr, Some(3), 1).unwrap();
        for q in [0.5, 1.5, 2.5, 3.5, 4.5, 5.5] {
            assert!((weighted.predict_value(&[q]) - replicated.predict_value(&[q])).abs() < 1e-12);
        }
    }

    #[test]
    fn importance_finds_the_informative_feature() {
        let mut rng = stream(11, "test-importance", 0);
        let x: Vec<Vec<f64>> = (0..60)
            .map(|_| vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)])
            .collect();
        let y: Vec<f64> = x
            .iter()
            .map(|r| if r[0] > 0.5 { 10.0 } else { 0.0 })
            .collect();
        let tree = fit_cart_regressor(&x, &y, Some(3), 1).unwrap();
        let importance = tree.feature_importance();
        assert!(importance[0] > 0.9, "importance {importance:?}");
        assert!((importance.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_feature_has_exactly_zero_importance() {
        let x: Vec<Vec<f64>> = [1.0, 2.0, 9.0, 10.0]
            .iter()
            .map(|&v| vec![5.0, v])
            .collect();
        let y = [0.0, 0.0, 10.0, 10.0];
        let tree = fit_cart_regressor(&x, &y, None, 1).unwrap();
        assert_eq!(tree.feature_importance()[0], 0.0);
    }

    #[test]
    fn single_leaf_importance_is_all_zeros() {
        let tree = fit_cart_regressor(&col(&[1.0, 2.0]), &[3.0, 3.0], None, 1).unwrap();
        assert_eq!(tree.feature_importance(), vec![0.0]);
    }

    #[test]
    fn json_export_round_trips_predictions() {
        let x = col(&[1.0, 2.0, 9.0, 10.0, 4.0, 6.0]);
        let y = [0.0, 0.5, 10.0, 10.0, 3.0, 7.0];
        let tree = fit_cart_regressor(&x, &y, Some(3), 1).unwrap();
        let names = vec!["Rotational Rate (RPM)".to_string()];
        let json = export_tree_json(&tree, &names).unwrap();
        let (parsed, parsed_names) = import_tree_json(&json).unwrap();
        assert_eq!(parsed_names, names);
        for row in &x {
            assert_eq!(parsed.predict_value(row), tree.predict_value(row));
        }
    }

    #[test]
    fn text_export_shows_routing_rule() {
        let x = col(&[1.0, 2.0, 9.0, 10.0]);
        let y = [0.0, 0.0, 10.0, 10.0];
        let tree = fit_cart_regressor(&x, &y, Some(1), 1).unwrap();
        let text = export_tree_text(&tree, &["RPM".to_string()]);
        assert!(text.contains("if RPM <= 5.5 [samples 4]"), "{text}");
        assert!(text.lines().count() >= 3);
        let single = fit_cart_regressor(&col(&[1.0, 2.0]), &[3.0, 3.0], None, 1).unwrap();
        assert_eq!(
            export_tree_text(&single, &["RPM".to_string()])
                .lines()
                .count(),
            1
        );
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(fit_cart_regressor(&[], &[], None, 1).is_err());
        assert!(fit_cart_classifier(&col(&[1.0]), &[2], None, 1).is_err());
    }
}
