//! Margin and instance-based models: support vector regression and
//! classification solved by sequential minimal optimization, logistic
//! regression, k-nearest neighbours and per-sample stochastic gradient
//! descent classification.

mod kernel;
mod knn;
mod logistic;
mod sgd;
mod smo;
mod svm;

pub use kernel::Kernel;
pub use knn::{fit_knn_classifier, knn_predict, KnnClassifier};
pub use logistic::{fit_logistic, sigmoid, LogisticConfig, LogisticModel};
pub use sgd::{fit_sgd_classifier, SgdClassifier};
pub use svm::{fit_svc, fit_svr, SvcModel, SvmParams, SvrModel};
