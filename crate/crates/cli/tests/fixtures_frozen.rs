//! Guards the committed fixture files: they must stay byte-identical to
//! their generators (so edits to either side are caught), and the fixed
//! 80/20 split (seed 42) must keep the properties the evaluation suites
//! rely on.

use std::path::{Path, PathBuf};

use thermoforge::fixtures;
use thermoforge_core::data::{load_csv, train_test_split, CsvSchema, Dataset, SplitSpec};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn split(ds: &Dataset) -> (Dataset, Dataset) {
    train_test_split(
        ds,
        &SplitSpec {
            train_fraction: 0.8,
            seed: 42,
        },
    )
    .unwrap()
}

#[test]
fn committed_files_match_their_generators() {
    for (name, generate) in fixtures::FILES {
        let committed = std::fs::read_to_string(fixtures_dir().join(name))
            .unwrap_or_else(|e| panic!("reading committed {name}: {e}"));
        assert_eq!(
            committed,
            generate(),
            "{name} drifted from its generator; regenerate with `cargo run --bin gen_fixtures`"
        );
    }
}

#[test]
fn advection_split_keeps_coordinate_extremes_in_train() {
    let ds = load_csv(fixtures_dir().join("advection.csv"), &CsvSchema::afsd())
        .unwrap()
        .0;
    let (train, _) = split(&ds);
    // Min-max coordinate scaling is fitted on the training part; the frozen
    // permutation must keep both coordinate extremes there so the physics
    // residual sees the whole unit square.
    let range = |d: &Dataset, j: usize| {
        let v = d.column(j);
        (
            v.iter().copied().fold(f64::INFINITY, f64::min),
            v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    };
    assert_eq!(range(&train, 0), (240.0, 400.0));
    assert_eq!(range(&train, 1), (60.0, 180.0));
}

#[test]
fn classification_split_has_both_classes_on_both_sides() {
    let ds = load_csv(
        fixtures_dir().join("classification_separable.csv"),
        &CsvSchema::afsd(),
    )
    .unwrap()
    .0;
    let (train, test) = split(&ds);
    let counts = |d: &Dataset| {
        (
            d.target_quality.iter().filter(|&&q| q == 0).count(),
            d.target_quality.iter().filter(|&&q| q == 1).count(),
        )
    };
    let (train_bad, train_good) = counts(&train);
    let (test_bad, test_good) = counts(&test);
    assert!(train_bad > 0 && train_good > 0, "train split lost a class");
    assert!(test_bad > 0 && test_good > 0, "test split lost a class");
}

#[test]
fn regression_fixture_spans_several_levels_per_feature() {
    let ds = load_csv(
        fixtures_dir().join("regression_synthetic.csv"),
        &CsvSchema::afsd(),
    )
    .unwrap()
    .0;
    assert_eq!(ds.n_samples(), 40);
    for (j, minimum) in [(0, 3), (1, 4), (3, 3)] {
        let mut levels: Vec<f64> = ds.column(j);
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        assert!(
            levels.len() >= minimum,
            "feature {j} has only {} distinct levels",
            levels.len()
        );
    }
}
