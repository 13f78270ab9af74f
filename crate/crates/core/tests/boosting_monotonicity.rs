//! Gradient-boosting descent property: with full subsampling the training
//! MSE must be nonincreasing across all 100 stages, for every learning
//! rate in {0.1, 0.5, 1.0}, on 20 random regression fixtures.

use rand::Rng;

use thermoforge_core::ensemble::{fit_gradient_boosting_regressor, BoostConfig};
use thermoforge_core::rng::stream;

#[test]
fn training_mse_never_increases_over_100_stages() {
    for fixture in 0..20u64 {
        let mut rng = stream(fixture, "boost-monotone", 0);
        let n = rng.gen_range(12..=40usize);
        let x: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect();
        let y: Vec<f64> = x
            .iter()
            .map(|r| r[0].sin() + 0.5 * r[1] * r[1] - r[2] + rng.gen_range(-0.3..0.3))
            .collect();

        for &learning_rate in &[0.1, 0.5, 1.0] {
            let mut config = BoostConfig::new(fixture);
            config.n_stages = 100;
            config.learning_rate = learning_rate;
            config.subsample_fraction = 1.0;
            let model = fit_gradient_boosting_regressor(&x, &y, &config).unwrap();

            assert_eq!(model.train_mse_history.len(), 101);
            for (stage, pair) in model.train_mse_history.windows(2).enumerate() {
                assert!(
                    pair[1] <= pair[0],
                    "fixture {fixture} lr {learning_rate}: MSE rose \
                     {} -> {} at stage {stage}",
                    pair[0],
                    pair[1]
                );
            }
        }
    }
}
