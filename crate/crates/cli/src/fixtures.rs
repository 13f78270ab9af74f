//! Frozen dataset generators. The committed files under `fixtures/` are
//! byte-for-byte reproducible from these functions (see the freeze-guard
//! test and the `gen_fixtures` binary); regenerating after an edit keeps
//! fixture provenance auditable.

use std::io;
use std::path::Path;

use rand::Rng;
use thermoforge_core::data::{
    COL_MATERIAL_FLOW, COL_POWDER_SIZE, COL_QUALITY, COL_ROTATIONAL_RATE, COL_TEMPERATURE,
    COL_TOOL_DIAMETER, COL_TOOL_GEOMETRY, COL_TRAVEL_SPEED,
};
use thermoforge_core::rng::stream;

fn header() -> String {
    format!(
        "{COL_ROTATIONAL_RATE},{COL_TRAVEL_SPEED},{COL_TOOL_GEOMETRY},{COL_MATERIAL_FLOW},\
         {COL_TOOL_DIAMETER},{COL_POWDER_SIZE},{COL_TEMPERATURE},{COL_QUALITY}"
    )
}

/// 40 synthetic AFSD runs: peak temperature is a smooth nonlinear
/// function of rotational rate, travel speed and material flow rate plus
/// small uniform noise; quality is slow-traverse (margin-separated on
/// travel speed) so the same file feeds all three suites.
pub fn regression_synthetic_csv() -> String {
    let mut rng = stream(42, "fixture-regression", 0);
    let speeds = [60.0, 75.0, 90.0, 105.0, 150.0, 165.0, 180.0];
    let mut out = header();
    out.push('\n');
    for _ in 0..40 {
        // Few distinct levels per parameter, as in a designed experiment.
        let rr = 220.0 + 40.0 * rng.gen_range(0..=4) as f64;
        let ts = speeds[rng.gen_range(0..speeds.len())];
        let geometry = if rng.gen_bool(0.5) { "flat" } else { "tapered" };
        let dmfr = 120.0 + 60.0 * rng.gen_range(0..=3) as f64;
        let ps = 70.0 + 10.0 * rng.gen_range(0..=8) as f64;
        let noise = rng.gen_range(-25..=25) as f64 / 10.0;
        let pt = 140.0 + 0.85 * rr + 22.0 * (rr / 30.0).sin() - 0.5 * ts + 0.3 * dmfr
            - 0.0012 * (dmfr - 210.0) * (dmfr - 210.0)
            + noise;
        let quality = u8::from(ts < 120.0);
        out.push_str(&format!(
            "{rr},{ts},{geometry},{dmfr},10,{ps},{pt},{quality}\n"
        ));
    }
    out
}

/// 30 runs with a wide quality margin along travel speed (≤90 good,
/// ≥160 poor, nothing between), classes interleaved so any contiguous
/// split keeps both classes on each side.
pub fn classification_separable_csv() -> String {
    let mut out = header();
    out.push('\n');
    for i in 0..30u32 {
        let good = i % 2 == 0;
        let ts = if good {
            60.0 + 10.0 * ((i / 2) % 4) as f64
        } else {
            160.0 + 10.0 * ((i / 2) % 4) as f64
        };
        let rr = 240.0 + 10.0 * (i % 16) as f64;
        let geometry = if (i / 3) % 2 == 0 { "flat" } else { "tapered" };
        let dmfr = 140.0 + 10.0 * (i % 15) as f64;
        let ps = 80.0 + 5.0 * (i % 12) as f64;
        let pt = 250.0 + 0.3 * rr - 0.4 * ts + 0.1 * dmfr;
        out.push_str(&format!(
            "{rr},{ts},{geometry},{dmfr},10,{ps},{pt},{}\n",
            u8::from(good)
        ));
    }
    out
}

/// 30 grid points whose temperature is exactly affine in the difference
/// of the min-max-normalized rotational rate (space) and travel speed
/// (time) — an exact solution of the transport equation at c = 1 once
/// both coordinates are normalized over their full ranges.
pub fn advection_csv() -> String {
    let mut out = header();
    out.push('\n');
    for k in 0..30usize {
        // Stride permutation of the 6×5 grid spreads the coordinate
        // extremes so the seed-42 split keeps them in the training part.
        let g = (k * 13) % 30;
        let i = g % 6;
        let j = g / 6;
        let rr = 240.0 + 32.0 * i as f64;
        let ts = 60.0 + 30.0 * j as f64;
        let x = (rr - 240.0) / 160.0;
        let t = (ts - 60.0) / 120.0;
        let pt = 300.0 + 150.0 * (x - t);
        let quality = u8::from(ts < 120.0);
        out.push_str(&format!("{rr},{ts},flat,200,10,100,{pt},{quality}\n"));
    }
    out
}

/// Run configuration exercising all three suites on the synthetic
/// regression data; network epochs are kept modest so a full run stays
/// fast.
pub fn full_config_json() -> String {
    concat!(
        "{\n",
        "  \"data\": \"regression_synthetic.csv\",\n",
        "  \"seed\": 42,\n",
        "  \"pinn\": {\n",
        "    \"epochs\": 400\n",
        "  }\n",
        "}\n"
    )
    .to_string()
}

type Generator = fn() -> String;

pub const FILES: [(&str, Generator); 4] = [
    ("regression_synthetic.csv", regression_synthetic_csv),
    ("classification_separable.csv", classification_separable_csv),
    ("advection.csv", advection_csv),
    ("full.json", full_config_json),
];

pub fn write_all(dir: &Path) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, generate) in FILES {
        std::fs::write(dir.join(name), generate())?;
    }
    Ok(())
}
