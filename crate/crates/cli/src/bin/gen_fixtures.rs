//! Regenerate the frozen fixtures under `fixtures/` (or a given directory).

use std::path::PathBuf;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures"));
    thermoforge::fixtures::write_all(&dir).expect("cannot write fixtures");
    println!(
        "wrote {} fixture files to {}",
        thermoforge::fixtures::FILES.len(),
        dir.display()
    );
}
