//! Shared workloads for the criterion benches.

use nestoq::buildset::{complete, path, snk, stanley_pitman, star};
use nestoq::BuildingSet;

/// Building sets large enough to time, small enough to iterate on.
pub fn workloads() -> Vec<(&'static str, BuildingSet)> {
    vec![
        ("complete_7", complete(7).unwrap()),
        ("path_10", path(10).unwrap()),
        ("star_7", star(7).unwrap()),
        ("snk_8_4", snk(8, 4).unwrap()),
        ("stanley_pitman_12", stanley_pitman(12).unwrap()),
    ]
}
