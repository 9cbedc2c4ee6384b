//! Fixtures shared by the benchmarks.

use lapnet_core::{
    generate_terminals, EnvironmentParams, GroundTerminal, PlanarPoint, RadioConfig, Region,
};

pub fn radio(max_path_loss_db: f64) -> RadioConfig {
    RadioConfig {
        max_path_loss_db,
        max_tx_power_dbm: 60.0,
        ..RadioConfig::default()
    }
}

pub fn env(name: &str) -> EnvironmentParams {
    EnvironmentParams::preset(name).expect("shipped preset")
}

/// `n` terminals uniform in a disc of radius 2 km around the origin.
pub fn terminals(n: usize, seed: u64) -> Vec<GroundTerminal> {
    let region = Region {
        center: PlanarPoint::new(0.0, 0.0),
        radius_m: 2000.0,
    };
    generate_terminals(n, &region, seed)
}
