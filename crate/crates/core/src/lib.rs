//! Planning models for aerial (low-altitude platform) LTE base stations.
//!
//! * [`geometry`]: elevation angle and slant range.
//! * [`channel`]: air-to-ground path loss with LoS/NLoS excess loss,
//!   terrestrial log-distance loss, RSRP.
//! * [`planner`]: coverage radius under a loss budget and the altitude that
//!   maximizes it.
//! * [`energy`]: uplink energy with and without clustering, relay coverage.
//! * [`rem`]: radio environment map and channel prioritization.
//! * [`scenario`]: scenario files, evaluation and seeded Monte Carlo.
//!
//! Angles are degrees, distances metres, losses dB, powers dBm.

pub mod channel;
pub mod energy;
pub mod error;
pub mod format;
pub mod geometry;
pub mod planner;
pub mod rem;
pub mod rng;
pub mod scenario;

pub use channel::{
    fspl_db, mean_excess_db, mean_path_loss_db, p_los, rsrp_dbm, sample_path_loss_db,
    terrestrial_path_loss_db, EnvironmentParams, PathLossBreakdown, PropagationGroup, RadioConfig,
};
pub use energy::{
    required_tx_power_dbm, Aggregation, ClusterPlan, ClusterScan, GroundTerminal, Network,
    Platform, RelayResult, TrafficModel,
};
pub use error::{Error, Result, Violation};
pub use geometry::{elevation_angle_deg, slant_range_m, LinkGeometry, PlanarPoint};
pub use planner::{coverage_radius_m, optimal_altitude, AltitudeSolution, CoverageResult};
pub use rem::{CellId, ChannelPriority, RemDatabase, RemRecord, RemStore};
pub use scenario::{
    evaluate_deployment, generate_terminals, load_scenario, run_monte_carlo, DeploymentScenario,
    EvaluationReport, MonteCarloSummary, Region,
};
